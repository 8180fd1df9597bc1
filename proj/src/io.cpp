#include "hgraph/io.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <limits>
#include <sstream>
#include <stdexcept>

#include <CLI11.hpp>
#include <json.hpp>

#include "hgraph/barrier.hpp"
#include "hgraph/collar.hpp"
#include "hgraph/continuation.hpp"
#include "hgraph/periodic_spline.hpp"
#include "hgraph/perron.hpp"
#include "hgraph/radial.hpp"
#include "hgraph/validation.hpp"

namespace hgraph {

using json = nlohmann::ordered_json;

namespace {

[[noreturn]] void fail(const std::string& what) { throw std::runtime_error(what); }

Vec2 parse_vec2(const json& j, const std::string& where) {
    if (!j.is_array() || j.size() != 2 || !j[0].is_number() || !j[1].is_number())
        fail(where + ": expected [x, y]");
    return {j[0].get<double>(), j[1].get<double>()};
}

PlanarCurve parse_curve(const json& j, const std::string& where) {
    if (!j.is_object() || !j.contains("kind") || !j["kind"].is_string())
        fail(where + ": expected an object with a \"kind\" field");
    std::string kind = j["kind"].get<std::string>();
    if (kind == "circle") {
        if (!j.contains("radius") || !j["radius"].is_number())
            fail(where + ".radius: missing or not a number");
        Vec2 c = j.contains("center") ? parse_vec2(j["center"], where + ".center") : Vec2{};
        return PlanarCurve::circle(c, j["radius"].get<double>());
    }
    if (kind == "ellipse") {
        if (!j.contains("a") || !j.contains("b") || !j["a"].is_number() || !j["b"].is_number())
            fail(where + ": ellipse needs numeric \"a\" and \"b\"");
        Vec2 c = j.contains("center") ? parse_vec2(j["center"], where + ".center") : Vec2{};
        return PlanarCurve::ellipse(c, j["a"].get<double>(), j["b"].get<double>());
    }
    if (kind == "spline") {
        if (!j.contains("points") || !j["points"].is_array() || j["points"].size() < 3)
            fail(where + ".points: expected at least 3 control points");
        std::vector<Vec2> pts;
        for (size_t i = 0; i < j["points"].size(); ++i)
            pts.push_back(parse_vec2(j["points"][i],
                                     where + ".points[" + std::to_string(i) + "]"));
        return PlanarCurve::spline(std::move(pts));
    }
    fail(where + ".kind: unknown curve kind \"" + kind + "\"");
}

json curve_to_json(const PlanarCurve& c) {
    json j;
    switch (c.kind()) {
        case CurveKind::Circle:
            j["kind"] = "circle";
            j["center"] = {c.center().x, c.center().y};
            j["radius"] = c.radius_a();
            break;
        case CurveKind::Ellipse:
            j["kind"] = "ellipse";
            j["center"] = {c.center().x, c.center().y};
            j["a"] = c.radius_a();
            j["b"] = c.radius_b();
            break;
        case CurveKind::Spline: {
            j["kind"] = "spline";
            json pts = json::array();
            for (const auto& p : c.control_points()) pts.push_back({p.x, p.y});
            j["points"] = std::move(pts);
            break;
        }
    }
    return j;
}

std::string fmt17(double v) {
    char buf[40];
    std::snprintf(buf, sizeof(buf), "%.17g", v);
    return buf;
}

json item_to_json(const HypothesisItem& it) {
    return json{{"ok", it.ok}, {"margin", it.margin}};
}

json hypotheses_to_json(const HypothesisReport& r) {
    json j;
    j["h_cone"] = item_to_json(r.h_cone);
    j["h_cone"]["min_cone_curvature"] = r.min_cone_curvature;
    j["h_L"] = item_to_json(r.h_L);
    j["h_L"]["min_boundary_curvature"] = r.min_boundary_curvature;
    j["containment"] = item_to_json(r.containment);
    j["boundary_on_cone"] = item_to_json(r.boundary_on_cone);
    j["all_ok"] = r.all_ok();
    return j;
}

json history_to_json(const ContinuationState& s) {
    json j;
    j["reached_target"] = s.reached_target;
    j["sandwich_ok"] = s.sandwich_ok;
    j["t"] = s.t;
    j["message"] = s.message;
    json steps = json::array();
    for (const auto& st : s.history)
        steps.push_back({{"t", st.t},
                         {"dt", st.dt},
                         {"newton_iterations", st.newton_iterations},
                         {"residual", st.residual}});
    j["steps"] = std::move(steps);
    return j;
}

json barrier_to_json(const BarrierSelection& sel, const GradientBoundReport& grad) {
    json j;
    j["ok"] = sel.ok;
    j["delta"] = sel.params.delta;
    j["beta"] = sel.params.beta;
    j["beta_floor"] = sel.beta_floor;
    j["eps1"] = sel.params.eps1;
    j["min_operator"] = sel.verification.min_operator;
    j["tail_ok"] = sel.verification.tail_ok;
    j["message"] = sel.message;
    j["gradient_bound_M"] = grad.M;
    j["max_grad_v"] = grad.max_grad_v;
    j["w_below_v"] = grad.w_below_v;
    j["v_below_psi"] = grad.v_below_psi;
    j["max_on_boundary_layer"] = grad.max_on_boundary_layer;
    return j;
}

json invariant_item_to_json(const InvariantItem& it) {
    return json{{"applicable", it.applicable}, {"ok", it.ok}, {"margin", it.margin}};
}

json suite_to_json(const InvariantSuite& s) {
    json j;
    j["sandwich"] = invariant_item_to_json(s.sandwich);
    j["height_bound"] = invariant_item_to_json(s.height_bound);
    j["gradient_on_boundary"] = invariant_item_to_json(s.gradient_on_boundary);
    j["uniqueness"] = invariant_item_to_json(s.uniqueness);
    j["uniqueness_diff"] = s.uniqueness_diff;
    j["residual"] = invariant_item_to_json(s.residual);
    j["residual_norm"] = s.residual_norm;
    j["all_ok"] = s.all_ok();
    j["message"] = s.message;
    return j;
}

struct Timer {
    std::chrono::steady_clock::time_point t0 = std::chrono::steady_clock::now();
    double ms() const {
        return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0)
            .count();
    }
};

void emit_report(const json& report, const std::string& out_dir) {
    std::cout << report.dump(2) << "\n";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/report.json", report.dump(2) + "\n");
    }
}

json config_echo(const ProblemConfig& cfg) {
    json j;
    j["gamma"] = curve_to_json(cfg.gamma);
    j["L"] = curve_to_json(cfg.L);
    if (cfg.vertex)
        j["vertex"] = {cfg.vertex->x, cfg.vertex->y, cfg.vertex->z};
    else
        j["vertex"] = "infinity";
    j["H"] = cfg.H;
    if (cfg.boundary.from_cone)
        j["boundary_data"] = "from-cone";
    else
        j["boundary_data"] = cfg.boundary.values;
    j["mesh_h"] = cfg.mesh_h;
    j["tolerances"] = {{"newton", cfg.tol.newton},
                       {"boundary_fit", cfg.tol.boundary_fit},
                       {"barrier_samples", cfg.tol.barrier_samples},
                       {"cone_samples", cfg.tol.cone_samples}};
    j["serrin_terms"] = cfg.serrin_terms;
    return j;
}

/// Boundary trace of the configured data at the mesh boundary nodes.
ScalarField boundary_trace(const ProblemConfig& cfg, const Mesh& mesh) {
    ScalarField bc = ScalarField::constant(mesh.num_vertices(), 0.0);
    for (const auto& bv : mesh.boundary) bc[bv.index] = cfg.boundary_value(bv.param);
    return bc;
}

struct BarrierStage {
    BarrierSelection selection;
    GradientBoundReport gradient;
    bool ok = false;
};

BarrierStage run_barrier_stage(const ProblemConfig& cfg, const Mesh& mesh,
                               const ScalarField& v, const ScalarField& psi,
                               double H_t_min) {
    BarrierStage out;
    const int n = 256;
    std::vector<double> phi(n);
    for (int i = 0; i < n; ++i) phi[i] = cfg.boundary_value(kTwoPi * i / n);
    double lo = *std::min_element(phi.begin(), phi.end());
    double hi = *std::max_element(phi.begin(), phi.end());

    double vh = cfg.vertex ? cfg.vertex->z : 4.0 / cfg.H;
    if (hi - lo <= 1e-10) {
        // constant data: shift to zero and carry the shift through the sandwich
        double shift = phi.front();
        CollarChart chart = build_collar(cfg.L);
        out.selection = choose_barrier_params(chart, vh - shift, H_t_min);
        out.gradient = boundary_gradient_bound(mesh, v, psi, chart, out.selection.params, shift);
    } else {
        CollarChart chart = build_collar(cfg.L, PeriodicSpline(phi));
        out.selection = choose_barrier_params(chart, vh, H_t_min);
        out.gradient = boundary_gradient_bound(mesh, v, psi, chart, out.selection.params, 0.0);
    }
    out.ok = out.selection.ok && out.gradient.w_below_v && out.gradient.v_below_psi &&
             out.gradient.max_on_boundary_layer;
    return out;
}

int run_check(const ProblemConfig& cfg, const std::string& out_dir) {
    auto rep = check_hypotheses(cfg);
    json report;
    report["command"] = "check";
    report["config"] = config_echo(cfg);
    report["config_hash"] = fnv1a_hash(config_canonical_text(cfg));
    report["hypotheses"] = hypotheses_to_json(rep);
    emit_report(report, out_dir);
    return rep.all_ok() ? 0 : 1;
}

int run_solve(const ProblemConfig& cfg, double h_override, const std::string& out_dir,
              bool force) {
    Timer total;
    json report;
    report["command"] = "solve";
    report["config"] = config_echo(cfg);
    report["config_hash"] = fnv1a_hash(config_canonical_text(cfg));

    auto hyp = check_hypotheses(cfg);
    report["hypotheses"] = hypotheses_to_json(hyp);
    if (!hyp.all_ok() && !force) {
        report["message"] = "hypothesis check failed; rerun with --force to solve anyway";
        emit_report(report, out_dir);
        return 1;
    }

    double h = h_override > 0.0 ? h_override : cfg.mesh_h;
    Mesh mesh = generate_mesh(cfg.L, h);
    report["mesh"] = {{"vertices", mesh.num_vertices()},
                      {"triangles", mesh.num_triangles()},
                      {"target_h", h},
                      {"min_angle_deg", mesh.min_angle_deg()}};

    ScalarField v;
    bool checks_ok = true;
    if (cfg.vertex) {
        auto res = continuation_solve(cfg, mesh, true);
        report["supersolution"] = {{"smoothed", res.supersolution.smoothed},
                                   {"rho0", res.supersolution.rho0},
                                   {"cap_radius", res.supersolution.cap_radius},
                                   {"min_margin", res.supersolution.min_margin}};
        report["continuation"] = history_to_json(res.state);
        if (!res.state.reached_target) {
            report["message"] = "continuation failed: " + res.state.message;
            emit_report(report, out_dir);
            return 2;
        }
        v = res.state.v;
        checks_ok = res.state.sandwich_ok;

        double H_t_min = std::min(cfg.H, res.supersolution.H_psi.min());
        auto barrier = run_barrier_stage(cfg, mesh, v, res.supersolution.psi, H_t_min);
        report["barrier"] = barrier_to_json(barrier.selection, barrier.gradient);
        checks_ok = checks_ok && barrier.ok;

        auto suite = run_invariant_suite(mesh, v, cfg, &res.supersolution.psi);
        report["invariants"] = suite_to_json(suite);
        checks_ok = checks_ok && suite.all_ok();
    } else {
        ScalarField bc = boundary_trace(cfg, mesh);
        auto state = continuation_in_h(mesh, bc, cfg.H);
        report["continuation"] = history_to_json(state);
        if (!state.reached_target) {
            report["message"] = "continuation failed: " + state.message;
            emit_report(report, out_dir);
            return 2;
        }
        v = state.v;
        auto suite = run_invariant_suite(mesh, v, cfg, nullptr);
        report["invariants"] = suite_to_json(suite);
        checks_ok = suite.all_ok();
    }

    report["solution"] = {{"min", v.min()}, {"max", v.max()}};
    report["timings_ms"] = {{"total", total.ms()}};
    report["message"] = checks_ok ? "ok" : "checks failed";
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/solution.obj", export_solution(mesh, v, ExportFormat::Obj));
        write_file(out_dir + "/solution.json", solution_bundle(mesh, v));
    }
    emit_report(report, out_dir);
    return hyp.all_ok() && checks_ok ? 0 : 1;
}

int run_serrin(const ProblemConfig& cfg, double h_override, const std::string& out_dir) {
    if (cfg.vertex) fail("serrin: the configuration must have vertex = \"infinity\"");
    double c0 = 0.0;
    if (!cfg.boundary.from_cone) {
        if (!cfg.boundary.is_constant())
            fail("serrin: constant boundary data required");
        c0 = cfg.boundary.values.empty() ? 0.0 : cfg.boundary.values.front();
    }

    Timer total;
    json report;
    report["command"] = "serrin";
    report["config"] = config_echo(cfg);
    report["config_hash"] = fnv1a_hash(config_canonical_text(cfg));

    double h = h_override > 0.0 ? h_override : cfg.mesh_h;
    Mesh mesh = generate_mesh(cfg.L, h);

    SerrinResult res;
    try {
        res = serrin_limit_solve(cfg.L, c0, cfg.H, cfg.serrin_terms, mesh);
    } catch (const std::invalid_argument& e) {
        report["message"] = e.what();
        emit_report(report, out_dir);
        return 1;
    }
    json seq = json::array();
    for (size_t i = 0; i < res.H_k.size(); ++i) {
        json item = {{"k", static_cast<int>(i) + 1},
                     {"H_k", res.H_k[i]},
                     {"max_height",
                      i < res.max_heights.size() ? res.max_heights[i] : 0.0}};
        if (i >= 1 && i - 1 < res.diffs.size()) item["diff_to_previous"] = res.diffs[i - 1];
        seq.push_back(std::move(item));
    }
    report["sequence"] = std::move(seq);
    report["diffs_monotone"] = res.diffs_monotone;
    report["ok"] = res.ok;
    report["message"] = res.message;
    if (!res.ok) {
        emit_report(report, out_dir);
        return 2;
    }

    auto suite = run_invariant_suite(mesh, res.final_field, cfg, nullptr);
    report["invariants"] = suite_to_json(suite);
    report["solution"] = {{"min", res.final_field.min()}, {"max", res.final_field.max()}};
    report["timings_ms"] = {{"total", total.ms()}};
    if (!out_dir.empty()) {
        std::filesystem::create_directories(out_dir);
        write_file(out_dir + "/solution.obj",
                   export_solution(mesh, res.final_field, ExportFormat::Obj));
        write_file(out_dir + "/solution.json", solution_bundle(mesh, res.final_field));
    }
    emit_report(report, out_dir);
    return suite.all_ok() ? 0 : 1;
}

int run_perron(const ProblemConfig& cfg_in, double h_override, const std::string& out_dir,
               const std::vector<int>& ks) {
    Timer total;
    ProblemConfig cfg = center_at_origin(cfg_in);

    json report;
    report["command"] = "perron";
    report["config"] = config_echo(cfg_in);
    report["config_hash"] = fnv1a_hash(config_canonical_text(cfg_in));

    double h = h_override > 0.0 ? h_override : cfg.mesh_h;
    Mesh mesh = generate_mesh(cfg.L, h);

    bool all_ok = true;
    bool solver_failed = false;
    double prev_gap = std::numeric_limits<double>::max();
    bool gaps_decreasing = true;
    json sweep = json::array();
    for (int k : ks) {
        auto scaled = scale_problem(cfg, mesh, k);
        auto sub = build_subsolution(cfg, scaled, mesh);

        ScalarField bc = ScalarField::constant(mesh.num_vertices(), 0.0);
        for (size_t b = 0; b < mesh.boundary.size(); ++b)
            bc[mesh.boundary[b].index] = scaled.phi_k[b];
        auto state = continuation_in_h(mesh, bc, scaled.H_k);
        json item;
        item["k"] = k;
        item["lambda"] = scaled.lambda;
        item["H_k"] = scaled.H_k;
        item["cone_margin"] = scaled.cone_check.margin;
        item["supersolution_margin"] = scaled.supersolution_margin;
        item["phi_gap"] = scaled.phi_gap;
        item["subsolution_z0"] = sub.z0;
        if (!state.reached_target) {
            item["ok"] = false;
            item["message"] = "solve failed: " + state.message;
            solver_failed = true;
            sweep.push_back(std::move(item));
            break;
        }
        auto rep = perron_sandwich_check(mesh, scaled, sub, state.v);
        item["sandwich"] = {{"chi_below_v", rep.chi_below_v},
                            {"v_below_psi", rep.v_below_psi},
                            {"max_psi_residual", rep.max_psi_residual},
                            {"min_chi_residual", rep.min_chi_residual},
                            {"residual_signs_ok", rep.residual_signs_ok}};
        item["ok"] = rep.ok;
        item["message"] = rep.message;
        if (scaled.phi_gap >= prev_gap) gaps_decreasing = false;
        prev_gap = scaled.phi_gap;
        all_ok = all_ok && rep.ok;
        sweep.push_back(std::move(item));
    }
    report["sweep"] = std::move(sweep);
    report["phi_gaps_decreasing"] = gaps_decreasing;
    report["timings_ms"] = {{"total", total.ms()}};
    report["message"] = solver_failed ? "solver nonconvergence"
                                      : (all_ok && gaps_decreasing ? "ok" : "checks failed");
    emit_report(report, out_dir);
    if (solver_failed) return 2;
    return all_ok && gaps_decreasing ? 0 : 1;
}

std::string profile_csv(const RadialProfile& p) {
    std::string out = "r,u,du,q\n";
    for (size_t i = 0; i < p.r.size(); ++i)
        out += fmt17(p.r[i]) + "," + fmt17(p.u[i]) + "," + fmt17(p.du[i]) + "," +
               fmt17(p.q(p.r[i])) + "\n";
    return out;
}

int run_oracle(const std::string& kind, int n, double H, double r_out, double r_in,
               double u_in, double u_out, const std::string& out_path) {
    std::string table;
    if (kind == "disk") {
        table = profile_csv(radial_shoot_disk(n, H, r_out, u_out));
    } else if (kind == "annulus") {
        table = profile_csv(radial_shoot_annulus(n, H, r_in, r_out, u_in, u_out));
    } else if (kind == "cap") {
        double R = n / H;
        table = "r,u,du,q\n";
        const int m = 1025;
        for (int i = 0; i < m; ++i) {
            double r = r_out * i / (m - 1);
            double u = cap_height(H, r_out, r, n);
            double du = spherical_cap(R, r, n).radial_slope;
            table += fmt17(r) + "," + fmt17(u) + "," + fmt17(du) + "," +
                     fmt17(-H * r / n) + "\n";
        }
    } else {
        fail("oracle: unknown kind \"" + kind + "\" (disk | annulus | cap)");
    }
    if (out_path.empty())
        std::cout << table;
    else
        write_file(out_path, table);
    return 0;
}

int run_export(const std::string& bundle_path, const std::string& format,
               const std::string& out_path) {
    Mesh mesh;
    ScalarField field;
    load_solution_bundle(read_file(bundle_path), mesh, field);
    ExportFormat fmt;
    if (format == "obj")
        fmt = ExportFormat::Obj;
    else if (format == "vtk")
        fmt = ExportFormat::Vtk;
    else if (format == "csv")
        fmt = ExportFormat::Csv;
    else
        fail("export: unknown format \"" + format + "\" (obj | vtk | csv)");
    std::string bytes = export_solution(mesh, field, fmt);
    if (out_path.empty())
        std::cout << bytes;
    else
        write_file(out_path, bytes);
    return 0;
}

}  // namespace

ProblemConfig parse_config_text(const std::string& text) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("config is not valid JSON: ") + e.what());
    }
    if (!j.is_object()) fail("config root must be a JSON object");

    if (!j.contains("L")) fail("config.L: missing boundary curve");
    PlanarCurve L = parse_curve(j["L"], "config.L");
    PlanarCurve gamma = j.contains("gamma") ? parse_curve(j["gamma"], "config.gamma") : L;

    std::optional<Vec3> vertex;
    if (j.contains("vertex")) {
        const auto& v = j["vertex"];
        if (v.is_string() && v.get<std::string>() == "infinity") {
            vertex = std::nullopt;
        } else if (v.is_array() && v.size() == 3 && v[0].is_number() && v[1].is_number() &&
                   v[2].is_number()) {
            vertex = Vec3{v[0].get<double>(), v[1].get<double>(), v[2].get<double>()};
        } else {
            fail("config.vertex: expected [x, y, z] or \"infinity\"");
        }
    }

    ProblemConfig cfg{std::move(gamma), vertex, std::move(L), 1.0, {}, 0.05, {}, 6};

    if (j.contains("H")) {
        if (!j["H"].is_number()) fail("config.H: not a number");
        cfg.H = j["H"].get<double>();
    }
    if (cfg.H <= 0.0) fail("config.H: must be positive");

    if (j.contains("boundary_data")) {
        const auto& b = j["boundary_data"];
        if (b.is_string() && b.get<std::string>() == "from-cone") {
            cfg.boundary.from_cone = true;
        } else if (b.is_array() && !b.empty()) {
            cfg.boundary.from_cone = false;
            for (size_t i = 0; i < b.size(); ++i) {
                if (!b[i].is_number())
                    fail("config.boundary_data[" + std::to_string(i) + "]: not a number");
                cfg.boundary.values.push_back(b[i].get<double>());
            }
        } else {
            fail("config.boundary_data: expected \"from-cone\" or a nonempty value array");
        }
    }

    if (j.contains("mesh_h")) {
        if (!j["mesh_h"].is_number() || j["mesh_h"].get<double>() <= 0.0)
            fail("config.mesh_h: must be a positive number");
        cfg.mesh_h = j["mesh_h"].get<double>();
    }
    if (j.contains("serrin_terms")) {
        if (!j["serrin_terms"].is_number_integer() || j["serrin_terms"].get<int>() < 1)
            fail("config.serrin_terms: must be a positive integer");
        cfg.serrin_terms = j["serrin_terms"].get<int>();
    }
    if (j.contains("tolerances")) {
        const auto& t = j["tolerances"];
        if (!t.is_object()) fail("config.tolerances: must be an object");
        if (t.contains("newton")) cfg.tol.newton = t["newton"].get<double>();
        if (t.contains("boundary_fit")) cfg.tol.boundary_fit = t["boundary_fit"].get<double>();
        if (t.contains("barrier_samples"))
            cfg.tol.barrier_samples = t["barrier_samples"].get<int>();
        if (t.contains("cone_samples")) cfg.tol.cone_samples = t["cone_samples"].get<int>();
    }
    return cfg;
}

ProblemConfig load_config(const std::string& path) {
    return parse_config_text(read_file(path));
}

std::string config_canonical_text(const ProblemConfig& config) {
    return config_echo(config).dump();
}

std::uint64_t fnv1a_hash(const std::string& text) {
    std::uint64_t h = 14695981039346656037ull;
    for (unsigned char c : text) {
        h ^= c;
        h *= 1099511628211ull;
    }
    return h;
}

std::string export_solution(const Mesh& mesh, const ScalarField& field, ExportFormat format) {
    if (field.size() != mesh.num_vertices())
        throw std::invalid_argument("field size does not match the mesh");
    std::string out;
    switch (format) {
        case ExportFormat::Obj:
            for (int i = 0; i < mesh.num_vertices(); ++i)
                out += "v " + fmt17(mesh.vertices[i].x) + " " + fmt17(mesh.vertices[i].y) +
                       " " + fmt17(field[i]) + "\n";
            for (const auto& t : mesh.triangles)
                out += "f " + std::to_string(t[0] + 1) + " " + std::to_string(t[1] + 1) +
                       " " + std::to_string(t[2] + 1) + "\n";
            break;
        case ExportFormat::Vtk:
            out += "# vtk DataFile Version 3.0\nheight field\nASCII\n";
            out += "DATASET UNSTRUCTURED_GRID\n";
            out += "POINTS " + std::to_string(mesh.num_vertices()) + " double\n";
            for (int i = 0; i < mesh.num_vertices(); ++i)
                out += fmt17(mesh.vertices[i].x) + " " + fmt17(mesh.vertices[i].y) + " " +
                       fmt17(field[i]) + "\n";
            out += "CELLS " + std::to_string(mesh.num_triangles()) + " " +
                   std::to_string(4 * mesh.num_triangles()) + "\n";
            for (const auto& t : mesh.triangles)
                out += "3 " + std::to_string(t[0]) + " " + std::to_string(t[1]) + " " +
                       std::to_string(t[2]) + "\n";
            out += "CELL_TYPES " + std::to_string(mesh.num_triangles()) + "\n";
            for (int t = 0; t < mesh.num_triangles(); ++t) out += "5\n";
            out += "POINT_DATA " + std::to_string(mesh.num_vertices()) + "\n";
            out += "SCALARS height double 1\nLOOKUP_TABLE default\n";
            for (int i = 0; i < mesh.num_vertices(); ++i) out += fmt17(field[i]) + "\n";
            break;
        case ExportFormat::Csv:
            out += "x,y,value\n";
            for (int i = 0; i < mesh.num_vertices(); ++i)
                out += fmt17(mesh.vertices[i].x) + "," + fmt17(mesh.vertices[i].y) + "," +
                       fmt17(field[i]) + "\n";
            break;
    }
    return out;
}

std::string solution_bundle(const Mesh& mesh, const ScalarField& field) {
    if (field.size() != mesh.num_vertices())
        throw std::invalid_argument("field size does not match the mesh");
    json j;
    json verts = json::array();
    for (const auto& v : mesh.vertices) verts.push_back({v.x, v.y});
    j["vertices"] = std::move(verts);
    json tris = json::array();
    for (const auto& t : mesh.triangles) tris.push_back({t[0], t[1], t[2]});
    j["triangles"] = std::move(tris);
    json bnd = json::array();
    for (const auto& b : mesh.boundary) bnd.push_back({{"index", b.index},
                                                       {"param", b.param},
                                                       {"loop", b.loop}});
    j["boundary"] = std::move(bnd);
    j["target_h"] = mesh.target_h;
    j["values"] = field.values;
    return j.dump(2) + "\n";
}

void load_solution_bundle(const std::string& text, Mesh& mesh, ScalarField& field) {
    json j;
    try {
        j = json::parse(text);
    } catch (const std::exception& e) {
        fail(std::string("solution bundle is not valid JSON: ") + e.what());
    }
    if (!j.contains("vertices") || !j.contains("triangles") || !j.contains("values"))
        fail("solution bundle: missing vertices/triangles/values");
    mesh = Mesh{};
    for (const auto& v : j["vertices"])
        mesh.vertices.push_back(parse_vec2(v, "bundle.vertices[]"));
    for (const auto& t : j["triangles"]) {
        if (!t.is_array() || t.size() != 3) fail("bundle.triangles[]: expected index triples");
        mesh.triangles.push_back({t[0].get<int>(), t[1].get<int>(), t[2].get<int>()});
    }
    if (j.contains("boundary"))
        for (const auto& b : j["boundary"])
            mesh.boundary.push_back(
                {b["index"].get<int>(), b["param"].get<double>(), b["loop"].get<int>()});
    if (j.contains("target_h")) mesh.target_h = j["target_h"].get<double>();
    mesh.build_index();
    field = ScalarField(j["values"].get<std::vector<double>>());
    if (field.size() != mesh.num_vertices())
        fail("solution bundle: values do not match the vertex count");
}

void write_file(const std::string& path, const std::string& bytes) {
    std::ofstream f(path, std::ios::binary);
    if (!f) fail("cannot open for writing: " + path);
    f.write(bytes.data(), static_cast<std::streamsize>(bytes.size()));
    if (!f) fail("write failed: " + path);
}

std::string read_file(const std::string& path) {
    std::ifstream f(path, std::ios::binary);
    if (!f) fail("cannot open: " + path);
    std::ostringstream os;
    os << f.rdbuf();
    return os.str();
}

int dispatch(std::vector<std::string> args) {
    std::vector<std::string> full;
    full.reserve(args.size() + 1);
    full.push_back("hgraph");
    for (auto& a : args) full.push_back(std::move(a));
    std::vector<const char*> argv;
    argv.reserve(full.size());
    for (const auto& s : full) argv.push_back(s.c_str());
    return dispatch(static_cast<int>(argv.size()), argv.data());
}

int dispatch(int argc, const char* const* argv) {
    CLI::App app{"CMC graph solver: Dirichlet problem under cone hypotheses"};
    app.require_subcommand(1);
    // --h is a domain flag (mesh size), so the help flag keeps only its long name
    app.set_help_flag("--help", "print help");

    std::string config_path, out_dir, bundle_path, format = "obj", oracle_kind = "disk";
    double h_override = 0.0;
    bool force = false;
    int seed = 12345;
    int oracle_n = 2;
    double oracle_H = 1.0, oracle_rout = 1.0, oracle_rin = 0.5, oracle_uin = 0.0,
           oracle_uout = 0.0;
    std::vector<int> perron_k = {1, 2, 4, 8};

    auto add_common = [&](CLI::App* sub, bool needs_config) {
        sub->set_help_flag("--help", "print help");
        if (needs_config)
            sub->add_option("config", config_path, "JSON configuration path")->required();
        sub->add_option("--out", out_dir, "output directory / file");
        sub->add_option("--seed", seed, "seed for randomized property checks");
    };

    auto* c_check = app.add_subcommand("check", "hypothesis report only");
    add_common(c_check, true);

    auto* c_solve = app.add_subcommand("solve", "full pipeline to the solved graph");
    add_common(c_solve, true);
    c_solve->add_option("--h", h_override, "mesh size override");
    c_solve->add_flag("--force", force, "skip the hypothesis gate");

    auto* c_serrin = app.add_subcommand("serrin", "vertex-at-infinity limit pipeline");
    add_common(c_serrin, true);
    c_serrin->add_option("--h", h_override, "mesh size override");

    auto* c_perron = app.add_subcommand("perron", "scaled-cone sweep");
    add_common(c_perron, true);
    c_perron->add_option("--h", h_override, "mesh size override");
    c_perron->add_option("--k", perron_k, "scaling indices");

    auto* c_oracle = app.add_subcommand("oracle", "radial / cap solution tables");
    add_common(c_oracle, false);
    c_oracle->add_option("--kind", oracle_kind, "disk | annulus | cap");
    c_oracle->add_option("--n", oracle_n, "dimension");
    c_oracle->add_option("--H", oracle_H, "mean curvature");
    c_oracle->add_option("--r-out", oracle_rout, "outer radius");
    c_oracle->add_option("--r-in", oracle_rin, "inner radius (annulus)");
    c_oracle->add_option("--u-in", oracle_uin, "inner boundary value (annulus)");
    c_oracle->add_option("--u-out", oracle_uout, "outer boundary value");

    auto* c_export = app.add_subcommand("export", "convert a stored solution bundle");
    c_export->set_help_flag("--help", "print help");
    c_export->add_option("bundle", bundle_path, "solution.json path")->required();
    c_export->add_option("--format", format, "obj | vtk | csv");
    c_export->add_option("--out", out_dir, "output file (stdout when absent)");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int code = app.exit(e);
        return code == 0 ? 0 : 3;
    }

    try {
        if (app.got_subcommand(c_check)) return run_check(load_config(config_path), out_dir);
        if (app.got_subcommand(c_solve))
            return run_solve(load_config(config_path), h_override, out_dir, force);
        if (app.got_subcommand(c_serrin))
            return run_serrin(load_config(config_path), h_override, out_dir);
        if (app.got_subcommand(c_perron))
            return run_perron(load_config(config_path), h_override, out_dir, perron_k);
        if (app.got_subcommand(c_oracle))
            return run_oracle(oracle_kind, oracle_n, oracle_H, oracle_rout, oracle_rin,
                              oracle_uin, oracle_uout, out_dir);
        if (app.got_subcommand(c_export)) return run_export(bundle_path, format, out_dir);
    } catch (const std::runtime_error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::invalid_argument& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 3;
}

}  // namespace hgraph
