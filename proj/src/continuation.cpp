#include "hgraph/continuation.hpp"

#include <cmath>
#include <sstream>

namespace hgraph {

namespace {

ScalarField blend(const ScalarField& a, const ScalarField& b, double t) {
    ScalarField out = a;
    for (int i = 0; i < out.size(); ++i) out[i] = (1.0 - t) * a[i] + t * b[i];
    return out;
}

bool bounds_ok(const ScalarField& v, const HomotopyOptions& opts, std::string& why) {
    const double slack = 1e-9;
    if (opts.lower_bound && v.min() < *opts.lower_bound - slack) {
        std::ostringstream os;
        os << "sandwich violation: min v = " << v.min() << " < " << *opts.lower_bound;
        why = os.str();
        return false;
    }
    if (opts.upper_bound && v.max() > *opts.upper_bound + slack) {
        std::ostringstream os;
        os << "sandwich violation: max v = " << v.max() << " > " << *opts.upper_bound;
        why = os.str();
        return false;
    }
    return true;
}

}  // namespace

ContinuationState run_homotopy(const Mesh& mesh, const ScalarField& initial,
                               const ScalarField& H_a, const ScalarField& H_b,
                               const ScalarField& boundary_values,
                               const HomotopyOptions& opts) {
    ContinuationState state;
    state.v = initial;
    state.H_t = H_a;

    // polish the start point at t = 0
    auto start = newton_solve(mesh, state.v, H_a, boundary_values, opts.newton);
    if (!start.report.converged) {
        state.message = "start point did not converge: " + start.report.message;
        return state;
    }
    state.v = start.field;
    state.history.push_back({0.0, 0.0, start.report.iterations, start.report.residual_norm});
    std::string why;
    if (!bounds_ok(state.v, opts, why)) {
        state.sandwich_ok = false;
        state.message = why;
        return state;
    }

    double dt = opts.dt_initial;
    while (state.t < 1.0) {
        double t_try = std::min(1.0, state.t + dt);
        ScalarField H_try = blend(H_a, H_b, t_try);
        auto step = newton_solve(mesh, state.v, H_try, boundary_values, opts.newton);
        if (step.report.converged) {
            state.t = t_try;
            state.v = step.field;
            state.H_t = H_try;
            state.history.push_back(
                {t_try, dt, step.report.iterations, step.report.residual_norm});
            if (!bounds_ok(state.v, opts, why)) {
                state.sandwich_ok = false;
                state.message = why;
                return state;
            }
            if (step.report.iterations <= opts.fast_iterations) dt *= opts.growth;
        } else {
            dt *= 0.5;
            if (dt < opts.dt_min) {
                std::ostringstream os;
                os << "continuation step underflow at t = " << state.t << " ("
                   << step.report.message << ")";
                state.message = os.str();
                return state;
            }
        }
    }
    state.reached_target = true;
    state.message = "reached t = 1";
    return state;
}

ContinuationResult continuation_solve(const ProblemConfig& config, const Mesh& mesh,
                                      bool force) {
    if (!config.vertex)
        throw std::invalid_argument("continuation_solve needs a finite vertex");
    if (!force) {
        auto rep = check_hypotheses(config);
        if (!rep.all_ok())
            throw std::invalid_argument(
                "hypothesis check failed (use force to run the continuation anyway)");
    }

    ContinuationResult out;
    auto cone = config.cone();
    out.supersolution = smooth_supersolution(cone, config.H, mesh);

    out.boundary_values = ScalarField::constant(mesh.num_vertices(), 0.0);
    for (const auto& bv : mesh.boundary)
        out.boundary_values[bv.index] = config.boundary_value(bv.param);

    HomotopyOptions opts;
    opts.newton.tol = config.tol.newton;
    opts.lower_bound = 0.0;
    opts.upper_bound = out.supersolution.psi.max();

    ScalarField H_target = ScalarField::constant(mesh.num_vertices(), config.H);
    out.state = run_homotopy(mesh, out.supersolution.psi, out.supersolution.H_psi,
                             H_target, out.boundary_values, opts);
    return out;
}

ContinuationState continuation_in_h(const Mesh& mesh, const ScalarField& boundary_values,
                                    double H_target, const NewtonOptions& newton) {
    double mean = 0.0;
    for (const auto& bv : mesh.boundary) mean += boundary_values[bv.index];
    mean /= static_cast<double>(mesh.boundary.size());

    HomotopyOptions opts;
    opts.newton = newton;
    ScalarField zero = ScalarField::constant(mesh.num_vertices(), 0.0);
    ScalarField target = ScalarField::constant(mesh.num_vertices(), H_target);
    return run_homotopy(mesh, ScalarField::constant(mesh.num_vertices(), mean), zero,
                        target, boundary_values, opts);
}

SerrinResult serrin_limit_solve(const PlanarCurve& L, double boundary_constant, double H,
                                int sequence_length, const Mesh& mesh) {
    SerrinResult res;
    if (sequence_length < 1) throw std::invalid_argument("sequence length must be >= 1");
    if (H <= 0.0) throw std::invalid_argument("H must be positive");
    if (L.min_curvature() < H * (1.0 - 1e-9))
        throw std::invalid_argument(
            "Serrin's condition fails: the cylinder over L is not an H-cone");

    Vec2 c = L.centroid();
    const double scale = 2.0 * std::sqrt(L.enclosed_area() / kPi);

    ScalarField zero_bc = ScalarField::constant(mesh.num_vertices(), 0.0);
    for (int k = 1; k <= sequence_length; ++k) {
        double Hk = H * k / (k + 1.0);
        res.H_k.push_back(Hk);

        // raise the vertex until the cone over L is an H_k-cone
        double hv = scale;
        bool found = false;
        for (int d = 0; d < 60; ++d) {
            auto cone = make_cone(L, {c.x, c.y, hv});
            if (is_H_cone(cone, Hk, 48).ok) { found = true; break; }
            hv *= 2.0;
        }
        if (!found) {
            res.message = "no vertex height makes the cone an H_k-cone";
            return res;
        }

        auto cone = make_cone(L, {c.x, c.y, hv});
        auto super = smooth_supersolution(cone, Hk, mesh);
        HomotopyOptions opts;
        opts.lower_bound = 0.0;
        opts.upper_bound = super.psi.max();
        ScalarField target = ScalarField::constant(mesh.num_vertices(), Hk);
        auto state = run_homotopy(mesh, super.psi, super.H_psi, target, zero_bc, opts);
        if (!state.reached_target) {
            res.message = "inner solve failed at k = " + std::to_string(k) + ": " + state.message;
            return res;
        }
        res.iterates.push_back(state.v);
        res.max_heights.push_back(state.v.max_abs());
        if (res.iterates.size() >= 2) {
            double d = sup_diff(res.iterates[res.iterates.size() - 2], res.iterates.back());
            if (!res.diffs.empty() && d > res.diffs.back()) res.diffs_monotone = false;
            res.diffs.push_back(d);
        }
    }

    // Serrin solution: continue the last iterate to the target curvature
    ScalarField from = ScalarField::constant(mesh.num_vertices(), res.H_k.back());
    ScalarField to = ScalarField::constant(mesh.num_vertices(), H);
    auto final_state = run_homotopy(mesh, res.iterates.back(), from, to, zero_bc, {});
    if (!final_state.reached_target) {
        res.message = "final continuation to the target H failed: " + final_state.message;
        return res;
    }
    res.final_field = final_state.v;

    if (boundary_constant != 0.0) {
        // the operator depends only on the gradient: shift everything
        for (auto& u : res.iterates)
            for (auto& x : u.values) x += boundary_constant;
        for (auto& x : res.final_field.values) x += boundary_constant;
    }
    res.ok = true;
    res.message = res.diffs_monotone ? "ok" : "ok (non-monotone consecutive differences)";
    return res;
}

}  // namespace hgraph
