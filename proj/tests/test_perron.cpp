#include "doctest.h"

#include <cmath>

#include "hgraph/continuation.hpp"
#include "hgraph/perron.hpp"

using namespace hgraph;

namespace {

ProblemConfig demo_config(double h = 0.1) {
    ProblemConfig cfg;
    cfg.gamma = PlanarCurve::circle({0, 0}, 1.0);
    cfg.vertex = Vec3{0, 0, 2};
    cfg.L = PlanarCurve::circle({0, 0}, 0.6);
    cfg.H = 0.8;
    cfg.mesh_h = h;
    return cfg;
}

ScalarField solve_scaled(const Mesh& mesh, const ScaledProblem& sp) {
    ScalarField bc = ScalarField::constant(mesh.num_vertices(), 0.0);
    for (size_t b = 0; b < mesh.boundary.size(); ++b)
        bc[mesh.boundary[b].index] = sp.phi_k[b];
    auto state = continuation_in_h(mesh, bc, sp.H_k);
    REQUIRE(state.reached_target);
    return state.v;
}

}  // namespace

TEST_CASE("center_at_origin normalizes the scaling center") {
    auto cfg = demo_config();
    Vec2 shift{0.4, -0.3};
    cfg.gamma = cfg.gamma.translated(shift);
    cfg.L = cfg.L.translated(shift);
    cfg.vertex = Vec3{shift.x, shift.y, 2.0};
    auto c = center_at_origin(cfg);
    CHECK(c.gamma.centroid().norm() < 1e-10);
    CHECK(c.L.centroid().norm() < 1e-10);
    CHECK(c.vertex->xy().norm() < 1e-10);
    CHECK(c.vertex->z == doctest::Approx(2.0));
}

TEST_CASE("scale_problem formulas and margins on the demo family") {
    auto cfg = demo_config();
    auto mesh = generate_mesh(cfg.L, cfg.mesh_h);

    auto s1 = scale_problem(cfg, mesh, 1);
    CHECK(s1.lambda == doctest::Approx(2.0));
    CHECK(s1.H_k == doctest::Approx(1.6));
    CHECK(s1.cone_k.base.radius_a() == doctest::Approx(2.0).epsilon(1e-12));
    CHECK(s1.cone_k.vertex->z == doctest::Approx(4.0).epsilon(1e-12));
    // dilation by 2 scales the cone curvature by 1/2: min over the full
    // scaled cone is (1/2) * 2/sqrt(5)
    CHECK(s1.cone_check.min_curvature ==
          doctest::Approx(1.0 / std::sqrt(5.0)).epsilon(1e-6));
    // the full scaled cone is not an H_k-cone: reported, not enforced
    CHECK(!s1.cone_check.ok);
    // over the meshed domain the deficit persists at k = 1:
    // min H_psi = 2/(0.6 sqrt(5)) = 1.4907 < H_1 = 1.6
    CHECK(s1.supersolution_margin ==
          doctest::Approx(2.0 / (0.6 * std::sqrt(5.0)) - 1.6).epsilon(1e-4));
    CHECK(s1.supersolution_margin < 0.0);

    auto s2 = scale_problem(cfg, mesh, 2);
    CHECK(s2.H_k == doctest::Approx(1.2));
    CHECK(s2.supersolution_margin > 0.0);

    auto cfgH1 = cfg;
    cfgH1.H = 1.0;
    CHECK(scale_problem(cfgH1, mesh, 1).H_k == doctest::Approx(2.0));
}

TEST_CASE("boundary trace gap is <V,e>/k and decreasing") {
    auto cfg = demo_config();
    auto mesh = generate_mesh(cfg.L, cfg.mesh_h);
    double prev = 1e30;
    for (int k : {1, 2, 4, 8}) {
        auto sp = scale_problem(cfg, mesh, k);
        CHECK(sp.phi_gap == doctest::Approx(2.0 / k).epsilon(1e-9));
        CHECK(sp.phi_gap < prev);
        prev = sp.phi_gap;
        // psi_k restricted to the boundary nodes is exactly phi_k
        for (size_t b = 0; b < mesh.boundary.size(); ++b)
            CHECK(sp.psi_k[mesh.boundary[b].index] == sp.phi_k[b]);
    }
}

TEST_CASE("scaling covariance of the cone curvature") {
    auto cone = make_cone(PlanarCurve::circle({0, 0}, 1.0), {0, 0, 2});
    for (double lambda : {1.5, 2.0, 3.0}) {
        auto scaled = make_cone(cone.base.scaled(lambda), lambda * *cone.vertex);
        for (double rho : {0.3, 0.6, 0.9}) {
            Vec2 p{rho * 0.8, rho * 0.6};
            CHECK(cone_mean_curvature(scaled, lambda * p) ==
                  doctest::Approx(cone_mean_curvature(cone, p) / lambda).epsilon(1e-10));
        }
    }
}

TEST_CASE("scale_problem validates its inputs") {
    auto cfg = demo_config();
    auto mesh = generate_mesh(cfg.L, cfg.mesh_h);
    CHECK_THROWS(scale_problem(cfg, mesh, 0));
    auto off = cfg;
    off.gamma = off.gamma.translated({0.5, 0.0});
    CHECK_THROWS(scale_problem(off, mesh, 1));
    auto inf = cfg;
    inf.vertex = std::nullopt;
    CHECK_THROWS(scale_problem(inf, mesh, 1));
}

TEST_CASE("subsolution cone at k = 2") {
    auto cfg = demo_config();
    auto mesh = generate_mesh(cfg.L, cfg.mesh_h);
    auto sp = scale_problem(cfg, mesh, 2);
    auto sub = build_subsolution(cfg, sp, mesh);
    CHECK(sub.z0 > 0.0);
    CHECK(sub.curvature_bound < -sp.H_k);
    CHECK(sub.below_psi);
    for (size_t b = 0; b < mesh.boundary.size(); ++b)
        CHECK(sub.chi_k[mesh.boundary[b].index] ==
              doctest::Approx(sp.phi_k[b]).epsilon(1e-12));
    // the cone dips from the trace phi_2 = 1.8 down toward the apex V - z0*e
    CHECK(sub.chi_k.min() < 2.0 - sub.z0 + 0.01);
}

TEST_CASE("perron sandwich holds at k = 2") {
    auto cfg = demo_config();
    auto mesh = generate_mesh(cfg.L, cfg.mesh_h);
    auto sp = scale_problem(cfg, mesh, 2);
    auto sub = build_subsolution(cfg, sp, mesh);
    auto v = solve_scaled(mesh, sp);
    auto rep = perron_sandwich_check(mesh, sp, sub, v);
    CHECK(rep.chi_below_v);
    CHECK(rep.v_below_psi);
    CHECK(rep.residual_signs_ok);
    CHECK(rep.ok);
    CHECK(rep.phi_gap == doctest::Approx(1.0).epsilon(1e-9));
}

TEST_CASE("scaled solutions are Cauchy in k") {
    auto cfg = demo_config();
    auto mesh = generate_mesh(cfg.L, cfg.mesh_h);
    auto v2 = solve_scaled(mesh, scale_problem(cfg, mesh, 2));
    auto v4 = solve_scaled(mesh, scale_problem(cfg, mesh, 4));
    auto v8 = solve_scaled(mesh, scale_problem(cfg, mesh, 8));
    double d24 = sup_diff(v2, v4);
    double d48 = sup_diff(v4, v8);
    CHECK(d24 > d48);
    // trace gap difference bounds the solution gap from below at the boundary
    CHECK(d24 >= 0.5 - 1e-9);   // phi gaps 1 and 0.5
    CHECK(d48 >= 0.25 - 1e-9);  // phi gaps 0.5 and 0.25
}
