#include "hgraph/barrier.hpp"

#include <cmath>
#include <limits>
#include <sstream>

#include "hgraph/fem.hpp"

namespace hgraph {

bool BarrierParams::tail_condition() const {
    return delta * std::log(1.0 + eps1 * beta) + vertex_height <= 0.0;
}

bool BarrierParams::slope_condition(double B_max, double phi_c2) const {
    return B_max / delta + phi_c2 < 0.0;
}

XiEval xi(double s, const BarrierParams& params) {
    XiEval e;
    e.value = params.delta * std::log(1.0 + params.beta * s);
    e.ds = params.delta * params.beta / (1.0 + params.beta * s);
    e.dss = -e.ds * e.ds / params.delta;
    return e;
}

BarrierVerification verify_lower_barrier(const CollarChart& chart, const BarrierParams& params,
                                         const std::function<double(Vec2)>& H_t,
                                         int n_theta, int n_s) {
    BarrierVerification out;
    out.tail_ok = params.tail_condition();

    auto w = [&](Vec2 x) {
        auto p = chart.query(x);
        return xi(p.s, params).value + p.phi;
    };

    const double scale = std::sqrt(chart.curve().enclosed_area());
    const double h = 1e-5 * scale;

    double min_val = std::numeric_limits<double>::max();
    int worst_j = 0;
    for (int i = 0; i < n_theta; ++i) {
        double theta = kTwoPi * i / n_theta;
        Vec2 base = chart.curve().position(theta);
        Vec2 nrm = chart.curve().inward_normal(theta);
        for (int j = 0; j < n_s; ++j) {
            double s = params.eps1 * j / (n_s - 1);
            Vec2 x = base + s * nrm;

            double w0 = w(x);
            double wx = (w({x.x + h, x.y}) - w({x.x - h, x.y})) / (2.0 * h);
            double wy = (w({x.x, x.y + h}) - w({x.x, x.y - h})) / (2.0 * h);
            double wxx = (w({x.x + h, x.y}) - 2.0 * w0 + w({x.x - h, x.y})) / (h * h);
            double wyy = (w({x.x, x.y + h}) - 2.0 * w0 + w({x.x, x.y - h})) / (h * h);
            double wxy = (w({x.x + h, x.y + h}) - w({x.x + h, x.y - h}) -
                          w({x.x - h, x.y + h}) + w({x.x - h, x.y - h})) /
                         (4.0 * h * h);

            double A = 1.0 + wx * wx + wy * wy;
            double val = (1.0 + wy * wy) * wxx - 2.0 * wx * wy * wxy +
                         (1.0 + wx * wx) * wyy + std::pow(A, 1.5) * H_t(x);
            if (val < min_val) {
                min_val = val;
                out.worst_point = x;
                worst_j = j;
            }
        }
    }
    out.min_operator = min_val;
    out.min_on_sample_boundary = (worst_j == n_s - 1);
    out.pass = out.tail_ok && min_val >= 0.0;
    return out;
}

BarrierSelection choose_barrier_params(const CollarChart& chart, double vertex_height,
                                       double H_t_min, int max_doublings) {
    BarrierSelection sel;

    double sign_cond = chart.curve().min_curvature() + H_t_min;
    if (sign_cond < 0.0) {
        std::ostringstream os;
        os << "precondition violation: H_L + H_t = " << sign_cond << " < 0 on L";
        sel.message = os.str();
        return sel;
    }

    BarrierParams p;
    p.vertex_height = vertex_height;
    p.eps1 = chart.epsilon();
    p.delta = chart.phi_c2() > 0.0 ? -chart.B_max() / (2.0 * chart.phi_c2()) : -1.0;

    sel.beta_floor = (std::exp(-vertex_height / p.delta) - 1.0) / p.eps1;
    p.beta = std::max(sel.beta_floor, 1.0);

    auto H_t = [H_t_min](Vec2) { return H_t_min; };
    for (int d = 0; d <= max_doublings; ++d) {
        sel.verification = verify_lower_barrier(chart, p, H_t);
        if (sel.verification.pass) {
            sel.params = p;
            sel.ok = true;
            sel.message = "ok";
            return sel;
        }
        p.beta *= 2.0;
    }
    sel.params = p;
    std::ostringstream os;
    os << "barrier verification failed after " << max_doublings
       << " doublings; worst sample (" << sel.verification.worst_point.x << ", "
       << sel.verification.worst_point.y << ") value " << sel.verification.min_operator;
    sel.message = os.str();
    return sel;
}

GradientBoundReport boundary_gradient_bound(const Mesh& mesh, const ScalarField& v,
                                            const ScalarField& psi, const CollarChart& chart,
                                            const BarrierParams& params, double phi_shift) {
    GradientBoundReport rep;
    const double slack = 1e-9;

    double max_grad_psi = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t)
        max_grad_psi = std::max(max_grad_psi, element_gradient(mesh, psi, t).norm());
    rep.M = std::max(std::fabs(params.delta) * params.beta + chart.max_grad_phi(),
                     max_grad_psi);

    rep.w_below_v = true;
    rep.v_below_psi = true;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (v[i] > psi[i] + slack) rep.v_below_psi = false;
        double s = chart.distance(mesh.vertices[i]);
        if (s >= -slack && s <= params.eps1) {
            auto p = chart.query(mesh.vertices[i]);
            double w = xi(std::max(0.0, p.s), params).value + p.phi + phi_shift;
            if (w > v[i] + slack) rep.w_below_v = false;
        }
    }

    double layer_max = 0.0, interior_max = 0.0;
    for (int t = 0; t < mesh.num_triangles(); ++t) {
        const auto& tri = mesh.triangles[t];
        bool layer = mesh.is_boundary[tri[0]] || mesh.is_boundary[tri[1]] ||
                     mesh.is_boundary[tri[2]];
        double g = element_gradient(mesh, v, t).norm();
        (layer ? layer_max : interior_max) = std::max(layer ? layer_max : interior_max, g);
    }
    rep.max_grad_v = std::max(layer_max, interior_max);
    rep.max_on_boundary_layer = interior_max <= layer_max * (1.0 + 10.0 * mesh.max_edge);

    rep.message = (rep.w_below_v && rep.v_below_psi && rep.max_on_boundary_layer)
                      ? "ok"
                      : "sandwich or gradient-location check failed";
    return rep;
}

}  // namespace hgraph
