#include "hgraph/perron.hpp"

#include <cmath>
#include <limits>
#include <sstream>
#include <stdexcept>

#include "hgraph/fem.hpp"

namespace hgraph {

namespace {

/// Mean curvature, in the graph convention (downward-pointing normal), of the
/// ruled surface tau*A + (1-tau)*P(theta) where P traces the boundary curve
/// lifted to the height profile phi.
double ruled_graph_mean_curvature(const Vec3& A, const Vec3& P, const Vec3& Pd,
                                  const Vec3& Pdd, double tau) {
    Vec3 St = (1.0 - tau) * Pd;
    Vec3 Su = A - P;
    Vec3 Stt = (1.0 - tau) * Pdd;
    Vec3 Stu = -1.0 * Pd;

    Vec3 N = St.cross(Su);
    double nn = N.norm();
    if (nn == 0.0) throw std::runtime_error("degenerate ruling in subsolution cone");
    N = N * (1.0 / nn);
    if (N.z > 0.0) N = -1.0 * N;

    double E = St.dot(St), F = St.dot(Su), G = Su.dot(Su);
    double e = N.dot(Stt), f = N.dot(Stu);
    double denom = E * G - F * F;
    if (denom <= 0.0) throw std::runtime_error("degenerate metric in subsolution cone");
    return (e * G - 2.0 * f * F) / denom;
}

}  // namespace

ProblemConfig center_at_origin(const ProblemConfig& config) {
    ProblemConfig out = config;
    Vec2 c0 = config.gamma.centroid();
    out.gamma = config.gamma.translated({-c0.x, -c0.y});
    out.L = config.L.translated({-c0.x, -c0.y});
    if (config.vertex)
        out.vertex = Vec3{config.vertex->x - c0.x, config.vertex->y - c0.y, config.vertex->z};
    return out;
}

ScaledProblem scale_problem(const ProblemConfig& config, const Mesh& mesh, int k) {
    if (k < 1) throw std::invalid_argument("scaling index k must be >= 1");
    if (!config.vertex)
        throw std::invalid_argument("Perron scaling requires a finite cone vertex");
    if (!config.gamma.contains({0.0, 0.0}) ||
        config.gamma.centroid().norm() > 1e-8 * std::sqrt(config.gamma.enclosed_area()))
        throw std::invalid_argument("configuration must be centered at the origin");

    ScaledProblem sp;
    sp.k = k;
    sp.lambda = 1.0 + 1.0 / k;
    sp.H_k = sp.lambda * config.H;

    Vec3 v = *config.vertex;
    sp.cone_k = make_cone(config.gamma.scaled(sp.lambda), sp.lambda * v);
    sp.cone_check = is_H_cone(sp.cone_k, sp.H_k, config.tol.cone_samples);

    const double near_vertex = 1e-9 * std::sqrt(config.gamma.enclosed_area());
    Vec2 vp = sp.cone_k.vertex_projection();

    sp.psi_k.values.resize(static_cast<size_t>(mesh.num_vertices()));
    double margin = std::numeric_limits<double>::max();
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        Vec2 x = mesh.vertices[i];
        sp.psi_k[i] = cone_height(sp.cone_k, x);
        if ((x - vp).norm() > near_vertex)
            margin = std::min(margin, cone_mean_curvature(sp.cone_k, x) - sp.H_k);
    }
    sp.supersolution_margin = margin;

    sp.phi_k.resize(mesh.boundary.size());
    for (size_t b = 0; b < mesh.boundary.size(); ++b) {
        double theta = mesh.boundary[b].param;
        sp.phi_k[b] = cone_height(sp.cone_k, config.L.position(theta));
        sp.psi_k[mesh.boundary[b].index] = sp.phi_k[b];
    }

    double gap = 0.0;
    const int n = 256;
    for (int i = 0; i < n; ++i) {
        double theta = kTwoPi * i / n;
        double pk = cone_height(sp.cone_k, config.L.position(theta));
        gap = std::max(gap, std::fabs(pk - config.boundary_value(theta)));
    }
    sp.phi_gap = gap;
    return sp;
}

SubsolutionCone build_subsolution(const ProblemConfig& config, const ScaledProblem& scaled,
                                  const Mesh& mesh) {
    if (!config.vertex)
        throw std::invalid_argument("subsolution cone requires a finite vertex");
    const Vec3 v = *config.vertex;
    const Vec2 apex_xy = v.xy();
    if (!config.L.contains(apex_xy))
        throw std::invalid_argument("vertex projection must lie inside L");

    auto phi_k = [&](double theta) {
        return cone_height(scaled.cone_k, config.L.position(theta));
    };
    auto lift = [&](double theta) {
        Vec2 p = config.L.position(theta);
        return Vec3{p.x, p.y, phi_k(theta)};
    };

    const double dt = 1e-4;
    auto sampled_max_curvature = [&](double z0) {
        double apex_z = v.z - z0;
        Vec3 A{apex_xy.x, apex_xy.y, apex_z};
        const int nt = 64, nu = 32;
        double worst = -std::numeric_limits<double>::max();
        for (int i = 0; i < nt; ++i) {
            double theta = kTwoPi * i / nt;
            Vec2 p = config.L.position(theta);
            Vec2 pd = config.L.derivative(theta);
            Vec2 pdd = config.L.second_derivative(theta);
            double f0 = phi_k(theta);
            double fp = phi_k(theta + dt), fm = phi_k(theta - dt);
            double fd = (fp - fm) / (2.0 * dt);
            double fdd = (fp - 2.0 * f0 + fm) / (dt * dt);
            Vec3 P{p.x, p.y, f0};
            Vec3 Pd{pd.x, pd.y, fd};
            Vec3 Pdd{pdd.x, pdd.y, fdd};
            for (int j = 0; j < nu; ++j) {
                double tau = scaled.cone_k.ruling_cutoff * j / (nu - 1);
                worst = std::max(worst, ruled_graph_mean_curvature(A, P, Pd, Pdd, tau));
            }
        }
        return worst;
    };

    SubsolutionCone sub;
    double z0 = std::max(v.z, 1.0);
    bool found = false;
    for (int d = 0; d <= 20; ++d) {
        sub.curvature_bound = sampled_max_curvature(z0);
        if (sub.curvature_bound < -scaled.H_k) {
            found = true;
            break;
        }
        z0 *= 2.0;
    }
    if (!found) {
        std::ostringstream os;
        os << "no subsolution cone steep enough below -H_k = " << -scaled.H_k
           << "; last sampled max " << sub.curvature_bound;
        throw std::runtime_error(os.str());
    }
    sub.z0 = z0;

    const double apex_z = v.z - z0;
    const double near_apex = 1e-12 * std::sqrt(config.L.enclosed_area());
    sub.chi_k.values.resize(static_cast<size_t>(mesh.num_vertices()));
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        Vec2 x = mesh.vertices[i];
        double d = (x - apex_xy).norm();
        if (d < near_apex) {
            sub.chi_k[i] = apex_z;
            continue;
        }
        double theta = ray_hit_parameter(config.L, apex_xy, (x - apex_xy) / d);
        double rho = (config.L.position(theta) - apex_xy).norm();
        double tau = 1.0 - d / rho;
        sub.chi_k[i] = tau * apex_z + (1.0 - tau) * phi_k(theta);
    }
    for (const auto& bv : mesh.boundary) sub.chi_k[bv.index] = phi_k(bv.param);

    sub.below_psi = true;
    for (int i = 0; i < mesh.num_vertices(); ++i)
        if (sub.chi_k[i] > scaled.psi_k[i] + 1e-9) sub.below_psi = false;
    return sub;
}

PerronReport perron_sandwich_check(const Mesh& mesh, const ScaledProblem& scaled,
                                   const SubsolutionCone& sub, const ScalarField& v_k,
                                   double tol) {
    PerronReport rep;
    rep.phi_gap = scaled.phi_gap;

    rep.chi_below_v = true;
    rep.v_below_psi = true;
    for (int i = 0; i < mesh.num_vertices(); ++i) {
        if (sub.chi_k[i] > v_k[i] + tol) rep.chi_below_v = false;
        if (v_k[i] > scaled.psi_k[i] + tol) rep.v_below_psi = false;
    }

    ScalarField Hk = ScalarField::constant(mesh.num_vertices(), scaled.H_k);
    Eigen::VectorXd r_psi = assemble_residual(mesh, scaled.psi_k, Hk);
    Eigen::VectorXd r_chi = assemble_residual(mesh, sub.chi_k, Hk);
    rep.max_psi_residual = r_psi.size() ? r_psi.maxCoeff() : 0.0;
    rep.min_chi_residual = r_chi.size() ? r_chi.minCoeff() : 0.0;
    rep.residual_signs_ok = rep.max_psi_residual <= tol && rep.min_chi_residual >= -tol;

    rep.ok = rep.chi_below_v && rep.v_below_psi && rep.residual_signs_ok;
    std::ostringstream os;
    if (rep.ok) {
        os << "sandwich holds; psi residual max " << rep.max_psi_residual
           << ", chi residual min " << rep.min_chi_residual;
    } else {
        os << "sandwich failed:";
        if (!rep.chi_below_v) os << " chi above v;";
        if (!rep.v_below_psi) os << " v above psi;";
        if (!rep.residual_signs_ok)
            os << " residual signs (psi max " << rep.max_psi_residual << ", chi min "
               << rep.min_chi_residual << ");";
    }
    rep.message = os.str();
    return rep;
}

}  // namespace hgraph
