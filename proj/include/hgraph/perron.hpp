#pragma once

#include <string>
#include <vector>

#include "hgraph/config.hpp"
#include "hgraph/field.hpp"
#include "hgraph/mesh.hpp"

namespace hgraph {

/// Translates the configuration so the centroid of the domain enclosed by
/// gamma sits at the origin (the scaling center).
ProblemConfig center_at_origin(const ProblemConfig& config);

/// Scaled instance K_k = (1+1/k) K_V(gamma), H_k = (1+1/k) H, with the cone
/// graph psi_k over the meshed domain and its boundary trace phi_k.
struct ScaledProblem {
    int k = 1;
    double lambda = 2.0;  // 1 + 1/k
    ConeSpec cone_k;
    double H_k = 0.0;
    ScalarField psi_k;
    std::vector<double> phi_k;  // boundary trace at the mesh boundary params
    double phi_gap = 0.0;       // sup over L of |phi_k - phi|
    HConeResult cone_check;     // is_H_cone of the full scaled cone against H_k
    double supersolution_margin = 0.0;  // min over nodes of H_{psi_k} - H_k
};

ScaledProblem scale_problem(const ProblemConfig& config, const Mesh& mesh, int k);

struct SubsolutionCone {
    double z0 = 0.0;  // vertex drop below V
    ScalarField chi_k;
    double curvature_bound = 0.0;  // max sampled graph mean curvature, must be < -H_k
    bool below_psi = true;
};

/// Downward cone through the boundary trace of S_k with apex V - z0*e, z0
/// found by doubling until the sampled mean curvature clears -H_k.
SubsolutionCone build_subsolution(const ProblemConfig& config, const ScaledProblem& scaled,
                                  const Mesh& mesh);

struct PerronReport {
    bool chi_below_v = false;
    bool v_below_psi = false;
    double max_psi_residual = 0.0;  // supersolution direction: must be <= tol
    double min_chi_residual = 0.0;  // subsolution direction: must be >= -tol
    bool residual_signs_ok = false;
    double phi_gap = 0.0;
    bool ok = false;
    std::string message;
};

/// Verifies the Perron sandwich chi_k <= v_k <= psi_k nodewise and the
/// discrete super/subsolution residual signs for Q_{H_k}.
PerronReport perron_sandwich_check(const Mesh& mesh, const ScaledProblem& scaled,
                                   const SubsolutionCone& sub, const ScalarField& v_k,
                                   double tol = 1e-8);

}  // namespace hgraph
