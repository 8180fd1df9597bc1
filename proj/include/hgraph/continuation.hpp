#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hgraph/config.hpp"
#include "hgraph/fem.hpp"
#include "hgraph/supersolution.hpp"

namespace hgraph {

struct ContinuationStep {
    double t = 0.0;
    double dt = 0.0;
    int newton_iterations = 0;
    double residual = 0.0;
};

struct ContinuationState {
    double t = 0.0;
    ScalarField v;
    ScalarField H_t;
    std::vector<ContinuationStep> history;
    bool reached_target = false;
    bool sandwich_ok = true;
    std::string message;
};

struct HomotopyOptions {
    double dt_initial = 0.25;
    double dt_min = 1e-4;
    double growth = 1.5;
    int fast_iterations = 4;  // grow the step when Newton needs at most this many
    NewtonOptions newton;
    // nodewise bounds checked after every accepted step
    std::optional<double> lower_bound;
    std::optional<double> upper_bound;
};

/// Homotopy between two mean curvature fields, H_t = (1-t)*H_a + t*H_b,
/// with adaptive stepping (halve on Newton failure, grow on fast
/// convergence, hard floor on the step size).
ContinuationState run_homotopy(const Mesh& mesh, const ScalarField& initial,
                               const ScalarField& H_a, const ScalarField& H_b,
                               const ScalarField& boundary_values,
                               const HomotopyOptions& opts = {});

struct ContinuationResult {
    ContinuationState state;
    Supersolution supersolution;
    ScalarField boundary_values;
};

/// Theorem-1 pipeline core: builds the smoothed cone supersolution, starts
/// the family at t = 0 with v = psi, and continues to the target constant H.
/// Throws if the hypothesis check fails, unless force is set.
ContinuationResult continuation_solve(const ProblemConfig& config, const Mesh& mesh,
                                      bool force = false);

/// Direct solve by continuation in the curvature: H_t = t*H from the minimal
/// graph with the given boundary data.
ContinuationState continuation_in_h(const Mesh& mesh, const ScalarField& boundary_values,
                                    double H_target, const NewtonOptions& newton = {});

struct SerrinResult {
    std::vector<double> H_k;
    std::vector<ScalarField> iterates;
    std::vector<double> max_heights;   // max |u_k|
    std::vector<double> diffs;         // sup-norm gaps between consecutive iterates
    bool diffs_monotone = true;
    ScalarField final_field;           // solution at the target H, continued from u_N
    bool ok = false;
    std::string message;
};

/// Vertex-at-infinity limit: solves the family H_k = (k/(k+1))*H from cones
/// with vertices high enough to be H_k-cones, then continues the last iterate
/// to the target H. Requires Serrin's condition min H_L >= H; constant
/// boundary data only (handled by vertical translation).
SerrinResult serrin_limit_solve(const PlanarCurve& L, double boundary_constant, double H,
                                int sequence_length, const Mesh& mesh);

}  // namespace hgraph
