#pragma once

#include <functional>
#include <string>

#include "hgraph/collar.hpp"
#include "hgraph/field.hpp"
#include "hgraph/mesh.hpp"

namespace hgraph {

/// Parameters of the logarithmic lower barrier w = delta*ln(1 + beta*s) + phi.
struct BarrierParams {
    double delta = -1.0;  // < 0
    double beta = 1.0;    // > 0
    double eps1 = 0.0;    // inner collar width, in (0, epsilon]
    double vertex_height = 0.0;  // <V,e>, bounds sup v in the tail condition

    /// delta*ln(1 + eps1*beta) + vertex_height <= 0
    bool tail_condition() const;
    /// B_max/delta + |phi|_2 < 0
    bool slope_condition(double B_max, double phi_c2) const;
};

struct XiEval {
    double value = 0.0;
    double ds = 0.0;   // < 0 for admissible params
    double dss = 0.0;  // = -ds^2/delta > 0
};

/// xi(s) = delta*ln(1 + beta*s) with its s-derivatives.
XiEval xi(double s, const BarrierParams& params);

struct BarrierVerification {
    bool pass = false;
    double min_operator = 0.0;  // min of A^{3/2} Q_t[w] over the sampled collar
    Vec2 worst_point;
    bool tail_ok = false;       // w <= 0 at s = eps1 given sup v <= <V,e>
    bool min_on_sample_boundary = false;  // refinement warning
};

/// Direct numerical verification that w = xi(d(x)) + phi(x) is a subsolution
/// on the inner collar: evaluates A^{3/2} Q_t[w] by finite differencing w on
/// a (boundary parameter) x (distance) grid and requires min >= 0.
BarrierVerification verify_lower_barrier(const CollarChart& chart, const BarrierParams& params,
                                         const std::function<double(Vec2)>& H_t,
                                         int n_theta = 256, int n_s = 64);

struct BarrierSelection {
    BarrierParams params;
    BarrierVerification verification;
    double beta_floor = 0.0;  // closed-form floor from the tail condition
    bool ok = false;
    std::string message;
};

/// Selects delta from the slope condition and beta from the closed-form tail
/// floor, doubling beta until the direct verification passes.
/// Precondition (the paper's sign condition): min H_L + H_t_min >= 0.
BarrierSelection choose_barrier_params(const CollarChart& chart, double vertex_height,
                                       double H_t_min, int max_doublings = 16);

struct GradientBoundReport {
    double M = 0.0;             // max(|delta|*beta + max|grad phi|, max|grad psi|)
    double max_grad_v = 0.0;
    bool w_below_v = false;     // w <= v nodewise on the collar
    bool v_below_psi = false;   // v <= psi nodewise
    bool max_on_boundary_layer = false;
    std::string message;
};

/// Checks the boundary gradient estimate: the barrier sandwich w <= v <= psi
/// on the collar and that the discrete gradient maximum sits within one
/// element layer of the boundary.
GradientBoundReport boundary_gradient_bound(const Mesh& mesh, const ScalarField& v,
                                            const ScalarField& psi, const CollarChart& chart,
                                            const BarrierParams& params,
                                            double phi_shift = 0.0);

}  // namespace hgraph
