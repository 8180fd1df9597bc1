#pragma once

#include <vector>

#include "hgraph/geom.hpp"

namespace hgraph {

/// Periodic cubic spline through scalar values at uniformly spaced
/// parameters 2*pi*i/n on [0, 2*pi).
class PeriodicSpline {
  public:
    PeriodicSpline() = default;
    explicit PeriodicSpline(std::vector<double> values);

    double eval(double t) const;
    double derivative(double t) const;
    double second_derivative(double t) const;

    int size() const { return static_cast<int>(values_.size()); }
    const std::vector<double>& values() const { return values_; }

  private:
    std::vector<double> values_;
    std::vector<double> m_;  // knot second derivatives
};

}  // namespace hgraph
