#pragma once

#include <vector>

#include "conformal.hpp"

namespace vp {

// Phi(p + eps x) as a Taylor polynomial in x, for divided differences without cancellation
class LocalExpansion {
public:
    LocalExpansion(const ConformalMap& map, cplx p, double eps, double xmax);

    bool valid() const { return valid_; }
    cplx value(cplx x) const;
    // (Phi(p + eps x) - Phi(p + eps y)) / (eps (x - y))
    cplx divdiff(cplx x, cplx y) const;
    // d/dx Phi(p + eps x) / eps
    cplx derivative(cplx x) const;

private:
    const ConformalMap& map_;
    cplx p_;
    double eps_;
    bool valid_ = false;
    std::vector<cplx> b_;
};

// distance from p to the sampled boundary
double sampled_boundary_distance(const ConformalMap& map, cplx p);

}  // namespace vp
