#pragma once

#include <vector>

namespace vp::detail {

// (1/2pi) int log|z(theta) - z(eta)| d2_{theta eta}[R(theta) R(eta) sin(theta - eta)] d eta
// for z = R e^{i theta} on a uniform grid; W from log_sine_weights
std::vector<double> self_induction(const std::vector<double>& R, const std::vector<double>& W);

}  // namespace vp::detail
