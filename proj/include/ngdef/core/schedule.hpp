#pragma once

#include <cmath>
#include <string>
#include <vector>

#include "ngdef/core/error.hpp"

namespace ngd {

/// ε_k = λ^{k0 + k} for k = 0 .. steps-1.
struct EpsSchedule {
  double lambda = 0.5;
  int k0 = 1;
  int steps = 24;

  void validate() const {
    if (!(lambda > 0.0 && lambda < 1.0)) fail(Errc::InvalidArgument, "lambda must lie in (0,1)");
    if (steps < 1) fail(Errc::InvalidArgument, "schedule needs at least one step");
  }
  double eps(int k) const { return std::pow(lambda, k0 + k); }
  std::vector<double> values() const {
    std::vector<double> out;
    out.reserve(steps);
    for (int k = 0; k < steps; ++k) out.push_back(eps(k));
    return out;
  }
};

}  // namespace ngd
