#pragma once

// Metric spaces with dilatations δ^x_ε y, and the sampled checks of the
// action and contraction axioms for them.

#include <algorithm>
#include <cmath>
#include <string>
#include <vector>

#include "ngdef/constructions/trivial.hpp"
#include "ngdef/core/check.hpp"

namespace ngd {

template <class S>
concept DilatationSpace =
    SampledMetricSpace<S> &&
    requires(const S& s, double e, const typename S::Point& x, const typename S::Point& y) {
      { s.dilatation(e, x, y) } -> std::convertible_to<typename S::Point>;
    };

/// Sampled (x, y) pair plus scales for the dilatation checks.
template <class S>
struct DilatationSample {
  typename S::Point x, y;
  double eps, mu;
};

template <DilatationSpace S>
DilatationSample<S> random_dilatation_sample(const S& s, SplitMix64& rng, double radius,
                                             double eps_lo = 0.125, double eps_hi = 1.0) {
  auto x = s.random_near(rng, s.center(), radius);
  auto y = s.random_near(rng, x, radius);
  const double eps = rng.uniform(eps_lo, eps_hi);
  const double mu = rng.uniform(eps_lo, eps_hi);
  return {std::move(x), std::move(y), eps, mu};
}

/// δ^x is an action fixing x: δ^x_ε x = x, δ^x_1 = id, δ^x_ε δ^x_μ = δ^x_{εμ},
/// δ^x_{1/ε} δ^x_ε = id.
template <DilatationSpace S>
void check_dilatation_action(const S& s, const std::vector<DilatationSample<S>>& samples,
                             CheckAccumulator& acc) {
  for (const auto& [x, y, e, mu] : samples) {
    double v = s.point_gap(s.dilatation(e, x, x), x);
    v = std::max(v, s.point_gap(s.dilatation(1.0, x, y), y));
    v = std::max(v, s.point_gap(s.dilatation(e, x, s.dilatation(mu, x, y)), s.dilatation(e * mu, x, y)));
    v = std::max(v, s.point_gap(s.dilatation(1.0 / e, x, s.dilatation(e, x, y)), y));
    acc.record(v, [&] {
      return "x=" + describe_point(s, x) + " y=" + describe_point(s, y) + " eps=" + format_number(e) +
             " mu=" + format_number(mu);
    });
  }
}

/// δ^x_ε y -> x uniformly on the samples along ε_k = λ^{k0+k}: the sup of
/// d(δ^x_{ε_k} y, x) must not increase and must end below `limit_tol`.
template <DilatationSpace S>
void check_dilatation_contraction(const S& s, const std::vector<DilatationSample<S>>& samples,
                                  CheckAccumulator& acc, double lambda = 0.5, int k0 = 1,
                                  int steps = 24, double limit_tol = 1e-6) {
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < steps; ++k) {
    const double e = std::pow(lambda, k0 + k);
    double sup = 0.0;
    for (const auto& smp : samples) sup = std::max(sup, s.distance(s.dilatation(e, smp.x, smp.y), smp.x));
    const double v = std::isfinite(prev) ? std::max(0.0, sup - prev) : 0.0;
    acc.record(v, [&] { return "sup increased at eps=" + format_number(e); });
    prev = sup;
  }
  acc.record(std::max(0.0, prev - limit_tol), [&] { return "final sup " + format_number(prev); });
}

}  // namespace ngd
