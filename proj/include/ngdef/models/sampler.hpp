#pragma once

#include <cmath>
#include <cstdint>
#include <vector>

#include <Eigen/Core>

#include "ngdef/constructions/trivial.hpp"
#include "ngdef/core/error.hpp"
#include "ngdef/core/random.hpp"

namespace ngd {

/// `count` points within `radius` of `center` (given in chart
/// coordinates), drawn from a stream seeded by `seed`.
struct BoundedSampler {
  Eigen::VectorXd center;
  double radius = 1.0;
  std::uint64_t seed = 1;
  std::size_t count = 1;

  void validate() const {
    if (!(radius > 0) || !std::isfinite(radius)) fail(Errc::InvalidSampler, "radius must be positive and finite");
    if (count < 1) fail(Errc::InvalidSampler, "count must be at least 1");
  }

  template <SampledMetricSpace S>
    requires requires(const S& s, const Eigen::VectorXd& v) { s.from_chart(v); }
  std::vector<typename S::Point> points(const S& space) const {
    validate();
    const auto c = center.size() ? space.from_chart(center) : space.center();
    SplitMix64 rng(seed);
    std::vector<typename S::Point> out;
    out.reserve(count);
    for (std::size_t i = 0; i < count; ++i) out.push_back(space.random_near(rng, c, radius));
    return out;
  }
};

/// Grid of `per_axis`^n chart points over the cube of half-side `radius`
/// around `center`, kept only when inside the Euclidean ball.
inline std::vector<Eigen::VectorXd> grid_points(const Eigen::VectorXd& center, double radius, int per_axis) {
  if (!(radius > 0) || per_axis < 2) fail(Errc::InvalidSampler, "grid needs radius > 0 and per_axis >= 2");
  const int n = static_cast<int>(center.size());
  std::vector<Eigen::VectorXd> out;
  std::vector<int> idx(n, 0);
  while (true) {
    Eigen::VectorXd off(n);
    for (int j = 0; j < n; ++j) off(j) = -radius + 2 * radius * idx[j] / (per_axis - 1);
    if (off.norm() <= radius * (1 + 1e-12)) out.push_back(center + off);
    int j = 0;
    while (j < n && ++idx[j] == per_axis) idx[j++] = 0;
    if (j == n) break;
  }
  return out;
}

}  // namespace ngd
