#pragma once

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ngdef/core/error.hpp"
#include "ngdef/core/random.hpp"

namespace ngd {

/// Finite metric space given by a distance matrix; points are indices.
class FiniteMetricSpace {
 public:
  using Point = std::size_t;

  FiniteMetricSpace(std::vector<std::string> names, Eigen::MatrixXd dist)
      : names_(std::move(names)), dist_(std::move(dist)) {
    const auto n = static_cast<Eigen::Index>(names_.size());
    if (n == 0 || dist_.rows() != n || dist_.cols() != n)
      fail(Errc::InvalidModelSpec, "distance matrix must be square and match the point list");
    for (Eigen::Index i = 0; i < n; ++i)
      for (Eigen::Index j = 0; j < n; ++j) {
        if (dist_(i, j) < 0 || dist_(i, j) != dist_(j, i) || ((i == j) != (dist_(i, j) == 0)))
          fail(Errc::InvalidModelSpec, "not a distance at (" + names_[i] + "," + names_[j] + ")");
        for (Eigen::Index k = 0; k < n; ++k)
          if (dist_(i, k) > dist_(i, j) + dist_(j, k) + 1e-12)
            fail(Errc::InvalidModelSpec, "triangle inequality fails at " + names_[i] + "," + names_[j] + "," + names_[k]);
      }
  }

  std::size_t size() const noexcept { return names_.size(); }
  std::vector<Point> points() const {
    std::vector<Point> out(size());
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
    return out;
  }

  double distance(Point p, Point q) const { return dist_(static_cast<Eigen::Index>(p), static_cast<Eigen::Index>(q)); }
  double point_gap(Point p, Point q) const { return p == q ? 0.0 : 1.0; }

  Point center() const noexcept { return 0; }
  /// Uniform among the points within r of c (c itself always qualifies).
  Point random_near(SplitMix64& rng, Point c, double r) const {
    std::vector<Point> near;
    for (Point p = 0; p < size(); ++p)
      if (distance(c, p) <= r) near.push_back(p);
    return near[rng.below(near.size())];
  }

  std::string describe(Point p) const { return names_.at(p); }

 private:
  std::vector<std::string> names_;
  Eigen::MatrixXd dist_;
};

}  // namespace ngd
