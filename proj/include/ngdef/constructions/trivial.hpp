#pragma once

// Trivial groupoid X x X over a metric space.

#include <string>
#include <utility>
#include <vector>

#include <Eigen/Core>

#include "ngdef/core/groupoid.hpp"

namespace ngd {

template <class S>
concept MetricSpace =
    std::copy_constructible<S> && requires(const S& s, const typename S::Point& p) {
      { s.distance(p, p) } -> std::convertible_to<double>;
      { s.point_gap(p, p) } -> std::convertible_to<double>;
    };

/// Metric spaces that can draw points from balls: `random_near(rng, c, r)`
/// returns a point within distance r of c.
template <class S>
concept SampledMetricSpace =
    MetricSpace<S> && requires(const S& s, SplitMix64& rng, const typename S::Point& p, double r) {
      { s.center() } -> std::convertible_to<typename S::Point>;
      { s.random_near(rng, p, r) } -> std::convertible_to<typename S::Point>;
    };

template <class S>
std::string describe_point(const S& s, const typename S::Point& p) {
  if constexpr (requires { s.describe(p); })
    return s.describe(p);
  else if constexpr (requires { format_point(p); })
    return format_point(p);
  else
    return "<point>";
}

/// Arrow (x, y) of the trivial groupoid; ω = first = x, α = second = y.
template <class P>
struct PointPair {
  P first, second;
};

template <MetricSpace S>
class TrivialGroupoid {
 public:
  using Space = S;
  using Object = typename S::Point;
  using Arrow = PointPair<Object>;

  explicit TrivialGroupoid(S space) : space_(std::move(space)) {}

  const S& space() const noexcept { return space_; }

  /// The arrow (target, source).
  static Arrow arrow(Object target, Object source) { return {std::move(target), std::move(source)}; }

  Object source(const Arrow& a) const { return a.second; }
  Object target(const Arrow& a) const { return a.first; }
  Arrow identity(const Object& x) const { return {x, x}; }
  Arrow inverse(const Arrow& a) const { return {a.second, a.first}; }
  // (x, y)(y, z) = (x, z)
  Arrow product(const Arrow& g, const Arrow& h) const { return {g.first, h.second}; }

  double object_gap(const Object& x, const Object& y) const { return space_.point_gap(x, y); }
  double arrow_gap(const Arrow& a, const Arrow& b) const {
    return std::max(space_.point_gap(a.first, b.first), space_.point_gap(a.second, b.second));
  }

  double norm(const Arrow& a) const { return space_.distance(a.first, a.second); }
  bool separable() const noexcept { return true; }

  /// The only arrow from x to y is (y, x).
  double closed_form_object_distance(const Object& x, const Object& y) const {
    return space_.distance(y, x);
  }

  /// For a_k = (x_k, y_k) and a = (x, y): h = (x, x_k), g = (y_k, y), so
  /// that h a_k g = a.
  std::pair<Arrow, Arrow> simple_witnesses(const Arrow& ak, const Arrow& a) const {
    return {Arrow{a.first, ak.first}, Arrow{ak.second, a.second}};
  }

  Object random_object(SplitMix64& rng, double r) const
    requires SampledMetricSpace<S>
  {
    return space_.random_near(rng, space_.center(), r);
  }
  Arrow random_arrow_from(SplitMix64& rng, const Object& x, double r) const
    requires SampledMetricSpace<S>
  {
    return {space_.random_near(rng, x, r), x};
  }

  /// Coordinates of an arrow within its fiber: the target point.
  Eigen::VectorXd fiber_chart(const Arrow& a) const
    requires requires(const S& s, const Object& p) { s.chart(p); }
  {
    return space_.chart(a.first);
  }
  Arrow from_fiber_chart(const Eigen::VectorXd& v, const Object& base) const
    requires requires(const S& s, const Eigen::VectorXd& w) { s.from_chart(w); }
  {
    return {space_.from_chart(v), base};
  }

  std::vector<Arrow> arrows() const
    requires requires(const S& s) { s.points(); }
  {
    std::vector<Arrow> out;
    for (const auto& x : space_.points())
      for (const auto& y : space_.points()) out.push_back({x, y});
    return out;
  }

  std::string describe(const Arrow& a) const {
    return "(" + describe_point(space_, a.first) + "," + describe_point(space_, a.second) + ")";
  }
  std::string describe_object(const Object& x) const { return describe_point(space_, x); }

 private:
  S space_;
};

}  // namespace ngd
