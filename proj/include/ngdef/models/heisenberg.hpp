#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "ngdef/core/error.hpp"
#include "ngdef/core/numeric.hpp"
#include "ngdef/core/random.hpp"

namespace ngd {

/// First Heisenberg group on R^3 with the polarized law
/// (a,b,c)(a',b',c') = (a+a', b+b', c+c'+(ab'-a'b)/2), dilations
/// (εa, εb, ε²c) and the Korányi gauge ((a²+b²)² + 16c²)^{1/4}.
template <class Scalar = double>
class Heisenberg {
 public:
  using Point = Eigen::Matrix<Scalar, 3, 1>;

  static Point mul(const Point& x, const Point& y) {
    return Point(x(0) + y(0), x(1) + y(1), x(2) + y(2) + Scalar(0.5) * (x(0) * y(1) - y(0) * x(1)));
  }
  static Point inv(const Point& x) { return -x; }
  static Point dil(double eps, const Point& w) {
    const Scalar e = static_cast<Scalar>(eps);
    return Point(e * w(0), e * w(1), e * e * w(2));
  }
  static double gauge(const Point& w) {
    const double r2 = static_cast<double>(w(0) * w(0) + w(1) * w(1));
    const double c = static_cast<double>(w(2));
    return std::pow(r2 * r2 + 16.0 * c * c, 0.25);
  }

  Point center() const { return Point::Zero(); }

  /// d(x, y) = ||x^{-1} y||.
  double distance(const Point& x, const Point& y) const { return gauge(mul(inv(x), y)); }
  double point_gap(const Point& p, const Point& q) const { return rel_gap(p, q); }

  /// c δ_s(w) with w uniform in the unit cube and s chosen so the gauge of
  /// the offset is uniform in [0, r].
  Point random_near(SplitMix64& rng, const Point& c, double r) const {
    Point w(static_cast<Scalar>(rng.uniform(-1, 1)), static_cast<Scalar>(rng.uniform(-1, 1)),
            static_cast<Scalar>(rng.uniform(-1, 1)));
    const double g = gauge(w);
    if (g == 0.0) return c;
    return mul(c, dil(r * rng.uniform01() / g, w));
  }

  /// δ^x_ε y = x δ_ε(x^{-1} y).
  Point dilatation(double eps, const Point& x, const Point& y) const { return mul(x, dil(eps, mul(inv(x), y))); }

  Eigen::VectorXd chart(const Point& p) const { return p.template cast<double>(); }
  Point from_chart(const Eigen::VectorXd& v) const {
    if (v.size() != 3) fail(Errc::InvalidArgument, "expected 3 coordinates");
    return v.template cast<Scalar>();
  }

  std::string describe(const Point& p) const { return format_point(p); }
  std::string name() const { return "heisenberg"; }
};

}  // namespace ngd
