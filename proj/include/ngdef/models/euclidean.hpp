#pragma once

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "ngdef/core/error.hpp"
#include "ngdef/core/numeric.hpp"
#include "ngdef/core/random.hpp"

namespace ngd {

/// R^n with the Euclidean distance and homotheties δ^x_ε y = x + ε(y - x).
template <class Scalar = double>
class Euclidean {
 public:
  using Point = Eigen::Matrix<Scalar, Eigen::Dynamic, 1>;

  explicit Euclidean(int dim) : dim_(dim) {
    if (dim < 1) fail(Errc::InvalidModelSpec, "euclidean dimension must be >= 1");
  }

  int dim() const noexcept { return dim_; }
  Point center() const { return Point::Zero(dim_); }

  double distance(const Point& p, const Point& q) const { return static_cast<double>((p - q).norm()); }
  double point_gap(const Point& p, const Point& q) const { return rel_gap(p, q); }

  /// Uniform in the closed ball B(c, r).
  Point random_near(SplitMix64& rng, const Point& c, double r) const {
    Point d(dim_);
    for (int i = 0; i < dim_; ++i) d(i) = static_cast<Scalar>(rng.normal());
    const double n = static_cast<double>(d.norm());
    const double rho = r * std::pow(rng.uniform01(), 1.0 / dim_);
    if (n == 0.0) return c;
    return c + d * static_cast<Scalar>(rho / n);
  }

  Point dilatation(double eps, const Point& x, const Point& y) const {
    return x + static_cast<Scalar>(eps) * (y - x);
  }

  Eigen::VectorXd chart(const Point& p) const { return p.template cast<double>(); }
  Point from_chart(const Eigen::VectorXd& v) const {
    if (v.size() != dim_) fail(Errc::InvalidArgument, "expected " + std::to_string(dim_) + " coordinates");
    return v.template cast<Scalar>();
  }

  std::string describe(const Point& p) const { return format_point(p); }
  std::string name() const { return "euclidean(" + std::to_string(dim_) + ")"; }

 private:
  int dim_;
};

/// Euclidean space whose dilatations based at points with first coordinate
/// > 0 use the factor ε² instead of ε. The action and contraction axioms
/// still hold; the rescaled distances degenerate on those fibers.
template <class Scalar = double>
class DegenerateEuclidean : public Euclidean<Scalar> {
 public:
  using typename Euclidean<Scalar>::Point;
  using Euclidean<Scalar>::Euclidean;

  Point dilatation(double eps, const Point& x, const Point& y) const {
    const double f = x(0) > 0 ? eps * eps : eps;
    return x + static_cast<Scalar>(f) * (y - x);
  }

  /// Sampling is centered inside the degenerate half-space.
  Point center() const {
    Point c = Point::Zero(this->dim());
    c(0) = Scalar(0.5);
    return c;
  }

  std::string name() const { return "broken"; }
};

}  // namespace ngd
