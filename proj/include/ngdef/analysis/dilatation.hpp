#pragma once

// Limit axioms of metric dilatation structures, the dilatation structure
// carried by one fiber of a deformation, and the tangent metric checks.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ngdef/analysis/structure.hpp"
#include "ngdef/models/dilatation_space.hpp"

namespace ngd {

template <class S>
concept ChartedDilatationSpace = DilatationSpace<S> && requires(const S& s, const typename S::Point& p) {
  { s.chart(p) } -> std::convertible_to<Eigen::VectorXd>;
};

/// Base point x with two nearby points.
template <class S>
struct PointTriple {
  typename S::Point x, u, v;
};

template <SampledMetricSpace S>
std::vector<PointTriple<S>> sample_triples(const S& s, SplitMix64& rng, std::size_t count, double radius = 0.5) {
  std::vector<PointTriple<S>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto x = s.random_near(rng, s.center(), radius);
    auto u = s.random_near(rng, x, radius);
    auto v = s.random_near(rng, x, radius);
    out.push_back({std::move(x), std::move(u), std::move(v)});
  }
  return out;
}

struct DilatationLimitOptions {
  EpsSchedule sched{};
  double limit_tol = 1e-6;
  double zero_tol = 1e-6;
  double separated = 1e-3;
};

/// lim (1/ε) d(δ^x_ε u, δ^x_ε v).
template <DilatationSpace S>
LimitEstimate based_metric_limit(const S& s, const typename S::Point& x, const typename S::Point& u,
                                 const typename S::Point& v, const EpsSchedule& sched, double tol = 1e-6) {
  return estimate_scalar_limit(
      [&](double e) { return s.distance(s.dilatation(e, x, u), s.dilatation(e, x, v)) / e; }, sched, tol);
}

/// lim δ^x_{1/ε} δ^{δ^x_ε u}_μ δ^x_ε v, in chart coordinates.
template <ChartedDilatationSpace S>
LimitEstimate limit_dilatation(const S& s, const typename S::Point& x, const typename S::Point& u,
                               const typename S::Point& v, double mu, const EpsSchedule& sched, double tol = 1e-6) {
  return estimate_limit(
      [&](double e) {
        return s.chart(s.dilatation(1.0 / e, x, s.dilatation(mu, s.dilatation(e, x, u), s.dilatation(e, x, v))));
      },
      sched, tol);
}

/// A3: the rescaled distances converge, and the limit separates exactly the
/// pairs d separates.
template <DilatationSpace S>
void check_dilatation_a3(const S& s, const std::vector<PointTriple<S>>& t, const DilatationLimitOptions& o,
                         CheckAccumulator& acc) {
  ClassifyOptions sep;
  sep.zero_tol = o.zero_tol;
  sep.separated = o.separated;
  for (const auto& [x, u, v] : t) {
    double lim = 0;
    detail::record_guarded(
        acc,
        [&] {
          const auto est = based_metric_limit(s, x, u, v, o.sched, o.limit_tol);
          lim = est.scalar();
          return std::max(detail::limit_or_inf(est), detail::separation_violation(lim, s.distance(u, v), sep));
        },
        [&] {
          return "x=" + describe_point(s, x) + " u=" + describe_point(s, u) + " v=" + describe_point(s, v) +
                 " d=" + format_number(s.distance(u, v)) + " limit=" + format_number(lim);
        });
  }
}

/// A4weak for μ = 1/2 and 1/4.
template <ChartedDilatationSpace S>
void check_dilatation_a4weak(const S& s, const std::vector<PointTriple<S>>& t, const DilatationLimitOptions& o,
                             CheckAccumulator& acc) {
  for (const auto& [x, u, v] : t)
    for (double mu : {0.5, 0.25})
      detail::record_guarded(
          acc, [&] { return detail::limit_or_inf(limit_dilatation(s, x, u, v, mu, o.sched, o.limit_tol)); },
          [&] {
            return "x=" + describe_point(s, x) + " u=" + describe_point(s, u) + " v=" + describe_point(s, v) +
                   " mu=" + format_number(mu);
          });
}

/// The fiber α⁻¹(x) of a deformation with the fiber distance and the
/// dilatations δ^a_ε b.
template <ChartedDeformation D>
class FiberDilatation {
 public:
  using Point = DArrow<D>;

  FiberDilatation(D d, DObject<D> x) : d_(std::move(d)), x_(std::move(x)) {}

  const D& deformation() const noexcept { return d_; }
  const DObject<D>& object() const noexcept { return x_; }

  double distance(const Point& a, const Point& b) const { return fiber_distance(m(), a, b); }
  double point_gap(const Point& a, const Point& b) const { return m().arrow_gap(a, b); }
  Point dilatation(double e, const Point& a, const Point& b) const { return ngd::dilatation(d_, e, a, b); }

  Point center() const { return m().identity(x_); }
  /// c a with d(c) <= r, which lies within r of a.
  Point random_near(SplitMix64& rng, const Point& a, double r) const
    requires SampledGroupoid<typename D::Groupoid>
  {
    return m().product(m().random_arrow_from(rng, m().target(a), r), a);
  }

  Eigen::VectorXd chart(const Point& a) const { return m().fiber_chart(a); }
  Point from_chart(const Eigen::VectorXd& v) const { return m().from_fiber_chart(v, x_); }
  std::string describe(const Point& a) const { return ngd::describe(m(), a); }

 private:
  const typename D::Groupoid& m() const { return d_.groupoid(); }

  D d_;
  DObject<D> x_;
};

struct FiberExtractionOptions {
  std::size_t samples = 64;
  std::uint64_t seed = 1;
  double radius = 0.5;
  DilatationLimitOptions limits{};
};

/// Reports of the metric dilatation suites on a fiber: dilatation-a1 to
/// dilatation-a4weak.
template <DilatationSpace S>
std::vector<CheckReport> run_dilatation_suites(const S& s, const FiberExtractionOptions& o,
                                               const std::string& model = "") {
  SplitMix64 rng(o.seed);
  std::vector<DilatationSample<S>> pairs;
  for (std::size_t i = 0; i < o.samples; ++i) pairs.push_back(random_dilatation_sample(s, rng, o.radius));
  const auto triples = sample_triples(s, rng, o.samples, o.radius);

  std::vector<CheckReport> out;
  CheckAccumulator a1(1e-9), a2(1e-9), a3(o.limits.zero_tol), a4(o.limits.limit_tol);
  check_dilatation_action(s, pairs, a1);
  check_dilatation_contraction(s, pairs, a2, o.limits.sched.lambda, o.limits.sched.k0, o.limits.sched.steps,
                               o.limits.limit_tol);
  check_dilatation_a3(s, triples, o.limits, a3);
  out.push_back(CheckReport::from("dilatation-a1", model, o.seed, a1));
  out.push_back(CheckReport::from("dilatation-a2", model, o.seed, a2));
  out.push_back(CheckReport::from("dilatation-a3", model, o.seed, a3));
  if constexpr (ChartedDilatationSpace<S>) {
    check_dilatation_a4weak(s, triples, o.limits, a4);
    out.push_back(CheckReport::from("dilatation-a4weak", model, o.seed, a4));
  }
  for (auto& r : out) {
    r.params["samples"] = std::to_string(o.samples);
    r.params["radius"] = format_number(o.radius);
    r.params["lambda"] = format_number(o.limits.sched.lambda);
    r.params["steps"] = std::to_string(o.limits.sched.steps);
  }
  return out;
}

/// The dilatation structure of the fiber over x. Throws NotGw, naming the
/// first failing axiom, unless the A3 and A4weak limits hold on fiber
/// samples.
template <ChartedDeformation D>
  requires SampledGroupoid<typename D::Groupoid>
FiberDilatation<D> fiber_dilatation_structure(const D& d, const DObject<D>& x, const FiberExtractionOptions& o = {}) {
  FiberDilatation<D> f(d, x);
  SplitMix64 rng(o.seed);
  const auto t = sample_triples(f, rng, o.samples, o.radius);
  CheckAccumulator a3(o.limits.zero_tol, 1), a4(o.limits.limit_tol, 1);
  check_dilatation_a3(f, t, o.limits, a3);
  if (!a3.pass()) fail(Errc::NotGw, "A3: " + a3.witnesses().front());
  check_dilatation_a4weak(f, t, o.limits, a4);
  if (!a4.pass()) fail(Errc::NotGw, "A4weak: " + a4.witnesses().front());
  return f;
}

/// The tangent distance as a metric on fibers: d̄(g, h) = 0 exactly when
/// d(g h⁻¹) is small, symmetry, the triangle inequality on (u, x, v), and
/// d̄(g, h) <= d̄(g) + d̄(h) with the one-argument d̄ read as tangent norms.
template <ChartedDeformation D>
void check_tangent_metric(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                          CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  auto dbar = [&](const DArrow<D>& a, const DArrow<D>& b) {
    return require_converged(tangent_distance(d, a, b, o.sched, o.limit_tol), "tangent distance").scalar();
  };
  auto nbar = [&](const DArrow<D>& a) {
    return require_converged(tangent_norm(d, a, o.sched, o.limit_tol), "tangent norm").scalar();
  };
  for (const auto& t : s)
    detail::record_guarded(
        acc,
        [&] {
          const double uv = dbar(t.u, t.v), vu = dbar(t.v, t.u);
          const double ux = dbar(t.u, t.x), xv = dbar(t.x, t.v);
          double v = detail::separation_violation(uv, fiber_distance(m, t.u, t.v), o);
          v = std::max(v, std::abs(uv - vu));
          v = std::max(v, uv - (ux + xv));
          v = std::max(v, uv - (nbar(t.u) + nbar(t.v)));
          return std::max(v, 0.0);
        },
        [&] { return "x=" + describe(m, t.x) + " u=" + describe(m, t.u) + " v=" + describe(m, t.v); });
}

}  // namespace ngd
