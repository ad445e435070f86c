#pragma once

// Tangent norms, distances and operations of a deformation as ε -> 0
// limits, and the cone identity of the tangent distance.

#include <cmath>
#include <string>

#include <Eigen/Core>

#include "ngdef/analysis/limit.hpp"
#include "ngdef/analysis/report.hpp"
#include "ngdef/deformation/deformation.hpp"

namespace ngd {

/// Deformations whose fibers carry coordinates, so arrow-valued limits can
/// be extrapolated.
template <class D>
concept ChartedDeformation =
    DeformationModel<D> && std::same_as<ScaleOf<D>, double> &&
    requires(const typename D::Groupoid& m, const DArrow<D>& a, const Eigen::VectorXd& v, const DObject<D>& x) {
      { m.fiber_chart(a) } -> std::convertible_to<Eigen::VectorXd>;
      { m.from_fiber_chart(v, x) } -> std::convertible_to<DArrow<D>>;
    };

/// lim (1/|ε|) d(dif(δ_ε g, δ_ε h)).
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
LimitEstimate tangent_distance(const D& d, const DArrow<D>& g, const DArrow<D>& h, const EpsSchedule& sched,
                               double tol = 1e-6) {
  const auto& m = d.groupoid();
  if (!same_object(m, m.source(g), m.source(h)))
    fail(Errc::FiberMismatch, describe(m, g) + " vs " + describe(m, h));
  return estimate_scalar_limit(
      [&](double e) { return m.norm(dif(m, deform(d, e, g), deform(d, e, h))) / std::abs(e); }, sched, tol);
}

/// lim (1/|ε|) d(δ_ε g).
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
LimitEstimate tangent_norm(const D& d, const DArrow<D>& g, const EpsSchedule& sched, double tol = 1e-6) {
  const auto& m = d.groupoid();
  return estimate_scalar_limit([&](double e) { return m.norm(deform(d, e, g)) / std::abs(e); }, sched, tol);
}

/// Based difference, sum and inverse at u, and the limit dilatation
/// δ^u_{1/ε} δ^{δ^u_ε g}_μ δ^u_ε h.
enum class TangentKind { sum, diff, inv, dilatation };

inline std::string_view to_string(TangentKind k) noexcept {
  switch (k) {
    case TangentKind::sum: return "sum";
    case TangentKind::diff: return "diff";
    case TangentKind::inv: return "inv";
    case TangentKind::dilatation: return "dilatation";
  }
  return "?";
}

template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
DArrow<D> based_op(const D& d, TangentKind kind, double e, const DArrow<D>& u, const DArrow<D>& g,
                   const DArrow<D>& h, double mu) {
  switch (kind) {
    case TangentKind::sum: return based_sum(d, e, u, g, h);
    case TangentKind::diff: return based_diff(d, e, u, g, h);
    case TangentKind::inv: return based_inv(d, e, u, g);
    case TangentKind::dilatation:
      return dilatation(d, 1.0 / e, u, dilatation(d, mu, dilatation(d, e, u, g), dilatation(d, e, u, h)));
  }
  fail(Errc::InvalidArgument, "unknown tangent op");
}

/// Limit of the based operation, in fiber coordinates; h is ignored for inv.
template <ChartedDeformation D>
LimitEstimate tangent_op(const D& d, TangentKind kind, const DArrow<D>& u, const DArrow<D>& g, const DArrow<D>& h,
                         const EpsSchedule& sched, double tol = 1e-6, double mu = 0.5) {
  const auto& m = d.groupoid();
  return estimate_limit([&](double e) { return m.fiber_chart(based_op(d, kind, e, u, g, h, mu)); }, sched, tol);
}

/// Limit of Δ_ε(g, h), in fiber coordinates over α(g).
template <ChartedDeformation D>
LimitEstimate tangent_global_diff(const D& d, const DArrow<D>& g, const DArrow<D>& h, const EpsSchedule& sched,
                                  double tol = 1e-6) {
  const auto& m = d.groupoid();
  return estimate_limit([&](double e) { return m.fiber_chart(approx_diff(d, e, g, h)); }, sched, tol);
}

/// The arrow over `source` with the estimated fiber coordinates.
template <ChartedDeformation D>
DArrow<D> limit_arrow(const D& d, const LimitEstimate& est, const DObject<D>& source) {
  return d.groupoid().from_fiber_chart(est.value, source);
}

/// lim (1/|ε|) d(dif(δ^x_ε u, δ^x_ε v)), the tangent distance based at x.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
LimitEstimate based_tangent_distance(const D& d, const DArrow<D>& x, const DArrow<D>& u, const DArrow<D>& v,
                                     const EpsSchedule& sched, double tol = 1e-6) {
  const auto& m = d.groupoid();
  return estimate_scalar_limit(
      [&](double e) { return m.norm(dif(m, dilatation(d, e, x, u), dilatation(d, e, x, v))) / std::abs(e); }, sched,
      tol);
}

/// |d̄^x(δ^x_μ u, δ^x_μ v) - |μ| d̄^x(u, v)| and the chart distance between
/// the limit dilatation δ̄^{x,x}_μ v and δ^x_μ v, both recorded in `acc`.
template <ChartedDeformation D>
void record_cone(const D& d, const DArrow<D>& x, const DArrow<D>& u, const DArrow<D>& v, double mu,
                 const EpsSchedule& sched, CheckAccumulator& acc, double limit_tol = 1e-6) {
  if (!(std::abs(mu) < 1)) fail(Errc::InvalidArgument, "cone identity needs |mu| < 1");
  const auto& m = d.groupoid();
  auto witness = [&] {
    return "x=" + describe(m, x) + " u=" + describe(m, u) + " v=" + describe(m, v) + " mu=" + format_number(mu);
  };
  detail::record_guarded(
      acc,
      [&] {
        const auto lhs = based_tangent_distance(d, x, dilatation(d, mu, x, u), dilatation(d, mu, x, v), sched,
                                                limit_tol);
        const auto rhs = based_tangent_distance(d, x, u, v, sched, limit_tol);
        if (!lhs.converged || !rhs.converged) return std::numeric_limits<double>::infinity();
        return std::abs(lhs.scalar() - std::abs(mu) * rhs.scalar());
      },
      witness);
  detail::record_guarded(
      acc,
      [&] {
        const auto lim = tangent_op(d, TangentKind::dilatation, x, x, v, sched, limit_tol, mu);
        if (!lim.converged) return std::numeric_limits<double>::infinity();
        return (lim.value - m.fiber_chart(dilatation(d, mu, x, v))).norm();
      },
      witness);
}

template <ChartedDeformation D>
CheckReport check_cone(const D& d, const DArrow<D>& x, const DArrow<D>& u, const DArrow<D>& v, double mu,
                       const EpsSchedule& sched, double tol) {
  CheckAccumulator acc(tol);
  record_cone(d, x, u, v, mu, sched, acc);
  return CheckReport::from("cone", "", 0, acc);
}

}  // namespace ngd
