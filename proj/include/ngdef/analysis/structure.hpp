#pragma once

// Classification of a deformation as a strong or weak structure from
// sampled tangent limits.

#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "ngdef/analysis/report.hpp"
#include "ngdef/analysis/tangent.hpp"
#include "ngdef/deformation/checks.hpp"

namespace ngd {

/// Three arrows with a common source; x serves as a base point.
template <class D>
struct FiberSample {
  DArrow<D> x, u, v;
};

template <DeformationModel D>
  requires SampledGroupoid<typename D::Groupoid>
std::vector<FiberSample<D>> sample_fibers(const D& d, SplitMix64& rng, std::size_t count, double radius = 0.5) {
  const auto& m = d.groupoid();
  std::vector<FiberSample<D>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    const auto o = m.random_object(rng, radius);
    auto x = m.random_arrow_from(rng, o, radius);
    auto u = m.random_arrow_from(rng, o, radius);
    auto v = m.random_arrow_from(rng, o, radius);
    out.push_back({std::move(x), std::move(u), std::move(v)});
  }
  return out;
}

/// Samples from the single fiber over `o`.
template <DeformationModel D>
  requires SampledGroupoid<typename D::Groupoid>
std::vector<FiberSample<D>> sample_fiber_over(const D& d, const DObject<D>& o, SplitMix64& rng, std::size_t count,
                                              double radius = 0.5) {
  const auto& m = d.groupoid();
  std::vector<FiberSample<D>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto x = m.random_arrow_from(rng, o, radius);
    auto u = m.random_arrow_from(rng, o, radius);
    auto v = m.random_arrow_from(rng, o, radius);
    out.push_back({std::move(x), std::move(u), std::move(v)});
  }
  return out;
}

enum class Verdict { gs, gw, neither };

constexpr std::string_view to_string(Verdict v) noexcept {
  switch (v) {
    case Verdict::gs: return "gs";
    case Verdict::gw: return "gw";
    case Verdict::neither: return "neither";
  }
  return "?";
}

struct ClassifyOptions {
  EpsSchedule sched{};
  /// Residual tolerance of the limit estimates and of limit identities.
  double limit_tol = 1e-6;
  /// Tolerance of identities that hold at every ε.
  double exact_tol = 1e-9;
  /// A limit at or below zero_tol counts as zero; a distance at or above
  /// separated counts as clearly positive.
  double zero_tol = 1e-6;
  double separated = 1e-3;
  std::string model;
  std::uint64_t seed = 0;
};

struct Classification {
  Verdict verdict = Verdict::neither;
  std::vector<CheckReport> reports;

  const CheckReport* find(std::string_view id) const {
    for (const auto& r : reports)
      if (r.check == id) return &r;
    return nullptr;
  }
};

namespace detail {

/// 0 when the limit and the distance are both zero or both clearly
/// positive; 1 otherwise.
inline double separation_violation(double limit, double dist, const ClassifyOptions& o) {
  if (dist >= o.separated && limit <= o.zero_tol) return 1.0;
  if (limit >= o.separated && dist <= o.zero_tol) return 1.0;
  return 0.0;
}

inline double limit_or_inf(const LimitEstimate& e) {
  return e.converged ? 0.0 : std::numeric_limits<double>::infinity();
}

}  // namespace detail

/// A3mod: (1/|ε|) d δ_ε u converges and vanishes only on identities.
template <ChartedDeformation D>
void check_tangent_norms(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                         CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& t : s)
    for (const auto* g : {&t.u, &t.v}) {
      double lim = 0;
      detail::record_guarded(
          acc,
          [&] {
            const auto est = tangent_norm(d, *g, o.sched, o.limit_tol);
            lim = est.scalar();
            return std::max(detail::limit_or_inf(est), detail::separation_violation(lim, m.norm(*g), o));
          },
          [&] { return "g=" + describe(m, *g) + " d=" + format_number(m.norm(*g)) + " limit=" + format_number(lim); });
    }
}

/// A3: (1/|ε|) d dif(δ_ε u, δ_ε v) converges, separating exactly the pairs
/// the fiber distance separates.
template <ChartedDeformation D>
void check_tangent_distances(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                             CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& t : s) {
    double lim = 0;
    detail::record_guarded(
        acc,
        [&] {
          const auto est = tangent_distance(d, t.u, t.v, o.sched, o.limit_tol);
          lim = est.scalar();
          return std::max(detail::limit_or_inf(est), detail::separation_violation(lim, fiber_distance(m, t.u, t.v), o));
        },
        [&] {
          return "g=" + describe(m, t.u) + " h=" + describe(m, t.v) +
                 " d=" + format_number(fiber_distance(m, t.u, t.v)) + " limit=" + format_number(lim);
        });
  }
}

/// A4: Δ_ε(u, v) converges.
template <ChartedDeformation D>
void check_global_diff_limit(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                             CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& t : s)
    detail::record_guarded(
        acc, [&] { return detail::limit_or_inf(tangent_global_diff(d, t.u, t.v, o.sched, o.limit_tol)); },
        [&] { return "g=" + describe(m, t.u) + " h=" + describe(m, t.v); });
}

/// A4weak: δ^x_{1/ε} δ^{δ^x_ε u}_μ δ^x_ε v converges, for μ = 1/2 and 1/4.
template <ChartedDeformation D>
void check_limit_dilatations(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                             CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& t : s)
    for (double mu : {0.5, 0.25})
      detail::record_guarded(
          acc,
          [&] {
            return detail::limit_or_inf(tangent_op(d, TangentKind::dilatation, t.x, t.u, t.v, o.sched, o.limit_tol, mu));
          },
          [&] { return "x=" + describe(m, t.x) + " u=" + describe(m, t.u) + " v=" + describe(m, t.v); });
}

/// d̄(u, v) = d̄(Δ(u, v)) in the limit, and at every ε
/// (1/|ε|) d dif(δ_ε u, δ_ε v) = (1/|ε|) d δ_ε dif_ε(u, v).
template <ChartedDeformation D>
void check_norm_of_difference(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                              CheckAccumulator& limit_acc, CheckAccumulator& exact_acc) {
  const auto& m = d.groupoid();
  for (const auto& t : s) {
    auto witness = [&] { return "g=" + describe(m, t.u) + " h=" + describe(m, t.v); };
    detail::record_guarded(
        limit_acc,
        [&] {
          const auto dist = tangent_distance(d, t.u, t.v, o.sched, o.limit_tol);
          const auto delta = tangent_global_diff(d, t.u, t.v, o.sched, o.limit_tol);
          const auto dd = tangent_norm(d, limit_arrow(d, delta, m.source(t.u)), o.sched, o.limit_tol);
          if (!dist.converged || !delta.converged || !dd.converged) return std::numeric_limits<double>::infinity();
          return std::abs(dist.scalar() - dd.scalar());
        },
        witness);
    detail::record_guarded(
        exact_acc,
        [&] {
          // Only steps before round-off takes over in the rescaled distance.
          const auto dist = tangent_distance(d, t.u, t.v, o.sched, o.limit_tol);
          const auto eps = o.sched.values();
          double v = 0;
          for (std::size_t k = 0; k < dist.used; ++k) {
            const double e = eps[k];
            const double lhs = m.norm(dif(m, deform(d, e, t.u), deform(d, e, t.v))) / e;
            const double rhs = m.norm(deform(d, e, Induced<D>(d, e).dif(t.u, t.v))) / e;
            v = std::max(v, rel_gap(lhs, rhs));
          }
          return v;
        },
        witness);
  }
}

/// dif_ε(u, v) -> Δ(u, v) simply: the witnesses h_ε, g_ε of
/// h_ε dif_ε(u, v) g_ε = Δ(u, v) tend to identities, measured in fiber
/// charts since gauge distances magnify round-off.
template <ChartedDeformation D>
void check_dif_simple_limit(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o,
                            CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  auto offset = [&](const DArrow<D>& a) -> Eigen::VectorXd {
    return m.fiber_chart(a) - m.fiber_chart(m.identity(m.source(a)));
  };
  for (const auto& t : s)
    detail::record_guarded(
        acc,
        [&] {
          const auto delta = tangent_global_diff(d, t.u, t.v, o.sched, o.limit_tol);
          if (!delta.converged) return std::numeric_limits<double>::infinity();
          const auto lim = limit_arrow(d, delta, m.source(t.u));
          const auto est = estimate_limit(
              [&](double e) {
                const auto [h, g] = m.simple_witnesses(Induced<D>(d, e).dif(t.u, t.v), lim);
                const Eigen::VectorXd a = offset(h), b = offset(g);
                Eigen::VectorXd out(a.size() + b.size());
                out << a, b;
                return out;
              },
              o.sched, o.limit_tol);
          if (!est.converged) return std::numeric_limits<double>::infinity();
          return est.value.cwiseAbs().maxCoeff();
        },
        [&] { return "g=" + describe(m, t.u) + " h=" + describe(m, t.v); });
}

/// Runs A1/A2 for the deformation, then A3mod/A4 (strong) and A3/A4weak
/// (weak). The verdict is gs when A1, A2, A3mod and A4 pass, gw when A1,
/// A2, A3 and A4weak pass, neither otherwise. A gs verdict additionally
/// reports the norm-of-difference identities.
template <ChartedDeformation D>
Classification classify_structure(const D& d, const std::vector<FiberSample<D>>& s, const ClassifyOptions& o) {
  const auto& m = d.groupoid();
  Classification out;
  auto add = [&](const std::string& id, const CheckAccumulator& acc) {
    auto r = CheckReport::from(id, o.model, o.seed, acc);
    r.params["lambda"] = format_number(o.sched.lambda);
    r.params["k0"] = std::to_string(o.sched.k0);
    r.params["steps"] = std::to_string(o.sched.steps);
    out.reports.push_back(std::move(r));
    return acc.pass();
  };

  std::vector<DeformationSample<D>> ds;
  ds.reserve(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) {
    const double e = 0.125 + 0.875 * static_cast<double>((i * 37) % 64) / 64.0;
    const double mu = 0.125 + 0.875 * static_cast<double>((i * 11) % 64) / 64.0;
    ds.push_back({s[i].u, s[i].v, m.identity(m.source(s[i].u)), e, mu});
  }
  CheckAccumulator a1(o.exact_tol), a2(o.exact_tol), a3mod(o.zero_tol), a4(o.limit_tol), a3(o.zero_tol),
      a4w(o.limit_tol);
  check_deformation_a1(d, ds, a1);
  check_deformation_a2(d, ds, a2, o.sched, o.limit_tol);
  const bool base = add("deformation-a1", a1) & add("deformation-a2", a2);

  check_tangent_norms(d, s, o, a3mod);
  check_global_diff_limit(d, s, o, a4);
  const bool strong = add("a3mod", a3mod) & add("a4", a4);
  check_tangent_distances(d, s, o, a3);
  check_limit_dilatations(d, s, o, a4w);
  const bool weak = add("a3", a3) & add("a4weak", a4w);

  if (base && strong) {
    CheckAccumulator nd(o.limit_tol), nde(o.exact_tol);
    check_norm_of_difference(d, s, o, nd, nde);
    add("norm-of-difference", nd);
    add("norm-of-difference-exact", nde);
    if constexpr (requires(const DArrow<D>& a) { m.simple_witnesses(a, a); }) {
      CheckAccumulator ds_acc(o.limit_tol);
      check_dif_simple_limit(d, s, o, ds_acc);
      add("dif-simple-limit", ds_acc);
    }
  }
  out.verdict = base && strong ? Verdict::gs : (base && weak ? Verdict::gw : Verdict::neither);
  return out;
}

}  // namespace ngd
