#pragma once

// Sampled checks of the deformation axioms and of the identities relating
// the derived operations.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ngdef/core/check.hpp"
#include "ngdef/core/schedule.hpp"
#include "ngdef/deformation/deformation.hpp"

namespace ngd {

/// Fiber triple (g, h over α(g); u with ω(u) = α(g)) and two scales.
template <DeformationModel D>
struct DeformationSample {
  DArrow<D> g, h, u;
  double eps, mu;
};

/// Draws samples inside the region where every derived operation is
/// defined: arrows of norm <= radius over objects within radius of the
/// center, scales in [eps_lo, 1].
template <DeformationModel D>
  requires SampledGroupoid<typename D::Groupoid>
std::vector<DeformationSample<D>> sample_deformation(const D& d, SplitMix64& rng, std::size_t count,
                                                     double radius = 0.25, double eps_lo = 0.125) {
  std::vector<DeformationSample<D>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto [g, h, u] = random_fiber_triple(d.groupoid(), rng, radius);
    const double e = rng.uniform(eps_lo, 1.0);
    const double mu = rng.uniform(eps_lo, 1.0);
    out.push_back({std::move(g), std::move(h), std::move(u), e, mu});
  }
  return out;
}

namespace detail {
template <DeformationModel D>
std::string sample_witness(const D& d, const DeformationSample<D>& s) {
  const auto& m = d.groupoid();
  return "g=" + describe(m, s.g) + " h=" + describe(m, s.h) + " u=" + describe(m, s.u) +
         " eps=" + format_number(s.eps) + " mu=" + format_number(s.mu);
}
}  // namespace detail

/// α δ_ε = α, δ_ε δ_μ = δ_{εμ}, δ_{ε^{-1}} δ_ε = id, δ_e = id.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
void check_deformation_a1(const D& d, const std::vector<DeformationSample<D>>& samples, CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& s : samples) {
    detail::record_guarded(
        acc,
        [&] {
          const auto dg = deform(d, s.eps, s.g);
          double v = m.object_gap(m.source(dg), m.source(s.g));
          v = std::max(v, m.arrow_gap(deform(d, s.eps, deform(d, s.mu, s.g)), deform(d, s.eps * s.mu, s.g)));
          v = std::max(v, m.arrow_gap(deform(d, 1.0 / s.eps, dg), s.g));
          v = std::max(v, m.arrow_gap(deform(d, 1.0, s.g), s.g));
          return v;
        },
        [&] { return detail::sample_witness(d, s); });
  }
}

/// Uniform convergence of f_ε to f over `samples` along the
/// schedule. Per step the sup residual may not increase; at the end it must
/// be below `limit_tol`. Sources must agree at every step.
template <NormedGroupoidModel G, class Sample, class FEps, class F>
void check_uniform_convergence(const G& m, const std::vector<Sample>& samples, FEps&& f_eps, F&& f,
                               const EpsSchedule& sched, ConvergenceMode mode, double limit_tol,
                               CheckAccumulator& acc) {
  double prev = std::numeric_limits<double>::infinity();
  for (int k = 0; k < sched.steps; ++k) {
    const double e = sched.eps(k);
    double sup = 0.0, alpha_gap = 0.0;
    std::string worst;
    for (const auto& s : samples) {
      double r;
      try {
        const auto fe = f_eps(e, s);
        const auto fl = f(s);
        alpha_gap = std::max(alpha_gap, m.object_gap(m.source(fe), m.source(fl)));
        switch (mode) {
          case ConvergenceMode::right: r = m.norm(compose(m, fe, m.inverse(fl))); break;
          case ConvergenceMode::left: r = m.norm(compose(m, m.inverse(fe), fl)); break;
          default:
            if constexpr (requires { m.simple_witnesses(fe, fl); }) {
              const auto [hh, gg] = m.simple_witnesses(fe, fl);
              r = m.norm(hh) + m.norm(gg);
            } else {
              fail(Errc::Unsupported, "simple convergence needs simple_witnesses");
            }
        }
      } catch (const Error& err) {
        if (err.code() == Errc::Unsupported) throw;
        r = std::numeric_limits<double>::infinity();
      }
      if (r > sup) sup = r;
    }
    acc.record(alpha_gap, [&] { return "source changed at eps=" + format_number(e); });
    const double rise = std::isfinite(prev) ? std::max(0.0, sup - prev) : (std::isfinite(sup) ? 0.0 : sup);
    acc.record(rise, [&] { return "sup residual rose to " + format_number(sup) + " at eps=" + format_number(e); });
    prev = sup;
  }
  acc.record(std::max(0.0, prev - limit_tol), [&] { return "final sup residual " + format_number(prev); });
}

/// δ_ε e(x) = e(x), and d δ_ε -> 0 uniformly on the samples.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
void check_deformation_a2(const D& d, const std::vector<DeformationSample<D>>& samples, CheckAccumulator& acc,
                          const EpsSchedule& sched = {}, double limit_tol = 1e-6) {
  const auto& m = d.groupoid();
  for (const auto& s : samples) {
    detail::record_guarded(
        acc,
        [&] {
          const auto e = m.identity(m.source(s.g));
          return m.arrow_gap(deform(d, s.eps, e), e);
        },
        [&] { return detail::sample_witness(d, s); });
  }
  check_uniform_convergence(
      m, samples, [&](double e, const DeformationSample<D>& s) { return deform(d, e, s.g); },
      [&](const DeformationSample<D>& s) { return m.identity(m.source(s.g)); }, sched, ConvergenceMode::right,
      limit_tol, acc);
}

/// Domain axiom, sampled. Arrow sets are read as sublevel sets of the norm,
/// and membership g in δ_ε(S) as: g in dom(ε^{-1}) and δ_{ε^{-1}} g in S.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double> && SampledGroupoid<typename D::Groupoid>
void check_deformation_a0(const D& d, const DomainWitness& w, SplitMix64& rng, std::size_t count,
                          CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  auto flag = [](bool ok) { return ok ? 0.0 : 1.0; };
  for (std::size_t i = 0; i < count; ++i) {
    // ε = 1 is the tightest case of the chain, so it is always exercised.
    const double e = (i % 8 == 0) ? 1.0 : std::ldexp(1.0, -static_cast<int>(rng.below(20))) * rng.uniform(1.0, 2.0);
    const double ea = std::min(e, 1.0);
    const double ie = 1.0 / ea;
    const auto x = m.random_object(rng, w.k_radius);
    std::string where;
    auto witness = [&] { return where + " eps=" + format_number(ea) + " x=" + describe_object(m, x); };

    // (i) objects lie in every domain; domains are closed under inversion
    const auto wide = m.random_arrow_from(rng, x, 2 * w.B);
    where = "(i) g=" + describe(m, wide);
    acc.record(flag(d.in_domain(ea, m.identity(x)) && d.in_domain(ie, m.identity(x))), witness);
    acc.record(flag(d.in_domain(ea, wide) == d.in_domain(ea, m.inverse(wide)) &&
                    d.in_domain(ie, wide) == d.in_domain(ie, m.inverse(wide))),
               witness);

    detail::record_guarded(
        acc,
        [&] {
          double v = 0.0;
          // d^{-1}(|ε|) ⊂ δ_ε(d^{-1}(A))
          const auto small = m.random_arrow_from(rng, x, ea);
          where = "chain-1 g=" + describe(m, small);
          v = std::max(v, flag(d.in_domain(ie, small)));
          v = std::max(v, excess(m.norm(deform(d, ie, small)), w.A));
          // δ_ε(d^{-1}(A)) ⊂ dom(ε^{-1})
          const auto mid = m.random_arrow_from(rng, x, w.A);
          where += " chain-2 h=" + describe(m, mid);
          v = std::max(v, flag(d.in_domain(ea, mid) && d.in_domain(ie, deform(d, ea, mid))));
          // dom(ε^{-1}) ⊂ δ_ε(d^{-1}(B))
          const auto inv_dom = m.random_arrow_from(rng, x, 1.5 * w.B * ea);
          if (d.in_domain(ie, inv_dom)) {
            where += " chain-3 g=" + describe(m, inv_dom);
            v = std::max(v, excess(m.norm(deform(d, ie, inv_dom)), w.B));
          }
          // δ_ε(d^{-1}(B)) ⊂ δ_ε(dom(ε))
          const auto big = m.random_arrow_from(rng, x, w.B);
          where += " chain-4 h=" + describe(m, big);
          v = std::max(v, flag(d.in_domain(ea, big)));
          return v;
        },
        witness);

    // (iii) dif(δ_ε g, δ_ε h) in dom(ε^{-1}) for d(g), d(h) <= R and |ε| <= ε0
    const double es = std::min(ea, w.eps0);
    const auto g = m.random_arrow_from(rng, x, w.R);
    const auto h = m.random_arrow_from(rng, x, w.R);
    where = "(iii) g=" + describe(m, g) + " h=" + describe(m, h);
    detail::record_guarded(
        acc, [&] { return flag(d.in_domain(1.0 / es, dif(m, deform(d, es, g), deform(d, es, h)))); }, witness);
  }
}

/// dif δ̃_ε = δ_ε dif, δ̃_ε(g, h) = (δ^h_ε g, h), and δ̃ is an action.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
void check_tilde_deform(const D& d, const std::vector<DeformationSample<D>>& samples, CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& s : samples) {
    detail::record_guarded(
        acc,
        [&] {
          const auto [a, b] = tilde_deform(d, s.eps, s.g, s.h);
          double v = m.arrow_gap(b, s.h);
          v = std::max(v, m.arrow_gap(dif(m, a, b), deform(d, s.eps, dif(m, s.g, s.h))));
          v = std::max(v, m.arrow_gap(a, dilatation(d, s.eps, s.h, s.g)));
          const auto [a2, b2] = tilde_deform(d, s.mu, a, b);
          v = std::max(v, m.arrow_gap(a2, tilde_deform(d, s.eps * s.mu, s.g, s.h).first));
          v = std::max(v, m.arrow_gap(tilde_deform(d, 1.0 / s.eps, a, b).first, s.g));
          // dif preserves norms: d̃(g, h) = d(dif(g, h))
          v = std::max(v, rel_gap(fiber_distance(m, a, b), m.norm(dif(m, a, b))));
          return v;
        },
        [&] { return detail::sample_witness(d, s); });
  }
}

/// Commutativity of the induced diagram at μ: dif_μ is the difference map of
/// m_μ, it is an isometry for d̃_μ and d_μ, it commutes with the transported
/// deformations, and the transported δ_ε equals δ_ε.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
void check_induced(const D& d, const std::vector<DeformationSample<D>>& samples, CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& s : samples) {
    detail::record_guarded(
        acc,
        [&] {
          const Induced<D> ind(d, s.mu);
          const auto dm = ind.dif(s.g, s.h);
          double v = m.arrow_gap(dm, ind.product(s.g, ind.inverse(s.h)));
          v = std::max(v, rel_gap(ind.pair_norm(s.g, s.h), ind.norm(dm)));
          v = std::max(v, m.object_gap(ind.source(dm), ind.target(s.h)));
          v = std::max(v, m.arrow_gap(ind.dif(ind.tilde(s.eps, s.g, s.h), s.h), deform(d, s.eps, dm)));
          v = std::max(v, m.arrow_gap(ind.transported(s.eps, s.g), deform(d, s.eps, s.g)));
          // δ̃_{μ,ε} is δ̃_ε conjugated by δ_μ x δ_μ
          const auto t = ind.tilde(s.eps, s.g, s.h);
          v = std::max(v,
                       m.arrow_gap(deform(d, s.mu, t),
                                   tilde_deform(d, s.eps, deform(d, s.mu, s.g), deform(d, s.mu, s.h)).first));
          return v;
        },
        [&] { return detail::sample_witness(d, s); });
  }
}

/// Δ_ε(hu^{-1}, gu^{-1}) = Δ^u_ε(g, h) u^{-1} and the same for Σ.
template <DeformationModel D>
  requires std::same_as<ScaleOf<D>, double>
void check_based_global(const D& d, const std::vector<DeformationSample<D>>& samples, CheckAccumulator& acc) {
  const auto& m = d.groupoid();
  for (const auto& s : samples) {
    // u^{-1} of the sample shares the source of g and h
    const auto u = m.inverse(s.u);
    detail::record_guarded(
        acc,
        [&] {
          const auto uinv = m.inverse(u);
          const auto hu = m.product(s.h, uinv);
          const auto gu = m.product(s.g, uinv);
          double v = m.arrow_gap(approx_diff(d, s.eps, hu, gu), m.product(based_diff(d, s.eps, u, s.g, s.h), uinv));
          v = std::max(v, m.arrow_gap(approx_sum(d, s.eps, hu, gu), m.product(based_sum(d, s.eps, u, s.g, s.h), uinv)));
          return v;
        },
        [&] { return detail::sample_witness(d, s); });
  }
}

}  // namespace ngd
