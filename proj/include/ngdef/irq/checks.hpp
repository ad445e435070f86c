#pragma once

#include <algorithm>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include "ngdef/core/check.hpp"
#include "ngdef/core/error.hpp"
#include "ngdef/irq/irq.hpp"

namespace ngd {

template <class Elem, class Scale>
struct IrqSample {
  Elem x, u, v, w;
  Scale eps, mu;
};

/// P1: x ∘ (x • y) = x • (x ∘ y) = y; P2: x ∘ x = x • x = x.
template <Irq Q>
double irq_axiom_defect(const Q& q, const typename Q::Element& x, const typename Q::Element& y) {
  double v = q.gap(q.circ(x, q.bullet(x, y)), y);
  v = std::max(v, q.gap(q.bullet(x, q.circ(x, y)), y));
  v = std::max(v, q.gap(q.circ(x, x), x));
  v = std::max(v, q.gap(q.bullet(x, x), x));
  return v;
}

/// Relations (a)-(g) of a single irq, at base x.
template <Irq Q>
double irq_relations_defect(const Q& q, const typename Q::Element& x, const typename Q::Element& u,
                            const typename Q::Element& v, const typename Q::Element& w) {
  const auto xu = q.circ(x, u);
  double d = q.gap(irq_diff(q, x, u, irq_sum(q, x, u, v)), v);                          // (a)
  d = std::max(d, q.gap(irq_sum(q, x, u, irq_diff(q, x, u, v)), v));                    // (b)
  d = std::max(d, q.gap(irq_diff(q, x, u, v), irq_sum(q, xu, irq_inv(q, x, u), v)));    // (c)
  d = std::max(d, q.gap(irq_inv(q, xu, irq_inv(q, x, u)), u));                          // (d)
  d = std::max(d, q.gap(irq_sum(q, x, u, irq_sum(q, xu, v, w)),                         // (e)
                        irq_sum(q, x, irq_sum(q, x, u, v), w)));
  d = std::max(d, q.gap(irq_inv(q, x, u), irq_diff(q, x, u, x)));                       // (f)
  d = std::max(d, q.gap(irq_sum(q, x, x, u), u));                                       // (g)
  return d;
}

/// Distributivity at scales (ε, μ):
/// (x ∘_μ v) -^x_ε (x ∘_μ u) = (x ∘_{εμ} u) ∘_μ (v -^x_{εμ} u).
template <GammaIrq Q>
double distributivity_defect(const Q& q, const typename Q::Gamma::Element& e, const typename Q::Gamma::Element& mu,
                             const typename Q::Element& x, const typename Q::Element& u,
                             const typename Q::Element& v) {
  const auto em = q.gamma().product(e, mu);
  const AtScale<Q> qe(q, e), qem(q, em);
  const auto lhs = irq_diff(qe, x, q.circ_at(mu, x, u), q.circ_at(mu, x, v));
  const auto rhs = q.circ_at(mu, q.circ_at(em, x, u), irq_diff(qem, x, u, v));
  return q.gap(lhs, rhs);
}

/// The same relation with v -^x_ε u on the right, as it is usually printed.
template <GammaIrq Q>
double distributivity_literal_defect(const Q& q, const typename Q::Gamma::Element& e,
                                     const typename Q::Gamma::Element& mu, const typename Q::Element& x,
                                     const typename Q::Element& u, const typename Q::Element& v) {
  const auto em = q.gamma().product(e, mu);
  const AtScale<Q> qe(q, e);
  const auto lhs = irq_diff(qe, x, q.circ_at(mu, x, u), q.circ_at(mu, x, v));
  const auto rhs = q.circ_at(mu, q.circ_at(em, x, u), irq_diff(qe, x, u, v));
  return q.gap(lhs, rhs);
}

/// P1 and P2 at ε, the Γ-law x ∘_ε (x ∘_μ y) = x ∘_{εμ} y, and the
/// iterate rule (∘_ε)_k = ∘_{ε^k} for k = 2, -1.
template <GammaIrq Q>
void check_gamma_irq_laws(const Q& q, const std::vector<IrqSample<typename Q::Element, typename Q::Gamma::Element>>& s,
                          CheckAccumulator& acc, const std::function<std::string(const typename Q::Element&)>& show) {
  const auto& G = q.gamma();
  for (const auto& t : s) {
    detail::record_guarded(
        acc,
        [&] {
          const AtScale<Q> qe(q, t.eps);
          double d = irq_axiom_defect(qe, t.x, t.u);
          d = std::max(d, q.gap(q.circ_at(t.eps, t.x, q.circ_at(t.mu, t.x, t.u)),
                                q.circ_at(G.product(t.eps, t.mu), t.x, t.u)));
          d = std::max(d, q.gap(iterate(qe, 2, IrqDir::circ, t.x, t.u), q.circ_at(G.product(t.eps, t.eps), t.x, t.u)));
          d = std::max(d, q.gap(iterate(qe, -1, IrqDir::circ, t.x, t.u), q.circ_at(G.inverse(t.eps), t.x, t.u)));
          return d;
        },
        [&] { return "x=" + show(t.x) + " y=" + show(t.u); });
  }
}

/// Relations (a)-(g) at ε and distributivity at (ε, μ).
template <GammaIrq Q>
void check_irq_relations(const Q& q, const std::vector<IrqSample<typename Q::Element, typename Q::Gamma::Element>>& s,
                  CheckAccumulator& acc, const std::function<std::string(const typename Q::Element&)>& show) {
  for (const auto& t : s) {
    detail::record_guarded(
        acc,
        [&] {
          const AtScale<Q> qe(q, t.eps);
          return std::max(irq_relations_defect(qe, t.x, t.u, t.v, t.w),
                          distributivity_defect(q, t.eps, t.mu, t.x, t.u, t.v));
        },
        [&] { return "x=" + show(t.x) + " u=" + show(t.u) + " v=" + show(t.v) + " w=" + show(t.w); });
  }
}

}  // namespace ngd
