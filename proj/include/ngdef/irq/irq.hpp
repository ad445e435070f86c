#pragma once

// Idempotent right quasigroups (∘, •), Γ-indexed families ε -> ∘_ε, and
// their derived difference, sum and inverse.

#include <concepts>
#include <string>
#include <utility>

#include "ngdef/core/error.hpp"
#include "ngdef/deformation/scaling.hpp"

namespace ngd {

template <class Q>
concept Irq = std::copy_constructible<Q> && requires(const Q& q, const typename Q::Element& x) {
  { q.circ(x, x) } -> std::convertible_to<typename Q::Element>;
  { q.bullet(x, x) } -> std::convertible_to<typename Q::Element>;
  { q.gap(x, x) } -> std::convertible_to<double>;
};

/// ∘_ε for every ε in Γ; the bullet at ε is ∘_{ε^{-1}}.
template <class Q>
concept GammaIrq = std::copy_constructible<Q> && ScalingGroup<typename Q::Gamma> &&
    requires(const Q& q, const typename Q::Gamma::Element& e, const typename Q::Element& x) {
      { q.circ_at(e, x, x) } -> std::convertible_to<typename Q::Element>;
      { q.gamma() } -> std::convertible_to<typename Q::Gamma>;
      { q.gap(x, x) } -> std::convertible_to<double>;
    };

enum class IrqDir { circ, bullet };

template <Irq Q>
typename Q::Element apply_irq(const Q& q, IrqDir dir, const typename Q::Element& x, const typename Q::Element& y) {
  return dir == IrqDir::circ ? q.circ(x, y) : q.bullet(x, y);
}

/// (xuv) = (x ∘ u) • (x ∘ v), the difference v -^x u.
template <Irq Q>
typename Q::Element irq_diff(const Q& q, const typename Q::Element& x, const typename Q::Element& u,
                             const typename Q::Element& v) {
  return q.bullet(q.circ(x, u), q.circ(x, v));
}

/// )xuv( = x • ((x ∘ u) ∘ v), the sum u +^x v.
template <Irq Q>
typename Q::Element irq_sum(const Q& q, const typename Q::Element& x, const typename Q::Element& u,
                            const typename Q::Element& v) {
  return q.bullet(x, q.circ(q.circ(x, u), v));
}

/// inv(x, u) = (x ∘ u) • x, the inverse -^x u.
template <Irq Q>
typename Q::Element irq_inv(const Q& q, const typename Q::Element& x, const typename Q::Element& u) {
  return q.bullet(q.circ(x, u), x);
}

/// x ∘_k u: k-fold ∘ for k > 0, k-fold • for k < 0.
template <Irq Q>
typename Q::Element iterate(const Q& q, int k, IrqDir dir, const typename Q::Element& x,
                            typename Q::Element y) {
  if (k == 0) fail(Errc::ZeroIndex, "iterate index must be nonzero");
  if (k < 0) {
    k = -k;
    dir = dir == IrqDir::circ ? IrqDir::bullet : IrqDir::circ;
  }
  for (int i = 0; i < k; ++i) y = apply_irq(q, dir, x, y);
  return y;
}

/// (X, ∘_k, •_k) as an irq.
template <Irq Q>
class Iterated {
 public:
  using Element = typename Q::Element;
  Iterated(Q q, int k) : q_(std::move(q)), k_(k) {
    if (k == 0) fail(Errc::ZeroIndex, "iterate index must be nonzero");
  }
  Element circ(const Element& x, const Element& y) const { return iterate(q_, k_, IrqDir::circ, x, y); }
  Element bullet(const Element& x, const Element& y) const { return iterate(q_, k_, IrqDir::bullet, x, y); }
  double gap(const Element& a, const Element& b) const { return q_.gap(a, b); }

 private:
  Q q_;
  int k_;
};

/// The irq (X, ∘_ε, ∘_{ε^{-1}}) of a Γ-irq at a fixed scale.
template <GammaIrq Q>
class AtScale {
 public:
  using Element = typename Q::Element;
  using Scale = typename Q::Gamma::Element;
  AtScale(Q q, Scale e) : q_(std::move(q)), e_(e), inv_(q_.gamma().inverse(e)) {}
  Element circ(const Element& x, const Element& y) const { return q_.circ_at(e_, x, y); }
  Element bullet(const Element& x, const Element& y) const { return q_.circ_at(inv_, x, y); }
  double gap(const Element& a, const Element& b) const { return q_.gap(a, b); }

 private:
  Q q_;
  Scale e_, inv_;
};

/// The Z-irq k -> ∘_k of an irq, with ∘_0 the projection (x, y) -> y.
/// Scales are PowerScaling exponents.
template <Irq Q>
class ZIrq {
 public:
  using Element = typename Q::Element;
  using Gamma = PowerScaling;
  explicit ZIrq(Q q) : q_(std::move(q)) {}
  Gamma gamma() const { return {}; }
  Element circ_at(int k, const Element& x, const Element& y) const {
    return k == 0 ? y : iterate(q_, k, IrqDir::circ, x, y);
  }
  double gap(const Element& a, const Element& b) const { return q_.gap(a, b); }
  const Q& base() const noexcept { return q_; }

 private:
  Q q_;
};

}  // namespace ngd
