#pragma once

// The Γ-irq g ∘_ε h = δ^g_ε h on a fiber of a deformation, and its
// comparison with the based operations of the deformation.

#include <algorithm>
#include <functional>
#include <string>
#include <utility>
#include <vector>

#include "ngdef/deformation/deformation.hpp"
#include "ngdef/irq/checks.hpp"

namespace ngd {

template <DeformationModel D>
class FiberIrq {
 public:
  using Element = DArrow<D>;
  using Gamma = typename D::Gamma;
  using Object = DObject<D>;

  FiberIrq(D d, Object x) : d_(std::move(d)), x_(std::move(x)) {}

  Gamma gamma() const { return d_.gamma(); }
  Element circ_at(const ScaleOf<D>& e, const Element& g, const Element& h) const { return dilatation(d_, e, g, h); }
  double gap(const Element& a, const Element& b) const { return d_.groupoid().arrow_gap(a, b); }

  const D& deformation() const noexcept { return d_; }
  const Object& object() const noexcept { return x_; }
  /// e(x), the base point of the fiber.
  Element unit() const { return d_.groupoid().identity(x_); }
  std::string describe(const Element& a) const { return ngd::describe(d_.groupoid(), a); }

  Element random_element(SplitMix64& rng, double radius) const
    requires SampledGroupoid<typename D::Groupoid>
  {
    return d_.groupoid().random_arrow_from(rng, x_, radius);
  }

 private:
  D d_;
  Object x_;
};

/// Tuples (x, u, v, w) from the fiber ball of `radius`, scales in [eps_lo, 1].
template <DeformationModel D>
  requires SampledGroupoid<typename D::Groupoid> && std::same_as<ScaleOf<D>, double>
std::vector<IrqSample<DArrow<D>, double>> sample_fiber_irq(const FiberIrq<D>& q, SplitMix64& rng, std::size_t count,
                                                           double radius = 0.25, double eps_lo = 0.125) {
  std::vector<IrqSample<DArrow<D>, double>> out;
  out.reserve(count);
  for (std::size_t i = 0; i < count; ++i) {
    auto x = q.random_element(rng, radius);
    auto u = q.random_element(rng, radius);
    auto v = q.random_element(rng, radius);
    auto w = q.random_element(rng, radius);
    const double e = rng.uniform(eps_lo, 1.0);
    const double mu = rng.uniform(eps_lo, 1.0);
    out.push_back({std::move(x), std::move(u), std::move(v), std::move(w), e, mu});
  }
  return out;
}

/// u +^x_ε v = Σ^x_ε(u, v), v -^x_ε u = Δ^x_ε(u, v), -^x_ε u = inv^x_ε(u).
template <DeformationModel D>
void check_fiber_agreement(const FiberIrq<D>& q, const std::vector<IrqSample<DArrow<D>, ScaleOf<D>>>& s,
                           CheckAccumulator& acc) {
  const auto& d = q.deformation();
  for (const auto& t : s) {
    detail::record_guarded(
        acc,
        [&] {
          const AtScale<FiberIrq<D>> qe(q, t.eps);
          double v = q.gap(irq_sum(qe, t.x, t.u, t.v), based_sum(d, t.eps, t.x, t.u, t.v));
          v = std::max(v, q.gap(irq_diff(qe, t.x, t.u, t.v), based_diff(d, t.eps, t.x, t.u, t.v)));
          v = std::max(v, q.gap(irq_inv(qe, t.x, t.u), based_inv(d, t.eps, t.x, t.u)));
          return v;
        },
        [&] { return "x=" + q.describe(t.x) + " u=" + q.describe(t.u) + " v=" + q.describe(t.v); });
  }
}

}  // namespace ngd
