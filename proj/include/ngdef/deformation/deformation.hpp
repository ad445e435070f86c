#pragma once

// Deformations δ_ε of a normed groupoid, dilatations, induced structures and
// the approximate operations built from them.

#include <string>
#include <utility>

#include "ngdef/core/groupoid.hpp"
#include "ngdef/deformation/scaling.hpp"

namespace ngd {

/// Constants of the domain axiom for one bounded set of objects: the ball
/// of radius `k_radius` about the model's sampling center.
struct DomainWitness {
  double k_radius = 1.0;
  double A = 2.0;
  double B = 4.0;
  double R = 1.0;
  double eps0 = 0.5;
};

template <class D>
concept DeformationModel =
    std::copy_constructible<D> && NormedGroupoidModel<typename D::Groupoid> &&
    ScalingGroup<typename D::Gamma> &&
    requires(const D& d, const typename D::Gamma::Element& e, const ArrowOf<typename D::Groupoid>& g) {
      { d.groupoid() } -> std::convertible_to<const typename D::Groupoid&>;
      { d.gamma() } -> std::convertible_to<typename D::Gamma>;
      { d.in_domain(e, g) } -> std::convertible_to<bool>;
      { d.apply(e, g) } -> std::convertible_to<ArrowOf<typename D::Groupoid>>;
    };

template <class D>
using ScaleOf = typename D::Gamma::Element;
template <class D>
using DArrow = ArrowOf<typename D::Groupoid>;
template <class D>
using DObject = ObjectOf<typename D::Groupoid>;

/// Domain rule shared by the built-in deformations: everything for |ε| < 1,
/// the ball d(g) <= B/|ε| otherwise.
inline bool ball_domain(double abs_eps, double norm, double B) {
  return abs_eps < 1.0 || norm <= (B / abs_eps) * (1.0 + 1e-12);
}

template <DeformationModel D>
DArrow<D> deform(const D& d, const ScaleOf<D>& e, const DArrow<D>& g) {
  if (!d.in_domain(e, g))
    fail(Errc::NotInDomain, "eps=" + describe_scale(d.gamma(), e) + " g=" + describe(d.groupoid(), g));
  return d.apply(e, g);
}

/// δ^h_ε g = δ_ε(gh^{-1}) h.
template <DeformationModel D>
DArrow<D> dilatation(const D& d, const ScaleOf<D>& e, const DArrow<D>& h, const DArrow<D>& g) {
  const auto& m = d.groupoid();
  return m.product(deform(d, e, dif(m, g, h)), h);
}

/// δ̃_ε(g, h) = (δ^h_ε g, h).
template <DeformationModel D>
std::pair<DArrow<D>, DArrow<D>> tilde_deform(const D& d, const ScaleOf<D>& e, const DArrow<D>& g,
                                             const DArrow<D>& h) {
  return {dilatation(d, e, h, g), h};
}

/// The structure G_μ transported by δ_μ, together with its α-double.
template <DeformationModel D>
class Induced {
 public:
  using Arrow = DArrow<D>;
  using Object = DObject<D>;
  using Scale = ScaleOf<D>;

  Induced(D def, Scale mu) : d_(std::move(def)), mu_(mu) {}

  const D& deformation() const noexcept { return d_; }
  Scale mu() const noexcept { return mu_; }

  Object source(const Arrow& g) const { return m().source(g); }
  Object target(const Arrow& g) const { return m().target(deform(d_, mu_, g)); }

  bool composable_mu(const Arrow& g, const Arrow& h) const {
    return same_object(m(), m().target(deform(d_, mu_, h)), m().source(g));
  }

  /// m_μ(g, h) = δ_μ^{-1}(δ_μ(g) δ_μ(h)).
  Arrow product(const Arrow& g, const Arrow& h) const {
    if (!composable_mu(g, h))
      fail(Errc::NotComposableInduced, describe(m(), g) + " *_mu " + describe(m(), h));
    return back(m().product(deform(d_, mu_, g), deform(d_, mu_, h)));
  }

  Arrow inverse(const Arrow& g) const { return back(m().inverse(deform(d_, mu_, g))); }

  /// dif_μ(g, h) = δ_μ^{-1}(δ_μ(g) (δ_μ(h))^{-1}).
  Arrow dif(const Arrow& g, const Arrow& h) const {
    if (!same_object(m(), m().source(g), m().source(h)))
      fail(Errc::FiberMismatch, describe(m(), g) + " vs " + describe(m(), h));
    return back(m().product(deform(d_, mu_, g), m().inverse(deform(d_, mu_, h))));
  }

  /// d_μ(g) = d(δ_μ g) / |μ|.
  double norm(const Arrow& g) const { return m().norm(deform(d_, mu_, g)) / d_.gamma().abs(mu_); }

  /// d̃_μ(g, h) = d̃(δ_μ g, δ_μ h) / |μ|.
  double pair_norm(const Arrow& g, const Arrow& h) const {
    return fiber_distance(m(), deform(d_, mu_, g), deform(d_, mu_, h)) / d_.gamma().abs(mu_);
  }

  /// δ̃_{μ,ε}(g, h), first component; the second is h.
  Arrow tilde(const Scale& e, const Arrow& g, const Arrow& h) const {
    const auto gm = deform(d_, mu_, g);
    const auto hm = deform(d_, mu_, h);
    return back(m().product(deform(d_, e, m().product(gm, m().inverse(hm))), hm));
  }

  /// δ_μ^{-1} δ_ε δ_μ, which equals δ_ε.
  Arrow transported(const Scale& e, const Arrow& g) const {
    return back(deform(d_, e, deform(d_, mu_, g)));
  }

 private:
  const typename D::Groupoid& m() const { return d_.groupoid(); }
  Arrow back(const Arrow& g) const { return deform(d_, d_.gamma().inverse(mu_), g); }

  D d_;
  Scale mu_;
};

template <DeformationModel D>
Induced<D> induce(const D& d, const ScaleOf<D>& mu) {
  return Induced<D>(d, mu);
}

/// Δ_ε(g, h) = dif_ε(g, h) δ_ε h.
template <DeformationModel D>
DArrow<D> approx_diff(const D& d, const ScaleOf<D>& e, const DArrow<D>& g, const DArrow<D>& h) {
  return d.groupoid().product(Induced<D>(d, e).dif(g, h), deform(d, e, h));
}

/// inv_ε(g) = Δ_ε(e(α(g)), g).
template <DeformationModel D>
DArrow<D> approx_inv(const D& d, const ScaleOf<D>& e, const DArrow<D>& g) {
  const auto& m = d.groupoid();
  return approx_diff(d, e, m.identity(m.source(g)), g);
}

/// Σ_ε(g, h) = δ_{ε^{-1}}[δ_ε(g (δ_ε h)^{-1}) δ_ε h].
template <DeformationModel D>
DArrow<D> approx_sum(const D& d, const ScaleOf<D>& e, const DArrow<D>& g, const DArrow<D>& h) {
  const auto& m = d.groupoid();
  if (!same_object(m, m.source(g), m.source(h)))
    fail(Errc::FiberMismatch, describe(m, g) + " vs " + describe(m, h));
  const auto dh = deform(d, e, h);
  const auto inner = deform(d, e, m.product(g, m.inverse(dh)));
  return deform(d, d.gamma().inverse(e), m.product(inner, dh));
}

namespace detail {
template <DeformationModel D>
void require_fiber(const D& d, const DArrow<D>& u, const DArrow<D>& g) {
  const auto& m = d.groupoid();
  if (!same_object(m, m.source(u), m.source(g)))
    fail(Errc::FiberMismatch, describe(m, u) + " vs " + describe(m, g));
}
}  // namespace detail

/// Δ^u_ε(g, h) = δ^{δ^u_ε g}_{ε^{-1}} δ^u_ε h.
template <DeformationModel D>
DArrow<D> based_diff(const D& d, const ScaleOf<D>& e, const DArrow<D>& u, const DArrow<D>& g,
                     const DArrow<D>& h) {
  detail::require_fiber(d, u, g);
  detail::require_fiber(d, u, h);
  return dilatation(d, d.gamma().inverse(e), dilatation(d, e, u, g), dilatation(d, e, u, h));
}

/// inv^u_ε(g) = Δ^u_ε(g, u).
template <DeformationModel D>
DArrow<D> based_inv(const D& d, const ScaleOf<D>& e, const DArrow<D>& u, const DArrow<D>& g) {
  return based_diff(d, e, u, g, u);
}

/// Σ^u_ε(g, h) = δ^u_{ε^{-1}} δ^{δ^u_ε g}_ε h.
template <DeformationModel D>
DArrow<D> based_sum(const D& d, const ScaleOf<D>& e, const DArrow<D>& u, const DArrow<D>& g,
                    const DArrow<D>& h) {
  detail::require_fiber(d, u, g);
  detail::require_fiber(d, u, h);
  return dilatation(d, d.gamma().inverse(e), u, dilatation(d, e, dilatation(d, e, u, g), h));
}

/// A deformation restricted to the discrete scales {λ^k}.
template <DeformationModel D>
  requires std::same_as<typename D::Gamma, PositiveReals>
class PowerRestriction {
 public:
  using Groupoid = typename D::Groupoid;
  using Gamma = PowerScaling;

  PowerRestriction(D inner, double base = 0.5) : inner_(std::move(inner)), gamma_{base} {}

  const Groupoid& groupoid() const { return inner_.groupoid(); }
  Gamma gamma() const { return gamma_; }
  bool in_domain(int k, const DArrow<D>& g) const { return inner_.in_domain(gamma_.abs(k), g); }
  DArrow<D> apply(int k, const DArrow<D>& g) const { return inner_.apply(gamma_.abs(k), g); }
  DomainWitness domain_witness() const
    requires requires(const D& x) { x.domain_witness(); }
  {
    return inner_.domain_witness();
  }

 private:
  D inner_;
  PowerScaling gamma_;
};

}  // namespace ngd
