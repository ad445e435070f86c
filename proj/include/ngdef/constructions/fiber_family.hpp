#pragma once

// Correspondence between norms and right-invariant families of fiber
// distances: d(g) = d_{α(g)}(g, e(α(g))) one way, d_x(g, h) = d(gh^{-1})
// the other.

#include <functional>
#include <string>
#include <utility>

#include "ngdef/core/check.hpp"
#include "ngdef/core/groupoid.hpp"

namespace ngd {

/// (x, g, h) -> d_x(g, h) for g, h in the fiber over x.
template <class G>
using FiberDistanceFamily =
    std::function<double(const ObjectOf<G>&, const ArrowOf<G>&, const ArrowOf<G>&)>;

/// A groupoid model with the norm replaced by one read off a fiber family.
template <GroupoidModel G>
class FiberNormed {
 public:
  using Object = ObjectOf<G>;
  using Arrow = ArrowOf<G>;

  FiberNormed(G base, FiberDistanceFamily<G> family)
      : base_(std::move(base)), family_(std::move(family)) {}

  const G& base() const noexcept { return base_; }
  const FiberDistanceFamily<G>& family() const noexcept { return family_; }

  Object source(const Arrow& a) const { return base_.source(a); }
  Object target(const Arrow& a) const { return base_.target(a); }
  Arrow identity(const Object& x) const { return base_.identity(x); }
  Arrow inverse(const Arrow& a) const { return base_.inverse(a); }
  Arrow product(const Arrow& a, const Arrow& b) const { return base_.product(a, b); }
  double object_gap(const Object& x, const Object& y) const { return base_.object_gap(x, y); }
  double arrow_gap(const Arrow& a, const Arrow& b) const { return base_.arrow_gap(a, b); }

  double norm(const Arrow& g) const {
    const auto x = base_.source(g);
    return family_(x, g, base_.identity(x));
  }
  bool separable() const noexcept { return true; }

  Object random_object(SplitMix64& rng, double r) const
    requires SampledGroupoid<G>
  {
    return base_.random_object(rng, r);
  }
  Arrow random_arrow_from(SplitMix64& rng, const Object& x, double r) const
    requires SampledGroupoid<G>
  {
    return base_.random_arrow_from(rng, x, r);
  }

  std::string describe(const Arrow& a) const { return ngd::describe(base_, a); }

 private:
  G base_;
  FiberDistanceFamily<G> family_;
};

/// Right-invariance d_{ω(u)}(g, h) = d_{α(u)}(gu, hu) on sampled triples.
template <GroupoidModel G>
void check_right_invariance(const G& m, const FiberDistanceFamily<G>& family,
                            const std::vector<FiberTriple<G>>& samples, CheckAccumulator& acc) {
  for (const auto& [g, h, u] : samples) {
    const double lhs = family(m.target(u), g, h);
    const double rhs = family(m.source(u), m.product(g, u), m.product(h, u));
    acc.record(rel_gap(lhs, rhs), [&] {
      return "g=" + describe(m, g) + " h=" + describe(m, h) + " u=" + describe(m, u) +
             " lhs=" + format_number(lhs) + " rhs=" + format_number(rhs);
    });
  }
}

/// Builds the norm of a right-invariant family. Right invariance is sampled
/// on `samples` fiber triples drawn within `radius`; the first violation
/// beyond `tol` is reported.
template <SampledGroupoid G>
FiberNormed<G> norm_from_fiber_distances(const G& m, FiberDistanceFamily<G> family, SplitMix64 rng,
                                         std::size_t samples = 500, double radius = 1.0,
                                         double tol = 1e-12) {
  std::vector<FiberTriple<G>> triples;
  triples.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) triples.push_back(random_fiber_triple(m, rng, radius));
  CheckAccumulator acc(tol, 1);
  check_right_invariance(m, family, triples, acc);
  if (!acc.pass())
    fail(Errc::RightInvarianceViolated, acc.witnesses().empty() ? "?" : acc.witnesses().front());
  return FiberNormed<G>(m, std::move(family));
}

template <NormedGroupoidModel G>
FiberDistanceFamily<G> fiber_distances_from_norm(const G& m) {
  return [m](const ObjectOf<G>&, const ArrowOf<G>& g, const ArrowOf<G>& h) {
    return static_cast<double>(m.norm(m.product(g, m.inverse(h))));
  };
}

}  // namespace ngd
