#pragma once

// α-double groupoid G x_α G: same-source pairs with (g, h)(h, l) = (g, l).
// Objects are the diagonal pairs (g, g), identified with g itself.

#include <string>
#include <utility>

#include "ngdef/core/groupoid.hpp"

namespace ngd {

template <NormedGroupoidModel G>
class AlphaDouble {
 public:
  using Base = G;
  using Object = ArrowOf<G>;
  struct Arrow {
    ArrowOf<G> first, second;  // (g, h): ω = g, α = h
  };

  explicit AlphaDouble(G base) : base_(std::move(base)) {}

  const G& base() const noexcept { return base_; }

  Arrow pair(const ArrowOf<G>& g, const ArrowOf<G>& h) const {
    if (!same_object(base_, base_.source(g), base_.source(h)))
      fail(Errc::FiberMismatch, ngd::describe(base_, g) + " vs " + ngd::describe(base_, h));
    return {g, h};
  }

  Object source(const Arrow& a) const { return a.second; }
  Object target(const Arrow& a) const { return a.first; }
  Arrow identity(const Object& g) const { return {g, g}; }
  Arrow inverse(const Arrow& a) const { return {a.second, a.first}; }
  Arrow product(const Arrow& a, const Arrow& b) const { return {a.first, b.second}; }

  double object_gap(const Object& g, const Object& h) const { return base_.arrow_gap(g, h); }
  double arrow_gap(const Arrow& a, const Arrow& b) const {
    return std::max(base_.arrow_gap(a.first, b.first), base_.arrow_gap(a.second, b.second));
  }

  /// d̃(g, h) = d(gh^{-1}).
  double norm(const Arrow& a) const { return base_.norm(base_.product(a.first, base_.inverse(a.second))); }
  bool separable() const { return base_.separable(); }

  /// dif : G x_α G -> G as a map on arrows.
  ArrowOf<G> dif_of(const Arrow& a) const { return ngd::dif(base_, a.first, a.second); }
  /// On objects dif sends (g, g) to e(ω(g)).
  ObjectOf<G> dif_object(const Object& g) const { return base_.target(g); }

  Object random_object(SplitMix64& rng, double r) const
    requires SampledGroupoid<G>
  {
    return base_.random_arrow_from(rng, base_.random_object(rng, r), r);
  }
  /// (k h, h) with d(k) <= r, so the pair's norm is d(k).
  Arrow random_arrow_from(SplitMix64& rng, const Object& h, double r) const
    requires SampledGroupoid<G>
  {
    const auto k = base_.random_arrow_from(rng, base_.target(h), r);
    return {base_.product(k, h), h};
  }

  std::string describe(const Arrow& a) const {
    return "[" + ngd::describe(base_, a.first) + ";" + ngd::describe(base_, a.second) + "]";
  }
  std::string describe_object(const Object& g) const { return ngd::describe(base_, g); }

 private:
  G base_;
};

}  // namespace ngd
