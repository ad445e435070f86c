#pragma once

// Deformation of the trivial groupoid X x X lifted from a dilatation
// structure on X: δ_ε((p, q)) = (δ^q_ε p, q).

#include <string>
#include <utility>
#include <vector>

#include "ngdef/constructions/trivial.hpp"
#include "ngdef/deformation/deformation.hpp"
#include "ngdef/models/dilatation_space.hpp"

namespace ngd {

template <DilatationSpace S>
class LiftedDeformation {
 public:
  using Groupoid = TrivialGroupoid<S>;
  using Gamma = PositiveReals;
  using Arrow = typename Groupoid::Arrow;

  explicit LiftedDeformation(S space, DomainWitness w = {}) : g_(std::move(space)), w_(w) {}

  const Groupoid& groupoid() const noexcept { return g_; }
  const S& space() const noexcept { return g_.space(); }
  Gamma gamma() const noexcept { return {}; }
  DomainWitness domain_witness() const noexcept { return w_; }

  bool in_domain(double eps, const Arrow& g) const { return ball_domain(eps, g_.norm(g), w_.B); }
  Arrow apply(double eps, const Arrow& g) const { return {g_.space().dilatation(eps, g.second, g.first), g.second}; }

 private:
  Groupoid g_;
  DomainWitness w_;
};

/// Lifts (X, d, δ) after checking the action and contraction axioms of δ on
/// `samples` sampled pairs; a failure names the axiom ("A1" or "A2").
template <DilatationSpace S>
LiftedDeformation<S> lift_dilatation_structure(S space, std::uint64_t seed = 1, std::size_t samples = 200,
                                               double radius = 1.0, double tol = 1e-9) {
  SplitMix64 rng(seed);
  std::vector<DilatationSample<S>> pts;
  pts.reserve(samples);
  for (std::size_t i = 0; i < samples; ++i) pts.push_back(random_dilatation_sample(space, rng, radius));

  CheckAccumulator a1(tol, 1);
  check_dilatation_action(space, pts, a1);
  if (!a1.pass()) fail(Errc::AxiomViolation, "A1: " + a1.witnesses().front());
  CheckAccumulator a2(tol, 1);
  check_dilatation_contraction(space, pts, a2);
  if (!a2.pass()) fail(Errc::AxiomViolation, "A2: " + a2.witnesses().front());
  return LiftedDeformation<S>(std::move(space));
}

}  // namespace ngd
