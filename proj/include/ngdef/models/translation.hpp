#pragma once

// R^n acting on itself by translations, and the deformation
// δ_ε(x, t) = (x, εt) of the resulting action groupoid.

#include <string>

#include <Eigen/Core>

#include "ngdef/constructions/action.hpp"
#include "ngdef/deformation/deformation.hpp"
#include "ngdef/models/euclidean.hpp"

namespace ngd {

class TranslationAction {
 public:
  using Point = Eigen::VectorXd;
  using Element = Eigen::VectorXd;

  explicit TranslationAction(int dim, bool free = true) : space_(dim), free_(free) {}

  int dim() const noexcept { return space_.dim(); }

  Point act(const Element& t, const Point& x) const { return x + t; }
  Element multiply(const Element& g, const Element& h) const { return g + h; }
  Element invert(const Element& g) const { return -g; }
  Element neutral() const { return Element::Zero(dim()); }
  double point_gap(const Point& x, const Point& y) const { return rel_gap(x, y); }
  double element_gap(const Element& g, const Element& h) const { return rel_gap(g, h); }
  double point_distance(const Point& x, const Point& y) const { return (x - y).norm(); }
  bool free() const noexcept { return free_; }

  Point random_point(SplitMix64& rng, double r) const { return space_.random_near(rng, space_.center(), r); }
  Element random_element(SplitMix64& rng, const Point&, double r) const {
    return space_.random_near(rng, neutral(), r);
  }

  Eigen::VectorXd element_chart(const Element& t) const { return t; }
  Element element_from_chart(const Eigen::VectorXd& v) const { return v; }
  std::string describe(const Point& x, const Element& t) const { return "[" + format_point(x) + ";" + format_point(t) + "]"; }

 private:
  Euclidean<double> space_;
  bool free_;
};

class TranslationDeformation {
 public:
  using Groupoid = NormedActionGroupoid<TranslationAction>;
  using Gamma = PositiveReals;
  using Arrow = Groupoid::Arrow;

  explicit TranslationDeformation(int dim, DomainWitness w = {}) : g_(TranslationAction(dim)), w_(w) {}

  const Groupoid& groupoid() const noexcept { return g_; }
  Gamma gamma() const noexcept { return {}; }
  DomainWitness domain_witness() const noexcept { return w_; }

  bool in_domain(double eps, const Arrow& a) const { return ball_domain(eps, g_.norm(a), w_.B); }
  Arrow apply(double eps, const Arrow& a) const { return {a.x, eps * a.g}; }

 private:
  Groupoid g_;
  DomainWitness w_;
};

}  // namespace ngd
