#pragma once

// Action groupoid of a group acting from the left on a space: arrows (x, g)
// with α = x, ω = g(x) and (g(x), h)(x, g) = (x, hg).

#include <string>
#include <utility>

#include "ngdef/core/groupoid.hpp"

namespace ngd {

template <class A>
concept GroupAction = std::copy_constructible<A> &&
    requires(const A& a, const typename A::Point& x, const typename A::Element& g) {
      { a.act(g, x) } -> std::convertible_to<typename A::Point>;
      { a.multiply(g, g) } -> std::convertible_to<typename A::Element>;
      { a.invert(g) } -> std::convertible_to<typename A::Element>;
      { a.neutral() } -> std::convertible_to<typename A::Element>;
      { a.point_gap(x, x) } -> std::convertible_to<double>;
      { a.element_gap(g, g) } -> std::convertible_to<double>;
      { a.free() } -> std::convertible_to<bool>;
    };

/// Adds the base distance d' on points.
template <class A>
concept MetricGroupAction = GroupAction<A> && requires(const A& a, const typename A::Point& x) {
  { a.point_distance(x, x) } -> std::convertible_to<double>;
};

template <GroupAction A>
class ActionGroupoid {
 public:
  using Action = A;
  using Object = typename A::Point;
  struct Arrow {
    Object x;
    typename A::Element g;
  };

  explicit ActionGroupoid(A action) : action_(std::move(action)) {}

  const A& action() const noexcept { return action_; }

  Object source(const Arrow& a) const { return a.x; }
  Object target(const Arrow& a) const { return action_.act(a.g, a.x); }
  Arrow identity(const Object& x) const { return {x, action_.neutral()}; }
  Arrow inverse(const Arrow& a) const { return {target(a), action_.invert(a.g)}; }
  Arrow product(const Arrow& a, const Arrow& b) const { return {b.x, action_.multiply(a.g, b.g)}; }

  double object_gap(const Object& x, const Object& y) const { return action_.point_gap(x, y); }
  double arrow_gap(const Arrow& a, const Arrow& b) const {
    return std::max(action_.point_gap(a.x, b.x), action_.element_gap(a.g, b.g));
  }

  Object random_object(SplitMix64& rng, double r) const
    requires requires(const A& a, SplitMix64& g) { a.random_point(g, 1.0); }
  {
    return action_.random_point(rng, r);
  }
  Arrow random_arrow_from(SplitMix64& rng, const Object& x, double r) const
    requires requires(const A& a, SplitMix64& g, const Object& p) { a.random_element(g, p, 1.0); }
  {
    return {x, action_.random_element(rng, x, r)};
  }

  std::string describe(const Arrow& a) const {
    if constexpr (requires { action_.describe(a.x, a.g); })
      return action_.describe(a.x, a.g);
    else
      return "<action arrow>";
  }

 protected:
  A action_;
};

/// Action groupoid of a free action with d̄(x, g) = d'(g(x), x).
template <MetricGroupAction A>
class NormedActionGroupoid : public ActionGroupoid<A> {
 public:
  using typename ActionGroupoid<A>::Arrow;
  using typename ActionGroupoid<A>::Object;

  explicit NormedActionGroupoid(A action) : ActionGroupoid<A>(std::move(action)) {
    if (!this->action_.free()) fail(Errc::NotFree, "norm requires a free action");
  }

  double norm(const Arrow& a) const { return this->action_.point_distance(this->target(a), a.x); }
  bool separable() const noexcept { return true; }

  Eigen::VectorXd fiber_chart(const Arrow& a) const
    requires requires(const A& act, const typename A::Element& e) { act.element_chart(e); }
  {
    return this->action_.element_chart(a.g);
  }
  Arrow from_fiber_chart(const Eigen::VectorXd& v, const Object& base) const
    requires requires(const A& act, const Eigen::VectorXd& w) { act.element_from_chart(w); }
  {
    return {base, this->action_.element_from_chart(v)};
  }
};

}  // namespace ngd
