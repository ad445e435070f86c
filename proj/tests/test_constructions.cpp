#include <cmath>
#include <vector>

#include "doctest.h"
#include "ngdef/constructions/alpha_double.hpp"
#include "ngdef/constructions/fiber_family.hpp"
#include "ngdef/constructions/trivial.hpp"
#include "ngdef/core/axioms.hpp"
#include "ngdef/models/euclidean.hpp"
#include "ngdef/models/finite_metric.hpp"
#include "ngdef/models/translation.hpp"

using namespace ngd;

namespace {
using Line = TrivialGroupoid<Euclidean<double>>;
using Plane = TrivialGroupoid<Euclidean<double>>;
using V = Eigen::VectorXd;
V pt(double a) { return V::Constant(1, a); }
Line::Arrow arr(double x, double y) { return Line::arrow(pt(x), pt(y)); }
}  // namespace

TEST_CASE("trivial groupoid over finite spaces") {
  const TrivialGroupoid<FiniteMetricSpace> one{FiniteMetricSpace({"p"}, Eigen::MatrixXd::Zero(1, 1))};
  const auto a1 = one.arrows();
  REQUIRE(a1.size() == 1);
  CHECK(is_identity(one, a1[0]));
  CHECK(one.norm(a1[0]) == 0);

  Eigen::MatrixXd d(2, 2);
  d << 0, 3, 3, 0;
  const TrivialGroupoid<FiniteMetricSpace> two{FiniteMetricSpace({"a", "b"}, d)};
  CHECK(two.arrows().size() == 4);
  CHECK(two.norm(two.arrow(0, 1)) == 3);
  CHECK(two.norm(two.identity(1)) == 0);
  CHECK(object_distance(two, 0, 1) == 3);
  const auto ab = compose(two, two.arrow(0, 1), two.arrow(1, 0));
  CHECK((ab.first == 0 && ab.second == 0));

  Eigen::MatrixXd bad(2, 2);
  bad << 0, 1, 2, 0;
  CHECK_THROWS_AS(FiniteMetricSpace({"a", "b"}, bad), Error);
}

TEST_CASE("alpha-double groupoid") {
  const AlphaDouble<Line> dbl{Line{Euclidean<double>(1)}};
  const auto g = arr(2, 0.5), h = arr(-1, 0.5), l = arr(4, 0.5);

  const auto id = dbl.identity(g);
  CHECK(dbl.norm(id) == 0);
  CHECK(is_identity(dbl, id));

  // (g, h)(h, l) = (g, l)
  const auto gl = compose(dbl, dbl.pair(g, h), dbl.pair(h, l));
  CHECK(dbl.arrow_gap(gl, dbl.pair(g, l)) == 0);
  CHECK_THROWS_AS(dbl.pair(g, arr(1, 2)), Error);

  // trivial input: norm of ((x,z),(y,z)) is d(x,y)
  CHECK(dbl.norm(dbl.pair(g, h)) == doctest::Approx(3));
  CHECK(dbl.norm(dbl.inverse(dbl.pair(g, h))) == doctest::Approx(3));

  SplitMix64 rng(17);
  std::vector<ComposableTriple<AlphaDouble<Line>>> s;
  for (int i = 0; i < 2000; ++i) s.push_back(random_triple(dbl, rng, 1.0));
  CheckAccumulator ga(1e-12), na(1e-12);
  check_groupoid_axioms(dbl, s, ga);
  check_norm_axioms(dbl, s, na);
  CHECK(ga.pass());
  CHECK(na.pass());

  // dif is a norm-preserving morphism onto the base
  GroupoidMorphism<AlphaDouble<Line>, Line> difm{
      [&](const Line::Arrow& o) { return dbl.dif_object(o); },
      [&](const AlphaDouble<Line>::Arrow& a) { return dbl.dif_of(a); }};
  CHECK(morphism_defect(dbl, dbl.base(), difm, s) <= 1e-12);
  for (const auto& t : s) CHECK(dbl.norm(t.a) == doctest::Approx(dbl.base().norm(dbl.dif_of(t.a))));
}

TEST_CASE("action groupoids") {
  using Act = NormedActionGroupoid<TranslationAction>;
  const Act act{TranslationAction(1)};
  const Act::Arrow a{pt(2), pt(-0.75)};
  CHECK(act.norm(a) == doctest::Approx(0.75));
  CHECK(act.target(a)(0) == doctest::Approx(1.25));
  // (g(x), h)(x, g) = (x, hg)
  const Act::Arrow b{act.target(a), pt(3)};
  const auto ba = compose(act, b, a);
  CHECK(ba.x(0) == 2);
  CHECK(ba.g(0) == doctest::Approx(2.25));

  try {
    Act nonfree{TranslationAction(1, false)};
    FAIL("expected NotFree");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotFree);
  }
  const ActionGroupoid<TranslationAction> bare{TranslationAction(1, false)};
  CHECK(bare.target(a)(0) == doctest::Approx(1.25));

  SplitMix64 rng(23);
  std::vector<ComposableTriple<Act>> s;
  for (int i = 0; i < 2000; ++i) s.push_back(random_triple(act, rng, 1.0));
  CheckAccumulator ga(1e-12), na(1e-12);
  check_groupoid_axioms(act, s, ga);
  check_norm_axioms(act, s, na);
  CHECK(ga.pass());
  CHECK(na.pass());
}

TEST_CASE("norms and fiber distance families") {
  const Plane plane{Euclidean<double>(2)};

  SUBCASE("trivial groupoid: d_y is d on every fiber") {
    FiberDistanceFamily<Plane> fam = [&](const V&, const Plane::Arrow& g, const Plane::Arrow& h) {
      return (g.first - h.first).norm();
    };
    const auto normed = norm_from_fiber_distances(plane, fam, SplitMix64(1));
    SplitMix64 rng(2);
    for (int i = 0; i < 200; ++i) {
      const auto [g, h, u] = random_fiber_triple(plane, rng, 1.0);
      CHECK(normed.norm(g) == doctest::Approx(plane.norm(g)));
      CHECK(normed.norm(plane.identity(plane.source(g))) == 0);
      const auto back = fiber_distances_from_norm(normed);
      CHECK(rel_gap(back(plane.source(g), g, h), fam(plane.source(g), g, h)) <= 1e-12);
    }
  }

  SUBCASE("a family rescaled per fiber is not right invariant") {
    FiberDistanceFamily<Plane> fam = [&](const V& y, const Plane::Arrow& g, const Plane::Arrow& h) {
      return (1.0 + y.squaredNorm()) * (g.first - h.first).norm();
    };
    try {
      norm_from_fiber_distances(plane, fam, SplitMix64(1));
      FAIL("expected RightInvarianceViolated");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::RightInvarianceViolated);
      CHECK(std::string(e.what()).find("u=") != std::string::npos);
    }
  }

  SUBCASE("action groupoid: d_x(g, h) = d̄(h(x), gh^{-1})") {
    using Act = NormedActionGroupoid<TranslationAction>;
    const Act act{TranslationAction(2)};
    const auto fam = fiber_distances_from_norm(act);
    SplitMix64 rng(4);
    std::vector<FiberTriple<Act>> s;
    for (int i = 0; i < 500; ++i) s.push_back(random_fiber_triple(act, rng, 1.0));
    CheckAccumulator acc(1e-12);
    check_right_invariance(act, fam, s, acc);
    CHECK(acc.pass());
    for (const auto& [g, h, u] : s) {
      const Act::Arrow q{act.target(h), g.g - h.g};
      CHECK(fam(g.x, g, h) == doctest::Approx(act.norm(q)));
    }
  }
}
