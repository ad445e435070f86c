#include <cmath>
#include <limits>
#include <vector>

#include "doctest.h"
#include "ngdef/constructions/action.hpp"
#include "ngdef/constructions/trivial.hpp"
#include "ngdef/core/axioms.hpp"
#include "ngdef/models/euclidean.hpp"
#include "ngdef/models/translation.hpp"

using namespace ngd;

namespace {

using Line = TrivialGroupoid<Euclidean<double>>;
using V = Eigen::VectorXd;

V pt(double a) { return V::Constant(1, a); }
V pt(double a, double b) { return (V(2) << a, b).finished(); }
Line::Arrow arr(double x, double y) { return Line::arrow(pt(x), pt(y)); }

const Line line{Euclidean<double>(1)};

}  // namespace

TEST_CASE("compose follows (x,y)(y,z) = (x,z) and rejects mismatched pairs") {
  const auto xz = compose(line, arr(1, 2), arr(2, 5));
  CHECK(xz.first(0) == 1);
  CHECK(xz.second(0) == 5);
  CHECK(line.source(xz)(0) == 5);
  CHECK(line.target(xz)(0) == 1);

  const auto g = arr(3, -1);
  CHECK(same_arrow(line, compose(line, g, line.identity(line.source(g))), g));

  try {
    compose(line, arr(1, 2), arr(3, 4));
    FAIL("expected NotComposable");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::NotComposable);
  }
}

TEST_CASE("inverse swaps the pair and is an involution") {
  const auto g = arr(0.5, 2);
  const auto gi = line.inverse(g);
  CHECK(gi.first(0) == 2);
  CHECK(gi.second(0) == 0.5);
  CHECK(same_arrow(line, line.inverse(gi), g));
  const auto e = line.identity(pt(7));
  CHECK(same_arrow(line, line.inverse(e), e));
  CHECK(same_arrow(line, compose(line, gi, g), line.identity(line.source(g))));
  CHECK(same_arrow(line, compose(line, g, gi), line.identity(line.target(g))));
}

TEST_CASE("dif and fiber distance in the trivial groupoid") {
  const auto d = ngd::dif(line, arr(4, 1), arr(-2, 1));
  CHECK(d.first(0) == 4);
  CHECK(d.second(0) == -2);
  CHECK(fiber_distance(line, arr(4, 1), arr(-2, 1)) == doctest::Approx(6));
  CHECK(fiber_distance(line, arr(4, 1), arr(4, 1)) == 0);
  CHECK(same_arrow(line, ngd::dif(line, arr(4, 1), arr(4, 1)), line.identity(pt(4))));
  try {
    ngd::dif(line, arr(4, 1), arr(4, 2));
    FAIL("expected FiberMismatch");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::FiberMismatch);
  }
}

TEST_CASE("dif and fiber distance in the translation action groupoid") {
  const NormedActionGroupoid<TranslationAction> act{TranslationAction(1)};
  using A = NormedActionGroupoid<TranslationAction>::Arrow;
  const A g{pt(0.3), pt(2.0)};
  const A h{pt(0.3), pt(-0.5)};
  const auto d = ngd::dif(act, g, h);
  // dif((x,s),(x,t)) = (x+t, s-t)
  CHECK(d.x(0) == doctest::Approx(0.3 - 0.5));
  CHECK(d.g(0) == doctest::Approx(2.5));
  // d_x(g, h) = d̄(h(x), gh^{-1})
  const double dx = fiber_distance(act, g, h);
  CHECK(dx == doctest::Approx(act.norm(A{act.target(h), g.g - h.g})));
  CHECK(dx == doctest::Approx(2.5));
  CHECK(act.norm(g) == doctest::Approx(2.0));
}

TEST_CASE("object distance") {
  CHECK(object_distance(line, pt(1), pt(-3)) == doctest::Approx(4));
  CHECK(object_distance(line, pt(2), pt(2)) == 0);
  const NormedActionGroupoid<TranslationAction> act{TranslationAction(1)};
  try {
    object_distance(act, pt(0), pt(1));
    FAIL("expected Unsupported");
  } catch (const Error& e) {
    CHECK(e.code() == Errc::Unsupported);
  }
}

TEST_CASE("convergence predicates") {
  const auto a = arr(1, 0);
  std::vector<Line::Arrow> constant(8, a);
  for (auto mode : {ConvergenceMode::right, ConvergenceMode::left, ConvergenceMode::simple}) {
    const auto t = converges_to(line, std::span<const Line::Arrow>(constant), a, mode, 1e-12);
    CHECK(t.converged);
    for (double r : t.residuals) CHECK(r == 0);
  }

  std::vector<Line::Arrow> seq;
  for (int k = 1; k <= 30; ++k) seq.push_back(arr(1 + std::ldexp(1.0, -k), 0));
  const auto right = converges_to(line, std::span<const Line::Arrow>(seq), a, ConvergenceMode::right, 1e-8);
  CHECK(right.converged);
  for (int k = 1; k <= 30; ++k) CHECK(right.residuals[k - 1] == doctest::Approx(std::ldexp(1.0, -k)));

  // simple mode: d(x, x_k) + d(y_k, y)
  std::vector<Line::Arrow> both;
  for (int k = 1; k <= 30; ++k) both.push_back(arr(1 + std::ldexp(1.0, -k), -std::ldexp(3.0, -k)));
  const auto simple = converges_to(line, std::span<const Line::Arrow>(both), a, ConvergenceMode::simple, 1e-8);
  CHECK(simple.converged);
  CHECK(simple.residuals[0] == doctest::Approx(0.5 + 1.5));

  // a sequence that does not approach the candidate
  std::vector<Line::Arrow> far(10, arr(2, 0));
  CHECK_FALSE(converges_to(line, std::span<const Line::Arrow>(far), a, ConvergenceMode::right, 1e-3).converged);

  // right mode needs a_k a^{-1} to be defined
  std::vector<Line::Arrow> other_source{arr(1, 5)};
  CHECK_THROWS_AS(converges_to(line, std::span<const Line::Arrow>(other_source), a, ConvergenceMode::right, 1e-3),
                  Error);
}

TEST_CASE("two accepted limits differ by at most twice the final residual") {
  SplitMix64 rng(11);
  for (int trial = 0; trial < 200; ++trial) {
    const double x = rng.uniform(-1, 1), y = rng.uniform(-1, 1);
    const double shift = rng.uniform(-1, 1) * 1e-10;
    std::vector<Line::Arrow> seq;
    for (int k = 1; k <= 40; ++k) seq.push_back(arr(x + std::ldexp(1.0, -k), y));
    const auto a = arr(x, y);
    const auto b = arr(x + shift, y);
    const double tol = 1e-9;
    const auto ta = converges_to(line, std::span<const Line::Arrow>(seq), a, ConvergenceMode::right, tol);
    const auto tb = converges_to(line, std::span<const Line::Arrow>(seq), b, ConvergenceMode::right, tol);
    if (ta.converged && tb.converged)
      CHECK(fiber_distance(line, a, b) <= ta.residuals.back() + tb.residuals.back() + 1e-15);
  }
}

TEST_CASE("groupoid and norm axioms hold on sampled Euclidean triples") {
  using Plane = TrivialGroupoid<Euclidean<double>>;
  const Plane plane{Euclidean<double>(2)};
  SplitMix64 rng(3);
  std::vector<ComposableTriple<Plane>> s;
  for (int i = 0; i < 2000; ++i) s.push_back(random_triple(plane, rng, 1.0));
  CheckAccumulator g(1e-12), n(1e-12);
  check_groupoid_axioms(plane, s, g);
  check_norm_axioms(plane, s, n);
  CHECK(g.pass());
  CHECK(n.pass());
  CHECK(g.samples() == 2000);
}

TEST_CASE("a norm violating subadditivity is caught") {
  struct Squared : TrivialGroupoid<Euclidean<double>> {
    using TrivialGroupoid::TrivialGroupoid;
    double norm(const Arrow& a) const {
      const double d = TrivialGroupoid::norm(a);
      return d * d;
    }
  };
  const Squared sq{Euclidean<double>(1)};
  std::vector<ComposableTriple<Squared>> s{{arr(2, 1), arr(1, 0), arr(0, -1)}};
  CheckAccumulator n(1e-9);
  check_norm_axioms(sq, s, n);
  CHECK_FALSE(n.pass());
  CHECK(n.witnesses().size() == 1);
}

TEST_CASE("seminorms from morphisms") {
  using Plane = TrivialGroupoid<Euclidean<double>>;
  const Plane plane{Euclidean<double>(2)};
  SplitMix64 rng(5);
  std::vector<ComposableTriple<Plane>> s;
  for (int i = 0; i < 200; ++i) s.push_back(random_triple(plane, rng, 1.0));

  SUBCASE("identity morphism gives the norm itself") {
    GroupoidMorphism<Plane, Plane> id{[](const V& x) { return x; }, [](const Plane::Arrow& a) { return a; }};
    const auto fam = seminorms_from_morphisms(plane, plane, {id}, s);
    REQUIRE(fam.size() == 1);
    for (const auto& t : s) CHECK(fam[0](t.a) == plane.norm(t.a));
  }

  SUBCASE("coordinate projections give |p_i - q_i|") {
    std::vector<GroupoidMorphism<Plane, Line>> proj;
    for (int i = 0; i < 2; ++i)
      proj.push_back({[i](const V& x) { return pt(x(i)); },
                      [i](const Plane::Arrow& a) { return arr(a.first(i), a.second(i)); }});
    const auto fam = seminorms_from_morphisms(plane, line, proj, s);
    REQUIRE(fam.size() == 2);
    const Plane::Arrow g{pt(1, 5), pt(-2, 4.5)};
    CHECK(fam[0](g) == doctest::Approx(3));
    CHECK(fam[1](g) == doctest::Approx(0.5));
    CheckAccumulator acc(1e-12);
    check_seminorm_family(plane, fam, s, acc);
    CHECK(acc.pass());
  }

  SUBCASE("a non-morphism is rejected") {
    GroupoidMorphism<Plane, Line> bad{[](const V& x) { return pt(x(0)); },
                                      [](const Plane::Arrow& a) { return arr(2 * a.first(0), a.second(0)); }};
    try {
      seminorms_from_morphisms(plane, line, {bad}, s);
      FAIL("expected NotAMorphism");
    } catch (const Error& e) {
      CHECK(e.code() == Errc::NotAMorphism);
    }
  }

  SUBCASE("a family that does not separate arrows is rejected") {
    std::vector<GroupoidMorphism<Plane, Line>> only_first{
        {[](const V& x) { return pt(x(0)); }, [](const Plane::Arrow& a) { return arr(a.first(0), a.second(0)); }}};
    std::vector<ComposableTriple<Plane>> vertical{{Plane::Arrow{pt(0, 1), pt(0, 0)}, Plane::Arrow{pt(0, 0), pt(0, 0)},
                                                   Plane::Arrow{pt(0, 0), pt(0, 0)}}};
    CHECK_THROWS_AS(seminorms_from_morphisms(plane, line, only_first, vertical), Error);
  }
}
