#include <cmath>
#include <limits>
#include <string>
#include <vector>

#include "doctest.h"
#include "ngdef/core/axioms.hpp"
#include "ngdef/models/registry.hpp"
#include "ngdef/models/sampler.hpp"

using namespace ngd;

namespace {

const std::string data = NGDEF_TEST_DATA;

template <class F>
Errc error_of(F&& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("no error thrown");
  return Errc::InvalidArgument;
}

using H = Heisenberg<double>;
using HP = H::Point;

// Action law broken: δ_ε δ_μ ≠ δ_{εμ}.
class Warped : public Euclidean<double> {
 public:
  using Euclidean<double>::Euclidean;
  Point dilatation(double eps, const Point& x, const Point& y) const {
    return x + (eps + 0.1 * eps * (1 - eps)) * (y - x);
  }
};

}  // namespace

TEST_CASE("finite fixtures load with their tables") {
  const auto z4 = FiniteGroupoid::load(data + "/finite/z4.json");
  CHECK(z4.object_count() == 1);
  CHECK(z4.arrow_count() == 4);
  const auto g1 = z4.find_arrow("g1"), g2 = z4.find_arrow("g2"), g3 = z4.find_arrow("g3");
  CHECK(z4.product(g1, g1) == g2);
  CHECK(z4.inverse(g1) == g3);
  CHECK(z4.norm(g2) == 2);
  CHECK(z4.identity(0) == z4.find_arrow("g0"));

  const auto pair3 = FiniteGroupoid::load(data + "/finite/pair3.json");
  const auto a = pair3.find_object("a"), b = pair3.find_object("b"), c = pair3.find_object("c");
  CHECK(object_distance(pair3, a, c) == 2.5);
  CHECK(object_distance(pair3, b, c) == 2);
  CHECK(object_distance(pair3, a, a) == 0);
  const auto ab = pair3.find_arrow("ab");
  CHECK(pair3.source(ab) == b);
  CHECK(pair3.target(ab) == a);

  const auto two = FiniteGroupoid::load(data + "/finite/two_components.json");
  CHECK(object_distance(two, two.find_object("a"), two.find_object("c")) == std::numeric_limits<double>::infinity());
  CHECK(object_distance(two, two.find_object("a"), two.find_object("b")) == 1.5);

  CHECK(error_of([&] { z4.find_arrow("nope"); }) == Errc::InvalidArgument);
}

TEST_CASE("a finite norm violating subadditivity is rejected at load") {
  // g1 g1 = g2 with |g1| = 1 and |g2| = 3.
  CHECK(error_of([] { FiniteGroupoid::load(data + "/finite/bad_triangle.json"); }) == Errc::InvalidModelSpec);
  CHECK(error_of([] { build_model("finite(" + data + "/finite/bad_triangle.json)"); }) == Errc::InvalidModelSpec);
  CHECK(error_of([] { FiniteGroupoid::load(data + "/finite/missing.json"); }) == Errc::InvalidModelSpec);
  CHECK(error_of([] { FiniteGroupoid::parse("{\"objects\": [\"o\"]"); }) == Errc::InvalidModelSpec);
  // Product table missing a composable pair.
  CHECK(error_of([] {
          FiniteGroupoid::parse(R"({"objects":["o"],"arrows":[{"id":"e","alpha":"o","omega":"o","norm":0},
            {"id":"s","alpha":"o","omega":"o","norm":1}],
            "compose":[["e","e","e"],["e","s","s"],["s","e","s"]],"inverse":[["e","e"],["s","s"]]})");
        }) == Errc::InvalidModelSpec);
}

TEST_CASE("finite arrow sampling stays within the radius") {
  const auto pair3 = FiniteGroupoid::load(data + "/finite/pair3.json");
  SplitMix64 rng(3);
  bool saw_other = false;
  for (int i = 0; i < 200; ++i) {
    const auto x = pair3.random_object(rng, 0);
    const auto a = pair3.random_arrow_from(rng, x, 1.0);
    CHECK(pair3.source(a) == x);
    CHECK(pair3.norm(a) <= 1.0);
    saw_other |= pair3.norm(a) > 0;
  }
  CHECK(saw_other);
}

TEST_CASE("bounded sampler") {
  const Euclidean<double> line(1);
  BoundedSampler s{Eigen::VectorXd::Zero(1), 1.0, 42, 3};
  const auto p = s.points(line);
  REQUIRE(p.size() == 3);
  for (const auto& x : p) CHECK(std::abs(x(0)) <= 1.0);
  const auto q = s.points(line);
  for (int i = 0; i < 3; ++i) CHECK(p[i](0) == q[i](0));
  s.seed = 43;
  CHECK(s.points(line)[0](0) != p[0](0));

  BoundedSampler bad{Eigen::VectorXd::Zero(1), 0.0, 1, 3};
  CHECK(error_of([&] { bad.points(line); }) == Errc::InvalidSampler);
  bad.radius = std::numeric_limits<double>::quiet_NaN();
  CHECK(error_of([&] { bad.points(line); }) == Errc::InvalidSampler);
  bad.radius = 1;
  bad.count = 0;
  CHECK(error_of([&] { bad.points(line); }) == Errc::InvalidSampler);

  const Eigen::VectorXd c = (Eigen::VectorXd(3) << 1, -2, 0.5).finished();
  const H heis;
  BoundedSampler hs{c, 0.3, 5, 2000};
  const auto center = heis.from_chart(c);
  for (const auto& x : hs.points(heis)) CHECK(heis.distance(center, x) <= 0.3 * (1 + 1e-12));

  const Euclidean<double> plane(2);
  BoundedSampler ps{Eigen::VectorXd::Zero(0), 2.0, 9, 2000};
  for (const auto& x : ps.points(plane)) CHECK(x.norm() <= 2.0);
}

TEST_CASE("grid points") {
  const auto g = grid_points(Eigen::VectorXd::Zero(2), 1.0, 3);
  // 3x3 grid, corners lie outside the unit disc.
  CHECK(g.size() == 5);
  for (const auto& p : g) CHECK(p.norm() <= 1.0 + 1e-12);
  CHECK(grid_points(Eigen::VectorXd::Zero(1), 0.5, 5).size() == 5);
  CHECK(error_of([] { grid_points(Eigen::VectorXd::Zero(1), 0.0, 5); }) == Errc::InvalidSampler);
  CHECK(error_of([] { grid_points(Eigen::VectorXd::Zero(1), 1.0, 1); }) == Errc::InvalidSampler);
}

TEST_CASE("model name parsing") {
  auto s = ModelSpec::parse("euclidean(3)");
  CHECK(s.kind == "euclidean");
  CHECK(s.dim == 3);
  CHECK(s.id() == "euclidean(3)");
  CHECK(ModelSpec::parse("euclidean").id() == "euclidean(1)");
  CHECK(ModelSpec::parse("euclidean", 2).id() == "euclidean(2)");
  CHECK(ModelSpec::parse("translation-action(4)", 2).dim == 2);
  CHECK(ModelSpec::parse("heisenberg").id() == "heisenberg");
  CHECK(ModelSpec::parse("finite(a/b.json)").path == "a/b.json");

  for (const char* bad : {"euclid", "euclidean(0)", "euclidean(x)", "euclidean(2", "heisenberg(3)", "finite()",
                          "finite-irq", "euclidean(65)", ""})
    CHECK_MESSAGE(error_of([&] { ModelSpec::parse(bad); }) == Errc::InvalidModelSpec, bad);
  CHECK(error_of([] { ModelSpec::parse("heisenberg", 3); }) == Errc::InvalidModelSpec);
  CHECK(error_of([] { ModelSpec::parse("euclidean", 0); }) == Errc::InvalidModelSpec);
}

TEST_CASE("every built-in model builds") {
  for (const char* id : {"euclidean(1)", "euclidean(3)", "heisenberg", "translation-action(2)", "broken(1)"}) {
    const auto h = build_model(id);
    CHECK(h.id == id);
  }
  CHECK(std::holds_alternative<HeisenbergModel>(build_model("heisenberg").model));
  CHECK(std::holds_alternative<FiniteGroupoid>(build_model("finite(" + data + "/finite/z4.json)").model));
  CHECK(std::holds_alternative<FiniteIrq>(build_model("finite-irq(" + data + "/irq/z5_core.json)").model));
  CHECK(error_of([] { build_model("finite-irq(" + data + "/irq/bad_table.json)"); }) == Errc::InvalidModelSpec);
  CHECK(model_kinds().size() == 6);
}

TEST_CASE("lifted Euclidean dilatations") {
  const auto d = std::get<EuclideanModel>(build_model("euclidean(2)").model);
  SplitMix64 rng(11);
  const Euclidean<double> sp(2);
  for (int i = 0; i < 100; ++i) {
    const auto p = sp.random_near(rng, sp.center(), 1), q = sp.random_near(rng, sp.center(), 1);
    const double e = rng.uniform(0.01, 1);
    const auto g = d.apply(e, {p, q});
    CHECK((g.first - (q + e * (p - q))).norm() <= 1e-15);
    CHECK(g.second == q);
    const auto id = d.apply(e, {q, q});
    CHECK(id.first == q);
  }
}

TEST_CASE("lifting rejects a dilatation without the action law") {
  const Errc c = error_of([] { lift_dilatation_structure(Warped(1)); });
  CHECK(c == Errc::AxiomViolation);
  try {
    lift_dilatation_structure(Warped(1));
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("A1") != std::string::npos);
  }
}

TEST_CASE("heisenberg group and gauge") {
  const H h;
  SplitMix64 rng(21);
  auto rnd = [&] { return HP(rng.uniform(-2, 2), rng.uniform(-2, 2), rng.uniform(-2, 2)); };
  CHECK(H::mul(HP(1, 0, 0), HP(0, 1, 0)) == HP(1, 1, 0.5));
  CHECK(H::gauge(HP(0, 0, 1)) == doctest::Approx(2));
  CHECK(H::gauge(HP(3, 4, 0)) == doctest::Approx(5));
  double worst_hom = 0, worst_mor = 0, worst_tri = -1, worst_inv = 0;
  for (int i = 0; i < 10000; ++i) {
    const HP u = rnd(), v = rnd(), w = rnd();
    const double e = rng.uniform(0.001, 2);
    worst_hom = std::max(worst_hom, std::abs(H::gauge(H::dil(e, w)) - e * H::gauge(w)) / std::max(1e-300, e * H::gauge(w)));
    worst_mor = std::max(worst_mor, (H::dil(e, H::mul(u, v)) - H::mul(H::dil(e, u), H::dil(e, v))).norm() /
                                        std::max(1.0, H::dil(e, H::mul(u, v)).norm()));
    worst_tri = std::max(worst_tri, h.distance(u, w) - h.distance(u, v) - h.distance(v, w));
    // Left invariance of d.
    worst_inv = std::max(worst_inv, std::abs(h.distance(H::mul(w, u), H::mul(w, v)) - h.distance(u, v)) /
                                        std::max(1.0, h.distance(u, v)));
    // Homogeneity of the based dilatation.
    const double hom = std::abs(h.distance(h.dilatation(e, w, u), h.dilatation(e, w, v)) - e * h.distance(u, v));
    CHECK(hom <= 1e-9 * std::max(1.0, h.distance(u, v)));
  }
  CHECK(worst_hom <= 1e-13);
  CHECK(worst_mor <= 1e-13);
  CHECK(worst_tri <= 1e-12);
  CHECK(worst_inv <= 1e-12);
  CHECK(H::mul(HP(1, 2, 3), H::inv(HP(1, 2, 3))) == HP::Zero());
}

TEST_CASE("translation action deformation") {
  const auto d = std::get<TranslationDeformation>(build_model("translation-action(2)").model);
  const auto& m = d.groupoid();
  SplitMix64 rng(4);
  std::vector<ComposableTriple<TranslationDeformation::Groupoid>> t;
  for (int i = 0; i < 1000; ++i) t.push_back(random_triple(m, rng, 1.0));
  CheckAccumulator ga(1e-12), na(1e-12);
  check_groupoid_axioms(m, t, ga);
  check_norm_axioms(m, t, na);
  CHECK(ga.pass());
  CHECK(na.pass());
}
