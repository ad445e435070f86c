#include <algorithm>
#include <set>
#include <string>

#include "doctest.h"
#include "ngdef/analysis/suites.hpp"

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

SuiteOptions small(std::size_t n, std::uint64_t seed = 1) {
  SuiteOptions o;
  o.samples = n;
  o.seed = seed;
  return o;
}

bool has(const std::vector<std::string>& v, const std::string& s) { return std::find(v.begin(), v.end(), s) != v.end(); }

}  // namespace

TEST_CASE("suite ids") {
  const auto& ids = suite_ids();
  CHECK(ids.size() == 20);
  CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == ids.size());
  for (const auto& id : ids) CHECK(default_tolerance(id) >= 0);
  // Domain inclusions are boolean.
  CHECK(default_tolerance("deformation-a0") == 0);
  CHECK(default_tolerance("groupoid-axioms") == 1e-9);
  CHECK(error_of([] { default_tolerance("nope"); }) == Errc::UnknownSuite);

  const auto e = default_suites(build_model("euclidean(1)"));
  CHECK(e.size() == ids.size());
  const auto h = default_suites(build_model("heisenberg"));
  CHECK_FALSE(has(h, "closed-forms"));
  CHECK(has(h, "classify"));
  const auto f = default_suites(build_model("finite(" + data + "/finite/z4.json)"));
  CHECK(f == std::vector<std::string>{"groupoid-axioms", "norm-axioms", "alpha-double", "right-invariance"});
  CHECK(default_suites(build_model("finite-irq(" + data + "/irq/z7_affine.json)")).size() == 2);
}

TEST_CASE("unknown and unsupported suites") {
  const auto e = build_model("euclidean(1)");
  const auto z4 = build_model("finite(" + data + "/finite/z4.json)");
  const auto irq = build_model("finite-irq(" + data + "/irq/z5_core.json)");
  CHECK(error_of([&] { run_check_suite(e, "no-such-suite"); }) == Errc::UnknownSuite);
  CHECK(error_of([&] { run_check_suite(build_model("heisenberg"), "closed-forms", small(10)); }) == Errc::Unsupported);
  CHECK(error_of([&] { run_check_suite(z4, "deformation-a0", small(10)); }) == Errc::Unsupported);
  CHECK(error_of([&] { run_check_suite(irq, "groupoid-axioms", small(10)); }) == Errc::Unsupported);
  CHECK(error_of([&] { run_check_suite(e, "norm-axioms", small(0)); }) == Errc::InvalidArgument);
  auto bad = small(10);
  bad.sched.lambda = 1.5;
  CHECK(error_of([&] { run_check_suite(e, "norm-axioms", bad); }) == Errc::InvalidArgument);
}

TEST_CASE("suites pass on the continuous models") {
  for (const char* id : {"euclidean(2)", "heisenberg", "translation-action(1)"}) {
    const auto m = build_model(id);
    for (const auto& s : default_suites(m)) {
      const auto r = run_check_suite(m, s, small(150, 3));
      CHECK_MESSAGE(r.pass, id, " ", s, " ", r.max_violation, " ", r.witnesses.empty() ? "" : r.witnesses.front());
      CHECK(r.check == s);
      CHECK(r.model == id);
      CHECK(r.seed == 3);
      CHECK(r.samples > 0);
    }
  }
}

TEST_CASE("finite fixtures are checked exhaustively") {
  for (const char* f : {"z4", "pair3", "two_components"}) {
    const auto m = build_model("finite(" + data + "/finite/" + f + ".json)");
    for (const auto& s : default_suites(m)) {
      const auto a = run_check_suite(m, s, small(5, 1));
      const auto b = run_check_suite(m, s, small(5000, 99));
      CHECK_MESSAGE(a.pass, f, " ", s);
      // Every composable triple is included besides the sampled ones.
      CHECK(b.pass);
      CHECK(b.samples > a.samples);
      CHECK(a.max_violation == b.max_violation);
    }
  }
  for (const char* f : {"z5_core", "z7_affine"}) {
    const auto m = build_model("finite-irq(" + data + "/irq/" + f + ".json)");
    for (const auto& s : default_suites(m)) {
      const auto r = run_check_suite(m, s);
      CHECK_MESSAGE(r.pass, f, " ", s);
      CHECK(r.params.at("mode") == "exhaustive");
    }
  }
}

TEST_CASE("reports are deterministic in the seed") {
  const auto m = build_model("heisenberg");
  for (const char* s : {"norm-axioms", "deformation-a2", "cone"}) {
    const auto a = to_json(run_check_suite(m, s, small(100, 17)));
    const auto b = to_json(run_check_suite(m, s, small(100, 17)));
    CHECK(a == b);
  }
  auto o = small(50, 1);
  o.perturb_square = true;
  const auto p1 = run_check_suite(build_model("euclidean(1)"), "norm-axioms", o);
  o.seed = 2;
  const auto p2 = run_check_suite(build_model("euclidean(1)"), "norm-axioms", o);
  CHECK(p1.witnesses != p2.witnesses);
}

TEST_CASE("a squared norm fails the norm axioms") {
  auto o = small(500, 5);
  o.perturb_square = true;
  const auto r = run_check_suite(build_model("euclidean(2)"), "norm-axioms", o);
  CHECK_FALSE(r.pass);
  CHECK(r.max_violation > r.tol);
  REQUIRE_FALSE(r.witnesses.empty());
  CHECK(r.params.at("perturb") == "square");
  CHECK(run_check_suite(build_model("euclidean(2)"), "groupoid-axioms", o).pass);

  const auto f = run_check_suite(build_model("finite(" + data + "/finite/z4.json)"), "norm-axioms", o);
  CHECK_FALSE(f.pass);
}

TEST_CASE("the broken model fails the degeneracy checks") {
  const auto m = build_model("broken(1)");
  for (const char* s : {"deformation-a0", "dilatation-a3", "tangent-metric", "classify"}) {
    const auto r = run_check_suite(m, s, small(200, 1));
    CHECK_FALSE_MESSAGE(r.pass, s);
    CHECK_FALSE(r.witnesses.empty());
  }
  for (const char* s : {"groupoid-axioms", "norm-axioms", "deformation-a1", "deformation-a2"})
    CHECK_MESSAGE(run_check_suite(m, s, small(200, 1)).pass, s);
  CHECK(run_check_suite(m, "classify", small(200, 1)).params.at("verdict") == "neither");
}

TEST_CASE("tolerance override") {
  auto o = small(50);
  o.tol = 0.25;
  const auto r = run_check_suite(build_model("euclidean(1)"), "groupoid-axioms", o);
  CHECK(r.tol == 0.25);
  CHECK(r.pass);
}
