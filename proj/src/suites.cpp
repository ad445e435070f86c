#include "ngdef/analysis/suites.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <type_traits>

#include "ngdef/analysis/dilatation.hpp"
#include "ngdef/analysis/structure.hpp"
#include "ngdef/constructions/alpha_double.hpp"
#include "ngdef/constructions/fiber_family.hpp"
#include "ngdef/core/axioms.hpp"
#include "ngdef/deformation/checks.hpp"
#include "ngdef/irq/fiber.hpp"

namespace ngd {

namespace {

/// A model with d replaced by d².
template <class G>
struct SquaredNorm : G {
  explicit SquaredNorm(G g) : G(std::move(g)) {}
  double norm(const typename G::Arrow& a) const {
    const double n = G::norm(a);
    return n * n;
  }
};

template <class D>
class SquaredNormDeformation {
 public:
  using Groupoid = SquaredNorm<typename D::Groupoid>;
  using Gamma = typename D::Gamma;
  using Arrow = typename Groupoid::Arrow;

  explicit SquaredNormDeformation(D d) : d_(std::move(d)), g_(d_.groupoid()) {}

  const Groupoid& groupoid() const noexcept { return g_; }
  Gamma gamma() const { return d_.gamma(); }
  DomainWitness domain_witness() const { return d_.domain_witness(); }
  bool in_domain(const typename Gamma::Element& e, const Arrow& a) const { return d_.in_domain(e, a); }
  Arrow apply(const typename Gamma::Element& e, const Arrow& a) const { return d_.apply(e, a); }

 private:
  D d_;
  Groupoid g_;
};

enum class Kind { groupoid, deformation, fiber, limit, irq, closed };

struct SuiteInfo {
  Kind kind;
  double tol;
};

const std::map<std::string, SuiteInfo>& registry() {
  static const std::map<std::string, SuiteInfo> r = {
      {"groupoid-axioms", {Kind::groupoid, 1e-9}},  {"norm-axioms", {Kind::groupoid, 1e-9}},
      {"alpha-double", {Kind::groupoid, 1e-9}},     {"right-invariance", {Kind::groupoid, 1e-12}},
      {"deformation-a0", {Kind::deformation, 0}},   {"deformation-a1", {Kind::deformation, 1e-9}},
      {"deformation-a2", {Kind::deformation, 1e-9}}, {"tilde-deform", {Kind::deformation, 1e-9}},
      {"induced", {Kind::deformation, 1e-9}},       {"based-global", {Kind::deformation, 1e-9}},
      {"irq-laws", {Kind::irq, 1e-9}},              {"irq-relations", {Kind::irq, 1e-9}},
      {"closed-forms", {Kind::closed, 1e-12}},      {"dilatation-a1", {Kind::fiber, 1e-9}},
      {"dilatation-a2", {Kind::fiber, 1e-9}},       {"dilatation-a3", {Kind::fiber, 1e-6}},
      {"dilatation-a4weak", {Kind::fiber, 1e-6}},   {"cone", {Kind::limit, 1e-8}},
      {"tangent-metric", {Kind::limit, 1e-6}},      {"classify", {Kind::limit, 1.0}},
  };
  return r;
}

const SuiteInfo& info(const std::string& id) {
  const auto it = registry().find(id);
  if (it == registry().end()) fail(Errc::UnknownSuite, "unknown suite '" + id + "'");
  return it->second;
}

[[noreturn]] void unsupported(const std::string& suite, const std::string& model) {
  fail(Errc::Unsupported, "suite '" + suite + "' does not apply to " + model);
}

struct Ctx {
  std::string suite, model;
  SuiteOptions o;
  double tol;

  CheckReport report(const CheckAccumulator& acc) const {
    auto r = CheckReport::from(suite, model, o.seed, acc);
    r.params["radius"] = format_number(o.radius);
    r.params["lambda"] = format_number(o.sched.lambda);
    r.params["k0"] = std::to_string(o.sched.k0);
    r.params["steps"] = std::to_string(o.sched.steps);
    r.params["limit_tol"] = format_number(o.limit_tol);
    r.params["perturb"] = o.perturb_square ? "square" : "none";
    return r;
  }
};

// ---------------------------------------------------------------------------
// Groupoid level.

template <class G>
constexpr bool enumerable = requires(const G& m) { m.arrows(); };

/// All composable triples of a finite model.
template <class G>
std::vector<ComposableTriple<G>> all_triples(const G& m) {
  std::vector<ComposableTriple<G>> out;
  const auto arrows = m.arrows();
  for (const auto& c : arrows)
    for (const auto& b : arrows) {
      if (!same_object(m, m.source(b), m.target(c))) continue;
      for (const auto& a : arrows)
        if (same_object(m, m.source(a), m.target(b))) out.push_back({a, b, c});
    }
  return out;
}

template <class G>
std::vector<FiberTriple<G>> all_fiber_triples(const G& m) {
  std::vector<FiberTriple<G>> out;
  const auto arrows = m.arrows();
  for (const auto& u : arrows)
    for (const auto& g : arrows) {
      if (!same_object(m, m.source(g), m.target(u))) continue;
      for (const auto& h : arrows)
        if (same_object(m, m.source(h), m.target(u))) out.push_back({g, h, u});
    }
  return out;
}

template <class G>
std::vector<ComposableTriple<G>> triples(const G& m, SplitMix64& rng, const Ctx& c, double radius) {
  std::vector<ComposableTriple<G>> t;
  t.reserve(c.o.samples);
  for (std::size_t i = 0; i < c.o.samples; ++i) t.push_back(random_triple(m, rng, radius));
  if constexpr (enumerable<G>) {
    const auto all = all_triples(m);
    t.insert(t.end(), all.begin(), all.end());
  }
  return t;
}

template <class G>
void right_invariance(const G& m, SplitMix64& rng, const Ctx& c, double radius, CheckAccumulator& acc) {
  std::vector<FiberTriple<G>> s;
  for (std::size_t i = 0; i < c.o.samples; ++i) s.push_back(random_fiber_triple(m, rng, radius));
  if constexpr (enumerable<G>) {
    const auto all = all_fiber_triples(m);
    s.insert(s.end(), all.begin(), all.end());
  }
  const auto fam = fiber_distances_from_norm(m);
  check_right_invariance(m, fam, s, acc);
  // Round trip norm -> fiber distances -> norm -> fiber distances.
  const FiberNormed<G> normed(m, fam);
  const auto back = fiber_distances_from_norm(normed);
  for (const auto& [g, h, u] : s) {
    const auto x = m.source(g);
    const double v = std::max(rel_gap(normed.norm(g), static_cast<double>(m.norm(g))),
                              rel_gap(back(x, g, h), fam(x, g, h)));
    acc.record(v, [&] { return "round trip at g=" + describe(m, g) + " h=" + describe(m, h); });
  }
}

template <class G>
CheckReport groupoid_suite(const G& m, const Ctx& c, double radius) {
  SplitMix64 rng(c.o.seed);
  CheckAccumulator acc(c.tol);
  if (c.suite == "groupoid-axioms") {
    check_groupoid_axioms(m, triples(m, rng, c, radius), acc);
  } else if (c.suite == "norm-axioms") {
    check_norm_axioms(m, triples(m, rng, c, radius), acc);
  } else if (c.suite == "alpha-double") {
    const AlphaDouble<G> dbl(m);
    const auto t = triples(dbl, rng, c, radius);
    check_groupoid_axioms(dbl, t, acc);
    check_norm_axioms(dbl, t, acc);
  } else if (c.suite == "right-invariance") {
    right_invariance(m, rng, c, radius, acc);
  } else {
    unsupported(c.suite, c.model);
  }
  return c.report(acc);
}

// ---------------------------------------------------------------------------
// Deformation level.

template <class D>
CheckReport deformation_suite(const D& d, const Ctx& c) {
  SplitMix64 rng(c.o.seed);
  CheckAccumulator acc(c.tol);
  if (c.suite == "deformation-a0") {
    const auto w = d.domain_witness();
    check_deformation_a0(d, w, rng, c.o.samples, acc);
    auto r = c.report(acc);
    r.params["A"] = format_number(w.A);
    r.params["B"] = format_number(w.B);
    r.params["R"] = format_number(w.R);
    r.params["eps0"] = format_number(w.eps0);
    r.params["k_radius"] = format_number(w.k_radius);
    return r;
  }
  const auto s = sample_deformation(d, rng, c.o.samples, c.o.radius);
  if (c.suite == "deformation-a1")
    check_deformation_a1(d, s, acc);
  else if (c.suite == "deformation-a2")
    check_deformation_a2(d, s, acc, c.o.sched, c.o.limit_tol);
  else if (c.suite == "tilde-deform")
    check_tilde_deform(d, s, acc);
  else if (c.suite == "induced")
    check_induced(d, s, acc);
  else if (c.suite == "based-global")
    check_based_global(d, s, acc);
  else
    unsupported(c.suite, c.model);
  return c.report(acc);
}

template <class D>
CheckReport irq_suite(const D& d, const Ctx& c) {
  SplitMix64 rng(c.o.seed);
  const auto x = d.groupoid().random_object(rng, c.o.radius);
  const FiberIrq<D> q(d, x);
  const auto s = sample_fiber_irq(q, rng, c.o.samples, c.o.radius);
  auto show = [&](const DArrow<D>& a) { return q.describe(a); };
  CheckAccumulator acc(c.tol);
  if (c.suite == "irq-laws") {
    check_gamma_irq_laws(q, s, acc, show);
  } else {
    check_irq_relations(q, s, acc, show);
    check_fiber_agreement(q, s, acc);
  }
  auto r = c.report(acc);
  r.params["object"] = describe_object(d.groupoid(), x);
  return r;
}

/// Based operations of the Euclidean lift against x + (v-u) + ε(u-x),
/// x + (1-ε)(u-x) + (v-x) and x - (1-ε)(u-x), for ε = 2^-1 .. 2^-20, in long
/// double so that the 1/ε amplification of round-off stays below 1e-12.
CheckReport closed_form_suite(int dim, const Ctx& c) {
  using S = long double;
  using P = Euclidean<S>::Point;
  const LiftedDeformation<Euclidean<S>> d{Euclidean<S>(dim)};
  const Euclidean<S>& sp = d.space();
  SplitMix64 rng(c.o.seed);
  CheckAccumulator acc(c.tol);
  for (std::size_t i = 0; i < c.o.samples; ++i) {
    const P o = sp.random_near(rng, sp.center(), c.o.radius);
    const P x = sp.random_near(rng, o, c.o.radius);
    const P u = sp.random_near(rng, x, c.o.radius), v = sp.random_near(rng, x, c.o.radius);
    const decltype(d)::Arrow bx{x, o}, bu{u, o}, bv{v, o};
    for (int k = 1; k <= 20; ++k) {
      const double e = std::ldexp(1.0, -k);
      const S es = static_cast<S>(e);
      detail::record_guarded(
          acc,
          [&] {
            const P diff = x + (v - u) + es * (u - x);
            const P sum = x + (1 - es) * (u - x) + (v - x);
            const P inv = x - (1 - es) * (u - x);
            double w = static_cast<double>((based_diff(d, e, bx, bu, bv).first - diff).norm());
            w = std::max(w, static_cast<double>((based_sum(d, e, bx, bu, bv).first - sum).norm()));
            w = std::max(w, static_cast<double>((based_inv(d, e, bx, bu).first - inv).norm()));
            return w;
          },
          [&] { return "x=" + format_point(x) + " u=" + format_point(u) + " v=" + format_point(v) + " eps=" + format_number(e); });
    }
  }
  auto r = c.report(acc);
  r.params["scalar"] = "long double";
  r.params["eps"] = "2^-1..2^-20";
  return r;
}

template <class D>
CheckReport fiber_suite(const D& d, const Ctx& c) {
  SplitMix64 rng(c.o.seed);
  const auto x = d.groupoid().random_object(rng, c.o.radius);
  const FiberDilatation<D> f(d, x);
  FiberExtractionOptions fo;
  fo.samples = c.o.samples;
  fo.seed = rng.next();
  fo.radius = c.o.radius;
  fo.limits.sched = c.o.sched;
  fo.limits.limit_tol = c.o.limit_tol;
  fo.limits.zero_tol = c.o.limit_tol;
  SplitMix64 srng(fo.seed);
  CheckAccumulator acc(c.tol);
  if (c.suite == "dilatation-a1" || c.suite == "dilatation-a2") {
    std::vector<DilatationSample<FiberDilatation<D>>> pairs;
    for (std::size_t i = 0; i < fo.samples; ++i) pairs.push_back(random_dilatation_sample(f, srng, fo.radius));
    if (c.suite == "dilatation-a1")
      check_dilatation_action(f, pairs, acc);
    else
      check_dilatation_contraction(f, pairs, acc, c.o.sched.lambda, c.o.sched.k0, c.o.sched.steps, c.o.limit_tol);
  } else {
    const auto t = sample_triples(f, srng, fo.samples, fo.radius);
    if (c.suite == "dilatation-a3")
      check_dilatation_a3(f, t, fo.limits, acc);
    else
      check_dilatation_a4weak(f, t, fo.limits, acc);
  }
  auto r = c.report(acc);
  r.params["object"] = describe_object(d.groupoid(), x);
  return r;
}

template <class D>
CheckReport limit_suite(const D& d, const Ctx& c) {
  SplitMix64 rng(c.o.seed);
  const auto s = sample_fibers(d, rng, c.o.samples, c.o.radius);
  ClassifyOptions co;
  co.sched = c.o.sched;
  co.limit_tol = c.o.limit_tol;
  co.model = c.model;
  co.seed = c.o.seed;
  CheckAccumulator acc(c.tol);
  if (c.suite == "cone") {
    for (const auto& t : s)
      for (double mu : {0.5, 0.25}) record_cone(d, t.x, t.u, t.v, mu, c.o.sched, acc, c.o.limit_tol);
  } else if (c.suite == "tangent-metric") {
    check_tangent_metric(d, s, co, acc);
  } else {
    // One report for the whole classification: violations are normalized
    // by each sub-check's tolerance, so pass means every sub-check passed.
    const auto cl = classify_structure(d, s, co);
    CheckAccumulator all(1.0);
    for (const auto& sub : cl.reports) {
      const double v = sub.tol > 0 ? sub.max_violation / sub.tol : (sub.max_violation > 0 ? INFINITY : 0.0);
      all.record(v, [&] { return sub.check + ": " + (sub.witnesses.empty() ? "" : sub.witnesses.front()); });
    }
    auto r = c.report(all);
    r.pass = cl.verdict != Verdict::neither;
    r.params["verdict"] = std::string(to_string(cl.verdict));
    for (const auto& sub : cl.reports) r.params["check." + sub.check] = sub.pass ? "pass" : "fail";
    r.samples = s.size();
    return r;
  }
  return c.report(acc);
}

template <class D>
CheckReport on_deformation(const D& d, const Ctx& c) {
  switch (info(c.suite).kind) {
    case Kind::groupoid: return groupoid_suite(d.groupoid(), c, c.o.radius);
    case Kind::deformation: return deformation_suite(d, c);
    case Kind::irq: return irq_suite(d, c);
    case Kind::fiber: return fiber_suite(d, c);
    case Kind::limit: return limit_suite(d, c);
    case Kind::closed: break;
  }
  unsupported(c.suite, c.model);
}

CheckReport on_finite_irq(const FiniteIrq& q, const Ctx& c) {
  CheckAccumulator acc(c.tol);
  if (c.suite == "irq-laws")
    check_finite_irq_laws(q, acc);
  else if (c.suite == "irq-relations")
    check_finite_irq_relations(q, acc);
  else
    unsupported(c.suite, c.model);
  auto r = c.report(acc);
  r.params["mode"] = "exhaustive";
  return r;
}

template <class D>
constexpr int euclidean_dim(const D& d) {
  if constexpr (std::same_as<D, EuclideanModel>)
    return d.space().dim();
  else
    return 0;
}

}  // namespace

const std::vector<std::string>& suite_ids() {
  static const std::vector<std::string> ids = {
      "groupoid-axioms", "norm-axioms",   "alpha-double",  "right-invariance", "deformation-a0",
      "deformation-a1",  "deformation-a2", "tilde-deform", "induced",          "based-global",
      "irq-laws",        "irq-relations", "closed-forms",  "dilatation-a1",    "dilatation-a2",
      "dilatation-a3",   "dilatation-a4weak", "cone",      "tangent-metric",   "classify"};
  return ids;
}

double default_tolerance(const std::string& suite) { return info(suite).tol; }

std::vector<std::string> default_suites(const ModelHandle& model) {
  return std::visit(
      [&](const auto& m) -> std::vector<std::string> {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::same_as<M, FiniteIrq>) {
          return {"irq-laws", "irq-relations"};
        } else if constexpr (std::same_as<M, FiniteGroupoid>) {
          return {"groupoid-axioms", "norm-axioms", "alpha-double", "right-invariance"};
        } else {
          std::vector<std::string> out;
          for (const auto& id : suite_ids())
            if (id != "closed-forms" || euclidean_dim(m) > 0) out.push_back(id);
          return out;
        }
      },
      model.model);
}

CheckReport run_check_suite(const ModelHandle& model, const std::string& suite, const SuiteOptions& options) {
  const auto& inf = info(suite);
  if (options.samples == 0) fail(Errc::InvalidArgument, "samples must be positive");
  options.sched.validate();
  const Ctx c{suite, model.id, options, options.tol.value_or(inf.tol)};
  return std::visit(
      [&](const auto& m) -> CheckReport {
        using M = std::decay_t<decltype(m)>;
        if constexpr (std::same_as<M, FiniteIrq>) {
          return on_finite_irq(m, c);
        } else if constexpr (std::same_as<M, FiniteGroupoid>) {
          if (inf.kind != Kind::groupoid) unsupported(suite, model.id);
          const double radius = std::numeric_limits<double>::infinity();
          if (options.perturb_square) return groupoid_suite(SquaredNorm<FiniteGroupoid>(m), c, radius);
          return groupoid_suite(m, c, radius);
        } else {
          if (inf.kind == Kind::closed) {
            if (euclidean_dim(m) == 0) unsupported(suite, model.id);
            return closed_form_suite(euclidean_dim(m), c);
          }
          if (options.perturb_square) return on_deformation(SquaredNormDeformation<M>(m), c);
          return on_deformation(m, c);
        }
      },
      model.model);
}

}  // namespace ngd
