#pragma once

// Sampled checks of the groupoid laws, the norm axioms and seminorm
// families. Each check folds its per-sample defect into a CheckAccumulator;
// defects are rel_gap-scaled so tolerances read as relative.

#include <algorithm>
#include <functional>
#include <string>
#include <vector>

#include "ngdef/core/check.hpp"
#include "ngdef/core/groupoid.hpp"

namespace ngd {

/// Associativity, identities, inverses and cancellation on one triple.
template <GroupoidModel G>
double groupoid_defect(const G& m, const ComposableTriple<G>& t) {
  const auto& [a, b, c] = t;
  double v = 0.0;
  const auto ab = compose(m, a, b);
  const auto bc = compose(m, b, c);
  v = std::max(v, m.object_gap(m.source(ab), m.source(b)));
  v = std::max(v, m.object_gap(m.target(ab), m.target(a)));
  v = std::max(v, m.arrow_gap(compose(m, ab, c), compose(m, a, bc)));

  const auto ea = m.identity(m.source(a));
  const auto oa = m.identity(m.target(a));
  v = std::max(v, m.object_gap(m.source(ea), m.source(a)));
  v = std::max(v, m.object_gap(m.target(ea), m.source(a)));
  v = std::max(v, m.arrow_gap(compose(m, a, ea), a));
  v = std::max(v, m.arrow_gap(compose(m, oa, a), a));

  const auto ai = m.inverse(a);
  v = std::max(v, m.object_gap(m.source(ai), m.target(a)));
  v = std::max(v, m.object_gap(m.target(ai), m.source(a)));
  v = std::max(v, m.arrow_gap(m.inverse(ai), a));
  v = std::max(v, m.arrow_gap(compose(m, ai, a), ea));
  v = std::max(v, m.arrow_gap(compose(m, a, ai), oa));

  v = std::max(v, m.arrow_gap(compose(m, ab, m.inverse(b)), a));
  v = std::max(v, m.arrow_gap(compose(m, ai, ab), b));
  return v;
}

template <GroupoidModel G>
void check_groupoid_axioms(const G& m, const std::vector<ComposableTriple<G>>& samples,
                           CheckAccumulator& acc) {
  for (const auto& t : samples) {
    double v;
    try {
      v = groupoid_defect(m, t);
    } catch (const Error&) {
      v = std::numeric_limits<double>::infinity();
    }
    acc.record(v, [&] {
      return "a=" + describe(m, t.a) + " b=" + describe(m, t.b) + " c=" + describe(m, t.c);
    });
  }
}

/// Norm axioms (i)-(iii) on one triple: vanishing on identities only,
/// subadditivity over both products, inversion invariance.
template <NormedGroupoidModel G>
double norm_defect(const G& m, const ComposableTriple<G>& t, double identity_tol) {
  const auto& [a, b, c] = t;
  double v = 0.0;
  for (const auto* g : {&a, &b, &c}) {
    const double dg = m.norm(*g);
    if (dg < 0.0) v = std::max(v, -dg);
    v = std::max(v, rel_gap(m.norm(m.inverse(*g)), dg));
    const bool ident = is_identity(m, *g, identity_tol);
    if (!ident && dg == 0.0) v = std::max(v, 1.0);
    if (ident) v = std::max(v, std::abs(dg));
  }
  v = std::max(v, std::abs(static_cast<double>(m.norm(m.identity(m.source(a))))));
  v = std::max(v, excess(m.norm(compose(m, a, b)), m.norm(a) + m.norm(b)));
  v = std::max(v, excess(m.norm(compose(m, b, c)), m.norm(b) + m.norm(c)));
  return v;
}

template <NormedGroupoidModel G>
void check_norm_axioms(const G& m, const std::vector<ComposableTriple<G>>& samples,
                       CheckAccumulator& acc, double identity_tol = kObjectTolerance) {
  for (const auto& t : samples) {
    double v;
    try {
      v = norm_defect(m, t, identity_tol);
    } catch (const Error&) {
      v = std::numeric_limits<double>::infinity();
    }
    acc.record(v, [&] {
      return "a=" + describe(m, t.a) + " b=" + describe(m, t.b) + " c=" + describe(m, t.c) +
             " |a|=" + format_number(m.norm(t.a)) + " |b|=" + format_number(m.norm(t.b)) +
             " |ab|=" + format_number(m.norm(m.product(t.a, t.b)));
    });
  }
  // Separability is model-asserted.
  acc.record(m.separable() ? 0.0 : 1.0, [] { return std::string("norm not flagged separable"); });
}

// ---------------------------------------------------------------------------
// Seminorm families and morphisms.

template <class G>
using Seminorm = std::function<double(const ArrowOf<G>&)>;

template <class G>
using SeminormFamily = std::vector<Seminorm<G>>;

template <class G, class H>
struct GroupoidMorphism {
  std::function<ObjectOf<H>(const ObjectOf<G>&)> on_objects;
  std::function<ArrowOf<H>(const ArrowOf<G>&)> on_arrows;
};

/// Largest defect of the morphism laws on sampled triples.
template <GroupoidModel G, GroupoidModel H>
double morphism_defect(const G& src, const H& dst, const GroupoidMorphism<G, H>& f,
                       const std::vector<ComposableTriple<G>>& samples) {
  double v = 0.0;
  for (const auto& t : samples) {
    const auto fa = f.on_arrows(t.a);
    const auto fb = f.on_arrows(t.b);
    v = std::max(v, dst.object_gap(dst.source(fa), f.on_objects(src.source(t.a))));
    v = std::max(v, dst.object_gap(dst.target(fa), f.on_objects(src.target(t.a))));
    v = std::max(v, dst.arrow_gap(f.on_arrows(src.inverse(t.a)), dst.inverse(fa)));
    const auto x = src.source(t.a);
    v = std::max(v, dst.arrow_gap(f.on_arrows(src.identity(x)), dst.identity(f.on_objects(x))));
    if (!composable(dst, fa, fb)) return std::numeric_limits<double>::infinity();
    v = std::max(v, dst.arrow_gap(f.on_arrows(compose(src, t.a, t.b)), dst.product(fa, fb)));
  }
  return v;
}

/// {d o A : A in L}. Each member must be a morphism on the samples, and the
/// family must separate: every sampled non-identity arrow has some A with
/// A(g) not an identity.
template <GroupoidModel G, NormedGroupoidModel H>
SeminormFamily<G> seminorms_from_morphisms(const G& src, const H& dst,
                                           const std::vector<GroupoidMorphism<G, H>>& family,
                                           const std::vector<ComposableTriple<G>>& samples,
                                           double tol = kObjectTolerance) {
  for (std::size_t i = 0; i < family.size(); ++i) {
    const double v = morphism_defect(src, dst, family[i], samples);
    if (!(v <= tol))
      fail(Errc::NotAMorphism, "member " + format_number(i) + " defect " + format_number(v));
  }
  for (const auto& t : samples) {
    if (is_identity(src, t.a)) continue;
    const bool separated = std::any_of(family.begin(), family.end(), [&](const auto& f) {
      return !is_identity(dst, f.on_arrows(t.a));
    });
    if (!separated) fail(Errc::NotAMorphism, "family does not separate " + describe(src, t.a));
  }
  SeminormFamily<G> out;
  out.reserve(family.size());
  for (const auto& f : family)
    out.push_back([dst, map = f.on_arrows](const ArrowOf<G>& g) { return static_cast<double>(dst.norm(map(g))); });
  return out;
}

/// Seminorm-family axioms (i)-(iii).
template <GroupoidModel G>
void check_seminorm_family(const G& m, const SeminormFamily<G>& family,
                           const std::vector<ComposableTriple<G>>& samples, CheckAccumulator& acc) {
  for (const auto& t : samples) {
    double v = 0.0;
    bool all_zero = true;
    for (const auto& rho : family) {
      const double ra = rho(t.a);
      if (ra < 0.0) v = std::max(v, -ra);
      if (ra != 0.0) all_zero = false;
      v = std::max(v, std::abs(rho(m.identity(m.source(t.a)))));
      v = std::max(v, excess(rho(compose(m, t.a, t.b)), ra + rho(t.b)));
      v = std::max(v, rel_gap(rho(m.inverse(t.a)), ra));
    }
    if (all_zero && !is_identity(m, t.a)) v = std::max(v, 1.0);
    acc.record(v, [&] { return "a=" + describe(m, t.a) + " b=" + describe(m, t.b); });
  }
}

}  // namespace ngd
