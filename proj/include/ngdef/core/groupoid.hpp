#pragma once

// Normed groupoids as concept-constrained value types.
//
// A model supplies its arrows' source (α) and target (ω), the identity
// section e, inversion and the raw product. Product order follows the usual
// convention: product(g, h) = gh is defined when ω(h) = α(g), and then
// α(gh) = α(h), ω(gh) = ω(g).

#include <algorithm>
#include <concepts>
#include <cstddef>
#include <limits>
#include <span>
#include <string>
#include <utility>
#include <vector>

#include "ngdef/core/error.hpp"
#include "ngdef/core/numeric.hpp"
#include "ngdef/core/random.hpp"

namespace ngd {

template <class G>
concept GroupoidModel =
    std::copy_constructible<G> &&
    requires(const G& m, const typename G::Object& x, const typename G::Arrow& a) {
      { m.source(a) } -> std::convertible_to<typename G::Object>;
      { m.target(a) } -> std::convertible_to<typename G::Object>;
      { m.identity(x) } -> std::convertible_to<typename G::Arrow>;
      { m.inverse(a) } -> std::convertible_to<typename G::Arrow>;
      { m.product(a, a) } -> std::convertible_to<typename G::Arrow>;
      { m.object_gap(x, x) } -> std::convertible_to<double>;
      { m.arrow_gap(a, a) } -> std::convertible_to<double>;
    };

template <class G>
concept NormedGroupoidModel = GroupoidModel<G> && requires(const G& m, const typename G::Arrow& a) {
  { m.norm(a) } -> std::convertible_to<double>;
  { m.separable() } -> std::convertible_to<bool>;
};

/// Models that can draw arrows from bounded sets.
///
/// `random_object(rng, r)` draws an object within distance r of the model's
/// sampling center; `random_arrow_from(rng, x, r)` draws an arrow with
/// source x and norm at most r.
template <class G>
concept SampledGroupoid =
    GroupoidModel<G> &&
    requires(const G& m, SplitMix64& rng, const typename G::Object& x, double r) {
      { m.random_object(rng, r) } -> std::convertible_to<typename G::Object>;
      { m.random_arrow_from(rng, x, r) } -> std::convertible_to<typename G::Arrow>;
    };

template <class G>
using ObjectOf = typename G::Object;
template <class G>
using ArrowOf = typename G::Arrow;

template <class G>
std::string describe(const G& m, const ArrowOf<G>& a) {
  if constexpr (requires { m.describe(a); })
    return m.describe(a);
  else
    return "<arrow>";
}

template <class G>
std::string describe_object(const G& m, const ObjectOf<G>& x) {
  if constexpr (requires { m.describe_object(x); })
    return m.describe_object(x);
  else
    return "<object>";
}

template <GroupoidModel G>
bool same_object(const G& m, const ObjectOf<G>& x, const ObjectOf<G>& y,
                 double tol = kObjectTolerance) {
  return m.object_gap(x, y) <= tol;
}

template <GroupoidModel G>
bool same_arrow(const G& m, const ArrowOf<G>& a, const ArrowOf<G>& b,
                double tol = kObjectTolerance) {
  return m.arrow_gap(a, b) <= tol;
}

/// True when gh is defined.
template <GroupoidModel G>
bool composable(const G& m, const ArrowOf<G>& g, const ArrowOf<G>& h) {
  return same_object(m, m.target(h), m.source(g));
}

template <GroupoidModel G>
ArrowOf<G> compose(const G& m, const ArrowOf<G>& g, const ArrowOf<G>& h) {
  if (!composable(m, g, h))
    fail(Errc::NotComposable, describe(m, g) + " * " + describe(m, h));
  return m.product(g, h);
}

template <GroupoidModel G>
bool is_identity(const G& m, const ArrowOf<G>& a, double tol = kObjectTolerance) {
  return same_arrow(m, a, m.identity(m.source(a)), tol);
}

/// dif(g, h) = g h^{-1}, defined on pairs with a common source.
template <GroupoidModel G>
ArrowOf<G> dif(const G& m, const ArrowOf<G>& g, const ArrowOf<G>& h) {
  if (!same_object(m, m.source(g), m.source(h)))
    fail(Errc::FiberMismatch, describe(m, g) + " vs " + describe(m, h));
  return m.product(g, m.inverse(h));
}

/// d_x(g, h) = d(g h^{-1}) on the fiber over x = α(g) = α(h).
template <NormedGroupoidModel G>
double fiber_distance(const G& m, const ArrowOf<G>& g, const ArrowOf<G>& h) {
  return m.norm(dif(m, g, h));
}

/// inf { d(g) : α(g) = x, ω(g) = y }, or +inf when x and y are unconnected.
///
/// Only models with a closed form (`closed_form_object_distance`) or an
/// arrow enumeration (`arrows_between`) are supported.
template <NormedGroupoidModel G>
double object_distance(const G& m, const ObjectOf<G>& x, const ObjectOf<G>& y) {
  if constexpr (requires { m.closed_form_object_distance(x, y); }) {
    return m.closed_form_object_distance(x, y);
  } else if constexpr (requires { m.arrows_between(x, y); }) {
    double best = std::numeric_limits<double>::infinity();
    for (const auto& a : m.arrows_between(x, y)) best = std::min(best, static_cast<double>(m.norm(a)));
    return best;
  } else {
    fail(Errc::Unsupported, "object distance needs a closed form or an arrow enumeration");
  }
}

// ---------------------------------------------------------------------------
// Convergence of finite arrow sequences.

enum class ConvergenceMode { simple, left, right };

constexpr std::string_view to_string(ConvergenceMode m) noexcept {
  switch (m) {
    case ConvergenceMode::simple: return "simple";
    case ConvergenceMode::left: return "left";
    case ConvergenceMode::right: return "right";
  }
  return "?";
}

struct ConvergenceTrace {
  bool converged = false;
  std::vector<double> residuals;
};

/// Acceptance rule shared by every mode: the final residual is below `tol`
/// and the last quarter of the trace is non-increasing.
inline bool accept_trace(const std::vector<double>& r, double tol) {
  if (r.empty() || !(r.back() < tol)) return false;
  const std::size_t tail = (r.size() + 3) / 4;
  for (std::size_t i = r.size() - tail; i + 1 < r.size(); ++i)
    if (r[i + 1] > r[i] + 4 * std::numeric_limits<double>::epsilon()) return false;
  return true;
}

/// Residual trace of `seq` against the candidate limit `a`.
///
/// right: d(a_k a^{-1}); left: d(a_k^{-1} a); simple: d(h_k) + d(g_k) where
/// h_k a_k g_k = a is solved by the model's `simple_witnesses`.
template <NormedGroupoidModel G>
ConvergenceTrace converges_to(const G& m, std::span<const ArrowOf<G>> seq, const ArrowOf<G>& a,
                              ConvergenceMode mode, double tol) {
  if (seq.empty()) fail(Errc::InvalidArgument, "empty sequence");
  ConvergenceTrace out;
  out.residuals.reserve(seq.size());
  for (const auto& ak : seq) {
    switch (mode) {
      case ConvergenceMode::right:
        out.residuals.push_back(m.norm(compose(m, ak, m.inverse(a))));
        break;
      case ConvergenceMode::left:
        out.residuals.push_back(m.norm(compose(m, m.inverse(ak), a)));
        break;
      case ConvergenceMode::simple:
        if constexpr (requires { m.simple_witnesses(ak, a); }) {
          const auto [h, g] = m.simple_witnesses(ak, a);
          out.residuals.push_back(m.norm(h) + m.norm(g));
        } else {
          fail(Errc::Unsupported, "model cannot solve h a_k g = a");
        }
        break;
    }
  }
  out.converged = accept_trace(out.residuals, tol);
  return out;
}

// ---------------------------------------------------------------------------
// Samples.

/// Triples with (a, b) and (b, c) composable.
template <class G>
struct ComposableTriple {
  ArrowOf<G> a, b, c;
};

template <SampledGroupoid G>
ComposableTriple<G> random_triple(const G& m, SplitMix64& rng, double radius) {
  const auto x = m.random_object(rng, radius);
  auto c = m.random_arrow_from(rng, x, radius);
  auto b = m.random_arrow_from(rng, m.target(c), radius);
  auto a = m.random_arrow_from(rng, m.target(b), radius);
  return {std::move(a), std::move(b), std::move(c)};
}

/// Same-source pair (g, h) and an arrow u with ω(u) = α(g).
template <class G>
struct FiberTriple {
  ArrowOf<G> g, h, u;
};

template <SampledGroupoid G>
FiberTriple<G> random_fiber_triple(const G& m, SplitMix64& rng, double radius) {
  const auto x = m.random_object(rng, radius);
  auto u = m.random_arrow_from(rng, x, radius);
  auto g = m.random_arrow_from(rng, m.target(u), radius);
  auto h = m.random_arrow_from(rng, m.target(u), radius);
  return {std::move(g), std::move(h), std::move(u)};
}

}  // namespace ngd
