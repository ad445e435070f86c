#pragma once

// Finite irqs given by operation tables, loaded from JSON:
//   { "carrier": [...], "circ": [[...]], "bullet": [[...]] }
// Row x, column y of a table holds x ∘ y (resp. x • y) as a carrier value.

#include <algorithm>
#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ngdef/core/check.hpp"
#include "ngdef/irq/checks.hpp"
#include "ngdef/irq/irq.hpp"

namespace ngd {

class FiniteIrq {
 public:
  using Element = std::size_t;

  /// Carriers up to this size get exhaustive P1/P2 validation; larger ones
  /// are validated on a fixed pseudo-random sample of pairs.
  static constexpr std::size_t kExhaustiveLimit = 64;

  /// Tables are row-major of size n * n. Throws InvalidModelSpec on
  /// out-of-range entries or a P1/P2 failure.
  FiniteIrq(std::vector<std::string> names, std::vector<std::size_t> circ, std::vector<std::size_t> bullet);

  static FiniteIrq parse(std::string_view json_text);
  static FiniteIrq load(const std::string& path);

  std::size_t size() const noexcept { return names_.size(); }
  Element circ(Element x, Element y) const { return circ_[x * size() + y]; }
  Element bullet(Element x, Element y) const { return bullet_[x * size() + y]; }
  double gap(Element a, Element b) const noexcept { return a == b ? 0.0 : 1.0; }
  std::string describe(Element x) const { return names_.at(x); }

 private:
  std::vector<std::string> names_;
  std::vector<std::size_t> circ_, bullet_;
};

/// P1/P2 for every (x, y); the Z-irq Γ-law for every (x, y) and exponents
/// in {-2, -1, 1, 2}.
inline void check_finite_irq_laws(const FiniteIrq& q, CheckAccumulator& acc) {
  const std::size_t n = q.size();
  const ZIrq<FiniteIrq> z(q);
  const int ks[] = {-2, -1, 1, 2};
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t y = 0; y < n; ++y) {
      acc.record(irq_axiom_defect(q, x, y), [&] { return "P1/P2 at x=" + q.describe(x) + " y=" + q.describe(y); });
      for (int e : ks)
        for (int mu : ks)
          acc.record(q.gap(z.circ_at(e, x, z.circ_at(mu, x, y)), z.circ_at(e + mu, x, y)), [&] {
            return "gamma law k=" + std::to_string(e) + " m=" + std::to_string(mu) + " x=" + q.describe(x) +
                   " y=" + q.describe(y);
          });
    }
}

/// Relations (a)-(g) for every (x, u, v, w); distributivity of the Z-irq for
/// every (x, u, v) and exponents in {-2, -1, 1, 2}.
inline void check_finite_irq_relations(const FiniteIrq& q, CheckAccumulator& acc) {
  const std::size_t n = q.size();
  const ZIrq<FiniteIrq> z(q);
  const int ks[] = {-2, -1, 1, 2};
  auto show = [&](std::size_t a) { return q.describe(a); };
  for (std::size_t x = 0; x < n; ++x)
    for (std::size_t u = 0; u < n; ++u)
      for (std::size_t v = 0; v < n; ++v) {
        for (std::size_t w = 0; w < n; ++w)
          acc.record(irq_relations_defect(q, x, u, v, w), [&] {
            return "relations at x=" + show(x) + " u=" + show(u) + " v=" + show(v) + " w=" + show(w);
          });
        for (int e : ks)
          for (int mu : ks)
            acc.record(distributivity_defect(z, e, mu, x, u, v), [&] {
              return "distributivity k=" + std::to_string(e) + " m=" + std::to_string(mu) + " x=" + show(x) +
                     " u=" + show(u) + " v=" + show(v);
            });
      }
}

inline void check_finite_irq_exhaustive(const FiniteIrq& q, CheckAccumulator& acc) {
  check_finite_irq_laws(q, acc);
  check_finite_irq_relations(q, acc);
}

}  // namespace ngd
