#pragma once

// Finite normed groupoids given by tables, loaded from JSON:
//   { "objects": [...], "arrows": [{"id", "alpha", "omega", "norm"}...],
//     "compose": [["g", "h", "gh"]...], "inverse": [["g", "ginv"]...] }
// A compose row [g, h, k] means gh = k, listed for every pair with
// omega(h) = alpha(g).

#include <cstddef>
#include <string>
#include <string_view>
#include <vector>

#include "ngdef/core/random.hpp"

namespace ngd {

class FiniteGroupoid {
 public:
  using Object = std::size_t;
  using Arrow = std::size_t;

  struct ArrowSpec {
    std::string id;
    std::size_t alpha, omega;
    double norm;
  };

  /// `product[g * arrows.size() + h]` is gh, or npos when undefined.
  /// Throws InvalidModelSpec unless the tables form a normed groupoid.
  FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                 std::vector<std::size_t> product, std::vector<std::size_t> inverse);

  static FiniteGroupoid parse(std::string_view json_text);
  static FiniteGroupoid load(const std::string& path);

  static constexpr std::size_t npos = static_cast<std::size_t>(-1);

  std::size_t object_count() const noexcept { return objects_.size(); }
  std::size_t arrow_count() const noexcept { return arrows_.size(); }

  Object source(Arrow a) const { return arrows_.at(a).alpha; }
  Object target(Arrow a) const { return arrows_.at(a).omega; }
  Arrow identity(Object x) const { return identity_.at(x); }
  Arrow inverse(Arrow a) const { return inverse_.at(a); }
  /// gh; the caller has checked composability.
  Arrow product(Arrow g, Arrow h) const;
  double norm(Arrow a) const { return arrows_.at(a).norm; }
  bool separable() const noexcept { return true; }
  double object_gap(Object x, Object y) const noexcept { return x == y ? 0.0 : 1.0; }
  double arrow_gap(Arrow a, Arrow b) const noexcept { return a == b ? 0.0 : 1.0; }

  std::vector<Arrow> arrows() const;
  std::vector<Arrow> arrows_from(Object x) const;
  std::vector<Arrow> arrows_between(Object x, Object y) const;
  /// Arrow index by id; throws InvalidArgument.
  Arrow find_arrow(std::string_view id) const;
  Object find_object(std::string_view name) const;

  Object random_object(SplitMix64& rng, double) const { return rng.below(objects_.size()); }
  /// Uniform among arrows from x with norm <= r (the identity always qualifies).
  Arrow random_arrow_from(SplitMix64& rng, Object x, double r) const;

  std::string describe(Arrow a) const { return arrows_.at(a).id; }
  std::string describe_object(Object x) const { return objects_.at(x); }

 private:
  std::vector<std::string> objects_;
  std::vector<ArrowSpec> arrows_;
  std::vector<std::size_t> product_, inverse_, identity_;
};

}  // namespace ngd
