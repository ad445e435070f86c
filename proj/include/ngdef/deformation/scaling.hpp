#pragma once

#include <cmath>
#include <concepts>
#include <string>

#include "ngdef/core/numeric.hpp"

namespace ngd {

/// Commutative group Γ with a morphism |.| : Γ -> (0, +inf).
template <class S>
concept ScalingGroup = std::copy_constructible<S> && requires(const S& s, const typename S::Element& a) {
  { s.product(a, a) } -> std::convertible_to<typename S::Element>;
  { s.inverse(a) } -> std::convertible_to<typename S::Element>;
  { s.neutral() } -> std::convertible_to<typename S::Element>;
  { s.abs(a) } -> std::convertible_to<double>;
  { s.gap(a, a) } -> std::convertible_to<double>;
};

/// (0, +inf) under multiplication, |ε| = ε.
struct PositiveReals {
  using Element = double;
  double product(double a, double b) const noexcept { return a * b; }
  double inverse(double a) const noexcept { return 1.0 / a; }
  double neutral() const noexcept { return 1.0; }
  double abs(double a) const noexcept { return a; }
  double gap(double a, double b) const noexcept { return rel_gap(a, b); }
  std::string describe(double a) const { return format_number(a); }
};

/// {λ^k : k in Z} stored by exponent, so products are exact.
struct PowerScaling {
  using Element = int;
  double base = 0.5;
  int product(int a, int b) const noexcept { return a + b; }
  int inverse(int a) const noexcept { return -a; }
  int neutral() const noexcept { return 0; }
  double abs(int k) const noexcept { return std::pow(base, k); }
  double gap(int a, int b) const noexcept { return a == b ? 0.0 : 1.0; }
  std::string describe(int k) const { return format_number(base) + "^" + format_number(k); }
};

template <ScalingGroup S>
std::string describe_scale(const S& s, const typename S::Element& a) {
  if constexpr (requires { s.describe(a); })
    return s.describe(a);
  else
    return "<scale>";
}

}  // namespace ngd
