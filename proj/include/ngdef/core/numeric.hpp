#pragma once

#include <algorithm>
#include <cmath>
#include <charconv>
#include <cstdio>
#include <limits>
#include <string>

#include <Eigen/Core>

namespace ngd {

/// Default closeness for objects and arrows with floating payloads.
inline constexpr double kObjectTolerance = 1e-9;

/// Mixed absolute/relative gap: |a - b| / max(1, |a|, |b|).
inline double rel_gap(double a, double b) {
  if (a == b) return 0.0;
  if (!std::isfinite(a) || !std::isfinite(b)) return std::numeric_limits<double>::infinity();
  return std::abs(a - b) / std::max({1.0, std::abs(a), std::abs(b)});
}

/// Componentwise version of rel_gap, maximised over coordinates.
template <class DerivedA, class DerivedB>
double rel_gap(const Eigen::MatrixBase<DerivedA>& a, const Eigen::MatrixBase<DerivedB>& b) {
  if (a.size() != b.size()) return std::numeric_limits<double>::infinity();
  double worst = 0.0;
  for (Eigen::Index i = 0; i < a.size(); ++i)
    worst = std::max(worst, rel_gap(static_cast<double>(a(i)), static_cast<double>(b(i))));
  return worst;
}

/// Amount by which `lhs <= rhs` fails, scaled like rel_gap.
inline double excess(double lhs, double rhs) {
  if (lhs <= rhs) return 0.0;
  return (lhs - rhs) / std::max({1.0, std::abs(lhs), std::abs(rhs)});
}

/// Shortest decimal form that reads back to the same double.
inline std::string format_number(double v) {
  char buf[32];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  return std::string(buf, res.ptr);
}

template <class Derived>
std::string format_point(const Eigen::MatrixBase<Derived>& p) {
  std::string out = "(";
  for (Eigen::Index i = 0; i < p.size(); ++i) {
    if (i) out += ",";
    out += format_number(static_cast<double>(p(i)));
  }
  return out + ")";
}

}  // namespace ngd
