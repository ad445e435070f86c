#pragma once

// ε -> 0 limits of vector-valued functions sampled along a geometric
// schedule, with one step of geometric-series extrapolation.

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <string>
#include <vector>

#include <Eigen/Core>

#include "ngdef/core/error.hpp"
#include "ngdef/core/numeric.hpp"
#include "ngdef/core/schedule.hpp"

namespace ngd {

struct LimitEstimate {
  Eigen::VectorXd value;
  std::vector<double> eps;
  std::vector<Eigen::VectorXd> values;
  /// residuals[k] = |v_{k+1} - v_k|, one per step after the first.
  std::vector<double> residuals;
  /// Residual ratio used for extrapolation and the order log(ratio)/log(λ)
  /// of the slowest coordinate; order is +inf when every coordinate settles
  /// exactly.
  double ratio = 0.0;
  double order = 0.0;
  /// Largest |X_j - X_{j-1}| over coordinates, for the extrapolated values
  /// X at the chosen step.
  double extrapolated_residual = 0.0;
  bool extrapolated = false;
  bool exact = false;
  bool converged = false;
  /// Number of leading values before round-off takes over in some
  /// coordinate.
  std::size_t used = 0;

  double scalar() const { return value(0); }
  /// Largest residual among the used steps.
  double max_residual() const {
    const auto end = residuals.begin() + static_cast<std::ptrdiff_t>(used > 0 ? used - 1 : 0);
    return end == residuals.begin() ? 0.0 : *std::max_element(residuals.begin(), end);
  }
};

using LimitFn = std::function<Eigen::VectorXd(double)>;

namespace detail {
inline double noise_floor(const Eigen::VectorXd& v) {
  return 64 * std::numeric_limits<double>::epsilon() * std::max(1.0, v.lpNorm<Eigen::Infinity>());
}
/// Residuals at or below this count as settled.
inline double settle_floor(const Eigen::VectorXd& v) {
  return std::max(noise_floor(v), 1e-12 * std::max(1.0, v.lpNorm<Eigen::Infinity>()));
}
}  // namespace detail

namespace detail {

struct ScalarFit {
  double value = 0.0, ratio = 0.0, order = std::numeric_limits<double>::infinity(), post = 0.0;
  bool extrapolated = false, exact = false, converged = false;
  std::size_t used = 0;
};

/// Truncation, settling and extrapolation of one coordinate sequence; the
/// floors are absolute.
inline ScalarFit fit_sequence(const std::vector<double>& v, const std::vector<double>& eps, double lambda, double tol, double noise,
                              double settle) {
  ScalarFit out;
  std::vector<double> r;
  for (std::size_t k = 1; k < v.size(); ++k) r.push_back(std::abs(v[k] - v[k - 1]));

  // A sharp rise is round-off when it stays below the worst amplification
  // u/ε² seen in these models, u the unit round-off at the sequence's
  // scale; so is a rise out of the settled range.
  const double unit = noise / 64;
  out.used = v.size();
  for (std::size_t k = 1; k < r.size(); ++k) {
    const bool sharp = r[k] > 1.5 * std::max(r[k - 1], noise) && r[k] <= unit / (eps[k + 1] * eps[k + 1]);
    if (r[k] > settle && (r[k - 1] <= settle || sharp)) {
      out.used = k + 1;
      break;
    }
  }
  const std::size_t last = out.used - 1;  // index of the last used value
  out.value = v[last];
  if (last == 0) {
    out.exact = true;
    out.converged = r.empty();
    return out;
  }
  out.exact = std::all_of(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(last),
                          [&](double x) { return x <= settle; });
  if (out.exact) {
    out.converged = true;
    return out;
  }

  // q[k] = r[k] / r[k-1] for used residuals above the settle floor.
  auto ratio_at = [&](std::size_t k) { return r[k] > settle && r[k - 1] > settle ? r[k] / r[k - 1] : -1.0; };
  double best = std::numeric_limits<double>::infinity();
  for (std::size_t j = 3; j + 1 <= last; ++j) {
    std::vector<double> all;
    for (std::size_t k = j; k >= 1 && all.size() < 5; --k) {
      const double q = ratio_at(k);
      if (q <= 0) break;
      all.push_back(q);
    }
    // Longest stable window ending at j.
    double rho = -1;
    for (std::size_t len = all.size(); len >= 3 && rho < 0; --len) {
      std::vector<double> w(all.begin(), all.begin() + static_cast<std::ptrdiff_t>(len));
      std::sort(w.begin(), w.end());
      const double mid = w[w.size() / 2];
      if (w.back() - w.front() < 0.1 && mid > 0 && mid < 0.9) rho = mid;
    }
    if (rho < 0) continue;
    const double c = rho / (1 - rho);
    const double xj = v[j + 1] + (v[j + 1] - v[j]) * c;
    const double xp = v[j] + (v[j] - v[j - 1]) * c;
    const double post = std::abs(xj - xp);
    // Later values must stay within a geometric tail of the extrapolation;
    // the residuals on both sides of v_k bound its own round-off. The last
    // used value sits next to the rise and is skipped.
    bool consistent = true;
    for (std::size_t k = j + 2; k < last && consistent; ++k) {
      const double around = std::max(r[k - 1], k < r.size() ? r[k] : 0.0);
      consistent = std::abs(v[k] - xj) <= 4 * around + settle;
    }
    if (consistent && post <= best) {
      best = post;
      out.ratio = rho;
      out.value = xj;
      out.post = post;
    }
  }
  out.extrapolated = std::isfinite(best);
  out.order = out.extrapolated ? std::log(out.ratio) / std::log(lambda) : 0.0;

  // Residuals that fell to round-off count as settled.
  if (r[last - 1] <= settle) {
    out.value = v[last];
    out.converged = true;
    return out;
  }
  if (out.extrapolated) {
    out.converged = out.order > 0 && out.post < tol;
    return out;
  }
  // No usable window: accept the last value when the final residuals are
  // small and far below the largest one.
  const double peak = *std::max_element(r.begin(), r.begin() + static_cast<std::ptrdiff_t>(last));
  double tail = 0;
  for (std::size_t k = last >= 3 ? last - 3 : 0; k < last; ++k) tail = std::max(tail, r[k]);
  out.value = v[last];
  out.post = 2 * r[last - 1];
  out.converged = last >= 6 && tail < tol && tail < 1e-3 * peak;
  return out;
}

}  // namespace detail

/// Evaluates f at every ε_k and estimates the limit coordinate by
/// coordinate.
///
/// Steps from the first sharp rise of size at most u/ε² on, or from the
/// first rise out of the settled range (1e-12 relative to the vector's
/// size), are round-off and left unused. A coordinate whose remaining residuals all
/// settle has its last value as limit. Otherwise the longest window of 3
/// to 5 consecutive residual ratios ending at each step and agreeing within
/// 0.1 on some ρ < 0.9 gives extrapolations
/// X_k = v_k + (v_k - v_{k-1}) ρ/(1-ρ), and the window with
/// the smallest |X_j - X_{j-1}| wins; the coordinate converged when that
/// difference is below `tol`. Throws DomainExhausted when f leaves its
/// domain.
inline LimitEstimate estimate_limit(const LimitFn& f, const EpsSchedule& sched, double tol) {
  sched.validate();
  LimitEstimate out;
  out.eps = sched.values();
  for (double e : out.eps) {
    try {
      out.values.push_back(f(e));
    } catch (const Error& err) {
      if (err.code() == Errc::NotInDomain)
        fail(Errc::DomainExhausted, "at eps=" + format_number(e) + ": " + err.what());
      throw;
    }
  }
  const auto& v = out.values;
  for (std::size_t k = 1; k < v.size(); ++k) out.residuals.push_back((v[k] - v[k - 1]).norm());
  const double noise = detail::noise_floor(v.front());
  const double settle = detail::settle_floor(v.front());

  const Eigen::Index n = v.front().size();
  out.value.resize(n);
  out.exact = out.converged = true;
  out.used = v.size();
  out.order = std::numeric_limits<double>::infinity();
  std::vector<double> seq(v.size());
  for (Eigen::Index i = 0; i < n; ++i) {
    for (std::size_t k = 0; k < v.size(); ++k) seq[k] = v[k](i);
    const auto fit = detail::fit_sequence(seq, out.eps, sched.lambda, tol, noise, settle);
    out.value(i) = fit.value;
    out.exact = out.exact && fit.exact;
    out.converged = out.converged && fit.converged;
    out.extrapolated = out.extrapolated || fit.extrapolated;
    out.used = std::min(out.used, fit.used);
    out.extrapolated_residual = std::max(out.extrapolated_residual, fit.post);
    if (!fit.exact && fit.order < out.order) {
      out.order = fit.order;
      out.ratio = fit.ratio;
    }
  }
  return out;
}

inline LimitEstimate estimate_scalar_limit(const std::function<double(double)>& f, const EpsSchedule& sched,
                                           double tol) {
  return estimate_limit([&](double e) { return Eigen::VectorXd::Constant(1, f(e)); }, sched, tol);
}

/// Throws NotConverging unless the estimate converged.
inline const LimitEstimate& require_converged(const LimitEstimate& est, const std::string& what = "limit") {
  if (!est.converged)
    fail(Errc::NotConverging, what + ": final residual " +
                                  format_number(est.residuals.empty() ? 0.0 : est.residuals.back()));
  return est;
}

}  // namespace ngd
