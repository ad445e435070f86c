#pragma once

#include <algorithm>
#include <cmath>
#include <cstddef>
#include <limits>
#include <string>
#include <utility>
#include <vector>

#include "ngdef/core/error.hpp"

namespace ngd {

/// Running max-violation tally for a sampled property.
///
/// Witness strings are only built for violations above the tolerance, and at
/// most `max_witnesses` of them are kept.
class CheckAccumulator {
 public:
  explicit CheckAccumulator(double tol, std::size_t max_witnesses = 5)
      : tol_(tol), max_witnesses_(max_witnesses) {}

  template <class WitnessFn>
  void record(double violation, WitnessFn&& witness) {
    ++samples_;
    if (std::isnan(violation)) violation = std::numeric_limits<double>::infinity();
    max_violation_ = std::max(max_violation_, violation);
    if (violation > tol_ && witnesses_.size() < max_witnesses_) witnesses_.push_back(witness());
  }

  void record(double violation) {
    record(violation, [] { return std::string("(no witness)"); });
  }

  /// Folds another tally into this one; sample counts add.
  void merge(const CheckAccumulator& other) {
    samples_ += other.samples_;
    max_violation_ = std::max(max_violation_, other.max_violation_);
    for (const auto& w : other.witnesses_)
      if (witnesses_.size() < max_witnesses_) witnesses_.push_back(w);
  }

  bool pass() const noexcept { return max_violation_ <= tol_; }
  double max_violation() const noexcept { return max_violation_; }
  double tol() const noexcept { return tol_; }
  std::size_t samples() const noexcept { return samples_; }
  const std::vector<std::string>& witnesses() const noexcept { return witnesses_; }

 private:
  double tol_;
  std::size_t max_witnesses_;
  std::size_t samples_ = 0;
  double max_violation_ = 0.0;
  std::vector<std::string> witnesses_;
};

namespace detail {
/// Runs `body` and records its defect; library errors count as infinite.
template <class Body, class Witness>
void record_guarded(CheckAccumulator& acc, Body&& body, Witness&& witness) {
  double v;
  try {
    v = body();
  } catch (const Error& e) {
    const std::string what = e.what();
    acc.record(std::numeric_limits<double>::infinity(), [&] { return witness() + " error: " + what; });
    return;
  }
  acc.record(v, witness);
}
}  // namespace detail

}  // namespace ngd
