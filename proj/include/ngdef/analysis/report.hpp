#pragma once

// Outcomes of property suites and limit tables, and their serialized forms.

#include <cstdint>
#include <iosfwd>
#include <map>
#include <string>
#include <vector>

#include "ngdef/analysis/limit.hpp"
#include "ngdef/core/check.hpp"

namespace ngd {

struct CheckReport {
  std::string check;
  std::string model;
  std::size_t samples = 0;
  std::uint64_t seed = 0;
  double max_violation = 0.0;
  double tol = 0.0;
  bool pass = true;
  std::vector<std::string> witnesses;
  /// Sampler, schedule and other settings needed to reproduce the numbers.
  std::map<std::string, std::string> params;

  static CheckReport from(std::string check, std::string model, std::uint64_t seed, const CheckAccumulator& acc) {
    return {std::move(check), std::move(model), acc.samples(), seed, acc.max_violation(), acc.tol(), acc.pass(),
            acc.witnesses(), {}};
  }
};

/// {check, model, samples, seed, max_violation, tol, pass, witnesses[],
/// params{}}; an infinite max_violation is written as the string "inf".
std::string to_json(const CheckReport& r, int indent = -1);
std::string to_json(const std::vector<CheckReport>& rs, int indent = 2);

/// One row per ε with columns eps, value_0..value_{n-1}, residual (empty on
/// the first row), then a final row "limit" with the estimate, the last
/// residual, the fitted order and converged as 0/1.
void write_limit_csv(std::ostream& out, const LimitEstimate& est, const std::string& label = "");
std::string limit_csv_header(std::size_t value_dim);

}  // namespace ngd
