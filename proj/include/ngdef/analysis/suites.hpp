#pragma once

// Named property suites over registry models.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ngdef/analysis/report.hpp"
#include "ngdef/core/schedule.hpp"
#include "ngdef/models/registry.hpp"

namespace ngd {

struct SuiteOptions {
  std::size_t samples = 1000;
  std::uint64_t seed = 1;
  /// Overrides the suite's default tolerance.
  std::optional<double> tol;
  /// Sampling radius for arrows and fiber points.
  double radius = 0.25;
  EpsSchedule sched{};
  double limit_tol = 1e-6;
  /// Replace the norm d by d², which breaks subadditivity.
  bool perturb_square = false;
};

/// Every suite id, in a fixed order.
const std::vector<std::string>& suite_ids();
/// The suites applicable to the model.
std::vector<std::string> default_suites(const ModelHandle& model);
double default_tolerance(const std::string& suite);

/// Deterministic given options.seed. Throws UnknownSuite for an unknown id
/// and Unsupported when the suite does not apply to the model.
CheckReport run_check_suite(const ModelHandle& model, const std::string& suite, const SuiteOptions& options = {});

}  // namespace ngd
