#pragma once

// The ngdef command line: verify, limits and tangent.
//
// Exit codes: 0 pass, 1 failed check or non-convergence, 2 usage or
// configuration error.

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

namespace ngd::cli {

inline constexpr int exit_pass = 0;
inline constexpr int exit_fail = 1;
inline constexpr int exit_usage = 2;

/// Every setting of a run. `--config FILE` loads the same keys from JSON;
/// flags given on the command line win.
struct ExperimentConfig {
  std::string model;
  std::optional<int> dim;
  std::vector<std::string> suites;
  std::size_t samples = 1000;
  std::optional<std::uint64_t> seed;
  std::optional<double> tol;
  double radius = 0.25;
  double lambda = 0.5;
  int k0 = 1;
  int steps = 24;
  double limit_tol = 1e-6;
  std::string perturb_norm = "none";
  // limits
  std::string op;
  std::string object;
  std::string base;
  std::string points;
  double mu = 0.5;
  // tangent
  std::string check = "all";
  std::string out;
};

/// Keys of `command`'s config; the same names as the flags with '-'
/// replaced by '_'.
const std::vector<std::string>& config_keys(const std::string& command);

/// Applies a JSON object onto `cfg`. Throws ngd::Error (InvalidArgument) on
/// unknown keys, wrong types or malformed JSON.
void apply_config_json(ExperimentConfig& cfg, const std::string& command, const std::string& text);

/// Comma or whitespace separated numbers.
std::vector<double> parse_coords(const std::string& text);

/// Rows of a points file: one input per line, its points separated by ';'.
/// Blank lines and lines starting with '#' are skipped.
std::vector<std::vector<std::vector<double>>> parse_points(std::istream& in);

/// Runs the command line; reports go to --out or `out`, diagnostics to `err`.
/// `env_seed` stands in for NGDEF_SEED.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_seed = std::nullopt);

}  // namespace ngd::cli
