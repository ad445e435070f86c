#include "ngdef/cli/cli.hpp"

#include <charconv>
#include <chrono>
#include <ctime>
#include <fstream>
#include <iostream>
#include <sstream>
#include <type_traits>

#include "CLI11.hpp"
#include "json.hpp"
#include "ngdef/analysis/dilatation.hpp"
#include "ngdef/analysis/suites.hpp"

namespace ngd::cli {

namespace {

using nlohmann::ordered_json;

// Usage or configuration problem: exit 2.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

std::string timestamp() {
  const std::time_t t = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&t, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ordered_json report_object(const CheckReport& r) { return ordered_json::parse(to_json(r)); }


double parse_double(std::string_view s) {
  double v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size()) throw UsageError("bad number '" + std::string(s) + "'");
  return v;
}

std::uint64_t parse_seed(const std::string& s) {
  std::uint64_t v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (s.empty() || ec != std::errc() || p != s.data() + s.size()) throw UsageError("bad seed '" + s + "'");
  return v;
}

// Writes to --out, or to `fallback` when no file was named.
template <class F>
void emit(const std::string& path, std::ostream& fallback, F&& write) {
  if (path.empty()) {
    write(fallback);
    return;
  }
  std::ofstream f(path, std::ios::binary);
  if (!f) throw UsageError("cannot write '" + path + "'");
  write(f);
}

EpsSchedule schedule(const ExperimentConfig& c) {
  EpsSchedule s{c.lambda, c.k0, c.steps};
  try {
    s.validate();
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
  return s;
}

ModelHandle model_of(const ExperimentConfig& c) {
  if (c.model.empty()) throw UsageError("--model is required");
  try {
    return build_model(ModelSpec::parse(c.model, c.dim));
  } catch (const Error& e) {
    throw UsageError(e.what());
  }
}

template <class D>
DObject<D> center_object(const D& d) {
  SplitMix64 rng(0);
  return d.groupoid().random_object(rng, 0.0);
}

template <class D>
Eigen::Index fiber_dim(const D& d, const DObject<D>& x) {
  return d.groupoid().fiber_chart(d.groupoid().identity(x)).size();
}

Eigen::VectorXd to_vector(const std::vector<double>& xs) {
  return Eigen::Map<const Eigen::VectorXd>(xs.data(), static_cast<Eigen::Index>(xs.size()));
}

template <class D>
DArrow<D> arrow_at(const D& d, const std::vector<double>& coords, const DObject<D>& x, const std::string& what) {
  if (static_cast<Eigen::Index>(coords.size()) != fiber_dim(d, x))
    throw UsageError(what + ": expected " + std::to_string(fiber_dim(d, x)) + " coordinates, got " +
                     std::to_string(coords.size()));
  return d.groupoid().from_fiber_chart(to_vector(coords), x);
}

// The object named by coordinates: the target of the arrow with those fiber
// coordinates over the center.
template <class D>
DObject<D> object_at(const D& d, const std::string& text) {
  const auto c = center_object(d);
  if (text.empty()) return c;
  std::vector<double> coords;
  try {
    coords = parse_coords(text);
  } catch (const UsageError&) {
    throw UsageError("unknown object '" + text + "'");
  }
  if (static_cast<Eigen::Index>(coords.size()) != fiber_dim(d, c)) throw UsageError("unknown object '" + text + "'");
  return d.groupoid().target(d.groupoid().from_fiber_chart(to_vector(coords), c));
}

template <class M>
concept SampledDeformation = ChartedDeformation<M> && SampledGroupoid<typename M::Groupoid>;

// Calls f(d) with the model's deformation, or fails with a usage error for
// models without one.
template <class F>
int with_deformation(const ModelHandle& h, const std::string& command, F&& f) {
  return std::visit(
      [&](const auto& m) -> int {
        using M = std::decay_t<decltype(m)>;
        if constexpr (SampledDeformation<M>)
          return f(m);
        else
          throw UsageError(command + " needs a model with a deformation, not " + h.id);
      },
      h.model);
}

std::uint64_t seed_of(const ExperimentConfig& c, const std::optional<std::string>& env) {
  if (c.seed) return *c.seed;
  if (env && !env->empty()) return parse_seed(*env);
  return 1;
}

// ---------------------------------------------------------------------------

int cmd_verify(const ExperimentConfig& c, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const auto model = model_of(c);
  SuiteOptions o;
  o.samples = c.samples;
  o.seed = seed;
  o.tol = c.tol;
  o.radius = c.radius;
  o.sched = schedule(c);
  o.limit_tol = c.limit_tol;
  o.perturb_square = c.perturb_norm == "square";
  if (c.samples == 0) throw UsageError("--samples must be positive");

  const auto suites = c.suites.empty() ? default_suites(model) : c.suites;
  std::vector<CheckReport> reports;
  for (const auto& s : suites) {
    try {
      reports.push_back(run_check_suite(model, s, o));
    } catch (const Error& e) {
      if (e.code() == Errc::UnknownSuite || e.code() == Errc::Unsupported || e.code() == Errc::InvalidArgument)
        throw UsageError(e.what());
      throw;
    }
    const auto& r = reports.back();
    err << (r.pass ? "PASS " : "FAIL ") << r.check << " max=" << format_number(r.max_violation) << " tol=" << format_number(r.tol)
        << " n=" << r.samples << '\n';
  }

  ordered_json a = ordered_json::array();
  const auto now = timestamp();
  for (const auto& r : reports) {
    auto j = report_object(r);
    j["timestamp"] = now;
    a.push_back(std::move(j));
  }
  emit(c.out, out, [&](std::ostream& f) { f << a.dump(2) << '\n'; });
  const bool pass = std::all_of(reports.begin(), reports.end(), [](const auto& r) { return r.pass; });
  return pass ? exit_pass : exit_fail;
}

std::optional<TangentKind> kind_of(const std::string& op) {
  if (op == "sum") return TangentKind::sum;
  if (op == "diff") return TangentKind::diff;
  if (op == "inv") return TangentKind::inv;
  if (op == "dilatation") return TangentKind::dilatation;
  return std::nullopt;
}

int cmd_limits(const ExperimentConfig& c, std::ostream& out, std::ostream& err) {
  const auto model = model_of(c);
  const auto sched = schedule(c);
  if (c.op.empty()) throw UsageError("--op is required");
  if (c.points.empty()) throw UsageError("--points is required");
  std::ifstream pf(c.points);
  if (!pf) throw UsageError("cannot read points file '" + c.points + "'");
  const auto rows = parse_points(pf);
  if (rows.empty()) throw UsageError("points file '" + c.points + "' has no rows");
  const auto kind = kind_of(c.op);
  const std::size_t arity = (c.op == "norm" || c.op == "inv") ? 1 : 2;

  return with_deformation(model, "limits", [&](const auto& d) -> int {
    using D = std::decay_t<decltype(d)>;
    const auto x = object_at(d, c.object);
    const auto base = c.base.empty() ? d.groupoid().identity(x) : arrow_at(d, parse_coords(c.base), x, "--base");

    std::vector<std::pair<std::vector<DArrow<D>>, std::size_t>> inputs;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != arity)
        throw UsageError("row " + std::to_string(i + 1) + ": " + c.op + " takes " + std::to_string(arity) +
                         " point(s)");
      std::vector<DArrow<D>> args;
      for (const auto& p : rows[i]) args.push_back(arrow_at(d, p, x, "row " + std::to_string(i + 1)));
      inputs.push_back({std::move(args), i});
    }

    std::ostringstream csv;
    csv << "# model=" << model.id << " op=" << c.op << " object=" << (c.object.empty() ? "center" : c.object)
        << " base=" << (c.base.empty() ? "identity" : c.base) << " lambda=" << format_number(sched.lambda)
        << " k0=" << sched.k0 << " steps=" << sched.steps << " tol=" << format_number(c.limit_tol);
    if (kind == TangentKind::dilatation) csv << " mu=" << format_number(c.mu);
    csv << '\n';
    bool header = false, all = true;
    for (const auto& [args, i] : inputs) {
      const std::string label = "row" + std::to_string(i + 1);
      LimitEstimate est;
      try {
        if (c.op == "distance")
          est = based_tangent_distance(d, base, args[0], args[1], sched, c.limit_tol);
        else if (c.op == "norm")
          est = tangent_norm(d, args[0], sched, c.limit_tol);
        else
          est = tangent_op(d, *kind, base, args[0], args.size() > 1 ? args[1] : args[0], sched, c.limit_tol, c.mu);
      } catch (const Error& e) {
        err << label << ": " << e.what() << '\n';
        all = false;
        continue;
      }
      if (!header) {
        csv << limit_csv_header(static_cast<std::size_t>(est.value.size())) << '\n';
        header = true;
      }
      write_limit_csv(csv, est, label);
      err << label << (est.converged ? " converged" : " NOT converged") << " order=" << format_number(est.order) << '\n';
      all = all && est.converged;
    }
    emit(c.out, out, [&](std::ostream& f) { f << csv.str(); });
    return all ? exit_pass : exit_fail;
  });
}

int cmd_tangent(const ExperimentConfig& c, std::uint64_t seed, std::ostream& out, std::ostream& err) {
  const auto model = model_of(c);
  const auto sched = schedule(c);
  if (c.samples == 0) throw UsageError("--samples must be positive");
  FiberExtractionOptions o;
  o.samples = c.samples;
  o.seed = seed;
  o.radius = c.radius;
  o.limits.sched = sched;
  o.limits.limit_tol = c.limit_tol;

  return with_deformation(model, "tangent", [&](const auto& d) -> int {
    const auto x = object_at(d, c.object);
    ordered_json j;
    j["command"] = "tangent";
    j["model"] = model.id;
    j["object"] = describe_object(d.groupoid(), x);
    j["check"] = c.check;
    j["samples"] = c.samples;
    j["seed"] = seed;
    j["lambda"] = sched.lambda;
    j["k0"] = sched.k0;
    j["steps"] = sched.steps;
    j["limit_tol"] = c.limit_tol;
    j["radius"] = c.radius;
    bool pass = true;
    try {
      const auto f = fiber_dilatation_structure(d, x, o);
      j["verdict"] = "gw";
      j["reports"] = ordered_json::array();
      for (const auto& r : run_dilatation_suites(f, o, model.id)) {
        if (c.check != "all" && r.check != "dilatation-" + c.check) continue;
        pass = pass && r.pass;
        err << (r.pass ? "PASS " : "FAIL ") << r.check << " max=" << format_number(r.max_violation) << '\n';
        j["reports"].push_back(report_object(r));
      }
    } catch (const Error& e) {
      if (e.code() != Errc::NotGw) throw;
      pass = false;
      j["verdict"] = "not-gw";
      j["witness"] = e.what();
      err << "not a dilatation structure: " << e.what() << '\n';
    }
    j["timestamp"] = timestamp();
    emit(c.out, out, [&](std::ostream& f) { f << j.dump(2) << '\n'; });
    return pass ? exit_pass : exit_fail;
  });
}

// ---------------------------------------------------------------------------

// Flags shared by every command; `--config` is read before parsing.
void add_common(CLI::App* s, ExperimentConfig& c, std::string& config) {
  s->add_option("--config", config, "JSON file with the same settings");
  s->add_option("--model", c.model, "model, e.g. euclidean(2), heisenberg, finite(path)");
  s->add_option("--dim", c.dim, "dimension for euclidean, translation-action, broken");
  s->add_option("--seed", c.seed, "sampler seed (default NGDEF_SEED, then 1)");
  s->add_option("--lambda", c.lambda, "schedule ratio");
  s->add_option("--k0", c.k0, "first schedule exponent");
  s->add_option("--steps", c.steps, "schedule length");
  s->add_option("--out", c.out, "output file (default stdout)");
}

std::optional<std::string> config_path(const std::vector<std::string>& args) {
  for (std::size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) throw UsageError("--config needs a file");
      return args[i + 1];
    }
    if (args[i].rfind("--config=", 0) == 0) return args[i].substr(9);
  }
  return std::nullopt;
}

}  // namespace

const std::vector<std::string>& config_keys(const std::string& command) {
  static const std::vector<std::string> verify = {"model", "dim",    "suites",    "samples",      "seed", "tol",
                                                  "radius", "lambda", "k0", "steps", "limit_tol", "perturb_norm",
                                                  "out"};
  static const std::vector<std::string> limits = {"model",  "dim", "op", "object", "base", "points", "lambda",
                                                  "k0",     "steps", "tol", "mu",    "seed", "out"};
  static const std::vector<std::string> tangent = {"model", "dim",   "object",    "check", "samples", "seed",
                                                   "radius", "lambda", "k0", "steps", "limit_tol", "out"};
  static const std::vector<std::string> none;
  if (command == "verify") return verify;
  if (command == "limits") return limits;
  if (command == "tangent") return tangent;
  return none;
}

void apply_config_json(ExperimentConfig& c, const std::string& command, const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const std::exception& e) {
    fail(Errc::InvalidArgument, std::string("config is not JSON: ") + e.what());
  }
  if (!j.is_object()) fail(Errc::InvalidArgument, "config must be a JSON object");
  const auto& keys = config_keys(command);
  for (const auto& [k, v] : j.items())
    if (std::find(keys.begin(), keys.end(), k) == keys.end())
      fail(Errc::InvalidArgument, "unknown config key '" + k + "' for " + command);
  try {
    auto str = [&](const char* k, std::string& dst) {
      if (j.contains(k)) dst = j.at(k).get<std::string>();
    };
    auto num = [&](const char* k, auto& dst) {
      if (!j.contains(k)) return;
      using T = std::decay_t<decltype(dst)>;
      const auto& v = j.at(k);
      if (!v.is_number()) fail(Errc::InvalidArgument, std::string("config key '") + k + "' must be a number");
      if constexpr (std::is_integral_v<T>) {
        if (!v.is_number_integer() || (std::is_unsigned_v<T> && !v.is_number_unsigned()))
          fail(Errc::InvalidArgument, std::string("config key '") + k + "' must be a non-negative integer");
      }
      dst = v.get<T>();
    };
    str("model", c.model);
    if (j.contains("dim")) {
      int d = 0;
      num("dim", d);
      c.dim = d;
    }
    if (j.contains("suites")) c.suites = j.at("suites").get<std::vector<std::string>>();
    num("samples", c.samples);
    if (j.contains("seed")) {
      std::uint64_t s = 0;
      num("seed", s);
      c.seed = s;
    }
    num("radius", c.radius);
    num("lambda", c.lambda);
    num("k0", c.k0);
    num("steps", c.steps);
    num("mu", c.mu);
    // `tol` is the suite tolerance for verify and the limit tolerance for limits.
    if (j.contains("tol")) {
      double t = 0;
      num("tol", t);
      if (command == "limits")
        c.limit_tol = t;
      else
        c.tol = t;
    }
    num("limit_tol", c.limit_tol);
    str("perturb_norm", c.perturb_norm);
    str("op", c.op);
    str("object", c.object);
    str("base", c.base);
    str("points", c.points);
    str("check", c.check);
    str("out", c.out);
  } catch (const nlohmann::json::exception& e) {
    fail(Errc::InvalidArgument, std::string("bad config value: ") + e.what());
  }
}

std::vector<double> parse_coords(const std::string& text) {
  std::string s = text;
  std::replace(s.begin(), s.end(), ',', ' ');
  std::istringstream in(s);
  std::vector<double> out;
  std::string tok;
  while (in >> tok) out.push_back(parse_double(tok));
  if (out.empty()) throw UsageError("no coordinates in '" + text + "'");
  return out;
}

std::vector<std::vector<std::vector<double>>> parse_points(std::istream& in) {
  std::vector<std::vector<std::vector<double>>> rows;
  std::string line;
  while (std::getline(in, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::vector<std::vector<double>> row;
    std::istringstream parts(line);
    std::string part;
    while (std::getline(parts, part, ';')) row.push_back(parse_coords(part));
    rows.push_back(std::move(row));
  }
  return rows;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err,
        std::optional<std::string> env_seed) {
  CLI::App app{"Normed groupoids with dilatations: property suites and tangent limits", "ngdef"};
  app.require_subcommand(1);
  ExperimentConfig c;
  std::string config;

  auto* verify = app.add_subcommand("verify", "run property suites on a model; JSON reports");
  add_common(verify, c, config);
  verify->add_option("--suite", c.suites, "suite id, repeatable (default: all applicable)");
  verify->add_option("--samples", c.samples, "samples per suite");
  verify->add_option("--tol", c.tol, "tolerance overriding the suite default");
  verify->add_option("--radius", c.radius, "sampling radius");
  verify->add_option("--limit-tol", c.limit_tol, "tolerance of limit estimates");
  verify->add_option("--perturb-norm", c.perturb_norm, "none, or square to replace d by d^2")
      ->check(CLI::IsMember({"none", "square"}));

  auto* limits = app.add_subcommand("limits", "estimate tangent limits for points; CSV table");
  add_common(limits, c, config);
  limits->add_option("--op", c.op, "distance, norm, sum, diff, inv or dilatation")
      ->check(CLI::IsMember({"distance", "norm", "sum", "diff", "inv", "dilatation"}));
  limits->add_option("--object", c.object, "object coordinates (default: center)");
  limits->add_option("--base", c.base, "base point, fiber coordinates (default: identity)");
  limits->add_option("--points", c.points, "file with one input per line, points separated by ';'");
  limits->add_option("--tol", c.limit_tol, "convergence tolerance");
  limits->add_option("--mu", c.mu, "dilatation factor for --op dilatation");

  auto* tangent = app.add_subcommand("tangent", "extract the dilatation structure of a fiber; JSON verdict");
  add_common(tangent, c, config);
  tangent->add_option("--object", c.object, "object coordinates (default: center)");
  tangent->add_option("--check", c.check, "a1, a2, a3, a4weak or all")
      ->check(CLI::IsMember({"a1", "a2", "a3", "a4weak", "all"}));
  tangent->add_option("--samples", c.samples, "sampled triples");
  tangent->add_option("--radius", c.radius, "sampling radius");
  tangent->add_option("--limit-tol", c.limit_tol, "tolerance of limit estimates");

  auto usage = [&](const std::string& msg, CLI::App* sub) {
    err << "error: " << msg << "\n\n" << (sub ? sub->help() : app.help());
    return exit_usage;
  };
  try {
    // Settings from --config first, so that flags override them.
    if (const auto path = config_path(args)) {
      if (args.empty()) throw UsageError("no command");
      std::ifstream f(*path);
      if (!f) throw UsageError("cannot read config '" + *path + "'");
      std::stringstream text;
      text << f.rdbuf();
      try {
        apply_config_json(c, args.front(), text.str());
      } catch (const Error& e) {
        throw UsageError(e.what());
      }
    }
    std::vector<std::string> rev(args.rbegin(), args.rend());
    app.parse(rev);
  } catch (const CLI::CallForHelp&) {
    out << (app.get_subcommands().empty() ? app.help() : app.get_subcommands().front()->help());
    return exit_pass;
  } catch (const CLI::ParseError& e) {
    return usage(e.what(), app.get_subcommands().empty() ? nullptr : app.get_subcommands().front());
  } catch (const UsageError& e) {
    return usage(e.what(), nullptr);
  }

  CLI::App* sub = app.get_subcommands().front();
  try {
    const auto seed = seed_of(c, env_seed);
    if (sub == verify) return cmd_verify(c, seed, out, err);
    if (sub == limits) return cmd_limits(c, out, err);
    return cmd_tangent(c, seed, out, err);
  } catch (const UsageError& e) {
    return usage(e.what(), sub);
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return exit_fail;
  }
}

}  // namespace ngd::cli
