#include <sys/wait.h>
#include <unistd.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "doctest.h"
#include "json.hpp"
#include "ngdef/cli/cli.hpp"
#include "ngdef/core/error.hpp"

using namespace ngd;
namespace fs = std::filesystem;

namespace {

const std::string data = NGDEF_TEST_DATA;

struct Run {
  int code;
  std::string out, err;
};

Run invoke(std::vector<std::string> args, std::optional<std::string> env = std::nullopt) {
  std::ostringstream out, err;
  const int code = cli::run(args, out, err, env);
  return {code, out.str(), err.str()};
}

struct TempDir {
  fs::path path;
  TempDir() : path(fs::temp_directory_path() / ("ngdef_cli_" + std::to_string(::getpid()))) {
    fs::create_directories(path);
  }
  ~TempDir() { fs::remove_all(path); }
  std::string file(const std::string& name, const std::string& content = {}) const {
    const auto p = (path / name).string();
    if (!content.empty()) std::ofstream(p) << content;
    return p;
  }
};

std::string slurp(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  std::stringstream s;
  s << f.rdbuf();
  return s.str();
}

// Drops lines holding a timestamp field.
std::string without_timestamps(const std::string& text) {
  std::istringstream in(text);
  std::string line, out;
  while (std::getline(in, line))
    if (line.find("\"timestamp\"") == std::string::npos) out += line + '\n';
  return out;
}

int shell(const std::string& cmd) {
  const int s = std::system(cmd.c_str());
  return WIFEXITED(s) ? WEXITSTATUS(s) : -1;
}

}  // namespace

TEST_CASE("coordinate and points parsing") {
  CHECK(cli::parse_coords("1,2, 3") == std::vector<double>{1, 2, 3});
  CHECK(cli::parse_coords(" -0.5 1e-3") == std::vector<double>{-0.5, 1e-3});
  for (const char* bad : {"", "1,,x", "abc", "1;2"}) CHECK_THROWS(cli::parse_coords(bad));

  std::istringstream in("# comment\n1;2\n\n0.5,0.5 ; 1,1\n");
  const auto rows = cli::parse_points(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0] == std::vector<std::vector<double>>{{1}, {2}});
  CHECK(rows[1] == std::vector<std::vector<double>>{{0.5, 0.5}, {1, 1}});
}

TEST_CASE("config validation") {
  cli::ExperimentConfig c;
  cli::apply_config_json(c, "verify", R"j({"model":"heisenberg","samples":20,"seed":4,"suites":["cone"]})j");
  CHECK(c.model == "heisenberg");
  CHECK(c.samples == 20);
  CHECK(*c.seed == 4);
  CHECK(c.suites == std::vector<std::string>{"cone"});
  cli::apply_config_json(c, "limits", R"j({"tol":1e-4,"op":"sum"})j");
  CHECK(c.limit_tol == 1e-4);
  for (const char* bad : {R"j({"nope":1})j", R"j({"samples":"ten"})j", R"j({"samples":-3})j", R"j({"steps":2.5})j", "[1]",
                          "{", R"j({"op":"sum"})j"}) {
    cli::ExperimentConfig d;
    try {
      cli::apply_config_json(d, "verify", bad);
      FAIL("accepted ", bad);
    } catch (const Error& e) {
      CHECK(e.code() == Errc::InvalidArgument);
    }
  }
  for (const auto& k : cli::config_keys("tangent")) CHECK(k.find('-') == std::string::npos);
}

TEST_CASE("verify") {
  TempDir t;
  const auto out = t.file("r.json");
  auto r = invoke({"verify", "--model", "euclidean", "--dim", "2", "--suite", "groupoid-axioms", "--samples", "1000",
                "--seed", "7", "--tol", "1e-9", "--out", out});
  CHECK(r.code == cli::exit_pass);
  auto j = nlohmann::json::parse(slurp(out));
  REQUIRE(j.is_array());
  REQUIRE(j.size() == 1);
  CHECK(j[0]["check"] == "groupoid-axioms");
  CHECK(j[0]["model"] == "euclidean(2)");
  CHECK(j[0]["seed"] == 7);
  CHECK(j[0]["pass"] == true);
  CHECK(j[0]["params"]["lambda"] == "0.5");
  CHECK(j[0].contains("timestamp"));

  r = invoke({"verify", "--suite", "groupoid-axioms"});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("Usage") != std::string::npos);

  r = invoke({"verify", "--model", "euclidean(1)", "--perturb-norm", "square", "--suite", "norm-axioms", "--samples",
           "200", "--out", out});
  CHECK(r.code == cli::exit_fail);
  j = nlohmann::json::parse(slurp(out));
  CHECK(j[0]["pass"] == false);
  CHECK_FALSE(j[0]["witnesses"].empty());
  CHECK(j[0]["params"]["perturb"] == "square");

  CHECK(invoke({"verify", "--model", "euclidean(1)", "--suite", "bogus"}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--model", "heisenberg", "--suite", "closed-forms"}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--model", "nowhere(2)"}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--model", "euclidean(1)", "--frobnicate"}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--model", "euclidean(1)", "--samples", "0"}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--model", "euclidean(1)", "--lambda", "2"}).code == cli::exit_usage);
  CHECK(invoke({}).code == cli::exit_usage);
  CHECK(invoke({"frob"}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--help"}).code == cli::exit_pass);

  r = invoke({"verify", "--model", "finite(" + data + "/finite/pair3.json)", "--samples", "10"});
  CHECK(r.code == cli::exit_pass);
  CHECK(nlohmann::json::parse(r.out).size() == 4);
}

TEST_CASE("seed resolution") {
  auto seed_of = [](const Run& r) { return nlohmann::json::parse(r.out)[0]["seed"].get<std::uint64_t>(); };
  const std::vector<std::string> base = {"verify", "--model", "euclidean(1)", "--suite", "norm-axioms", "--samples", "5"};
  CHECK(seed_of(invoke(base)) == 1);
  CHECK(seed_of(invoke(base, "42")) == 42);
  auto with = base;
  with.insert(with.end(), {"--seed", "3"});
  CHECK(seed_of(invoke(with, "42")) == 3);
  CHECK(invoke(base, "x1").code == cli::exit_usage);

  TempDir t;
  const auto cfg = t.file("c.json", R"j({"model":"euclidean(1)","suites":["norm-axioms"],"samples":5,"seed":11})j");
  CHECK(seed_of(invoke({"verify", "--config", cfg}, "42")) == 11);
  CHECK(seed_of(invoke({"verify", "--config", cfg, "--seed", "12"})) == 12);
}

TEST_CASE("config file") {
  TempDir t;
  const auto good = t.file("good.json", R"j({"model":"euclidean(2)","suites":["groupoid-axioms"],"samples":50})j");
  auto r = invoke({"verify", "--config", good});
  CHECK(r.code == cli::exit_pass);
  CHECK(nlohmann::json::parse(r.out)[0]["samples"] == 50);
  // The flag wins over the file.
  r = invoke({"verify", "--config", good, "--samples", "30"});
  CHECK(nlohmann::json::parse(r.out)[0]["samples"] == 30);

  const auto unknown = t.file("bad.json", R"j({"model":"euclidean(2)","colour":"red"})j");
  r = invoke({"verify", "--config", unknown});
  CHECK(r.code == cli::exit_usage);
  CHECK(r.err.find("colour") != std::string::npos);
  CHECK(invoke({"verify", "--config", t.file("broken.json", "{\"model\": ")}).code == cli::exit_usage);
  CHECK(invoke({"verify", "--config", (t.path / "absent.json").string()}).code == cli::exit_usage);
  // A key valid for another command.
  CHECK(invoke({"limits", "--config", t.file("lim.json", R"j({"model":"euclidean(1)","suites":[]})j")}).code ==
        cli::exit_usage);
}

TEST_CASE("limits") {
  TempDir t;
  const auto pts = t.file("p.txt", "1;2\n");
  auto r = invoke({"limits", "--model", "euclidean(1)", "--op", "sum", "--base", "0", "--points", pts});
  CHECK(r.code == cli::exit_pass);
  std::vector<std::string> lines;
  {
    std::istringstream in(r.out);
    std::string l;
    while (std::getline(in, l)) lines.push_back(l);
  }
  REQUIRE(lines.size() == 2 + 24 + 1);
  CHECK(lines[0].rfind("# model=euclidean(1) op=sum", 0) == 0);
  CHECK(lines[1] == "label,eps,value_0,residual,order,converged");
  const auto& last = lines.back();
  REQUIRE(last.rfind("row1,limit,", 0) == 0);
  const double v = std::stod(last.substr(11));
  CHECK(std::abs(v - 3) <= 1e-6);
  CHECK(last.substr(last.size() - 2) == ",1");

  // Heisenberg distance at the identity: exact homogeneity.
  const auto hp = t.file("h.txt", "0.3,0.1,0.2;-0.2,0.4,0.1\n");
  r = invoke({"limits", "--model", "heisenberg", "--op", "distance", "--points", hp});
  CHECK(r.code == cli::exit_pass);
  {
    std::istringstream in(r.out);
    std::string l;
    int rows = 0;
    while (std::getline(in, l)) {
      if (l.rfind("row1,", 0) != 0 || l.rfind("row1,limit", 0) == 0) continue;
      ++rows;
      std::vector<std::string> cells;
      std::stringstream ls(l);
      std::string cell;
      while (std::getline(ls, cell, ',')) cells.push_back(cell);
      if (rows > 1) CHECK(std::stod(cells.at(3)) <= 1e-12);
    }
    CHECK(rows == 24);
  }

  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "sum", "--points", t.file("e.txt", "# nothing\n")}).code ==
        cli::exit_usage);
  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "sum", "--points", (t.path / "none.txt").string()}).code ==
        cli::exit_usage);
  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "sum", "--points", t.file("a.txt", "1\n")}).code ==
        cli::exit_usage);
  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "sum", "--points", t.file("d.txt", "1,2;3\n")}).code ==
        cli::exit_usage);
  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "mul", "--points", pts}).code == cli::exit_usage);
  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "sum"}).code == cli::exit_usage);
  CHECK(invoke({"limits", "--model", "finite(" + data + "/finite/z4.json)", "--op", "sum", "--points", pts}).code ==
        cli::exit_usage);
  // Too few steps to see convergence.
  CHECK(invoke({"limits", "--model", "euclidean(1)", "--op", "sum", "--points", pts, "--steps", "3"}).code ==
        cli::exit_fail);
}

TEST_CASE("tangent") {
  auto r = invoke({"tangent", "--model", "euclidean(1)", "--object", "0", "--check", "a4weak", "--samples", "100"});
  CHECK(r.code == cli::exit_pass);
  auto j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "gw");
  CHECK(j["reports"].size() == 1);
  CHECK(j["reports"][0]["pass"] == true);

  r = invoke({"tangent", "--model", "broken(1)", "--samples", "100"});
  CHECK(r.code == cli::exit_fail);
  j = nlohmann::json::parse(r.out);
  CHECK(j["verdict"] == "not-gw");
  CHECK(j["witness"].get<std::string>().find("A3") != std::string::npos);

  CHECK(invoke({"tangent", "--model", "euclidean(1)", "--object", "1,2"}).code == cli::exit_usage);
  CHECK(invoke({"tangent", "--model", "euclidean(1)", "--object", "zero"}).code == cli::exit_usage);
  CHECK(invoke({"tangent", "--model", "euclidean(1)", "--check", "a5"}).code == cli::exit_usage);
}

TEST_CASE("identical invocations give identical payloads") {
  TempDir t;
  const std::vector<std::string> v = {"verify", "--model", "heisenberg", "--suite", "norm-axioms", "--suite",
                                      "cone", "--samples", "200", "--seed", "5"};
  const auto a = invoke(v), b = invoke(v);
  CHECK(a.code == b.code);
  CHECK(a.out != "");
  CHECK(without_timestamps(a.out) == without_timestamps(b.out));
  const auto c = invoke({"verify", "--model", "heisenberg", "--suite", "norm-axioms", "--suite", "cone", "--samples",
                      "200", "--seed", "6"});
  CHECK(without_timestamps(a.out) != without_timestamps(c.out));

  const auto pts = t.file("p.txt", "0.1,0.2,0.3;0.3,-0.1,0.2\n0.5,0,0;0,0.5,0\n");
  const std::vector<std::string> l = {"limits", "--model", "heisenberg", "--op", "sum", "--base", "0.2,0.1,-0.3",
                                      "--points", pts};
  const auto la = invoke(l), lb = invoke(l);
  CHECK(la.code == cli::exit_pass);
  CHECK(la.out == lb.out);
}

TEST_CASE("the binary honours the exit-code contract") {
  TempDir t;
  const std::string bin = NGDEF_CLI_PATH;
  const auto log = (t.path / "log.txt").string();
  const auto out = (t.path / "o.json").string();
  auto run = [&](const std::string& args) { return shell("'" + bin + "' " + args + " >'" + log + "' 2>&1"); };
  CHECK(run("verify --model euclidean --dim 2 --suite groupoid-axioms --samples 1000 --seed 7 --tol 1e-9 --out '" +
            out + "'") == 0);
  CHECK(run("verify --model 'euclidean(1)' --perturb-norm square --suite norm-axioms --out '" + out + "'") == 1);
  CHECK(nlohmann::json::parse(slurp(out))[0]["witnesses"].size() > 0);
  CHECK(run("verify --suite groupoid-axioms") == 2);
  CHECK(slurp(log).find("--model") != std::string::npos);

  const auto a = (t.path / "a.json").string(), b = (t.path / "b.json").string();
  CHECK(shell("NGDEF_SEED=77 '" + bin + "' verify --model heisenberg --suite deformation-a1 --samples 300 --out '" +
              a + "' 2>/dev/null") == 0);
  CHECK(shell("NGDEF_SEED=77 '" + bin + "' verify --model heisenberg --suite deformation-a1 --samples 300 --out '" +
              b + "' 2>/dev/null") == 0);
  CHECK(without_timestamps(slurp(a)) == without_timestamps(slurp(b)));
  CHECK(nlohmann::json::parse(slurp(a))[0]["seed"] == 77);
}
