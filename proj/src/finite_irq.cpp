#include "ngdef/irq/finite.hpp"

#include <fstream>
#include <sstream>

#include "json.hpp"

#include "ngdef/core/error.hpp"
#include "ngdef/core/random.hpp"

namespace ngd {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { fail(Errc::InvalidModelSpec, msg); }

}  // namespace

FiniteIrq::FiniteIrq(std::vector<std::string> names, std::vector<std::size_t> circ, std::vector<std::size_t> bullet)
    : names_(std::move(names)), circ_(std::move(circ)), bullet_(std::move(bullet)) {
  const std::size_t n = names_.size();
  if (n == 0) bad("empty carrier");
  if (circ_.size() != n * n || bullet_.size() != n * n) bad("tables must be n x n");
  for (std::size_t i = 0; i < n * n; ++i)
    if (circ_[i] >= n || bullet_[i] >= n) bad("table entry outside the carrier");

  auto check = [&](std::size_t x, std::size_t y) {
    if (irq_axiom_defect(*this, x, y) != 0) bad("P1/P2 fail at x=" + names_[x] + " y=" + names_[y]);
  };
  if (n <= kExhaustiveLimit) {
    for (std::size_t x = 0; x < n; ++x)
      for (std::size_t y = 0; y < n; ++y) check(x, y);
  } else {
    SplitMix64 rng(n);
    for (int i = 0; i < 4096; ++i) check(rng.below(n), rng.below(n));
  }
}

FiniteIrq FiniteIrq::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  try {
    for (const auto& [key, _] : doc.items())
      if (key != "carrier" && key != "circ" && key != "bullet") bad("unknown key " + key);
    const json& carrier = doc.at("carrier");
    if (!carrier.is_array()) bad("carrier must be an array");
    const std::size_t n = carrier.size();
    std::vector<std::string> names;
    for (std::size_t i = 0; i < n; ++i) {
      for (std::size_t j = 0; j < i; ++j)
        if (carrier[j] == carrier[i]) bad("duplicate carrier element " + carrier[i].dump());
      names.push_back(carrier[i].is_string() ? carrier[i].get<std::string>() : carrier[i].dump());
    }
    auto table = [&](const char* key) {
      const json& t = doc.at(key);
      if (!t.is_array() || t.size() != n) bad(std::string(key) + " must have one row per carrier element");
      std::vector<std::size_t> out;
      out.reserve(n * n);
      for (const auto& row : t) {
        if (!row.is_array() || row.size() != n) bad(std::string(key) + " rows must have one entry per element");
        for (const auto& v : row) {
          std::size_t k = 0;
          while (k < n && carrier[k] != v) ++k;
          if (k == n) bad(std::string(key) + " entry " + v.dump() + " is not in the carrier");
          out.push_back(k);
        }
      }
      return out;
    };
    return FiniteIrq(std::move(names), table("circ"), table("bullet"));
  } catch (const json::exception& e) {
    bad(std::string("bad finite irq document: ") + e.what());
  }
}

FiniteIrq FiniteIrq::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

}  // namespace ngd
