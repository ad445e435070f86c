#include "ngdef/models/finite_groupoid.hpp"

#include <cmath>
#include <fstream>
#include <map>
#include <sstream>

#include "json.hpp"

#include "ngdef/core/error.hpp"

namespace ngd {

namespace {

using nlohmann::json;

[[noreturn]] void bad(const std::string& msg) { fail(Errc::InvalidModelSpec, msg); }

constexpr double kNormSlack = 1e-12;

}  // namespace

FiniteGroupoid::FiniteGroupoid(std::vector<std::string> objects, std::vector<ArrowSpec> arrows,
                               std::vector<std::size_t> product, std::vector<std::size_t> inverse)
    : objects_(std::move(objects)), arrows_(std::move(arrows)), product_(std::move(product)),
      inverse_(std::move(inverse)) {
  const std::size_t n = arrows_.size();
  if (objects_.empty()) bad("no objects");
  if (product_.size() != n * n || inverse_.size() != n) bad("table sizes do not match the arrow count");
  for (const auto& a : arrows_) {
    if (a.alpha >= objects_.size() || a.omega >= objects_.size()) bad("arrow " + a.id + " has an unknown end");
    if (!std::isfinite(a.norm) || a.norm < 0) bad("arrow " + a.id + " has a negative or non-finite norm");
  }

  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t k = product_[g * n + h];
      const bool defined = arrows_[h].omega == arrows_[g].alpha;
      if (defined != (k != npos))
        bad(defined ? "missing product " + arrows_[g].id + "*" + arrows_[h].id
                    : "product " + arrows_[g].id + "*" + arrows_[h].id + " given for a non-composable pair");
      if (!defined) continue;
      if (k >= n) bad("product out of range");
      if (arrows_[k].alpha != arrows_[h].alpha || arrows_[k].omega != arrows_[g].omega)
        bad("product " + arrows_[g].id + "*" + arrows_[h].id + " has the wrong ends");
    }

  for (std::size_t g = 0; g < n; ++g)
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t gh = product_[g * n + h];
      if (gh == npos) continue;
      for (std::size_t l = 0; l < n; ++l) {
        const std::size_t hl = product_[h * n + l];
        if (hl == npos) continue;
        if (product_[gh * n + l] != product_[g * n + hl])
          bad("not associative at " + arrows_[g].id + "," + arrows_[h].id + "," + arrows_[l].id);
      }
    }

  identity_.assign(objects_.size(), npos);
  for (std::size_t e = 0; e < n; ++e) {
    const std::size_t x = arrows_[e].alpha;
    if (arrows_[e].omega != x || identity_[x] != npos) continue;
    bool ok = true;
    for (std::size_t g = 0; g < n && ok; ++g) {
      if (arrows_[g].alpha == x && product_[g * n + e] != g) ok = false;
      if (arrows_[g].omega == x && product_[e * n + g] != g) ok = false;
    }
    if (ok) identity_[x] = e;
  }
  for (std::size_t x = 0; x < objects_.size(); ++x)
    if (identity_[x] == npos) bad("object " + objects_[x] + " has no identity arrow");

  for (std::size_t g = 0; g < n; ++g) {
    const std::size_t gi = inverse_[g];
    if (gi >= n) bad("arrow " + arrows_[g].id + " has no inverse");
    if (product_[gi * n + g] != identity_[arrows_[g].alpha] || product_[g * n + gi] != identity_[arrows_[g].omega])
      bad("inverse of " + arrows_[g].id + " is wrong");
  }

  for (std::size_t g = 0; g < n; ++g) {
    const bool ident = identity_[arrows_[g].alpha] == g;
    if (ident != (arrows_[g].norm == 0)) bad("norm of " + arrows_[g].id + " must vanish exactly on identities");
    if (arrows_[inverse_[g]].norm != arrows_[g].norm) bad("norm of " + arrows_[g].id + " is not inversion invariant");
    for (std::size_t h = 0; h < n; ++h) {
      const std::size_t gh = product_[g * n + h];
      if (gh != npos && arrows_[gh].norm > arrows_[g].norm + arrows_[h].norm + kNormSlack)
        bad("triangle inequality fails for " + arrows_[g].id + "*" + arrows_[h].id);
    }
  }
}

FiniteGroupoid FiniteGroupoid::parse(std::string_view text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::exception& e) {
    bad(std::string("malformed JSON: ") + e.what());
  }
  try {
    for (const auto& [key, _] : doc.items())
      if (key != "objects" && key != "arrows" && key != "compose" && key != "inverse") bad("unknown key " + key);

    std::vector<std::string> objects;
    std::map<std::string, std::size_t> obj_index;
    for (const auto& o : doc.at("objects")) {
      const std::string name = o.is_string() ? o.get<std::string>() : o.dump();
      if (!obj_index.emplace(name, objects.size()).second) bad("duplicate object " + name);
      objects.push_back(name);
    }
    auto object_of = [&](const json& v) {
      const std::string name = v.is_string() ? v.get<std::string>() : v.dump();
      const auto it = obj_index.find(name);
      if (it == obj_index.end()) bad("unknown object " + name);
      return it->second;
    };

    std::vector<ArrowSpec> arrows;
    std::map<std::string, std::size_t> arrow_index;
    for (const auto& a : doc.at("arrows")) {
      ArrowSpec s{a.at("id").get<std::string>(), object_of(a.at("alpha")), object_of(a.at("omega")),
                  a.at("norm").get<double>()};
      if (!arrow_index.emplace(s.id, arrows.size()).second) bad("duplicate arrow " + s.id);
      arrows.push_back(std::move(s));
    }
    auto arrow_of = [&](const json& v) {
      const auto it = arrow_index.find(v.get<std::string>());
      if (it == arrow_index.end()) bad("unknown arrow " + v.dump());
      return it->second;
    };

    const std::size_t n = arrows.size();
    std::vector<std::size_t> product(n * n, npos), inverse(n, npos);
    for (const auto& row : doc.at("compose")) {
      if (!row.is_array() || row.size() != 3) bad("compose rows are [g, h, gh]");
      const std::size_t g = arrow_of(row[0]), h = arrow_of(row[1]), k = arrow_of(row[2]);
      auto& slot = product[g * n + h];
      if (slot != npos && slot != k) bad("conflicting products for " + arrows[g].id + "*" + arrows[h].id);
      slot = k;
    }
    for (const auto& row : doc.at("inverse")) {
      if (!row.is_array() || row.size() != 2) bad("inverse rows are [g, ginv]");
      const std::size_t g = arrow_of(row[0]), gi = arrow_of(row[1]);
      if (inverse[g] != npos && inverse[g] != gi) bad("conflicting inverses for " + arrows[g].id);
      inverse[g] = gi;
    }
    return FiniteGroupoid(std::move(objects), std::move(arrows), std::move(product), std::move(inverse));
  } catch (const json::exception& e) {
    bad(std::string("bad finite groupoid document: ") + e.what());
  }
}

FiniteGroupoid FiniteGroupoid::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) bad("cannot read " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse(ss.str());
}

FiniteGroupoid::Arrow FiniteGroupoid::product(Arrow g, Arrow h) const {
  const std::size_t k = product_.at(g * arrows_.size() + h);
  if (k == npos) fail(Errc::NotComposable, arrows_[g].id + " * " + arrows_[h].id);
  return k;
}

std::vector<FiniteGroupoid::Arrow> FiniteGroupoid::arrows() const {
  std::vector<Arrow> out(arrows_.size());
  for (std::size_t i = 0; i < out.size(); ++i) out[i] = i;
  return out;
}

std::vector<FiniteGroupoid::Arrow> FiniteGroupoid::arrows_from(Object x) const {
  std::vector<Arrow> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].alpha == x) out.push_back(i);
  return out;
}

std::vector<FiniteGroupoid::Arrow> FiniteGroupoid::arrows_between(Object x, Object y) const {
  std::vector<Arrow> out;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].alpha == x && arrows_[i].omega == y) out.push_back(i);
  return out;
}

FiniteGroupoid::Arrow FiniteGroupoid::find_arrow(std::string_view id) const {
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].id == id) return i;
  fail(Errc::InvalidArgument, "no arrow " + std::string(id));
}

FiniteGroupoid::Object FiniteGroupoid::find_object(std::string_view name) const {
  for (std::size_t i = 0; i < objects_.size(); ++i)
    if (objects_[i] == name) return i;
  fail(Errc::InvalidArgument, "no object " + std::string(name));
}

FiniteGroupoid::Arrow FiniteGroupoid::random_arrow_from(SplitMix64& rng, Object x, double r) const {
  std::vector<Arrow> pool;
  for (std::size_t i = 0; i < arrows_.size(); ++i)
    if (arrows_[i].alpha == x && arrows_[i].norm <= r) pool.push_back(i);
  return pool.empty() ? identity(x) : pool[rng.below(pool.size())];
}

}  // namespace ngd
