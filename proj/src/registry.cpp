#include "ngdef/models/registry.hpp"

#include <charconv>

#include "ngdef/core/axioms.hpp"
#include "ngdef/deformation/checks.hpp"

namespace ngd {

namespace {

[[noreturn]] void bad(const std::string& msg) { fail(Errc::InvalidModelSpec, msg); }

int parse_dim(const std::string& s) {
  int v = 0;
  const auto [p, ec] = std::from_chars(s.data(), s.data() + s.size(), v);
  if (ec != std::errc() || p != s.data() + s.size() || v < 1 || v > 64) bad("bad dimension '" + s + "'");
  return v;
}

bool has_dim(const std::string& kind) {
  return kind == "euclidean" || kind == "translation-action" || kind == "broken";
}

template <class D>
void smoke(const D& d, const std::string& id) {
  SplitMix64 rng(0x5eed);
  const auto& m = d.groupoid();
  std::vector<ComposableTriple<typename D::Groupoid>> t;
  for (int i = 0; i < 64; ++i) t.push_back(random_triple(m, rng, 0.5));
  CheckAccumulator ga(1e-9, 1), na(1e-9, 1), a1(1e-9, 1);
  check_groupoid_axioms(m, t, ga);
  check_norm_axioms(m, t, na);
  check_deformation_a1(d, sample_deformation(d, rng, 64), a1);
  if (!ga.pass()) bad(id + ": groupoid axioms fail: " + ga.witnesses().front());
  if (!na.pass()) bad(id + ": norm axioms fail: " + na.witnesses().front());
  if (!a1.pass()) bad(id + ": deformation fails A1: " + a1.witnesses().front());
}

template <class S>
LiftedDeformation<S> lift(S space, const std::string& id) {
  try {
    return lift_dilatation_structure(std::move(space));
  } catch (const Error& e) {
    bad(id + ": " + e.what());
  }
}

}  // namespace

ModelSpec ModelSpec::parse(const std::string& text, std::optional<int> dim) {
  ModelSpec s;
  const auto open = text.find('(');
  std::string arg;
  if (open == std::string::npos) {
    s.kind = text;
  } else {
    if (text.back() != ')') bad("unbalanced parentheses in '" + text + "'");
    s.kind = text.substr(0, open);
    arg = text.substr(open + 1, text.size() - open - 2);
  }
  if (s.kind == "finite" || s.kind == "finite-irq") {
    if (arg.empty()) bad(s.kind + " needs a path: " + s.kind + "(file.json)");
    s.path = arg;
  } else if (has_dim(s.kind)) {
    if (!arg.empty()) s.dim = parse_dim(arg);
  } else if (s.kind == "heisenberg") {
    if (!arg.empty()) bad("heisenberg takes no parameter");
  } else {
    bad("unknown model '" + s.kind + "'");
  }
  if (dim) {
    if (!has_dim(s.kind)) bad(s.kind + " takes no dimension");
    s.dim = parse_dim(std::to_string(*dim));
  }
  return s;
}

std::string ModelSpec::id() const {
  if (has_dim(kind)) return kind + "(" + std::to_string(dim) + ")";
  if (!path.empty()) return kind + "(" + path + ")";
  return kind;
}

ModelHandle build_model(const ModelSpec& ms) {
  const std::string id = ms.id();
  if (ms.kind == "euclidean") {
    auto d = lift(Euclidean<double>(ms.dim), id);
    smoke(d, id);
    return {id, std::move(d)};
  }
  if (ms.kind == "heisenberg") {
    auto d = lift(Heisenberg<long double>{}, id);
    smoke(d, id);
    return {id, std::move(d)};
  }
  if (ms.kind == "broken") {
    auto d = lift(DegenerateEuclidean<double>(ms.dim), id);
    smoke(d, id);
    return {id, std::move(d)};
  }
  if (ms.kind == "translation-action") {
    TranslationDeformation d(ms.dim);
    smoke(d, id);
    return {id, std::move(d)};
  }
  if (ms.kind == "finite") return {id, FiniteGroupoid::load(ms.path)};
  if (ms.kind == "finite-irq") return {id, FiniteIrq::load(ms.path)};
  bad("unknown model '" + ms.kind + "'");
}

std::vector<std::string> model_kinds() {
  return {"euclidean", "heisenberg", "translation-action", "broken", "finite", "finite-irq"};
}

}  // namespace ngd
