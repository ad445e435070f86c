#pragma once

// Named models: the vocabulary of the command line.
//
//   euclidean(n)            trivial groupoid over R^n, lifted homotheties
//   heisenberg              trivial groupoid over the Heisenberg group
//   translation-action(n)   R^n acting on itself, δ_ε(x, t) = (x, εt)
//   broken(n)               Euclidean lift with degenerate dilatations
//   finite(path)            finite groupoid from JSON
//   finite-irq(path)        finite irq from JSON

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "ngdef/irq/finite.hpp"
#include "ngdef/models/euclidean.hpp"
#include "ngdef/models/finite_groupoid.hpp"
#include "ngdef/models/heisenberg.hpp"
#include "ngdef/models/lifted.hpp"
#include "ngdef/models/translation.hpp"

namespace ngd {

using EuclideanModel = LiftedDeformation<Euclidean<double>>;
using HeisenbergModel = LiftedDeformation<Heisenberg<long double>>;
using BrokenModel = LiftedDeformation<DegenerateEuclidean<double>>;

struct ModelSpec {
  std::string kind;  // euclidean, heisenberg, translation-action, broken, finite, finite-irq
  int dim = 1;
  std::string path;

  /// "euclidean(2)", "finite(data/finite/z4.json)", "heisenberg", ...
  /// `dim` overrides the parenthesized dimension when given.
  static ModelSpec parse(const std::string& text, std::optional<int> dim = std::nullopt);
  std::string id() const;
};

struct ModelHandle {
  std::string id;
  std::variant<EuclideanModel, HeisenbergModel, BrokenModel, TranslationDeformation, FiniteGroupoid, FiniteIrq> model;
};

/// Builds the model and runs a smoke check of its groupoid, norm and
/// deformation axioms; throws InvalidModelSpec.
ModelHandle build_model(const ModelSpec& ms);
inline ModelHandle build_model(const std::string& text) { return build_model(ModelSpec::parse(text)); }

std::vector<std::string> model_kinds();

}  // namespace ngd
