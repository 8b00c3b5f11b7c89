#pragma once
// Sampling-based verification of the ordered-semigroup axioms (O1..O6) and of
// the corresponding morphism conditions (M1..M4 plus additivity). Verdicts are
// per-axiom: pass / fail (with witness) / inconclusive (no decidable instance).

#include <cstdint>

#include "cuntz/model.hpp"
#include "json.hpp"

namespace cuntz {

struct CheckEntry {
  std::string axiom;
  std::string verdict;  // "pass" | "fail" | "inconclusive"
  std::string witness;
  std::uint64_t checks = 0;
  std::uint64_t skipped = 0;
};

struct AxiomReport {
  std::string model;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<CheckEntry> entries;

  bool pass() const;
  const CheckEntry& entry(const std::string& axiom) const;
  nlohmann::json toJson() const;
  std::string summary() const;
};

AxiomReport checkCuAxioms(const CuModel& model, std::uint64_t budget = 200,
                          std::uint64_t seed = 0);

// Order-theory consequences checked on samples: <= is a preorder, x << y
// implies x <= y, and the two mixed transitivity laws for <<.
AxiomReport checkOrderTheory(const CuModel& model, std::uint64_t budget = 200,
                             std::uint64_t seed = 0);

struct CuMorphism {
  std::string name;
  ModelPtr dom;
  ModelPtr cod;
  // nullopt = undefined at that element (reported as a configuration error).
  std::function<std::optional<Elem>(const Elem&)> map;

  Elem apply(const Elem& x) const;  // throws std::invalid_argument when undefined
};

struct MorphismReport {
  std::string morphism;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<CheckEntry> entries;

  bool pass() const;
  const CheckEntry& entry(const std::string& axiom) const;
  nlohmann::json toJson() const;
  std::string summary() const;
};

MorphismReport checkCuMorphism(const CuMorphism& f, std::uint64_t budget = 200,
                               std::uint64_t seed = 0);

}  // namespace cuntz
