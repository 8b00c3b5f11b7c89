#pragma once
// Abstract ordered-semigroup model interface. Elements are type-erased values
// owned by their model; all structure (order, addition, suprema, way-below)
// is asked of the model, never of the element.

#include <any>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "cuntz/rational.hpp"

namespace cuntz {

using Elem = std::any;

// Increasing sequence, represented by a finite stored prefix plus a tail rule:
// eventually constant at the last prefix element, or a closed-form generator
// (absolute 0-based index) taking over at index prefix.size().
// declaredSup, when present, asserts the supremum; consumers verify it against
// sampled terms rather than trusting it blindly.
struct IncreasingSeq {
  std::vector<Elem> prefix;
  std::function<Elem(std::size_t)> gen;
  std::optional<Elem> declaredSup;

  bool eventuallyConstant() const { return !gen; }
  Elem at(std::size_t i) const;
  // Indices worth probing: the stored prefix plus a few generated ones.
  std::vector<std::size_t> probeIndices(std::size_t horizon) const;

  static IncreasingSeq constant(Elem x);
  static IncreasingSeq fromVector(std::vector<Elem> xs);
};

class CuModel {
 public:
  virtual ~CuModel() = default;

  virtual std::string name() const = 0;
  virtual Elem zero() const = 0;
  virtual Elem add(const Elem& x, const Elem& y) const = 0;
  virtual bool leq(const Elem& x, const Elem& y) const = 0;
  virtual bool wayBelow(const Elem& x, const Elem& y) const = 0;

  // Countable basis enumeration prefix; never empty for a usable model.
  virtual std::vector<Elem> basis(std::size_t count) const = 0;

  // Supremum of a representable increasing sequence; nullopt when the model
  // cannot determine or represent it.
  virtual std::optional<Elem> supOfIncreasing(const IncreasingSeq& s) const;

  // Rapidly increasing sequence below x with supremum x (finite prefix of the
  // canonical infinite one). This is the model's O4 data.
  virtual std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const = 0;

  // Increasing-sequence samples whose suprema this model can actually decide.
  virtual std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                                       std::size_t count) const;

  virtual std::string printElem(const Elem& x) const = 0;
  virtual Elem parseElem(const std::string& text) const;

  enum class Classification { ProjectionClass, PurelyPositive, Unknown };
  virtual Classification classify(const Elem&) const { return Classification::Unknown; }

  // Candidate divisors y for n*y <= x <= (n+1)*y, beyond plain basis search.
  virtual std::vector<Elem> divisibilityCandidates(const Elem&, std::uint64_t) const {
    return {};
  }

  // A common upper bound candidate for x and y (e.g. a pointwise max), used by
  // directedness searches; nullopt when the model has no natural join.
  virtual std::optional<Elem> joinCandidate(const Elem&, const Elem&) const {
    return std::nullopt;
  }

  // Known additive order-preserving valuations on this model (exact values,
  // possibly infinite; nullopt when the evaluator cannot decide an element).
  // Empty when the model exposes none it can vouch for.
  struct StateEval {
    std::string name;
    std::function<std::optional<ExtNonnegScalar>(const Elem&)> eval;
  };
  virtual std::vector<StateEval> stateEvaluators() const { return {}; }

  bool equal(const Elem& x, const Elem& y) const { return leq(x, y) && leq(y, x); }
  Elem scale(std::uint64_t k, const Elem& x) const;  // k-fold sum, k >= 0
};

using ModelPtr = std::shared_ptr<const CuModel>;

enum class Tri { False, True, Unknown };
std::string triToString(Tri t);

}  // namespace cuntz
