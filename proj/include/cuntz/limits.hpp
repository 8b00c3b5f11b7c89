#pragma once
// Inductive systems of ordered-semigroup models and their limits. A limit
// element is a germ (stage, value) under the identification
// (i, x) ~ (i+1, phi_i(x)); order questions are answered by pushing both germs
// forward, which is sound but not always complete, so the raw comparison is
// three-valued. Systems whose connecting maps reflect order (and whose stage
// order agrees with the limit order on germs) may declare that, which upgrades
// stage-level refusals to certified answers.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/model.hpp"
#include "cuntz/rational.hpp"
#include "json.hpp"

namespace cuntz {

class CuSystem {
 public:
  CuSystem(std::string name, std::function<ModelPtr(std::size_t)> stageAt,
           std::function<Elem(std::size_t, const Elem&)> connect, bool orderEmbedding);

  const std::string& name() const { return name_; }
  ModelPtr stage(std::size_t i) const { return stageAt_(i); }
  Elem step(std::size_t i, const Elem& x) const { return connect_(i, x); }
  // phi_{j-1} o ... o phi_i; requires i <= j
  Elem push(std::size_t i, std::size_t j, const Elem& x) const;
  bool orderEmbedding() const { return orderEmbedding_; }

 private:
  std::string name_;
  std::function<ModelPtr(std::size_t)> stageAt_;
  std::function<Elem(std::size_t, const Elem&)> connect_;
  bool orderEmbedding_;
};

// Stationary system on (N0 u inf)^k with one multiplicity matrix. Square,
// nonzero, entries >= 0; orderEmbedding is declared only for 1x1 matrices
// (multiplication by m reflects the order; general matrices need not).
CuSystem afSystem(const std::vector<std::vector<std::uint64_t>>& mult, std::string name = "");

// Stationary multiplication-by-k system on N0 u inf (k >= 2).
CuSystem uhfSystem(std::uint64_t k);

struct LimitElement {
  std::size_t stage = 0;
  Elem value;
};

// Three-valued germ comparison. True: the pushed representatives compare at
// some stage <= horizon. False: certified either by the declared
// order-embedding property or by both germs being fixed points of the
// connecting maps at two consecutive stages. Unknown otherwise.
Tri limitLeq(const CuSystem& s, const LimitElement& a, const LimitElement& b,
             std::size_t horizon = 64);

class LimitModel : public CuModel {
 public:
  explicit LimitModel(CuSystem s, std::size_t horizon = 64);

  std::string name() const override;
  Elem zero() const override;
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::optional<Elem> supOfIncreasing(const IncreasingSeq& s) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  Classification classify(const Elem& x) const override;
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;

  const CuSystem& system() const { return sys_; }
  std::size_t horizon() const { return horizon_; }
  Elem germ(std::size_t stage, Elem value) const;
  static const LimitElement& get(const Elem& x);
  // both germs pushed to their least common stage
  std::pair<LimitElement, LimitElement> align(const Elem& x, const Elem& y) const;

 private:
  CuSystem sys_;
  std::size_t horizon_;
};

std::shared_ptr<const LimitModel> buildLimit(CuSystem s, std::size_t horizon = 64);

// A compatible family gamma_i : stage i -> target.
struct Cocone {
  ModelPtr target;
  std::function<Elem(std::size_t, const Elem&)> gamma;
};

// The induced map on germs, after verifying gamma_{i+1} o phi_i = gamma_i on
// sampled elements of the first few stages; incompatibility throws
// invalid_argument carrying a witness.
std::function<Elem(const LimitElement&)> universalMap(const CuSystem& s, const Cocone& c,
                                                      std::size_t stagesToCheck = 4,
                                                      std::size_t samplesPerStage = 12);

// Ground-truth germ comparisons for the stationary model systems.
using GermOrder = std::function<bool(const LimitElement&, const LimitElement&)>;
// germ (i, x) has value x / k^i in [0, inf]
GermOrder scalingOracle(std::uint64_t k);
// germ (i, (a,b)) has value (a phi + b) phi^{-i}, phi the golden ratio;
// any infinite coordinate means value inf
GermOrder goldenOracle();

struct ContinuityReport {
  std::string system;
  std::uint64_t pairs = 0;
  std::uint64_t confirmedTrue = 0;    // oracle true, limit comparison proved it
  std::uint64_t confirmedFalse = 0;   // oracle false, limit comparison refuted it
  std::uint64_t unresolvedFalse = 0;  // oracle false, limit comparison ran out of horizon
  std::uint64_t unresolvedTrue = 0;   // oracle true but never reached: a continuity failure
  std::uint64_t contradictions = 0;
  std::string witness;

  bool pass() const { return contradictions == 0 && unresolvedTrue == 0; }
  nlohmann::json toJson() const;
  std::string summary() const;
};

// Does the germ order reach every oracle-true comparison at a finite stage,
// and never contradict the oracle? Samples germ pairs across early stages.
ContinuityReport functorContinuityCheck(const CuSystem& s, const GermOrder& oracle,
                                        std::uint64_t pairCount = 100, std::size_t horizon = 64,
                                        std::uint64_t seed = 0);

}  // namespace cuntz
