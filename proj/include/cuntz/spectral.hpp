#pragma once
// Positive elements of a block matrix algebra M_{n_1} + ... + M_{n_k}, recorded
// by their spectra: per block, the positive eigenvalues with multiplicities.
// Comparison happens at the level of rank vectors, which is exactly the matrix
// algebra comparison; the eps-cut is the functional calculus (t - eps)_+.

#include <cstdint>
#include <utility>
#include <vector>

#include "cuntz/rational.hpp"
#include "json.hpp"

namespace cuntz {

struct SpectralBlock {
  std::uint64_t dim = 0;  // carrier matrix size
  std::vector<std::pair<Rat, std::uint64_t>> eigs;  // positive values, multiplicities
};

// Canonical form: eigenvalues sorted in descending order, equal values merged,
// zero values elided; the multiplicities sum to at most dim per block.
struct SpectralElement {
  std::vector<SpectralBlock> blocks;

  SpectralElement() = default;
  explicit SpectralElement(std::vector<SpectralBlock> bs);

  std::uint64_t rank(std::size_t block) const;
  // Smallest positive eigenvalue across blocks; nullopt when the element is 0.
  std::optional<Rat> minPositiveEig() const;
  bool isProjection() const;  // every eigenvalue equals 1

  std::string str() const;
  nlohmann::json toJson() const;
  static SpectralElement fromJson(const nlohmann::json& j);
  static SpectralElement parse(const std::string& text);

  friend bool operator==(const SpectralElement& a, const SpectralElement& b);
};

// (a - eps)_+ cut: each eigenvalue t becomes max(0, t - eps). eps >= 0.
SpectralElement epsCut(const SpectralElement& a, const Rat& eps);

// Rank dominance per block. Mismatched block counts are a configuration error.
bool cuntzLeq(const SpectralElement& a, const SpectralElement& b);

// The comparison class: the per-block rank vector.
std::vector<ExtNat> cuntzClass(const SpectralElement& a);

// Formal direct sum a (+) b inside matrices over the same block algebra.
SpectralElement directSum(const SpectralElement& a, const SpectralElement& b);

// The unit of the block algebra with the given dimensions.
SpectralElement algebraUnit(const std::vector<std::uint64_t>& dims);

// Normalized trace weights: w_i >= 0 rational with sum w_i * n_i = 1.
struct TraceSpec {
  std::vector<Rat> weights;
  std::vector<std::uint64_t> dims;

  TraceSpec(std::vector<Rat> w, std::vector<std::uint64_t> d);
  bool faithful() const;  // all weights strictly positive
  // Vertex traces of the simplex: weight 1/n_i on block i, 0 elsewhere.
  static std::vector<TraceSpec> vertexTraces(const std::vector<std::uint64_t>& dims);
};

// Dimension function induced by a trace: sum_i w_i * rank_i(a). Exact.
Rat dTau(const TraceSpec& tau, const SpectralElement& a);

// Every matrix-model class contains a projection (spectra are finite, so 0 is
// isolated in or absent from the spectrum).
bool isProjectionClass(const SpectralElement& a);

// For a projection class p below a: a projection complement b with
// rank_i(b) = rank_i(a) - rank_i(p). Preconditions: p is a projection and
// cuntzLeq(p, a).
SpectralElement projComplement(const SpectralElement& p, const SpectralElement& a);

}  // namespace cuntz
