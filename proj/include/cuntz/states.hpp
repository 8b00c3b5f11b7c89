#pragma once
// Normalized additive order-preserving functionals on finitely generated
// monoids, computed as an exact rational polytope: variables are the values on
// the generators, constraints come from the lattice relations, the
// normalization at the order unit, positivity, and order-unit bounds. Vertex
// enumeration is exact (Gaussian elimination over Q), so the reported extreme
// states are certificates, not approximations.

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/grothendieck.hpp"
#include "cuntz/lsc.hpp"
#include "cuntz/model.hpp"
#include "cuntz/rational.hpp"
#include "cuntz/spectral.hpp"
#include "json.hpp"

namespace cuntz {

enum class ConstraintKind { Eq, Ge };

struct LinConstraint {
  std::vector<Rat> coeffs;
  Rat rhs;
  ConstraintKind kind = ConstraintKind::Ge;  // coeffs . x = rhs or >= rhs
  std::string label;
};

// All vertices of {x : constraints}, assuming the feasible set is bounded
// (the caller must include bounding constraints). Exact; deduplicated.
std::vector<std::vector<Rat>> enumerateVertices(const std::vector<LinConstraint>& constraints,
                                                std::size_t nvars);

// A state recorded by its generator values plus one linear extension to the
// ambient lattice (free coordinates set to 0), so it can evaluate any element.
struct StateVector {
  std::vector<Rat> genValues;
  std::vector<Rat> lambda;  // functional on Z^dim with lambda . g_i = genValues[i]

  Rat eval(const std::vector<Int>& v) const;
  std::string str() const;
};

struct StatePolytopeReport {
  std::string monoid;
  std::string unit;
  bool empty = true;
  std::size_t dimension = 0;  // affine dimension of the vertex set
  std::vector<StateVector> vertices;
  std::vector<std::string> constraintLabels;

  nlohmann::json toJson() const;
  std::string summary() const;
};

// Extreme normalized states of m at the order unit u. Throws domain_error when
// the monoid absorbs infinity, when u is not certified inside the monoid, or
// when u fails the order-unit bound search (g <= n u for some n <= 64).
StatePolytopeReport findStates(const FgCommMonoid& m, const MonElem& u);

// Dimension functions on matrix models, and their regularizations
// dbar(a) = sup_eps d((a - eps)_+). The sup is over a finite candidate set:
// classes of (a - eps)_+ only change when eps crosses an eigenvalue.
using DimFn = std::function<Rat(const SpectralElement&)>;
Rat regularize(const DimFn& d, const SpectralElement& a);

// Same for the step-function model; the candidate cuts are the canonical
// approximants up to the horizon.
using LscDimFn = std::function<ExtNat(const StepLsc&)>;
ExtNat regularizeLsc(const LscDimFn& d, const StepLsc& f, std::uint64_t horizon = 32);

struct DetectorReport {
  std::string detector;
  std::string model;
  std::string verdict;  // "pass" | "fail" | "not-applicable"
  std::string witness;
  std::uint64_t checks = 0;
  std::uint64_t skipped = 0;

  bool pass() const { return verdict != "fail"; }
  nlohmann::json toJson() const;
  std::string summary() const;
};

// (n+1) x <= n y implies x <= y, over sampled x, y, n.
DetectorReport checkAlmostUnperforated(const CuModel& m, std::uint64_t budget = 200);

// Every purely positive x admits, for each small n, a y with
// n y <= x <= (n+1) y; candidate y come from the basis and the model hook.
DetectorReport checkWeakDivisibility(const CuModel& m, std::uint64_t budget = 200);

// Strict inequality under every exposed state evaluator (normalized at u)
// should entail comparison. Failures are counterevidence, not proofs.
DetectorReport checkRordamLemma(const CuModel& m, const Elem& u, std::uint64_t budget = 200);

// Trace-side comparison test at the vertex traces. Plain mode checks
// d_tau(a) <= d_tau(b) everywhere (equivalent to rank dominance); surrogate
// mode checks the strict inequality everywhere, the premise under which
// comparison against a purely positive target would follow.
bool strictComparisonCheck(const SpectralElement& a, const SpectralElement& b,
                           const std::vector<TraceSpec>& vertices,
                           bool bPurelyPositiveSurrogate = false);

}  // namespace cuntz
