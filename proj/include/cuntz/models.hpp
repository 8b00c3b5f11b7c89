#pragma once
// Concrete small models: N0 u {inf}, the two-point semigroup {0,inf}, the
// Calkin-style table with two infinities, numerical subsemigroups of N0 u {inf}
// (perforation examples), and finite products of N0 u {inf}.

#include "cuntz/model.hpp"
#include "cuntz/rational.hpp"

namespace cuntz {

class ExtNatModel : public CuModel {
 public:
  std::string name() const override { return "extnat"; }
  Elem zero() const override { return ExtNat(0); }
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
  Classification classify(const Elem& x) const override {
    // inf is the class of the stabilized ideal, not of any projection
    return get(x).isInf() ? Classification::PurelyPositive : Classification::ProjectionClass;
  }
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override {
    return leq(x, y) ? y : x;
  }
  std::vector<StateEval> stateEvaluators() const override;

  static const ExtNat& get(const Elem& x);
};

class TwoPointModel : public CuModel {
 public:
  std::string name() const override { return "twopoint"; }
  Elem zero() const override { return false; }  // bool: true = inf
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  Classification classify(const Elem& x) const override {
    return std::any_cast<bool>(x) ? Classification::PurelyPositive
                                  : Classification::ProjectionClass;
  }
  std::vector<StateEval> stateEvaluators() const override;
};

// N0 u {inf} u {inf'}: inf' absorbs inf (inf + inf' = inf'), and inf' is the
// top of the order while only finite elements are way below inf.
struct CalkinElem {
  enum Kind { Finite, Inf, InfPrime } kind = Finite;
  std::uint64_t n = 0;
};

class CalkinModel : public CuModel {
 public:
  std::string name() const override { return "calkin"; }
  Elem zero() const override { return CalkinElem{}; }
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
  std::vector<StateEval> stateEvaluators() const override;

  static const CalkinElem& get(const Elem& x);
};

// Numerical subsemigroup of N0 generated by gens, plus inf, with the order
// inherited from N0 u {inf}. Proper subsemigroups carry gaps (e.g. <2,3> lacks
// 1), which is what the divisibility counterexamples exercise.
class SubsemigroupModel : public CuModel {
 public:
  explicit SubsemigroupModel(std::vector<std::uint64_t> gens);
  std::string name() const override;
  Elem zero() const override { return ExtNat(0); }
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

  bool isMember(std::uint64_t v) const;

 private:
  std::vector<std::uint64_t> gens_;
  std::vector<bool> member_;  // membership table up to a fixed bound
};

// Finite product (N0 u {inf})^k with pointwise structure. Serves as the lsc
// model over a finite discrete space and as the rank-tuple model of a
// finite-dimensional block algebra.
class ExtNatTupleModel : public CuModel {
 public:
  explicit ExtNatTupleModel(std::size_t k, std::string label = "");
  std::size_t arity() const { return k_; }
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
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;
  std::vector<StateEval> stateEvaluators() const override;

  static const std::vector<ExtNat>& get(const Elem& x);
  // Multiplicity-matrix action, saturating at inf (inf * 0 = 0).
  static std::vector<ExtNat> matApply(const std::vector<std::vector<std::uint64_t>>& m,
                                      const std::vector<ExtNat>& v);

 private:
  std::size_t k_;
  std::string label_;
};

}  // namespace cuntz
