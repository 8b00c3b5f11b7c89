#pragma once
// Recovered ordered semigroups built from K-theoretic data: a projection
// monoid paired with lower semicontinuous affine functions on a finite trace
// simplex. Mixed comparison rules: projections compare inside the monoid,
// functions compare pointwise, function <= projection is pointwise against
// the projection's image, projection <= function is pointwise strict.
// Also: interval-monoid pictures (boxes over N0^k, Goodearl-type intervals,
// an irrational-rotation model) used as sources for embedding checks.

#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "cuntz/axioms.hpp"
#include "cuntz/model.hpp"
#include "cuntz/rational.hpp"
#include "json.hpp"

namespace cuntz {

QuadExt quadDiv(const QuadExt& x, const QuadExt& y);  // exact; y must be nonzero

// Affine function on a simplex with k extreme points, stored by vertex values.
struct AffLine {
  std::vector<QuadExt> vals;

  std::string str() const;
  friend bool operator==(const AffLine& x, const AffLine& y);
};

// Pointwise max of finitely many affine lines: a convex piecewise linear
// function on the simplex. Comparisons, minima and equality are exact: the
// extreme candidate points are the vertices plus, on a segment, the pairwise
// intersection parameters of the lines involved. Elements with more than one
// line are therefore only supported for k <= 2.
struct LAffPL {
  std::size_t k = 1;
  std::vector<AffLine> lines;

  static LAffPL constant(std::size_t k, QuadExt c);
  static LAffPL single(AffLine line);
  static LAffPL maxOf(std::size_t k, std::vector<AffLine> ls);

  LAffPL plus(const LAffPL& other) const;
  LAffPL plusConst(const QuadExt& c) const;
  LAffPL scaled(const Rat& r) const;  // r >= 0
  LAffPL maxWith(const LAffPL& other) const;
  QuadExt valueAt(std::size_t vertex) const;
  QuadExt minValue() const;  // exact minimum over the simplex
  bool leqOn(const LAffPL& other) const;          // <= everywhere
  bool strictlyBelow(const LAffPL& other) const;  // < everywhere
  std::string str() const;
  // Accepts "<v0|...|vk-1>" or "max(<...>,<...>)" with rational entries.
  static LAffPL parse(const std::string& text, std::size_t k);

  friend bool operator==(const LAffPL& x, const LAffPL& y) {
    return x.leqOn(y) && y.leqOn(x);
  }

 private:
  void normalize();
};

// The strictly increasing function sequence f_n = f - delta/(2n), n = 1..count,
// with delta = min f > 0. Consecutive vertex gaps are exactly
// (delta/2)(1/n - 1/(n+1)), each term is way below the next, and f is the sup.
std::vector<LAffPL> surjApprox(const LAffPL& f, std::size_t count);

// ---- recovered model: projection part + function part ----

// Input data for the recovery functor: the projection monoid, the number of
// extreme traces, and the pairing sending a projection class to its vertex
// values (which must be additive and order preserving).
struct ElliottData {
  std::string name;
  ModelPtr vPart;
  std::size_t traceVertices = 1;
  std::function<std::vector<QuadExt>(const Elem&)> pairing;
};

struct WTElem {
  enum class Kind { Proj, Fun, Inf };
  Kind kind = Kind::Proj;
  Elem proj;   // Kind::Proj: element of the projection monoid
  LAffPL fun;  // Kind::Fun: strictly positive function
};

class WTildeModel : public CuModel {
 public:
  explicit WTildeModel(ElliottData data);

  std::string name() const override { return data_.name; }
  Elem zero() const override;
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  Classification classify(const Elem& x) const override;
  std::vector<Elem> divisibilityCandidates(const Elem& x, std::uint64_t n) const override;
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;
  std::vector<StateEval> stateEvaluators() const override;

  Elem makeProj(Elem v) const;
  Elem makeFun(LAffPL f) const;  // rejects functions not strictly positive
  Elem makeInf() const;
  std::size_t vertices() const { return data_.traceVertices; }
  const CuModel& vPart() const { return *data_.vPart; }
  LAffPL image(const Elem& projElem) const;  // pairing as a constant-free line
  static const WTElem& get(const Elem& x);

 private:
  ElliottData data_;
};

// The recovery functor: K-theoretic data to the recovered ordered semigroup.
std::shared_ptr<const WTildeModel> functorF(ElliottData data);

// Function-only instance over a segment (trivial projection part), exercising
// the piecewise linear order. Supports weak divisibility via scaling.
std::shared_ptr<const WTildeModel> laffModel();

// ---- interval monoids over N0^k ----

// Hereditary upward-directed subsets of N0^arity. Every such set is a box
// [0, upper] with coordinates in N0 u {inf}; a coordinate inf encodes the
// staircase supremum rather than an attained top. bounded() marks principal
// intervals, the ones generated by a single element.
struct Interval {
  std::vector<ExtNat> upper;

  bool bounded() const;
  static Interval principal(std::vector<std::uint64_t> top);
  std::string str() const;
  friend bool operator==(const Interval& x, const Interval& y) { return x.upper == y.upper; }
};

class IntervalModel : public CuModel {
 public:
  IntervalModel(std::size_t arity, std::string name);

  std::string name() const override { return name_; }
  Elem zero() const override;
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  Classification classify(const Elem& x) const override;
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;
  std::vector<StateEval> stateEvaluators() const override;

  std::size_t arity() const { return arity_; }
  static const Interval& get(const Elem& x);

 private:
  std::size_t arity_;
  std::string name_;
};

// Intervals in N0: isomorphic to N0 u {inf} via [0, n] -> n, staircase -> inf.
std::shared_ptr<const IntervalModel> whkModel();
// Intervals in N0^arity, the real-rank-zero picture for tuple-valued data.
std::shared_ptr<const IntervalModel> rr0IntervalModel(std::size_t arity);

// ---- Goodearl-type interval monoid ----

// Intervals in the cone {(a, b) in Q x Z : a > 0} u {(0, 0)} under the order
// (a, b) <= (c, d) iff a < c or (a, b) = (c, d). A closed interval [0, (c, b)]
// keeps its top point; an open one O(c) = {x : x_1 < c} does not. Cancellation
// fails: O(1) + O(1) = O(1) + [0, (1, 0)] = O(2) while O(1) != [0, (1, 0)].
struct GoodearlInterval {
  enum class Kind { Closed, Open, Inf };
  Kind kind = Kind::Closed;
  Rat cut;  // bound on the first coordinate; attained for Closed
  Int tag;  // second coordinate of the top point (Closed only)

  static GoodearlInterval closed(Rat c, Int b);
  static GoodearlInterval open(Rat c);
  static GoodearlInterval infinite();
  std::string str() const;
  friend bool operator==(const GoodearlInterval& x, const GoodearlInterval& y);
};

class GoodearlModel : public CuModel {
 public:
  std::string name() const override { return "goodearl"; }
  Elem zero() const override;
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  Classification classify(const Elem& x) const override;
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;
  std::vector<StateEval> stateEvaluators() const override;

  static const GoodearlInterval& get(const Elem& x);
};

std::shared_ptr<const GoodearlModel> goodearlModel();

// ---- irrational rotation model ----

// Projection part (Z + theta Z)+ with theta = sqrt(2) - 1, function part the
// strictly positive reals in Q(sqrt(2)), plus a top. The class of (p, q)
// carries the value p + q*theta, exact in the quadratic extension.
struct RotElem {
  enum class Kind { Proj, Fun, Inf };
  Kind kind = Kind::Proj;
  Int p, q;     // Kind::Proj
  QuadExt val;  // Kind::Fun, strictly positive

  static RotElem proj(Int p, Int q);  // rejects classes with negative value
  static RotElem fun(QuadExt v);
  static RotElem infinite();
  std::string str() const;
};

QuadExt rotationValue(const Int& p, const Int& q);  // p + q*(sqrt(2) - 1)

class RotationModel : public CuModel {
 public:
  std::string name() const override { return "rotation"; }
  Elem zero() const override;
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::vector<IncreasingSeq> increasingSamples(std::mt19937_64& rng,
                                               std::size_t count) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  Classification classify(const Elem& x) const override;
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;
  std::vector<StateEval> stateEvaluators() const override;

  static const RotElem& get(const Elem& x);
};

std::shared_ptr<const RotationModel> rotationModel();

// ---- recovery data and embedding checks ----

ElliottData goodearlElliott();
ElliottData rotationElliott();

struct EmbeddingReport {
  std::string source;
  std::string target;
  std::uint64_t pairs = 0;
  std::uint64_t additiveChecks = 0;
  std::uint64_t orderChecks = 0;
  std::uint64_t failures = 0;
  std::string witness;

  bool pass() const { return failures == 0; }
  nlohmann::json toJson() const;
  std::string summary() const;
};

// Samples pairs and checks that the map is additive, sends zero to zero, and
// both preserves and reflects <= and the way-below relation.
EmbeddingReport embeddingCheck(const CuModel& src, const CuModel& dst,
                               const std::function<Elem(const Elem&)>& map,
                               std::uint64_t pairs = 200, std::uint64_t seed = 0);

// Canonical comparison maps into the recovered models.
std::function<Elem(const Elem&)> goodearlToRecovered(const WTildeModel& target);
std::function<Elem(const Elem&)> rotationToRecovered(const WTildeModel& target);

}  // namespace cuntz
