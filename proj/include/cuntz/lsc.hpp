#pragma once
// Lower semicontinuous step functions [0,1] -> N0 u {inf} with rational
// breakpoints, their continuous piecewise-linear companions, and the exact
// level-set way-below rule:
//   f << g  iff  closure{f >= n} is contained in the relative interior of
//   {g >= n} for every n >= 1.
// Integer values make {f >= n} = {f > n-1} relatively open, levels stabilize
// above the largest finite value, so the rule is a finite exact computation.

#include <cstdint>

#include "cuntz/model.hpp"
#include "cuntz/rational.hpp"
#include "json.hpp"

namespace cuntz {

// Boundary slot: v- (just below v), v itself, v+ (just above v). Interval
// endpoints encoded this way make unions, closures, interiors and containment
// of finite unions of rational intervals exact and purely combinatorial.
struct Slot {
  Rat v;
  int side = 0;  // -1, 0, +1

  friend bool operator==(const Slot& a, const Slot& b) { return a.v == b.v && a.side == b.side; }
  friend bool operator<(const Slot& a, const Slot& b) {
    return a.v < b.v || (a.v == b.v && a.side < b.side);
  }
  friend bool operator<=(const Slot& a, const Slot& b) { return a < b || a == b; }
  Slot succ() const { return side < 1 ? Slot{v, side + 1} : *this; }
};

// Finite union of intervals inside [0,1], kept sorted, disjoint and
// non-adjacent. A part [lo, hi] in slot coordinates is nonempty iff lo <= hi.
struct IntervalSet {
  struct Part {
    Slot lo, hi;
  };
  std::vector<Part> parts;

  static IntervalSet emptySet() { return {}; }
  static IntervalSet closedInterval(const Rat& a, const Rat& b);
  static IntervalSet openInterval(const Rat& a, const Rat& b);
  static IntervalSet point(const Rat& a);

  bool empty() const { return parts.empty(); }
  void addPart(Slot lo, Slot hi);
  void normalize();

  IntervalSet closure() const;
  IntervalSet interiorIn01() const;  // interior relative to [0,1]
  bool containsSet(const IntervalSet& other) const;
  bool containsPoint(const Rat& x) const;
  // Move strictly-open interior endpoints inward by delta; endpoints that are
  // closed (including the relatively open situation at 0 and 1) move too but
  // become open, except at the space boundary 0/1 where they stay put.
  IntervalSet shrinkOpen(const Rat& delta) const;

  std::string str() const;
};

struct StepLsc {
  std::vector<Rat> cuts;      // 0 = t_0 < ... < t_k = 1
  std::vector<ExtNat> ivals;  // k values, one per open interval (t_{i-1}, t_i)
  std::vector<ExtNat> pvals;  // k+1 values at the breakpoints

  // Point values default to the min of the adjacent interval values; explicit
  // values must not exceed that min (lower semicontinuity).
  static StepLsc make(std::vector<Rat> cuts, std::vector<ExtNat> ivals,
                      std::vector<std::optional<ExtNat>> pvals = {});
  static StepLsc constant(const ExtNat& v);

  ExtNat at(const Rat& x) const;
  ExtNat maxFiniteValue() const;  // 0 when none
  bool hasInf() const;
  void canonicalize();  // merge breakpoints whose removal changes nothing

  std::string str() const;
  static StepLsc parse(const std::string& text);
  nlohmann::json toJson() const;
  static StepLsc fromJson(const nlohmann::json& j);

  friend bool operator==(const StepLsc& a, const StepLsc& b);
};

StepLsc lscAdd(const StepLsc& f, const StepLsc& g);
bool lscLeq(const StepLsc& f, const StepLsc& g);
IntervalSet levelSet(const StepLsc& f, const ExtNat& n);  // {f >= n}
bool lscWayBelow(const StepLsc& f, const StepLsc& g);
StepLsc lscPointwiseMax(const StepLsc& f, const StepLsc& g);
// Canonical inner approximation: level sets shrunk inward by 1/k (open
// shrink), values capped at k. Increasing in k with supremum g.
StepLsc canonicalApprox(const StepLsc& g, std::uint64_t k);

// Continuous piecewise-linear companion, f >= 0 with rational data.
struct PLContinuous {
  std::vector<Rat> xs;
  std::vector<Rat> ys;

  PLContinuous(std::vector<Rat> xs_, std::vector<Rat> ys_);
  Rat at(const Rat& x) const;
  IntervalSet cozeroAbove(const Rat& eps) const;  // open set {f > eps}
  IntervalSet support() const { return cozeroAbove(Rat(0)); }
  std::string str() const;
};

PLContinuous plAdd(const PLContinuous& f, const PLContinuous& g);

// supp(f) subset of supp(g), supports being the open cozero sets.
bool suppCompare(const PLContinuous& f, const PLContinuous& g);

bool isProjectionClassLsc(const StepLsc& f);
bool isProjectionClassLsc(const PLContinuous& f);

class StepLscModel : public CuModel {
 public:
  std::string name() const override { return "lsc-step[0,1]"; }
  Elem zero() const override { return StepLsc::constant(ExtNat(0)); }
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
  // Constant finite functions are exactly the ranks of trivial bundles, hence
  // the projection classes; everything else is soft.
  Classification classify(const Elem& x) const override;

  static const StepLsc& get(const Elem& x);
};

}  // namespace cuntz
