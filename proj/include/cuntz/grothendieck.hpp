#pragma once
// Enveloping (Grothendieck) groups of finitely generated ordered commutative
// monoids sitting inside Z^d, with the two cones: G+ (image of the monoid) and
// G++ (differences ordered by the monoid's partial order). An optional
// absorbing infinity collapses the whole group to 0.

#include <cstdint>
#include <functional>

#include "cuntz/axioms.hpp"
#include "cuntz/model.hpp"
#include "cuntz/rational.hpp"
#include "json.hpp"

namespace cuntz {

struct MonElem {
  bool inf = false;
  std::vector<Int> v;

  static MonElem infinity() { MonElem e; e.inf = true; return e; }
  static MonElem vec(std::vector<Int> w) { MonElem e; e.v = std::move(w); return e; }

  friend bool operator==(const MonElem& a, const MonElem& b) {
    return a.inf == b.inf && (a.inf || a.v == b.v);
  }
  friend bool operator!=(const MonElem& a, const MonElem& b) { return !(a == b); }
  std::string str() const;
  static MonElem parse(const std::string& text, std::size_t dim);
};

enum class MonOrderKind { Algebraic, Coordinatewise, FunctionalGap };

// Submonoid of Z^d given by generators, plus an optional absorbing infinity.
// Order oracles (each extends the algebraic order; all three are translation
// invariant in the ambient lattice):
//   Algebraic:      x <= y iff y - x is a member
//   Coordinatewise: componentwise
//   FunctionalGap:  x <= y iff x = y or phi(x) + gap <= phi(y) for every
//                   listed functional phi (generators must satisfy
//                   phi(g) >= gap so the algebraic order is extended)
class FgCommMonoid {
 public:
  FgCommMonoid(std::size_t dim, std::vector<std::vector<Int>> generators, bool withInf,
               MonOrderKind order, std::vector<std::vector<Int>> functionals = {}, Int gap = 0,
               std::uint64_t memberBound = 32);

  std::size_t dim() const { return dim_; }
  bool hasInf() const { return withInf_; }
  MonOrderKind orderKind() const { return order_; }
  std::uint64_t memberBound() const { return memberBound_; }
  const std::vector<std::vector<Int>>& generators() const { return gens_; }
  const std::vector<std::vector<Int>>& functionals() const { return functionals_; }
  const Int& gap() const { return gap_; }

  MonElem zero() const { return MonElem::vec(std::vector<Int>(dim_, Int(0))); }
  MonElem add(const MonElem& a, const MonElem& b) const;
  MonElem scale(std::uint64_t k, const MonElem& a) const;

  // Membership in the generated submonoid. Exact when every generator is
  // componentwise nonnegative (complete search in the target box); otherwise
  // bounded coefficient search, Unknown when the bound is exhausted.
  Tri contains(const MonElem& x) const;
  // A nonnegative generator combination representing x, when one is found.
  std::optional<std::vector<Int>> memberCombo(const MonElem& x) const;

  Tri leq(const MonElem& x, const MonElem& y) const;

  // Deterministic small elements: zero, generators, pairwise sums, doubles.
  std::vector<MonElem> samples(std::size_t count) const;

  nlohmann::json toJson() const;
  static FgCommMonoid fromJson(const nlohmann::json& j);

 private:
  std::size_t dim_;
  std::vector<std::vector<Int>> gens_;
  bool withInf_;
  MonOrderKind order_;
  std::vector<std::vector<Int>> functionals_;
  Int gap_;
  std::uint64_t memberBound_;
  bool gensNonneg_;
};

// Formal difference gamma(pos) - gamma(neg) with pos, neg in the monoid.
struct GroupElem {
  MonElem pos, neg;
  std::string str() const { return pos.str() + " - " + neg.str(); }
};

struct GrothGroup {
  bool collapsed = false;  // absorbing infinity present: G = 0
  std::size_t rank = 0;
  std::vector<Int> invariantFactors;         // torsion part; empty means free
  std::vector<std::vector<Int>> latticeBasis;  // Hermite-form rows spanning G in Z^d
  nlohmann::json toJson() const;
  std::string summary() const;
};

GrothGroup grothGroup(const FgCommMonoid& m);

enum class ConeKind { Plus, PlusPlus };

// x <= y in the chosen cone order. Plus: y - x in the image cone gamma(M),
// decided by monoid membership. PlusPlus: witness search for
// x.pos + y.neg + e <= x.neg + y.pos + e over e in {0} and sampled elements;
// the supported order oracles are translation invariant, so e = 0 is already
// decisive and the scan only matters for orders where it is not. Unknown
// propagates from undecided membership.
Tri conesLeq(const FgCommMonoid& m, const GroupElem& x, const GroupElem& y, ConeKind which);

// Row-style Hermite reduction over Z; returns the nonzero echelon rows.
std::vector<std::vector<Int>> hermiteBasis(std::vector<std::vector<Int>> rows);

// The structure-theorem check: alpha<x> = gamma(x + c) - gamma(c) for a fixed
// purely positive c lands W-classes in the Grothendieck group of the purely
// positive part; verified additive, order preserving (by witness search) and
// injective (by certificate propagation) on sampled pairs.
struct K0StarReport {
  std::string model;
  bool applicable = false;
  std::string cUsed;
  std::uint64_t budget = 0;
  std::uint64_t seed = 0;
  std::vector<CheckEntry> entries;
  bool pass() const;
  nlohmann::json toJson() const;
  std::string summary() const;
};

K0StarReport k0StarCheck(const CuModel& m, std::uint64_t budget = 200, std::uint64_t seed = 0);

// Detector fixture: N^2 ordered through the single functional (1,1) with gap 2
// (generators all have functional value >= 2, so the algebraic order is
// extended). Perforated: with x = (0,2), y = (0,3) one has 3x = 2y yet x != y
// and phi(x) + 2 > phi(y), so (n+1)x <= ny while x is not <= y at n = 2.
FgCommMonoid perforatedFixtureMonoid();

// CuModel adapter over an FgCommMonoid, for the order-level detectors.
// Undecided monoid comparisons surface as "not less or equal".
class MonoidCuModel : public CuModel {
 public:
  MonoidCuModel(std::string name, FgCommMonoid monoid);

  std::string name() const override { return name_; }
  const FgCommMonoid& monoid() const { return monoid_; }
  Elem zero() const override { return monoid_.zero(); }
  Elem add(const Elem& x, const Elem& y) const override;
  bool leq(const Elem& x, const Elem& y) const override;
  bool wayBelow(const Elem& x, const Elem& y) const override;
  std::vector<Elem> basis(std::size_t count) const override;
  std::vector<Elem> rapidSequenceFor(const Elem& x, std::size_t len) const override;
  std::string printElem(const Elem& x) const override;
  Elem parseElem(const std::string& text) const override;
  // x <= x + y in every supported order: the difference is a member.
  std::optional<Elem> joinCandidate(const Elem& x, const Elem& y) const override;

  static const MonElem& get(const Elem& x);

 private:
  std::string name_;
  FgCommMonoid monoid_;
};

}  // namespace cuntz
