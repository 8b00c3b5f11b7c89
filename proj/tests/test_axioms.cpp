#include "doctest.h"

#include <algorithm>

#include "cuntz/axioms.hpp"
#include "cuntz/models.hpp"
#include "cuntz/registry.hpp"

using namespace cuntz;

namespace {

// Ground truth for N0 u {inf}: order, addition and way-below in closed form.
struct ExtNatOracle {
  static bool leq(const ExtNat& a, const ExtNat& b) { return a <= b; }
  static bool wb(const ExtNat& a, const ExtNat& b) { return !a.isInf() && a <= b; }
};

std::vector<ExtNat> smallValues() {
  std::vector<ExtNat> v;
  for (std::uint64_t n = 0; n <= 20; ++n) v.push_back(ExtNat(n));
  v.push_back(ExtNat::infinity());
  return v;
}

// ExtNat with addition collapsing on large summands: order-compatibility of
// sums (O2) must catch it, since honest sums land above broken ones.
class BrokenAddModel : public ExtNatModel {
 public:
  std::string name() const override { return "broken-add"; }
  Elem add(const Elem& x, const Elem& y) const override {
    const ExtNat& a = get(x);
    const ExtNat& b = get(y);
    if (!a.isInf() && !b.isInf() && a.finite() >= 2 && b.finite() >= 2) return ExtNat(0);
    return ExtNatModel::add(x, y);
  }
};

}  // namespace

TEST_CASE("extnat model agrees with the exhaustive oracle up to 20 and inf") {
  ExtNatModel m;
  auto vals = smallValues();
  for (const auto& a : vals)
    for (const auto& b : vals) {
      CAPTURE(a.str());
      CAPTURE(b.str());
      CHECK(m.leq(Elem(a), Elem(b)) == ExtNatOracle::leq(a, b));
      CHECK(m.wayBelow(Elem(a), Elem(b)) == ExtNatOracle::wb(a, b));
      if (!a.isInf() && !b.isInf())
        CHECK(ExtNatModel::get(m.add(Elem(a), Elem(b))).finite() == a.finite() + b.finite());
      else
        CHECK(ExtNatModel::get(m.add(Elem(a), Elem(b))).isInf());
    }
}

TEST_CASE("axioms pass on every registered model") {
  for (const auto& name : modelNames()) {
    auto m = modelByName(name);
    auto rep = checkCuAxioms(*m, 120, 0);
    CAPTURE(name);
    CAPTURE(rep.summary());
    CHECK(rep.pass());
    auto ord = checkOrderTheory(*m, 120, 0);
    CAPTURE(ord.summary());
    CHECK(ord.pass());
  }
}

TEST_CASE("axiom reports are deterministic in the seed") {
  ExtNatModel m;
  auto a = checkCuAxioms(m, 100, 7);
  auto b = checkCuAxioms(m, 100, 7);
  auto c = checkCuAxioms(m, 100, 8);
  CHECK(a.toJson() == b.toJson());
  // A different seed may sample differently; verdicts must still agree.
  CHECK(a.pass() == c.pass());
}

TEST_CASE("a point defect in addition is caught as an order-compatibility failure") {
  BrokenAddModel bad;
  auto rep = checkCuAxioms(bad, 200, 0);
  CHECK(!rep.pass());
  CHECK(rep.entry("O2").verdict == "fail");
  CHECK(!rep.entry("O2").witness.empty());
}

TEST_CASE("doubling is a morphism; floor-halving is not additive") {
  auto m = modelByName("extnat");
  CuMorphism dbl{"double", m, m, [m](const Elem& x) -> std::optional<Elem> {
                   return m->add(x, x);
                 }};
  auto good = checkCuMorphism(dbl, 150, 0);
  CAPTURE(good.summary());
  CHECK(good.pass());

  CuMorphism half{"floor-half", m, m, [](const Elem& x) -> std::optional<Elem> {
                    const ExtNat& v = ExtNatModel::get(x);
                    if (v.isInf()) return Elem(v);
                    return Elem(ExtNat(v.finite() / 2));
                  }};
  auto bad = checkCuMorphism(half, 150, 0);
  CHECK(!bad.pass());
  CHECK(bad.entry("additive").verdict == "fail");
}

TEST_CASE("morphism checks catch non-monotone maps") {
  auto m = modelByName("extnat");
  // Swap 1 and 2: additive fails and so does order preservation.
  CuMorphism swap{"swap12", m, m, [](const Elem& x) -> std::optional<Elem> {
                    const ExtNat& v = ExtNatModel::get(x);
                    if (v.isInf()) return Elem(v);
                    if (v.finite() == 1) return Elem(ExtNat(2));
                    if (v.finite() == 2) return Elem(ExtNat(1));
                    return Elem(v);
                  }};
  auto rep = checkCuMorphism(swap, 150, 0);
  CHECK(!rep.pass());
}
