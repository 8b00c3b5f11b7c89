#include "doctest.h"

#include <optional>
#include <random>

#include "cuntz/lsc.hpp"

using namespace cuntz;

namespace {

// Independent level-set machinery for the oracle: maximal intervals are kept
// as endpoint pairs with open/closed flags instead of boundary slots.
struct OPart {
  Rat lo, hi;
  bool loClosed, hiClosed;
};

std::vector<OPart> oracleLevel(const StepLsc& f, std::uint64_t n) {
  ExtNat level(n);
  std::vector<OPart> parts;
  auto geq = [&](const ExtNat& v) { return level <= v; };
  std::optional<OPart> cur;
  for (std::size_t i = 0; i < f.ivals.size(); ++i) {
    bool pointIn = geq(f.pvals[i]);
    bool intervalIn = geq(f.ivals[i]);
    if (intervalIn) {
      if (!cur) cur = OPart{f.cuts[i], f.cuts[i + 1], pointIn, false};
      cur->hi = f.cuts[i + 1];
    } else if (cur) {
      // A qualifying breakpoint value cannot exceed its neighbors, so the
      // part always ends open here.
      parts.push_back(*cur);
      cur.reset();
    }
  }
  if (cur) {
    cur->hiClosed = geq(f.pvals.back());
    parts.push_back(*cur);
  }
  return parts;
}

std::vector<OPart> oracleClosure(std::vector<OPart> ps) {
  for (auto& p : ps) p.loClosed = p.hiClosed = true;
  return ps;
}

std::vector<OPart> oracleRelInterior(std::vector<OPart> ps) {
  for (auto& p : ps) {
    if (p.lo != 0) p.loClosed = false;
    if (p.hi != 1) p.hiClosed = false;
  }
  return ps;
}

bool oracleContains(const std::vector<OPart>& big, const OPart& x) {
  for (const auto& b : big) {
    bool loOk = b.lo < x.lo || (b.lo == x.lo && (b.loClosed || !x.loClosed));
    bool hiOk = x.hi < b.hi || (x.hi == b.hi && (b.hiClosed || !x.hiClosed));
    if (loOk && hiOk) return true;
  }
  return false;
}

bool oracleWayBelow(const StepLsc& f, const StepLsc& g) {
  if (f.hasInf()) return false;
  std::uint64_t top = f.maxFiniteValue().finite();
  for (std::uint64_t n = 1; n <= top; ++n) {
    auto a = oracleClosure(oracleLevel(f, n));
    auto b = oracleRelInterior(oracleLevel(g, n));
    for (const auto& p : a)
      if (!oracleContains(b, p)) return false;
  }
  return true;
}

StepLsc randomStep(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> pick(0, 5);
  std::vector<Rat> cuts{Rat(0)};
  for (int j = 1; j < 8; ++j)
    if (rng() % 2) cuts.push_back(Rat(j, 8));
  cuts.push_back(Rat(1));
  std::vector<ExtNat> ivals;
  for (std::size_t i = 0; i + 1 < cuts.size(); ++i) {
    int v = pick(rng);
    ivals.push_back(v == 5 ? ExtNat::infinity() : ExtNat(static_cast<std::uint64_t>(v) % 4));
  }
  return StepLsc::make(std::move(cuts), std::move(ivals));
}

}  // namespace

TEST_CASE("step functions evaluate, print and parse consistently") {
  auto f = StepLsc::make({Rat(0), Rat(1, 2), Rat(1)}, {ExtNat(2), ExtNat(1)});
  CHECK(f.at(Rat(1, 4)) == ExtNat(2));
  CHECK(f.at(Rat(3, 4)) == ExtNat(1));
  CHECK(f.at(Rat(1, 2)) == ExtNat(1));  // breakpoint defaults to the lower side
  CHECK(f.at(Rat(0)) == ExtNat(2));
  CHECK(StepLsc::parse(f.str()) == f);
  CHECK(StepLsc::fromJson(f.toJson()) == f);
  CHECK(f.maxFiniteValue() == ExtNat(2));
  CHECK(!f.hasInf());

  // Lower semicontinuity: a breakpoint may not exceed its neighborhoods.
  CHECK_THROWS_AS(StepLsc::make({Rat(0), Rat(1, 2), Rat(1)}, {ExtNat(1), ExtNat(1)},
                                {std::nullopt, ExtNat(2), std::nullopt}),
                  std::invalid_argument);
}

TEST_CASE("pointwise operations agree with dense evaluation") {
  std::mt19937_64 rng(11);
  for (int t = 0; t < 60; ++t) {
    StepLsc f = randomStep(rng), g = randomStep(rng);
    StepLsc sum = lscAdd(f, g), mx = lscPointwiseMax(f, g);
    bool leqOracle = true;
    for (int j = 0; j <= 256; ++j) {
      Rat x(j, 256);
      CHECK(sum.at(x) == f.at(x) + g.at(x));
      ExtNat bigger = f.at(x) <= g.at(x) ? g.at(x) : f.at(x);
      CHECK(mx.at(x) == bigger);
      if (!(f.at(x) <= g.at(x))) leqOracle = false;
    }
    CAPTURE(f.str());
    CAPTURE(g.str());
    CHECK(lscLeq(f, g) == leqOracle);
  }
}

TEST_CASE("level sets land on the frozen intervals") {
  auto f = StepLsc::make({Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)},
                         {ExtNat(0), ExtNat(2), ExtNat(1)});
  CHECK(levelSet(f, ExtNat(1)).str() == "(1/4, 1]");
  CHECK(levelSet(f, ExtNat(2)).str() == "(1/4, 1/2)");
  CHECK(levelSet(f, ExtNat(3)).empty());
  CHECK(levelSet(f, ExtNat(0)).str() == "[0, 1]");

  // Relative openness at the space boundary: value from the left endpoint on.
  auto g = StepLsc::make({Rat(0), Rat(1, 4), Rat(1)}, {ExtNat(1), ExtNat(0)},
                         {ExtNat(1), std::nullopt, std::nullopt});
  CHECK(levelSet(g, ExtNat(1)).str() == "[0, 1/4)");
  CHECK(levelSet(g, ExtNat(1)).closure().str() == "[0, 1/4]");
  CHECK(levelSet(g, ExtNat(1)).interiorIn01().str() == "[0, 1/4)");
}

TEST_CASE("way-below matches the independent oracle on 400 random pairs") {
  std::mt19937_64 rng(5);
  int wbTrue = 0;
  for (int t = 0; t < 400; ++t) {
    StepLsc f = randomStep(rng), g = randomStep(rng);
    CAPTURE(f.str());
    CAPTURE(g.str());
    bool got = lscWayBelow(f, g);
    CHECK(got == oracleWayBelow(f, g));
    if (got) ++wbTrue;
  }
  CHECK(wbTrue > 0);  // the sample must exercise the true branch
}

TEST_CASE("way-below frozen boundary cases") {
  auto step = [](Rat a, Rat b, std::uint64_t v) {
    return StepLsc::make({Rat(0), a, b, Rat(1)},
                         {ExtNat(0), ExtNat(v), ExtNat(0)});
  };
  // Compact containment passes; shared endpoint fails.
  CHECK(lscWayBelow(step(Rat(1, 4), Rat(1, 2), 1), step(Rat(1, 8), Rat(5, 8), 1)));
  CHECK(!lscWayBelow(step(Rat(1, 4), Rat(1, 2), 1), step(Rat(1, 4), Rat(5, 8), 1)));
  // Value drop: {f >= 2} needs containment too.
  CHECK(!lscWayBelow(step(Rat(1, 4), Rat(1, 2), 2), step(Rat(1, 8), Rat(5, 8), 1)));
  // The unbounded function is never way below, not even itself.
  StepLsc top = StepLsc::constant(ExtNat::infinity());
  CHECK(!lscWayBelow(top, top));
  CHECK(lscWayBelow(StepLsc::constant(ExtNat(3)), top));
  // Zero is way below everything.
  CHECK(lscWayBelow(StepLsc::constant(ExtNat(0)), StepLsc::constant(ExtNat(0))));
}

TEST_CASE("canonical approximants climb to their target") {
  auto g = StepLsc::make({Rat(0), Rat(1, 4), Rat(3, 4), Rat(1)},
                         {ExtNat(1), ExtNat::infinity(), ExtNat(2)});
  StepLsc prev = canonicalApprox(g, 1);
  for (std::uint64_t k = 2; k <= 24; ++k) {
    StepLsc cur = canonicalApprox(g, k);
    CAPTURE(k);
    CHECK(lscLeq(prev, cur));
    CHECK(lscWayBelow(prev, cur));
    CHECK(lscLeq(cur, g));
    CHECK(cur.maxFiniteValue() <= ExtNat(k));
    prev = cur;
  }
  // Any dense-mesh dominator of all approximants dominates g on the mesh.
  StepLsc a24 = canonicalApprox(g, 24);
  CHECK(a24.at(Rat(1, 2)) == ExtNat(24));
}

TEST_CASE("continuous companions compare by support") {
  PLContinuous f({Rat(0), Rat(1, 4), Rat(1, 2), Rat(1)}, {Rat(0), Rat(1), Rat(0), Rat(0)});
  PLContinuous g({Rat(0), Rat(1, 8), Rat(5, 8), Rat(1)}, {Rat(0), Rat(2), Rat(1), Rat(0)});
  CHECK(f.at(Rat(1, 8)) == Rat(1, 2));
  CHECK(f.at(Rat(3, 8)) == Rat(1, 2));
  CHECK(f.support().str() == "(0, 1/2)");
  CHECK(g.cozeroAbove(Rat(1)).str() == "(1/16, 5/8)");
  CHECK(suppCompare(f, g));
  CHECK(!suppCompare(g, f));
  auto s = plAdd(f, g);
  CHECK(s.at(Rat(1, 4)) == Rat(1) + g.at(Rat(1, 4)));

  CHECK(!isProjectionClassLsc(f));
  PLContinuous flat({Rat(0), Rat(1)}, {Rat(1), Rat(1)});
  CHECK(isProjectionClassLsc(flat));
  CHECK(isProjectionClassLsc(StepLsc::constant(ExtNat(2))));
  CHECK(!isProjectionClassLsc(StepLsc::make({Rat(0), Rat(1, 2), Rat(1)},
                                            {ExtNat(1), ExtNat(2)})));
}

TEST_CASE("the step model classifies constants as projection classes") {
  StepLscModel m;
  CHECK(m.classify(StepLsc::constant(ExtNat(2))) == CuModel::Classification::ProjectionClass);
  CHECK(m.classify(StepLsc::make({Rat(0), Rat(1, 2), Rat(1)}, {ExtNat(1), ExtNat(2)})) ==
        CuModel::Classification::PurelyPositive);
  // Rapid chains for unbounded targets outpace any fixed finite level.
  auto chain = m.rapidSequenceFor(StepLsc::constant(ExtNat::infinity()), 6);
  REQUIRE(chain.size() == 6);
  CHECK(ExtNat(64) <= StepLscModel::get(chain.back()).maxFiniteValue());
  for (std::size_t i = 0; i + 1 < chain.size(); ++i)
    CHECK(m.wayBelow(chain[i], chain[i + 1]));
}
