#include "doctest.h"

#include "cuntz/axioms.hpp"
#include "cuntz/wtilde.hpp"

using namespace cuntz;

namespace {

AffLine line2(Rat a, Rat b) { return AffLine{{QuadExt(std::move(a)), QuadExt(std::move(b))}}; }

}  // namespace

TEST_CASE("goodearl addition absorbs the top point without cancelling") {
  auto g = goodearlModel();
  Elem o1 = GoodearlInterval::open(Rat(1));
  Elem c1 = GoodearlInterval::closed(Rat(1), Int(0));
  CHECK(g->equal(g->add(o1, o1), g->add(o1, c1)));
  CHECK(!g->equal(o1, c1));
  CHECK(g->leq(o1, c1));
  CHECK(!g->leq(c1, o1));
  Elem s = g->add(o1, o1);
  CHECK(GoodearlModel::get(s).kind == GoodearlInterval::Kind::Open);
  CHECK(GoodearlModel::get(s).cut == Rat(2));

  // Tags ride along under closed + closed.
  Elem c = g->add(GoodearlInterval::closed(Rat(1), Int(2)),
                  GoodearlInterval::closed(Rat(1, 2), Int(-1)));
  CHECK(GoodearlModel::get(c).kind == GoodearlInterval::Kind::Closed);
  CHECK(GoodearlModel::get(c).cut == Rat(3, 2));
  CHECK(GoodearlModel::get(c).tag == Int(1));

  CHECK(g->parseElem("[0,(3/2,1)]").has_value());
  CHECK(g->equal(g->parseElem(g->printElem(c)), c));
}

TEST_CASE("rotation classes live in the exact quadratic cone") {
  auto r = rotationModel();
  CHECK(rotationValue(Int(3), Int(-7)).sign() > 0);  // 10 - 7*sqrt(2) > 0
  CHECK_THROWS_AS(RotElem::proj(Int(2), Int(-5)), std::invalid_argument);  // 7 < 5*sqrt(2)
  Elem p = RotElem::proj(Int(3), Int(-7));
  CHECK(r->leq(r->zero(), p));

  // 1 + theta = sqrt(2): distinct presentations of one value coincide.
  Elem f1 = RotElem::fun(QuadExt(Rat(1)) + QuadExt(Rat(-1), Rat(1), 2));
  Elem f2 = RotElem::fun(QuadExt(Rat(0), Rat(1), 2));
  CHECK(r->equal(f1, f2));

  // Projection below a function must clear it strictly.
  Elem one = RotElem::proj(Int(1), Int(0));
  CHECK(!r->leq(one, RotElem::fun(QuadExt(Rat(1)))));
  CHECK(r->leq(one, RotElem::fun(QuadExt(Rat(3, 2)))));
  CHECK(r->leq(RotElem::fun(QuadExt(Rat(1))), one));
  CHECK(r->equal(r->parseElem("p(1,2)"), Elem(RotElem::proj(Int(1), Int(2)))));
}

TEST_CASE("one-coordinate intervals mirror the extended naturals") {
  auto w = whkModel();
  auto embed = [](const ExtNat& n) -> Elem { return Interval{{n}}; };
  std::vector<ExtNat> vals{ExtNat(0), ExtNat(1), ExtNat(2), ExtNat(5), ExtNat::infinity()};
  for (const auto& a : vals)
    for (const auto& b : vals) {
      Elem xa = embed(a), xb = embed(b);
      CAPTURE(a.str());
      CAPTURE(b.str());
      CHECK(w->leq(xa, xb) == (a <= b));
      CHECK(w->wayBelow(xa, xb) == extnatWayBelow(a, b));
      CHECK(IntervalModel::get(w->add(xa, xb)).upper[0] == a + b);
    }
}

TEST_CASE("piecewise linear comparisons are exact at irrational crossings") {
  LAffPL tent = LAffPL::maxOf(2, {line2(Rat(0), Rat(2)), line2(Rat(2), Rat(0))});
  LAffPL chord = LAffPL::single(line2(Rat(1), Rat(1)));
  CHECK(chord.leqOn(tent));
  CHECK(!tent.leqOn(chord));
  CHECK(!chord.strictlyBelow(tent));  // they touch at the kink t = 1/2

  QuadExt theta(Rat(-1), Rat(1), 2);
  LAffPL h = LAffPL::maxOf(2, {line2(Rat(0), Rat(1)), AffLine{{theta, QuadExt(Rat(0))}}});
  QuadExt kink(Rat(1), Rat(-1, 2), 2);  // min at t = 1 - sqrt(2)/2
  CHECK(h.minValue() == kink);
  LAffPL touch = LAffPL::constant(2, kink);
  CHECK(touch.leqOn(h));
  CHECK(!touch.strictlyBelow(h));
  CHECK(touch.plusConst(QuadExt(Rat(-1, 100))).strictlyBelow(h));

  CHECK(LAffPL::parse("max(<0|2>, <2|0>)", 2) == tent);
  CHECK(LAffPL::parse("<1|1>", 2) == chord);
  CHECK(LAffPL::parse("3/2", 1) == LAffPL::constant(1, QuadExt(Rat(3, 2))));
}

TEST_CASE("surjective approximants climb with exact vertex gaps") {
  LAffPL f = LAffPL::maxOf(2, {line2(Rat(1), Rat(3)), line2(Rat(3), Rat(1))});
  QuadExt delta = f.minValue();
  CHECK(delta == QuadExt(Rat(2)));
  auto approx = surjApprox(f, 5);
  REQUIRE(approx.size() == 5);
  for (std::size_t n = 1; n <= 5; ++n) {
    QuadExt want0 = QuadExt(Rat(3)) - delta * QuadExt(Rat(1, 2 * n));
    CHECK(approx[n - 1].valueAt(0) == want0);
    CHECK(approx[n - 1].strictlyBelow(f));
  }
  for (std::size_t n = 1; n < 5; ++n) CHECK(approx[n - 1].strictlyBelow(approx[n]));
}

TEST_CASE("the recovered model separates touching projections from functions") {
  auto wt = functorF(goodearlElliott());
  Elem p = wt->makeProj(wt->vPart().parseElem("(1, 0)"));
  Elem fEq = wt->makeFun(LAffPL::constant(1, QuadExt(Rat(1))));
  Elem fUp = wt->makeFun(LAffPL::constant(1, QuadExt(Rat(3, 2))));
  CHECK(!wt->leq(p, fEq));  // touching at a point blocks projection <= function
  CHECK(wt->leq(fEq, p));
  CHECK(wt->leq(p, fUp));
  CHECK(wt->wayBelow(p, fUp));
  CHECK(wt->wayBelow(p, p));
  CHECK(!wt->wayBelow(fEq, fEq));
  CHECK(wt->classify(p) == CuModel::Classification::ProjectionClass);
  CHECK(wt->classify(fEq) == CuModel::Classification::PurelyPositive);

  // Mixed addition pushes into the function part.
  Elem mixed = wt->add(p, fEq);
  CHECK(WTildeModel::get(mixed).kind == WTElem::Kind::Fun);
  CHECK(wt->equal(mixed, wt->makeFun(LAffPL::constant(1, QuadExt(Rat(2))))));

  CHECK_THROWS_AS(wt->makeFun(LAffPL::constant(1, QuadExt(Rat(0)))), std::invalid_argument);
}

TEST_CASE("axioms hold across the function-bearing models") {
  std::vector<ModelPtr> models{goodearlModel(),           rotationModel(),
                               whkModel(),                rr0IntervalModel(2),
                               laffModel(),               functorF(goodearlElliott()),
                               functorF(rotationElliott())};
  for (const auto& m : models) {
    auto rep = checkCuAxioms(*m, 150, 0);
    CAPTURE(m->name());
    CAPTURE(rep.summary());
    CHECK(rep.pass());
    auto ord = checkOrderTheory(*m, 150, 0);
    CAPTURE(ord.summary());
    CHECK(ord.pass());
  }
}

TEST_CASE("canonical maps into the recovered models are order embeddings") {
  auto wtg = functorF(goodearlElliott());
  auto repG = embeddingCheck(*goodearlModel(), *wtg, goodearlToRecovered(*wtg), 200, 0);
  CAPTURE(repG.summary());
  CHECK(repG.pass());
  CHECK(repG.pairs == 200);
  CHECK(repG.orderChecks >= 2 * repG.pairs);

  auto wtr = functorF(rotationElliott());
  auto repR = embeddingCheck(*rotationModel(), *wtr, rotationToRecovered(*wtr), 200, 0);
  CAPTURE(repR.summary());
  CHECK(repR.pass());
}

TEST_CASE("canonical morphism checks pass for both embeddings") {
  auto wtg = functorF(goodearlElliott());
  auto mapG = goodearlToRecovered(*wtg);
  CuMorphism f{"embed-goodearl", goodearlModel(), wtg,
               [mapG](const Elem& x) -> std::optional<Elem> { return mapG(x); }};
  auto rep = checkCuMorphism(f, 150, 0);
  CAPTURE(rep.summary());
  CHECK(rep.pass());
}

TEST_CASE("interval boxes order by containment with staircase tops") {
  auto m = rr0IntervalModel(2);
  Elem a = Interval::principal({1, 2});
  Elem b = Interval::principal({2, 2});
  CHECK(m->leq(a, b));
  CHECK(!m->leq(b, a));
  CHECK(m->wayBelow(a, b));
  Elem stair = Interval{{ExtNat::infinity(), ExtNat(1)}};
  CHECK(m->leq(a, m->add(stair, b)));
  CHECK(!m->wayBelow(stair, stair));  // the staircase is not compact
  CHECK(m->equal(m->parseElem("(inf, 1)"), stair));
  auto j = m->joinCandidate(a, stair);
  REQUIRE(j.has_value());
  CHECK(m->leq(a, *j));
  CHECK(m->leq(stair, *j));
}

TEST_CASE("divisibility candidates split functions exactly") {
  auto lf = laffModel();
  Elem f = lf->makeFun(LAffPL::constant(2, QuadExt(Rat(3))));
  for (std::uint64_t n = 1; n <= 3; ++n) {
    auto cands = lf->divisibilityCandidates(f, n);
    bool ok = false;
    for (const auto& y : cands)
      if (lf->leq(lf->scale(n, y), f) && lf->leq(f, lf->scale(n + 1, y))) ok = true;
    CAPTURE(n);
    CHECK(ok);
  }
}
