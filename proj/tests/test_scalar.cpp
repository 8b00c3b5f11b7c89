#include "doctest.h"

#include <stdexcept>

#include "cuntz/rational.hpp"

using namespace cuntz;

TEST_CASE("rational strings round-trip") {
  CHECK(ratToString(Rat(7, 3)) == "7/3");
  CHECK(ratToString(Rat(-2)) == "-2");
  CHECK(ratFromString("7/3") == Rat(7, 3));
  CHECK(ratFromString("-2") == Rat(-2));
  CHECK(ratFromString("5/10") == Rat(1, 2));
  CHECK_THROWS_AS(ratFromString("x"), std::invalid_argument);
  CHECK_THROWS_AS(ratFromString(""), std::invalid_argument);
}

TEST_CASE("extended naturals saturate and guard overflow") {
  ExtNat two(2), three(3), inf = ExtNat::infinity();
  CHECK((two + three).finite() == 5);
  CHECK((two + inf).isInf());
  CHECK((inf + inf).isInf());
  CHECK(inf.times(0) == ExtNat(0));
  CHECK(inf.times(7).isInf());
  CHECK(two.times(3).finite() == 6);

  ExtNat big(UINT64_MAX - 1);
  CHECK_THROWS_AS(big + two, std::overflow_error);
  CHECK_THROWS_AS(big.times(2), std::overflow_error);
  CHECK_THROWS_AS(inf.finite(), std::domain_error);

  CHECK(ExtNat::parse("inf").isInf());
  CHECK(ExtNat::parse("41").finite() == 41);

  // Compactness: finite below anything it is below, inf never.
  CHECK(extnatWayBelow(two, three));
  CHECK(extnatWayBelow(two, inf));
  CHECK(!extnatWayBelow(three, two));
  CHECK(!extnatWayBelow(inf, inf));
}

TEST_CASE("quadratic extension compares by exact sign") {
  QuadExt sqrt2(Rat(0), Rat(1), 2);
  // 99/70 is the continued-fraction convergent just above sqrt(2):
  // 99^2 = 9801 > 9800 = 2 * 70^2, and the gap is 1/9800 of a square.
  CHECK(sqrt2 < QuadExt(Rat(99, 70)));
  CHECK(QuadExt(Rat(98, 70)) < sqrt2);
  CHECK((sqrt2 * sqrt2) == QuadExt(Rat(2)));

  QuadExt onePlus(Rat(1), Rat(1), 2), oneMinus(Rat(1), Rat(-1), 2);
  CHECK((onePlus * oneMinus) == QuadExt(Rat(-1)));
  CHECK(oneMinus.sign() < 0);
  CHECK(QuadExt(Rat(0)).sign() == 0);
  CHECK((sqrt2 - sqrt2).sign() == 0);

  CHECK(QuadExt(Rat(3)).rational());
  CHECK(!sqrt2.rational());
  CHECK(QuadExt(Rat(5), Rat(0), 2).rational());  // b = 0 collapses the radicand

  CHECK_THROWS_AS(QuadExt(Rat(1), Rat(1), 4), std::invalid_argument);
  CHECK_THROWS_AS(QuadExt(Rat(1), Rat(1), 1), std::invalid_argument);

  QuadExt sqrt3(Rat(0), Rat(1), 3);
  CHECK_THROWS_AS(commonRadicand(sqrt2, sqrt3), std::invalid_argument);
  CHECK(commonRadicand(sqrt2, QuadExt(Rat(1))) == 2);

  CHECK(sqrt2.toDouble() == doctest::Approx(1.41421356).epsilon(1e-8));
}

TEST_CASE("nonnegative scalars reject negatives and order with inf on top") {
  ExtNonnegScalar a{QuadExt(Rat(1, 2))}, b{QuadExt(Rat(2))};
  ExtNonnegScalar inf = ExtNonnegScalar::infinity();
  CHECK(a < b);
  CHECK(b < inf);
  CHECK(!(inf < inf));
  CHECK(inf <= inf);
  CHECK((a + b) == ExtNonnegScalar(QuadExt(Rat(5, 2))));
  CHECK((a + inf).isInf());
  CHECK_THROWS_AS(ExtNonnegScalar(QuadExt(Rat(-1))), std::domain_error);
  // 1 - sqrt(2)/2 > 0: admitted even though both coefficients mix signs.
  CHECK(!ExtNonnegScalar(QuadExt(Rat(1), Rat(-1, 2), 2)).isInf());
}
