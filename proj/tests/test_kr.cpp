#include "doctest.h"

#include <random>

#include "cuntz/dense.hpp"

using namespace cuntz;

namespace {

using Mat = std::vector<std::vector<Rat>>;

// Conjugate diag(vals) by the exact rational rotation [[3/5,-4/5],[4/5,3/5]].
Mat rotatedDiag2(const Rat& l1, const Rat& l2) {
  Rat c(3, 5), s(4, 5);
  return {{c * c * l1 + s * s * l2, c * s * (l1 - l2)},
          {c * s * (l1 - l2), s * s * l1 + c * c * l2}};
}

DenseElement oneBlock(Mat m) { return DenseElement({std::move(m)}); }

double maxAbsDiff(const std::vector<Eigen::MatrixXd>& a, const std::vector<Eigen::MatrixXd>& b) {
  double w = 0;
  for (std::size_t i = 0; i < a.size(); ++i) w = std::max(w, (a[i] - b[i]).cwiseAbs().maxCoeff());
  return w;
}

}  // namespace

TEST_CASE("contraction reproduces the eps-cut of a diagonal pair exactly") {
  auto a = oneBlock({{Rat(1), Rat(0)}, {Rat(0), Rat(1, 2)}});
  auto b = oneBlock({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  auto res = krContraction(a, b, Rat(3, 4));
  CHECK(res.residual <= 1e-6);
  CHECK(res.dNorm <= 1.0 + 1e-6);
  CHECK(res.eps1 < 0.75);
  CHECK(res.r > 1.0);
  CHECK(res.r <= 2.0);

  // d b d* equals diag(1/4, 0): check it numerically.
  Eigen::MatrixXd want(2, 2);
  want << 0.25, 0, 0, 0;
  Eigen::MatrixXd got = res.d[0] * b.toDouble()[0] * res.d[0].transpose();
  CHECK((got - want).cwiseAbs().maxCoeff() <= 1e-6);
}

TEST_CASE("contraction handles rotated spectra and multiple blocks") {
  auto a = DenseElement({rotatedDiag2(Rat(1), Rat(1, 3)), {{Rat(1, 2)}}});
  auto b = DenseElement({rotatedDiag2(Rat(9, 10), Rat(2, 5)), {{Rat(3, 5)}}});
  // ||a - b|| = max(1/10, 1/15, 1/10) = 1/10 < 1/8.
  auto res = krContraction(a, b, Rat(1, 8));
  CHECK(res.residual <= 1e-6);
  CHECK(res.dNorm <= 1.0 + 1e-6);

  auto cutRanks = numericRank(a, 1e-9);
  REQUIRE(cutRanks.size() == 2);

  // d b d* matches (a - eps)_+ eigenvalues: spot check via traces.
  Eigen::MatrixXd got = res.d[0] * b.toDouble()[0] * res.d[0].transpose();
  // (a - 1/8)_+ in the rotated basis has eigenvalues 7/8 and 5/24.
  CHECK(got.trace() == doctest::Approx(7.0 / 8 + 5.0 / 24).epsilon(1e-5));
}

TEST_CASE("random rotated pairs stay within the contraction bound") {
  std::mt19937_64 rng(41);
  std::uniform_int_distribution<int> num(0, 12);
  for (int i = 0; i < 25; ++i) {
    Rat l1(num(rng), 12), l2(num(rng), 12);
    Rat m1 = l1 + Rat(num(rng) - 6, 100), m2 = l2 + Rat(num(rng) - 6, 100);
    if (m1 < 0) m1 = 0;
    if (m2 < 0) m2 = 0;
    auto a = oneBlock(rotatedDiag2(l1, l2));
    auto b = oneBlock(rotatedDiag2(m1, m2));
    auto res = krContraction(a, b, Rat(1, 10));  // gap <= 6/100 < 1/10
    CAPTURE(i);
    CHECK(res.residual <= 1e-6);
    CHECK(res.dNorm <= 1.0 + 1e-6);
  }
}

TEST_CASE("precondition violations are domain errors, not crashes") {
  auto a = oneBlock({{Rat(1), Rat(0)}, {Rat(0), Rat(1, 2)}});
  auto b = oneBlock({{Rat(1), Rat(0)}, {Rat(0), Rat(1)}});
  CHECK_THROWS_AS(krContraction(a, b, Rat(1, 4)), std::domain_error);  // gap 1/2 >= eps

  auto neg = oneBlock({{Rat(-1), Rat(0)}, {Rat(0), Rat(1)}});
  CHECK_THROWS_AS(krContraction(neg, neg, Rat(1, 4)), std::domain_error);
}

TEST_CASE("the iteration cap trips a convergence error carrying the residual") {
  auto a = oneBlock(rotatedDiag2(Rat(1), Rat(1, 3)));
  auto b = oneBlock(rotatedDiag2(Rat(9, 10), Rat(2, 5)));
  KrOptions tight;
  tight.outputTolerance = 1e-300;
  tight.iterationCap = 2;
  bool threw = false;
  try {
    krContraction(a, b, Rat(1, 8), tight);
  } catch (const ConvergenceError& e) {
    threw = true;
    CHECK(e.residual > 0);
  }
  CHECK(threw);
}

TEST_CASE("the wider fixed-precision path agrees with the default") {
  auto a = oneBlock(rotatedDiag2(Rat(1), Rat(1, 3)));
  auto b = oneBlock(rotatedDiag2(Rat(9, 10), Rat(2, 5)));
  auto fast = krContraction(a, b, Rat(1, 8));
  KrOptions wide;
  wide.longDouble = true;
  auto slow = krContraction(a, b, Rat(1, 8), wide);
  CHECK(slow.residual <= 1e-6);
  CHECK(maxAbsDiff(fast.d, slow.d) <= 1e-4);
}

TEST_CASE("operator norm and numeric rank are exact on known spectra") {
  auto a = DenseElement({rotatedDiag2(Rat(1), Rat(1, 3)), {{Rat(0)}}});
  CHECK(operatorNorm(a) == doctest::Approx(1.0).epsilon(1e-10));
  auto ranks = numericRank(a, 1e-9);
  REQUIRE(ranks.size() == 2);
  CHECK(ranks[0] == 2);
  CHECK(ranks[1] == 0);
}
