#pragma once
// Dense positive elements with exact rational entries, and the constructive
// contraction d with d b d* = (a - eps)_+ whenever ||a - b|| < eps. The
// construction follows the functional-calculus proof: pick r in (1,2] by
// bisection with ||a - g_r(b)|| = eps1 < eps for g_r(t) = min(t, t^r), form
// e(t) = sqrt((t-eps)/(t-eps1)) above eps, x = g_r(b)^{1/2} e(a), take the
// polar isometry v of x, y = v (a-eps)_+^{1/2}, and converge the sequence
// d_n = y* (1/n + b^r)^{-1/2} b^{(r-1)/2} along a doubling schedule of n.

#include <Eigen/Dense>
#include <stdexcept>
#include <vector>

#include "cuntz/rational.hpp"
#include "json.hpp"

namespace cuntz {

struct DenseElement {
  // Per block: a square matrix with exact rational entries, symmetric exactly.
  std::vector<std::vector<std::vector<Rat>>> blocks;

  DenseElement() = default;
  explicit DenseElement(std::vector<std::vector<std::vector<Rat>>> bs);

  nlohmann::json toJson() const;
  static DenseElement fromJson(const nlohmann::json& j);

  std::vector<Eigen::MatrixXd> toDouble() const;
};

struct KrOptions {
  double outputTolerance = 1e-6;
  std::size_t iterationCap = 10000;
  double rankTolerance = 1e-9;
  bool longDouble = false;  // selects the wider fixed-precision path
};

struct KrResult {
  std::vector<Eigen::MatrixXd> d;
  double r = 0;
  double eps1 = 0;
  double residual = 0;    // ||d b d* - (a-eps)_+||
  double dNorm = 0;       // operator norm of d
  std::size_t iterations = 0;
};

struct ConvergenceError : std::runtime_error {
  double residual;
  ConvergenceError(const std::string& what, double res)
      : std::runtime_error(what), residual(res) {}
};

// Operator norm: max block spectral norm, eigenvalue based with a Gershgorin
// fallback when the solver fails to converge.
double operatorNorm(const std::vector<Eigen::MatrixXd>& blocks);
double operatorNorm(const DenseElement& a);

// Numerical rank of each block at the given eigenvalue threshold.
std::vector<std::uint64_t> numericRank(const DenseElement& a, double tol = 1e-9);

// Throws std::domain_error when ||a-b|| >= eps or an input is not positive
// semidefinite within rankTolerance; ConvergenceError when the iteration cap
// is reached with the residual above outputTolerance.
KrResult krContraction(const DenseElement& a, const DenseElement& b, const Rat& eps,
                       const KrOptions& opts = {});

}  // namespace cuntz
