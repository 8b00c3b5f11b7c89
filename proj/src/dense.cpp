#include "cuntz/dense.hpp"

#include <cmath>

namespace cuntz {

DenseElement::DenseElement(std::vector<std::vector<std::vector<Rat>>> bs)
    : blocks(std::move(bs)) {
  for (const auto& m : blocks) {
    std::size_t n = m.size();
    for (const auto& row : m)
      if (row.size() != n) throw std::invalid_argument("DenseElement: non-square block");
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i + 1; j < n; ++j)
        if (m[i][j] != m[j][i])
          throw std::invalid_argument("DenseElement: block not symmetric at (" +
                                      std::to_string(i) + "," + std::to_string(j) + ")");
  }
}

nlohmann::json DenseElement::toJson() const {
  nlohmann::json arr = nlohmann::json::array();
  for (const auto& m : blocks) {
    nlohmann::json jm = nlohmann::json::array();
    for (const auto& row : m) {
      nlohmann::json jr = nlohmann::json::array();
      for (const auto& x : row) jr.push_back(ratToString(x));
      jm.push_back(std::move(jr));
    }
    arr.push_back(std::move(jm));
  }
  return nlohmann::json{{"blocks", arr}};
}

DenseElement DenseElement::fromJson(const nlohmann::json& j) {
  std::vector<std::vector<std::vector<Rat>>> bs;
  for (const auto& jm : j.at("blocks")) {
    std::vector<std::vector<Rat>> m;
    for (const auto& jr : jm) {
      std::vector<Rat> row;
      for (const auto& x : jr) row.push_back(ratFromString(x.get<std::string>()));
      m.push_back(std::move(row));
    }
    bs.push_back(std::move(m));
  }
  return DenseElement(std::move(bs));
}

std::vector<Eigen::MatrixXd> DenseElement::toDouble() const {
  std::vector<Eigen::MatrixXd> out;
  for (const auto& m : blocks) {
    Eigen::MatrixXd md(m.size(), m.size());
    for (std::size_t i = 0; i < m.size(); ++i)
      for (std::size_t j = 0; j < m.size(); ++j)
        md(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) =
            static_cast<double>(m[i][j]);
    out.push_back(std::move(md));
  }
  return out;
}

template <typename M>
static double specNorm(const M& m) {
  using Scalar = typename M::Scalar;
  Eigen::SelfAdjointEigenSolver<M> es(m, Eigen::EigenvaluesOnly);
  if (es.info() == Eigen::Success) {
    Scalar lo = es.eigenvalues().minCoeff();
    Scalar hi = es.eigenvalues().maxCoeff();
    return static_cast<double>(lo < -hi ? -lo : hi);
  }
  // Gershgorin fallback: max over rows of |a_ii| + sum of off-diagonal |a_ij|.
  double best = 0;
  for (Eigen::Index i = 0; i < m.rows(); ++i) {
    double row = 0;
    for (Eigen::Index j = 0; j < m.cols(); ++j) row += std::abs(static_cast<double>(m(i, j)));
    best = std::max(best, row);
  }
  return best;
}

double operatorNorm(const std::vector<Eigen::MatrixXd>& blocks) {
  double best = 0;
  for (const auto& m : blocks) best = std::max(best, specNorm(m));
  return best;
}

double operatorNorm(const DenseElement& a) { return operatorNorm(a.toDouble()); }

std::vector<std::uint64_t> numericRank(const DenseElement& a, double tol) {
  std::vector<std::uint64_t> out;
  for (const auto& m : a.toDouble()) {
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
    std::uint64_t r = 0;
    for (Eigen::Index i = 0; i < es.eigenvalues().size(); ++i)
      if (es.eigenvalues()(i) > tol) ++r;
    out.push_back(r);
  }
  return out;
}

namespace {

template <typename Scalar>
using Mat = Eigen::Matrix<Scalar, Eigen::Dynamic, Eigen::Dynamic>;

template <typename Scalar, typename Fn>
Mat<Scalar> applyFn(const Mat<Scalar>& m, Fn f) {
  Eigen::SelfAdjointEigenSolver<Mat<Scalar>> es(m);
  auto vals = es.eigenvalues();
  Mat<Scalar> diag = Mat<Scalar>::Zero(vals.size(), vals.size());
  for (Eigen::Index i = 0; i < vals.size(); ++i) diag(i, i) = f(vals(i));
  return es.eigenvectors() * diag * es.eigenvectors().transpose();
}

template <typename Scalar>
double norm2(const Mat<Scalar>& m) {
  Mat<Scalar> sym = (m + m.transpose()) / Scalar(2);
  if ((m - m.transpose()).cwiseAbs().maxCoeff() < Scalar(1e-30)) return specNorm(sym);
  // General (non-symmetric) case: sqrt of the top eigenvalue of m^T m.
  Mat<Scalar> mtm = m.transpose() * m;
  double top = specNorm(mtm);
  return std::sqrt(std::max(0.0, top));
}

template <typename Scalar>
Scalar gCut(Scalar t, Scalar r) {
  if (t <= Scalar(0)) return Scalar(0);
  Scalar tr = std::pow(static_cast<double>(t), static_cast<double>(r));
  return t < tr ? t : tr;
}

struct KrBlockInput {
  Eigen::MatrixXd a, b;
};

template <typename Scalar>
struct KrBlockOutput {
  Mat<Scalar> d;
  double residual;
  double dNorm;
  std::size_t iterations;
};

// One block of the construction at the chosen r and eps1.
template <typename Scalar>
KrBlockOutput<Scalar> krBlock(const Mat<Scalar>& a, const Mat<Scalar>& b, Scalar eps,
                              Scalar r, Scalar eps1, const KrOptions& opts) {
  Mat<Scalar> b0 = applyFn<Scalar>(b, [&](Scalar t) { return gCut(t, r); });
  Mat<Scalar> e = applyFn<Scalar>(a, [&](Scalar t) {
    if (t < eps) return Scalar(0);
    Scalar den = t - eps1;
    if (den <= Scalar(0)) return Scalar(0);
    return Scalar(std::sqrt(static_cast<double>((t - eps) / den)));
  });
  Mat<Scalar> sqrtB0 =
      applyFn<Scalar>(b0, [](Scalar t) { return t > Scalar(0) ? Scalar(std::sqrt(static_cast<double>(t))) : Scalar(0); });
  Mat<Scalar> x = sqrtB0 * e;

  Eigen::JacobiSVD<Mat<Scalar>> svd(x, Eigen::ComputeFullU | Eigen::ComputeFullV);
  Mat<Scalar> v = svd.matrixU() * svd.matrixV().transpose();

  Mat<Scalar> cutA = applyFn<Scalar>(a, [&](Scalar t) { return t > eps ? t - eps : Scalar(0); });
  Mat<Scalar> sqrtCutA = applyFn<Scalar>(
      cutA, [](Scalar t) { return t > Scalar(0) ? Scalar(std::sqrt(static_cast<double>(t))) : Scalar(0); });
  Mat<Scalar> y = v * sqrtCutA;

  KrBlockOutput<Scalar> out{Mat<Scalar>(), 1e300, 0, 0};
  double n = 1;
  for (std::size_t iter = 0; iter < opts.iterationCap; ++iter) {
    Mat<Scalar> phi = applyFn<Scalar>(b, [&](Scalar t) {
      if (t <= Scalar(0)) return Scalar(0);
      double td = static_cast<double>(t), rd = static_cast<double>(r);
      return Scalar(std::pow(td, (rd - 1) / 2) / std::sqrt(1.0 / n + std::pow(td, rd)));
    });
    Mat<Scalar> d = y.transpose() * phi;
    double res = norm2<Scalar>(d * b * d.transpose() - cutA);
    ++out.iterations;
    if (res < out.residual) {
      out.residual = res;
      out.d = d;
      out.dNorm = norm2<Scalar>(d);
    }
    if (out.residual <= opts.outputTolerance / 8) break;
    n *= 2;
    if (!std::isfinite(n) || n > 1e300) break;
  }
  return out;
}

template <typename Scalar>
KrResult krRun(const std::vector<Eigen::MatrixXd>& ab, const std::vector<Eigen::MatrixXd>& bb,
               double epsD, const KrOptions& opts) {
  // Shared r across blocks: bisect the largest r in (1,2] keeping
  // ||a - g_r(b)|| at most halfway between ||a-b|| and eps.
  auto grNorm = [&](double r) {
    double worst = 0;
    for (std::size_t k = 0; k < ab.size(); ++k) {
      Mat<Scalar> a = ab[k].cast<Scalar>(), b = bb[k].cast<Scalar>();
      Mat<Scalar> gb = applyFn<Scalar>(b, [&](Scalar t) { return gCut(t, Scalar(r)); });
      worst = std::max(worst, norm2<Scalar>(a - gb));
    }
    return worst;
  };

  double base = 0;
  for (std::size_t k = 0; k < ab.size(); ++k)
    base = std::max(base, norm2<Scalar>((ab[k] - bb[k]).template cast<Scalar>().eval()));
  double target = (base + epsD) / 2;

  double lo = 1.0, hi = 2.0, r;
  if (grNorm(2.0) <= target) {
    r = 2.0;
  } else {
    for (int it = 0; it < 60; ++it) {
      double mid = (lo + hi) / 2;
      if (grNorm(mid) <= target)
        lo = mid;
      else
        hi = mid;
    }
    r = lo;
  }
  if (r <= 1.0) r = std::nextafter(1.0, 2.0);
  double eps1 = grNorm(r);
  if (eps1 >= epsD)
    throw std::domain_error("could not find r with ||a - g_r(b)|| < eps");

  KrResult res;
  res.r = r;
  res.eps1 = eps1;
  res.residual = 0;
  res.dNorm = 0;
  for (std::size_t k = 0; k < ab.size(); ++k) {
    auto blk = krBlock<Scalar>(ab[k].cast<Scalar>(), bb[k].cast<Scalar>(), Scalar(epsD),
                               Scalar(r), Scalar(eps1), opts);
    res.residual = std::max(res.residual, blk.residual);
    res.dNorm = std::max(res.dNorm, blk.dNorm);
    res.iterations = std::max(res.iterations, blk.iterations);
    res.d.push_back(blk.d.template cast<double>());
  }
  if (res.residual > opts.outputTolerance)
    throw ConvergenceError("kr iteration reached its cap with residual " +
                               std::to_string(res.residual),
                           res.residual);
  return res;
}

}  // namespace

KrResult krContraction(const DenseElement& a, const DenseElement& b, const Rat& eps,
                       const KrOptions& opts) {
  if (a.blocks.size() != b.blocks.size())
    throw std::invalid_argument("krContraction: mismatched block structure");
  for (std::size_t k = 0; k < a.blocks.size(); ++k)
    if (a.blocks[k].size() != b.blocks[k].size())
      throw std::invalid_argument("krContraction: block dimension mismatch");
  double epsD = static_cast<double>(eps);
  if (epsD <= 0) throw std::domain_error("krContraction: eps must be positive");

  auto ab = a.toDouble();
  auto bb = b.toDouble();
  for (const auto* side : {&ab, &bb})
    for (const auto& m : *side) {
      Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m, Eigen::EigenvaluesOnly);
      if (es.info() == Eigen::Success && es.eigenvalues().minCoeff() < -opts.rankTolerance)
        throw std::domain_error("krContraction: input not positive semidefinite");
    }

  double dist = 0;
  for (std::size_t k = 0; k < ab.size(); ++k)
    dist = std::max(dist, specNorm(Eigen::MatrixXd(ab[k] - bb[k])));
  if (dist >= epsD)
    throw std::domain_error("krContraction: ||a - b|| = " + std::to_string(dist) +
                            " >= eps = " + std::to_string(epsD));

  return opts.longDouble ? krRun<long double>(ab, bb, epsD, opts)
                         : krRun<double>(ab, bb, epsD, opts);
}

}  // namespace cuntz
