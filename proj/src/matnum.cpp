#include "waring/matnum.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <numeric>
#include <numbers>

namespace waring {

double arg_2pi(cplx z) {
  double a = std::arg(z);
  if (a < 0) a += 2.0 * std::numbers::pi;
  if (a >= 2.0 * std::numbers::pi) a -= 2.0 * std::numbers::pi;
  return a;
}

EigDecomp eig_normal(const CMatrix& a, double tol) {
  if (a.rows() != a.cols()) throw DimensionError("eig_normal needs a square matrix");
  const double norm = a.norm();
  const double comm = (a * a.adjoint() - a.adjoint() * a).norm();
  if (comm > tol * std::max(norm * norm, 1.0)) throw DomainError("matrix is not normal");

  Eigen::ComplexSchur<CMatrix> schur(a);
  if (schur.info() != Eigen::Success) throw ConvergenceError("Schur iteration did not converge");
  const CMatrix& t = schur.matrixT();
  const CMatrix& u = schur.matrixU();
  const auto n = static_cast<std::size_t>(a.rows());

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  // Clean up arguments that sit just below 2pi so ordering is stable.
  std::vector<double> args(n);
  for (std::size_t i = 0; i < n; ++i) {
    double ang = arg_2pi(t(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(i)));
    if (2.0 * std::numbers::pi - ang < 1e-13) ang = 0.0;
    args[i] = ang;
  }
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    if (args[x] != args[y]) return args[x] < args[y];
    const auto ix = static_cast<Eigen::Index>(x), iy = static_cast<Eigen::Index>(y);
    return std::abs(t(ix, ix).imag()) < std::abs(t(iy, iy).imag());
  });

  EigDecomp d;
  d.eigenvectors.resize(a.rows(), a.cols());
  d.eigenvalues.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    const auto src = static_cast<Eigen::Index>(order[k]);
    d.eigenvalues.push_back(t(src, src));
    d.eigenvectors.col(static_cast<Eigen::Index>(k)) = u.col(src);
  }
  CMatrix lam = CMatrix::Zero(a.rows(), a.cols());
  for (std::size_t k = 0; k < n; ++k) lam(static_cast<Eigen::Index>(k), static_cast<Eigen::Index>(k)) = d.eigenvalues[k];
  d.residual = (a * d.eigenvectors - d.eigenvectors * lam).norm();
  if (d.residual > tol * std::max(norm, 1.0)) {
    throw ConvergenceError("eigendecomposition residual " + std::to_string(d.residual) + " above tolerance");
  }
  return d;
}

RVector solve_real_linear(const RMatrix& m, const RVector& b) {
  if (m.rows() != m.cols() || m.rows() != b.size()) throw DimensionError("solve_real_linear dimension mismatch");
  if (m.rows() == 0) return RVector(0);
  Eigen::JacobiSVD<RMatrix> svd(m);
  const auto& s = svd.singularValues();
  const double smax = s(0);
  const double smin = s(s.size() - 1);
  if (smin == 0.0 || smax / smin > 1e12) throw SingularMatrixError("matrix is singular or ill-conditioned");
  Eigen::ColPivHouseholderQR<RMatrix> qr(m);
  RVector x = qr.solve(b);
  // one step of iterative refinement
  x += qr.solve(RVector(b - m * x));
  return x;
}

double frobenius_dist(const CMatrix& a, const CMatrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) throw DimensionError("frobenius_dist dimension mismatch");
  return (a - b).norm();
}

double unitarity_defect(const CMatrix& a) {
  return (a.adjoint() * a - CMatrix::Identity(a.cols(), a.cols())).norm();
}

CMatrix unitarize(const CMatrix& a) {
  if (a.rows() != a.cols()) throw DimensionError("unitarize needs a square matrix");
  Eigen::JacobiSVD<CMatrix> svd(a, Eigen::ComputeFullU | Eigen::ComputeFullV);
  CMatrix polar = svd.matrixU() * svd.matrixV().adjoint();
  if ((polar - a).norm() > 0.1) throw DomainError("matrix too far from the unitary group");
  return polar;
}

CMatrix to_cmatrix(const exact::ExactMatrix& m) {
  CMatrix out(static_cast<Eigen::Index>(m.rows()), static_cast<Eigen::Index>(m.cols()));
  for (std::size_t i = 0; i < m.rows(); ++i)
    for (std::size_t j = 0; j < m.cols(); ++j)
      out(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = m(i, j).to_complex();
  return out;
}

CMatrix MatrixOps<CMatrix>::inverse(const CMatrix& a) const {
  Eigen::PartialPivLU<CMatrix> lu(a);
  if (!(lu.rcond() > 1e-12)) throw SingularMatrixError("argument is singular to tolerance");
  return lu.inverse();
}

}  // namespace waring
