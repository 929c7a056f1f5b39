#pragma once

// Floating complex dense linear algebra on top of Eigen.

#include <Eigen/Dense>
#include <complex>
#include <vector>

#include "waring/exactnum.hpp"
#include "waring/wordlang.hpp"

namespace waring {

using cplx = std::complex<double>;
using CMatrix = Eigen::MatrixXcd;
using RVector = Eigen::VectorXd;
using RMatrix = Eigen::MatrixXd;

inline constexpr double kVerifyTol = 1e-10;
inline constexpr double kAcceptTol = 1e-8;

struct EigDecomp {
  std::vector<cplx> eigenvalues;  // sorted by argument in [0, 2pi)
  CMatrix eigenvectors;           // unitary, columns match eigenvalues
  double residual = 0.0;          // ||A V - V diag(lambda)||_F
};

/// Eigendecomposition of a normal matrix through the complex Schur form.
/// Throws DomainError if A is not normal to tol and ConvergenceError if the
/// residual check fails.
EigDecomp eig_normal(const CMatrix& a, double tol = kVerifyTol);

/// Solves M x = b; throws SingularMatrixError above condition number 1e12.
RVector solve_real_linear(const RMatrix& m, const RVector& b);

double frobenius_dist(const CMatrix& a, const CMatrix& b);

/// Unitary polar factor of A. Throws DomainError when A is further than 0.1
/// from the unitary group.
CMatrix unitarize(const CMatrix& a);

/// ||A* A - I||_F
double unitarity_defect(const CMatrix& a);

/// Principal argument mapped to [0, 2pi).
double arg_2pi(cplx z);

CMatrix to_cmatrix(const exact::ExactMatrix& m);

}  // namespace waring

namespace waring {

template <>
struct MatrixOps<CMatrix> {
  std::size_t dim(const CMatrix& m) const { return static_cast<std::size_t>(m.rows()); }
  CMatrix identity(const CMatrix& like) const { return CMatrix::Identity(like.rows(), like.cols()); }
  CMatrix multiply(const CMatrix& a, const CMatrix& b) const { return a * b; }
  CMatrix inverse(const CMatrix& a) const;
};

}  // namespace waring
