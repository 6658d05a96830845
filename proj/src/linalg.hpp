#pragma once

// Dense kernels shared by the library sources. Not installed.

#include <algorithm>
#include <cmath>
#include <functional>

#include <Eigen/Dense>

#include "projlat/element.hpp"

namespace projlat::detail {

inline Matrix identity(Index n) { return Matrix::Identity(n, n); }

inline double op_norm(const Matrix& m) {
  if (m.size() == 0) return 0.0;
  Eigen::JacobiSVD<Matrix> svd(m);
  return svd.singularValues()(0);
}

/// Orthonormal basis of the column space; singular values at or below
/// rank_rel * max(sigma_max, scale) are dropped. Passing the norm of the whole
/// element as `scale` keeps numerically zero blocks at rank 0.
inline Matrix range_basis(const Matrix& m, double rank_rel, double scale = 0.0) {
  if (m.cols() == 0 || m.rows() == 0) return Matrix(m.rows(), 0);
  Eigen::JacobiSVD<Matrix> svd(m, Eigen::ComputeFullU);
  const auto& s = svd.singularValues();
  const double smax = std::max(s(0), scale);
  Index r = 0;
  if (smax > 0.0) {
    while (r < s.size() && s(r) > rank_rel * smax) ++r;
  }
  return svd.matrixU().leftCols(r);
}

/// Orthonormal basis of the orthogonal complement of an orthonormal basis.
inline Matrix complement_basis(const Matrix& basis, Index n) {
  const Index r = basis.cols();
  if (r == 0) return identity(n);
  if (r >= n) return Matrix(n, 0);
  Eigen::HouseholderQR<Matrix> qr(basis);
  Matrix q = qr.householderQ() * identity(n);
  return q.rightCols(n - r);
}

/// Orthonormalizes a full-column-rank matrix with a thin QR.
inline Matrix orthonormalize(const Matrix& m) {
  if (m.cols() == 0) return Matrix(m.rows(), 0);
  Eigen::HouseholderQR<Matrix> qr(m);
  return qr.householderQ() * Matrix::Identity(m.rows(), m.cols());
}

inline Matrix hermitian_part(const Matrix& m) { return (m + m.adjoint()) / 2.0; }

/// f(h) for Hermitian h by spectral calculus.
inline Matrix hermitian_function(const Matrix& h, const std::function<double(double)>& f) {
  if (h.size() == 0) return h;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h));
  Eigen::VectorXd vals = es.eigenvalues().unaryExpr(f);
  return es.eigenvectors() * vals.cast<Complex>().asDiagonal() * es.eigenvectors().adjoint();
}

inline double min_eigenvalue(const Matrix& h) {
  if (h.size() == 0) return 0.0;
  Eigen::SelfAdjointEigenSolver<Matrix> es(hermitian_part(h), Eigen::EigenvaluesOnly);
  return es.eigenvalues()(0);
}

}  // namespace projlat::detail
