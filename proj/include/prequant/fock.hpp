#pragma once

// Dense realization of ladder polynomials on the truncated number basis
// |0>, ..., |N>. Products of truncated factors are exact only on a leading
// block, so comparisons go through leading_block_distance.

#include <Eigen/Dense>
#include <string>

#include "prequant/algebra.hpp"

namespace prequant {

template <typename Real>
using FockMatrixT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, Eigen::Dynamic>;
template <typename Real>
using FockVectorT = Eigen::Matrix<std::complex<Real>, Eigen::Dynamic, 1>;

using FockMatrix = FockMatrixT<double>;
using FockVector = FockVectorT<double>;

/// Truncated annihilation matrix: entry (n-1, n) = sqrt(n).
template <typename Real = double>
FockMatrixT<Real> annihilation_matrix(int N) {
  FockMatrixT<Real> A = FockMatrixT<Real>::Zero(N + 1, N + 1);
  for (int n = 1; n <= N; ++n) A(n - 1, n) = std::sqrt(static_cast<Real>(n));
  return A;
}

/// a^k a^dagger^m as the product of truncated single-letter factors.
template <typename Real = double>
FockMatrixT<Real> ladder_matrix(int k, int m, int N) {
  if (k < 0 || m < 0 || N < 0) throw std::invalid_argument("ladder_matrix: negative argument");
  const FockMatrixT<Real> A = annihilation_matrix<Real>(N);
  const FockMatrixT<Real> Ad = A.adjoint();
  FockMatrixT<Real> M = FockMatrixT<Real>::Identity(N + 1, N + 1);
  for (int i = 0; i < k; ++i) M = M * A;
  for (int i = 0; i < m; ++i) M = M * Ad;
  return M;
}

/// Linear extension of ladder_matrix, honoring L's ordering tag.
/// Throws when N < deg(L).
FockMatrix realize(const LadderPolynomial& L, int N);

/// Exact section <n'|L|n> for n, n' <= N computed from closed-form matrix
/// elements of the untruncated operator (no leading-block caveat).
FockMatrix projected_section(const LadderPolynomial& L, int N);

/// Max-norm of (A - B) on the leading (dim - d) block.
double leading_block_distance(const FockMatrix& A, const FockMatrix& B, int d);

/// {"dim": n, "entries": [[re, im], ...]} in row-major order.
std::string matrix_to_json(const FockMatrix& M);
FockMatrix matrix_from_json(const std::string& text);

}  // namespace prequant
