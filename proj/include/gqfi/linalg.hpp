// Dense linear-algebra aliases and small helpers shared by every module.
//
// All phase-space matrices use the block quadrature ordering
// (q_1..q_n, p_1..p_n); the symplectic form is [[0, I], [-I, 0]].

#pragma once

#include <Eigen/Dense>

#include <complex>

namespace gqfi {

using Matrix = Eigen::MatrixXd;
using Vector = Eigen::VectorXd;
using CMatrix = Eigen::MatrixXcd;
using CVector = Eigen::VectorXcd;
using Index = Eigen::Index;

/// Largest absolute entry; zero for an empty matrix.
template <typename Derived>
double max_abs(const Eigen::MatrixBase<Derived>& m) {
  return m.size() == 0 ? 0.0 : m.cwiseAbs().maxCoeff();
}

/// Largest absolute entry of a - b relative to max(1, |a|_max).
template <typename A, typename B>
double rel_max_diff(const Eigen::MatrixBase<A>& a, const Eigen::MatrixBase<B>& b) {
  return max_abs(a - b) / std::max(1.0, max_abs(a));
}

inline Matrix symmetrize(const Matrix& m) { return 0.5 * (m + m.transpose()); }

/// The 2n x 2n symplectic form [[0, I], [-I, 0]].
Matrix omega(Index n);

/// Blocks of a 2n x 2n matrix in (q..q, p..p) ordering.
struct Blocks {
  Matrix qq, qp, pq, pp;
};
Blocks split_blocks(const Matrix& m);
Matrix join_blocks(const Matrix& qq, const Matrix& qp, const Matrix& pq, const Matrix& pp);

/// diag(k, k) for a vector k of n entries.
Matrix doubled_diagonal(const Vector& k);

/// Square root, inverse square root, and inverse of a symmetric positive
/// definite matrix through its eigendecomposition. Throws
/// ErrorCode::EigenvalueBelowFloor when an eigenvalue falls below `floor`
/// (relative to the largest eigenvalue); values are never clamped.
struct SpdFunctions {
  Matrix sqrt;
  Matrix inv_sqrt;
  Matrix inv;
  double condition = 1.0;
};
SpdFunctions spd_functions(const Matrix& m, double floor = 1e-14);

}  // namespace gqfi
