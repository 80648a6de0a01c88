// Symplectic linear algebra on covariance matrices: validation, Williamson
// normal form, pre-Iwasawa factorization, and the U(n) <-> O_sp isomorphism.
//
// Conventions: vacuum = I/2, symplectic eigenvalues k_i >= 1/2, and a
// symplectic S acts on covariances by congruence V -> S V S^T.

#pragma once

#include "gqfi/errors.hpp"
#include "gqfi/linalg.hpp"

#include <vector>

namespace gqfi {

/// Numerical thresholds. psd, sympl and recon are relative to the max-norm of
/// the matrix under test.
struct Tolerances {
  double psd = 1e-10;
  double sympl = 1e-9;
  double recon = 1e-8;
  double degeneracy = 1e-8;   // relative to max k
  double eigen_floor = 1e-14;
  double condition_cap = 1e12;
};

class CovarianceMatrix {
 public:
  Index modes() const { return v_.rows() / 2; }
  const Matrix& matrix() const { return v_; }

 private:
  explicit CovarianceMatrix(Matrix v) : v_(std::move(v)) {}
  friend CovarianceMatrix validate_covariance(const Matrix&, const Tolerances&);

  Matrix v_;
};

/// Residuals of the covariance invariants, without throwing.
struct CovarianceDiagnostics {
  double asymmetry = 0.0;          // max |V - V^T|
  double min_uncertainty_eig = 0;  // smallest eigenvalue of V + i Omega / 2
};
CovarianceDiagnostics diagnose_covariance(const Matrix& v);

/// Checks V = V^T and V + i Omega/2 >= 0. The stored matrix is the exact
/// symmetric part of the input.
CovarianceMatrix validate_covariance(const Matrix& v, const Tolerances& tol = {});

class SymplecticMatrix {
 public:
  static SymplecticMatrix identity(Index n);
  /// Throws NotSymplectic when max|S^T Omega S - Omega| exceeds tol.sympl
  /// (scaled by max(1, |S|_max^2)).
  static SymplecticMatrix validated(Matrix s, const Tolerances& tol = {});

  Index modes() const { return s_.rows() / 2; }
  const Matrix& matrix() const { return s_; }

  /// S^{-1} = Omega^T S^T Omega, exact for symplectic S.
  SymplecticMatrix inverse() const;

  friend SymplecticMatrix operator*(const SymplecticMatrix& a, const SymplecticMatrix& b) {
    return SymplecticMatrix(a.s_ * b.s_);
  }

 private:
  explicit SymplecticMatrix(Matrix s) : s_(std::move(s)) {}
  Matrix s_;
};

/// max|S^T Omega S - Omega|.
double symplectic_residual(const Matrix& s);
/// max(|O^T O - I|, |O^T Omega O - Omega|).
double orthosymplectic_residual(const Matrix& o);

/// Congruence S V S^T, revalidated.
CovarianceMatrix congruence(const SymplecticMatrix& s, const CovarianceMatrix& v,
                            const Tolerances& tol = {});

/// Ascending symplectic eigenvalues, from the Hermitian matrix
/// i V^{1/2} Omega V^{1/2} whose spectrum is {+-k_i}.
Vector symplectic_eigenvalues(const CovarianceMatrix& v);

struct WilliamsonData {
  SymplecticMatrix s;
  Vector k;                        // ascending
  std::vector<int> multiplicity;   // cluster sizes in ascending-k order
  double reconstruction_error = 0; // max|V - S diag(k,k) S^T| / max|V|
};

/// V = S diag(k, k) S^T. Within each degenerate cluster the U(d) stabilizer
/// gauge is fixed deterministically (see the implementation notes).
WilliamsonData williamson(const CovarianceMatrix& v, const Tolerances& tol = {});

/// Complex symmetric Z = X + iY with Y > 0: a point of the Siegel upper
/// half-space, labelling a pure Gaussian state.
class GraphMatrix {
 public:
  static GraphMatrix validated(Matrix x, Matrix y, const Tolerances& tol = {});
  static GraphMatrix from_complex(const CMatrix& z, const Tolerances& tol = {});
  /// Z = i I on n modes (the vacuum graph).
  static GraphMatrix vacuum(Index n);

  Index modes() const { return x_.rows(); }
  const Matrix& x() const { return x_; }
  const Matrix& y() const { return y_; }
  CMatrix complex() const;

 private:
  GraphMatrix(Matrix x, Matrix y) : x_(std::move(x)), y_(std::move(y)) {}
  Matrix x_, y_;
};

struct PreIwasawaData {
  Matrix x;   // symmetric
  Matrix y;   // symmetric positive definite
  SymplecticMatrix o;
  double y_condition = 1.0;
  bool ill_conditioned = false;  // y_condition above tol.condition_cap
  GraphMatrix graph() const { return GraphMatrix::validated(x, y); }
};

/// S = [[I,0],[X,I]] diag(Y^{-1/2}, Y^{1/2}) O with O orthogonal symplectic.
PreIwasawaData pre_iwasawa(const SymplecticMatrix& s, const Tolerances& tol = {});

/// S_Z = [[Y^{-1/2}, 0], [X Y^{-1/2}, Y^{1/2}]], the section of Sp over the
/// Siegel space.
SymplecticMatrix s_from_graph(const GraphMatrix& z, const Tolerances& tol = {});

/// O = [[Re U, -Im U], [Im U, Re U]].
SymplecticMatrix orthosymplectic_from_unitary(const CMatrix& u, const Tolerances& tol = {});
/// Inverse of orthosymplectic_from_unitary; throws NotSymplectic if O is not
/// in O_sp.
CMatrix unitary_from_orthosymplectic(const SymplecticMatrix& o, const Tolerances& tol = {});

}  // namespace gqfi
