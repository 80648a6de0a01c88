// Even/odd splitting of the Gaussian quantum Fisher information.
//
// A covariance velocity is pushed into the Williamson frame,
// SigmaDot = S^{-1} dV S^{-T}, and graded by parity under X -> Omega X Omega^T.
// In block form
//
//   SigmaDot = [[M, -N], [N, M]] + [[A, B], [B, -A]]
//
// the even part (M, N) carries spectral change and the odd part (A, B)
// carries correlation change. The Bures superoperator 4 L_D + L_Omega acts on
// entry (i, j) of each block by 4 k_i k_j -+ 1, which gives
//
//   QFI_e = 4 sum_ij (M_ij^2 + N_ij^2) / (4 k_i k_j - 1)
//   QFI_o = 4 sum_ij (A_ij^2 + B_ij^2) / (4 k_i k_j + 1)
//
// with QFI = QFI_e + QFI_o = 2 Tr[dV (4 L_V + L_Omega)^+ dV].

#pragma once

#include "gqfi/derivatives.hpp"
#include "gqfi/symplectic.hpp"

#include <functional>
#include <vector>

namespace gqfi {

struct SplitOptions {
  double pure_alpha = 1e-9;       // 4 k_i k_j - 1 below this counts as zero
  double pure_numerator = 1e-9;   // dropped numerators must stay below this x |SigmaDot|_F^2
  double near_pure_alpha = 1e-6;  // conditioning flag threshold
  double oracle_cutoff = 1e-11;   // pseudo-inverse cutoff relative to the top singular value
  FiniteDifference fd;
  Tolerances tol;
};

struct ParityParts {
  Matrix even;  // commutes with Omega
  Matrix odd;   // anticommutes with Omega
};

/// even = (W + Omega W Omega^T)/2, odd = (W - Omega W Omega^T)/2.
ParityParts parity_project(const Matrix& w);

struct TangentBlocks {
  Matrix m;  // symmetric
  Matrix n;  // antisymmetric
  Matrix a;  // symmetric
  Matrix b;  // symmetric

  Matrix even() const;
  Matrix odd() const;
  Matrix reassemble() const { return even() + odd(); }
};

/// For W = [[P, Q], [Q^T, R]]: M = (P+R)/2, A = (P-R)/2, B = (Q+Q^T)/2,
/// N = (Q^T-Q)/2.
TangentBlocks decompose_blocks(const Matrix& w);

struct QfiSplit {
  double even = 0.0;
  double odd = 0.0;
  double total = 0.0;
  int dropped_even_terms = 0;  // (i, j) pairs with 4 k_i k_j - 1 treated as zero
  bool near_pure = false;      // an included even term had 4 k_i k_j - 1 < near_pure_alpha
};

struct QfimSplit {
  Matrix even;
  Matrix odd;
  Matrix total;
  int dropped_even_terms = 0;
  bool near_pure = false;
};

/// Closed-form split in the Williamson frame. Throws InconsistentPureDirection
/// when a dropped (pure-pair) even term has a non-negligible numerator.
QfiSplit qfi_split_williamson(const Vector& k, const TangentBlocks& blocks,
                              const SplitOptions& opts = {});
QfimSplit qfim_split_williamson(const Vector& k, const std::vector<TangentBlocks>& blocks,
                                const SplitOptions& opts = {});

/// Williamson data at a point and the per-parameter frame velocities
/// SigmaDot_a = S^{-1} dV_a S^{-T}.
struct VelocityFrame {
  WilliamsonData williamson;
  std::vector<Matrix> sigma_dot;
};
VelocityFrame velocity_frame(const CovarianceMatrix& v, const std::vector<Matrix>& dv,
                             const SplitOptions& opts = {});

QfiSplit qfi_split_at(const CovarianceMatrix& v, const Matrix& dv, const SplitOptions& opts = {});
QfimSplit qfim_split_at(const CovarianceMatrix& v, const std::vector<Matrix>& dv,
                        const SplitOptions& opts = {});

enum class DerivativeMode { Analytic, FiniteDifference };

/// One-parameter covariance family. `derivative` may be empty, in which case
/// only DerivativeMode::FiniteDifference is available.
struct CovariancePath {
  std::function<Matrix(double)> value;
  std::function<Matrix(double)> derivative;
};

/// Multi-parameter family; `gradient` returns one matrix per parameter and may
/// be empty.
struct CovarianceFamily {
  Index parameters = 0;
  std::function<Matrix(const Vector&)> value;
  std::function<std::vector<Matrix>(const Vector&)> gradient;
};

/// Velocity of a path at t0 by the requested route.
Matrix path_velocity(const CovariancePath& path, double t0, DerivativeMode mode,
                     const SplitOptions& opts = {});
std::vector<Matrix> family_gradient(const CovarianceFamily& family, const Vector& theta0,
                                    DerivativeMode mode, const SplitOptions& opts = {});

QfiSplit qfi_split_path(const CovariancePath& path, double t0, DerivativeMode mode,
                        const SplitOptions& opts = {});
QfimSplit qfim_split(const CovarianceFamily& family, const Vector& theta0, DerivativeMode mode,
                     const SplitOptions& opts = {});

/// 4 sum_i kdot_i^2 / (4 k_i^2 - 1). Throws PureSpectralSingularity when a
/// mode with nonzero kdot sits at k = 1/2.
double qfi_thermometric(const Vector& k, const Vector& kdot, const SplitOptions& opts = {});

/// 2^{-n} / sqrt(det V); 1 on pure states.
double purity(const CovarianceMatrix& v);

struct PurityBound {
  double lhs = 0.0;             // even QFI
  double rhs = 0.0;             // 8 / (8n - |V^{-1}|^2) (d ln mu / dt)^2
  double log_purity_rate = 0.0; // d ln mu / dt
  double denominator = 0.0;     // 8n - 2 sum_i k_i^{-2}
};
PurityBound purity_bound_at(const CovarianceMatrix& v, const Matrix& dv,
                            const SplitOptions& opts = {});
PurityBound purity_bound(const CovariancePath& path, double t0, DerivativeMode mode,
                         const SplitOptions& opts = {});

// ---------------------------------------------------------------------------
// Brute-force reference: the full (2n)^2 x (2n)^2 Bures superoperator.

/// 4 (V kron V) - (Omega kron Omega), acting on column-major vec(X).
Matrix bures_superoperator(const Matrix& v);

/// 2 <vec dV, pinv(M_V) vec dV> with an SVD pseudo-inverse.
double qfi_full_oracle(const Matrix& v, const Matrix& dv, double cutoff = 1e-11);
Matrix qfim_full_oracle(const Matrix& v, const std::vector<Matrix>& dv, double cutoff = 1e-11);
double qfi_full_oracle(const CovariancePath& path, double t0, DerivativeMode mode,
                       const SplitOptions& opts = {});

/// Split in an arbitrary even frame (frame_cov commuting with Omega), through
/// the superoperator pseudo-inverse. `cross` is 2 Tr[P+(W) M^+ (P-(W))].
struct FrameSplit {
  double even = 0.0;
  double odd = 0.0;
  double cross = 0.0;
};
FrameSplit qfi_split_in_frame(const Matrix& frame_cov, const Matrix& velocity,
                              double cutoff = 1e-11);

/// Tr[P+(W) M_K^+ (P-(W))] for the Williamson-diagonal state diag(K, K).
double cross_term_check(const Vector& k, const Matrix& w, double cutoff = 1e-11);

}  // namespace gqfi
