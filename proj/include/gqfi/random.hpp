// Seeded random symplectic matrices, covariances and covariance paths used by
// the property tests and the oracle acceptance suite.

#pragma once

#include "gqfi/qfi_split.hpp"
#include "gqfi/symplectic.hpp"

#include <cstdint>
#include <random>

namespace gqfi {

using Rng = std::mt19937_64;

Matrix random_gaussian(Rng& rng, Index rows, Index cols);
Matrix random_symmetric(Rng& rng, Index n);
Matrix random_antisymmetric(Rng& rng, Index n);

/// Haar-distributed unitary (QR of a complex Ginibre matrix, phases fixed).
CMatrix random_unitary(Rng& rng, Index n);

SymplecticMatrix random_orthosymplectic(Rng& rng, Index n);

/// Euler decomposition O1 diag(e^r, e^-r) O2 with |r_i| <= max_squeeze.
SymplecticMatrix random_symplectic(Rng& rng, Index n, double max_squeeze = 1.0);

/// Hamiltonian matrix Omega H with H random symmetric, scaled to max entry ~ scale.
Matrix random_hamiltonian(Rng& rng, Index n, double scale = 1.0);

/// Symplectic eigenvalues in [min_k, max_k].
Vector random_spectrum(Rng& rng, Index n, double min_k = 0.55, double max_k = 3.0);

enum class FamilyKind { Mixed, Pure, Degenerate, PartlyPure };

/// V(t) = S0 e^{tA} diag(k(t), k(t)) e^{tA^T} S0^T with k(t) = k0 + t c + t^2 d,
/// evaluated around t0 = 0. The analytic derivative is supplied. Pure modes keep
/// k = 1/2 with zero rate.
struct RandomFamily {
  CovariancePath path;
  double t0 = 0.0;
  Index modes = 0;
  FamilyKind kind = FamilyKind::Mixed;
};
RandomFamily random_family(Rng& rng, Index n, FamilyKind kind, double max_squeeze = 1.0);

/// V(t) = e^{tA} Gamma e^{tA^T} with A passive (antisymmetric Hamiltonian) and
/// Gamma = diag(k, k) conjugated by a random orthosymplectic.
RandomFamily random_passive_family(Rng& rng, Index n);

/// Pure path through the Siegel space: Z(t) = Z0 + t Z1 + t^2 Z2 with Z0 random
/// in the upper half-space and Z1, Z2 complex symmetric.
struct RandomGraphPath {
  CMatrix z0;
  CMatrix z1;  // dZ/dt at t = 0
  CMatrix z2;
  CMatrix at(double t) const { return z0 + t * z1 + t * t * z2; }
};
RandomGraphPath random_graph_path(Rng& rng, Index n);

/// d/dt of the pure covariance of Z(t), for a given Z and dZ.
Matrix pure_covariance_velocity(const CMatrix& z, const CMatrix& dz);

}  // namespace gqfi
