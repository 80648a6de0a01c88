// Pure-state graphical calculus on the Siegel upper half-space, and the
// (Z, Gamma) labelling of mixed states: V = S_Z Gamma S_Z^T with Gamma
// commuting with Omega.

#pragma once

#include "gqfi/symplectic.hpp"

#include <vector>

namespace gqfi {

class StateRep {
 public:
  /// Throws InvalidStateRep if [Gamma, Omega] != 0 or S_Z Gamma S_Z^T is not a
  /// valid covariance.
  static StateRep validated(GraphMatrix z, const Matrix& gamma, const Tolerances& tol = {});
  /// (Z, I/2).
  static StateRep pure(GraphMatrix z);

  const GraphMatrix& graph() const { return z_; }
  const Matrix& gamma() const { return gamma_; }
  Index modes() const { return z_.modes(); }

 private:
  StateRep(GraphMatrix z, Matrix gamma) : z_(std::move(z)), gamma_(std::move(gamma)) {}
  GraphMatrix z_;
  Matrix gamma_;
};

CovarianceMatrix covariance_from_state(const StateRep& rep, const Tolerances& tol = {});

/// Covariance of the pure state with graph Z: S_Z S_Z^T / 2.
Matrix pure_covariance(const GraphMatrix& z);

/// Z' = (C + D Z)(A + B Z)^{-1} for T = [[A, B], [C, D]].
GraphMatrix mobius(const SymplecticMatrix& t, const GraphMatrix& z, const Tolerances& tol = {});

/// (Z, Gamma) -> (Z', O Gamma O^T) with O = S_{Z'}^{-1} T S_Z in O_sp.
StateRep state_transform(const SymplecticMatrix& t, const StateRep& rep, const Tolerances& tol = {});

/// Tr[Y^{-1} dZ Y^{-1} dZ*], the Siegel line element.
double siegel_metric(const GraphMatrix& z, const CMatrix& dz);

/// QFI of a pure-state path from its graph velocity: half the Siegel metric.
double qfi_pure_from_graph(const GraphMatrix& z, const CMatrix& dz_dt);

/// F_ab = (1/2) Re Tr[Y^{-1} dZ_a Y^{-1} dZ_b*], symmetrized.
Matrix qfim_pure_from_graph(const GraphMatrix& z, const std::vector<CMatrix>& dz);

}  // namespace gqfi
