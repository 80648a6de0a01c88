// Parameterized Gaussian unitaries and channels acting on covariance
// matrices, and pipelines composed from them.
//
// A unitary stage acts by congruence V -> S V S^T; a channel stage by
// V -> X V X^T + Y. Pipelines bind stage parameters to entries of a
// parameter vector and return V(theta) together with dV/dtheta_a.

#pragma once

#include "gqfi/derivatives.hpp"
#include "gqfi/qfi_split.hpp"
#include "gqfi/symplectic.hpp"

#include <functional>
#include <string>
#include <variant>
#include <vector>

namespace gqfi {

struct GaussianUnitaryFamily {
  std::string name;
  Index modes = 0;
  bool passive = false;
  std::function<Matrix(double)> matrix;      // S(t)
  std::function<Matrix(double)> derivative;  // dS/dt

  SymplecticMatrix at(double t, const Tolerances& tol = {}) const;
};

/// diag(e^{r}, e^{-r}) on (q_mode, p_mode), so the vacuum goes to
/// diag(e^{2r}, e^{-2r})/2 on that mode.
GaussianUnitaryFamily squeezer(Index n, Index mode);

/// exp(t G / 2) with G = [[R, 0], [0, R]], R the 2x2 rotation generator on
/// modes (a, b).
GaussianUnitaryFamily beam_splitter(Index n, Index a, Index b);

/// [[cos t, sin t], [-sin t, cos t]] on (q_mode, p_mode).
GaussianUnitaryFamily phase_rotation(Index n, Index mode);

/// Two-mode squeezer on modes (a, b) with squeezing parameter r.
GaussianUnitaryFamily two_mode_squeezer(Index n, Index a, Index b);

struct ChannelMatrices {
  Matrix x;
  Matrix y;
};

struct GaussianChannelFamily {
  std::string name;
  Index modes = 0;
  double lower = 0.0;  // closed parameter domain
  double upper = 0.0;
  std::function<ChannelMatrices(double)> matrices;
  std::function<ChannelMatrices(double)> derivative;

  /// Throws ParameterOutOfDomain (or GainBelowOne for amplifiers) outside
  /// [lower, upper].
  ChannelMatrices at(double t) const;
  bool in_domain(double t) const { return t >= lower && t <= upper; }
};

/// Smallest eigenvalue of Y + i Omega/2 - i X Omega X^T / 2.
double complete_positivity_margin(const ChannelMatrices& c);

/// Pure loss with transmissivity eta in [0, 1] on `targets` (all modes when
/// empty). The derivative throws DerivativeSingularAtZero at eta = 0.
GaussianChannelFamily loss_channel(Index n, std::vector<Index> targets = {});

/// Phase-insensitive amplifier with gain g >= 1 on `targets` (all modes when
/// empty).
GaussianChannelFamily amplifier_channel(Index n, std::vector<Index> targets = {});

CovarianceMatrix apply(const SymplecticMatrix& s, const CovarianceMatrix& v,
                       const Tolerances& tol = {});
CovarianceMatrix apply(const ChannelMatrices& c, const CovarianceMatrix& v,
                       const Tolerances& tol = {});

/// Stage parameter as an affine function of one entry of theta, or a fixed
/// value when `parameter` is negative.
struct Binding {
  int parameter = -1;
  double value = 0.0;
  double scale = 1.0;
  double offset = 0.0;

  static Binding fixed(double v) { return {-1, v, 1.0, 0.0}; }
  static Binding param(int index, double scale = 1.0, double offset = 0.0) {
    return {index, 0.0, scale, offset};
  }
  double at(const Vector& theta) const;
  /// d(stage parameter)/d(theta_a).
  double rate(int a) const { return a == parameter ? scale : 0.0; }
};

struct Stage {
  std::variant<GaussianUnitaryFamily, GaussianChannelFamily> op;
  Binding binding;
};

struct ScenarioPath {
  CovarianceFamily initial;  // its `parameters` fixes the length of theta
  std::vector<Stage> stages;

  Index parameters() const { return initial.parameters; }
};

/// Initial state independent of theta.
CovarianceFamily constant_initial(const Matrix& v, Index parameters);

struct PathPoint {
  CovarianceMatrix value;
  std::vector<Matrix> gradient;
  bool analytic = true;  // false when any component fell back to finite differences
};

/// End-to-end V(theta) and its gradient. In Analytic mode the product rule is
/// used stage by stage; a parameter whose analytic derivative is unavailable
/// falls back to finite differences on the composite. Finite differences are
/// central in the interior and one-sided where a bound stage sits within one
/// stencil width of its domain boundary.
PathPoint path_covariance(const ScenarioPath& path, const Vector& theta,
                          DerivativeMode mode = DerivativeMode::Analytic,
                          const FiniteDifference& fd = {}, const Tolerances& tol = {});

/// V(theta) alone.
CovarianceMatrix path_value(const ScenarioPath& path, const Vector& theta,
                            const Tolerances& tol = {});

/// Stage kinds accepted by make_stage.
const std::vector<std::string>& stage_kinds();

/// Registry lookup. `targets` lists the mode indices the stage acts on: one
/// for squeezer and phase_rotation, two for beam_splitter and
/// two_mode_squeezer, any number (empty = all) for loss and amplifier.
std::variant<GaussianUnitaryFamily, GaussianChannelFamily> make_stage(
    const std::string& kind, Index n, const std::vector<Index>& targets);

}  // namespace gqfi
