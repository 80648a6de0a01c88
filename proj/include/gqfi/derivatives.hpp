#pragma once

#include "gqfi/linalg.hpp"

#include <functional>

namespace gqfi {

using MatrixPath = std::function<Matrix(double)>;

struct FiniteDifference {
  double step = 1e-5;       // h = step * max(1, |t0|)
  double agreement = 1e-5;  // allowed relative spread between step sizes
};

/// Central difference at h and h/2, Richardson-extrapolated once. Throws
/// DerivativeUnstable when the two step sizes disagree by more than
/// `agreement` relative to max(|f'|, |f(t0)|).
Matrix central_difference(const MatrixPath& f, double t0, const FiniteDifference& fd = {});

/// Second-order one-sided difference (-3 f(t) + 4 f(t+h) - f(t+2h)) / 2h,
/// with h signed by `direction` (+1 forward, -1 backward).
Matrix one_sided_difference(const MatrixPath& f, double t0, int direction,
                            const FiniteDifference& fd = {});

}  // namespace gqfi
