#include "gqfi/derivatives.hpp"

#include "gqfi/errors.hpp"

#include <cmath>
#include <sstream>

namespace gqfi {

Matrix central_difference(const MatrixPath& f, double t0, const FiniteDifference& fd) {
  const double h = fd.step * std::max(1.0, std::abs(t0));
  const Matrix coarse = (f(t0 + h) - f(t0 - h)) / (2.0 * h);
  const Matrix fine = (f(t0 + h / 2) - f(t0 - h / 2)) / h;
  const Matrix extrapolated = (4.0 * fine - coarse) / 3.0;

  const double scale = std::max(max_abs(extrapolated), max_abs(f(t0)));
  const double spread = max_abs(fine - coarse);
  if (spread > fd.agreement * scale) {
    std::ostringstream os;
    os << "finite differences at t0 = " << t0 << " disagree by " << spread << " (scale " << scale
       << ")";
    throw Error(ErrorCode::DerivativeUnstable, os.str(), spread / std::max(scale, 1e-300));
  }
  return extrapolated;
}

Matrix one_sided_difference(const MatrixPath& f, double t0, int direction,
                            const FiniteDifference& fd) {
  const double h = (direction >= 0 ? 1.0 : -1.0) * fd.step * std::max(1.0, std::abs(t0));
  return (-3.0 * f(t0) + 4.0 * f(t0 + h) - f(t0 + 2.0 * h)) / (2.0 * h);
}

}  // namespace gqfi
