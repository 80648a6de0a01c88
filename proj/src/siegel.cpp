#include "gqfi/siegel.hpp"

#include <Eigen/SVD>

#include <sstream>

namespace gqfi {

namespace {

void require_symmetric_velocity(const CMatrix& dz, Index n) {
  if (dz.rows() != n || dz.cols() != n) {
    throw Error(ErrorCode::DimensionMismatch, "graph velocity has the wrong dimension");
  }
  const double scale = std::max(1.0, dz.cwiseAbs().maxCoeff());
  const double asym = (dz - dz.transpose()).cwiseAbs().maxCoeff();
  if (asym > 1e-10 * scale) {
    std::ostringstream os;
    os << "graph velocity is not symmetric: max asymmetry " << asym;
    throw Error(ErrorCode::InvalidGraph, os.str(), asym);
  }
}

// Y^{-1/2} dZ Y^{-1/2}; the Siegel metric is its squared Frobenius norm.
CMatrix whitened(const Matrix& y_inv_sqrt, const CMatrix& dz) {
  const CMatrix w = y_inv_sqrt.cast<std::complex<double>>();
  return w * dz * w;
}

}  // namespace

StateRep StateRep::validated(GraphMatrix z, const Matrix& gamma, const Tolerances& tol) {
  const Index n = z.modes();
  if (gamma.rows() != 2 * n || gamma.cols() != 2 * n) {
    throw Error(ErrorCode::InvalidStateRep, "Gamma must be 2n x 2n for an n-mode graph");
  }
  const Matrix w = omega(n);
  const double comm = max_abs(gamma * w - w * gamma);
  if (comm > tol.psd * std::max(1.0, max_abs(gamma))) {
    std::ostringstream os;
    os << "Gamma does not commute with Omega: max |[Gamma, Omega]| = " << comm;
    throw Error(ErrorCode::InvalidStateRep, os.str(), comm);
  }
  try {
    (void)validate_covariance(gamma, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidStateRep, std::string("Gamma is not a covariance: ") + e.what(),
                e.magnitude());
  }
  StateRep rep(std::move(z), symmetrize(gamma));
  try {
    (void)covariance_from_state(rep, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::InvalidStateRep, std::string("S_Z Gamma S_Z^T invalid: ") + e.what(),
                e.magnitude());
  }
  return rep;
}

StateRep StateRep::pure(GraphMatrix z) {
  const Index n = z.modes();
  return StateRep(std::move(z), 0.5 * Matrix::Identity(2 * n, 2 * n));
}

CovarianceMatrix covariance_from_state(const StateRep& rep, const Tolerances& tol) {
  const Matrix s = s_from_graph(rep.graph(), tol).matrix();
  return validate_covariance(s * rep.gamma() * s.transpose(), tol);
}

Matrix pure_covariance(const GraphMatrix& z) {
  const Matrix s = s_from_graph(z).matrix();
  return 0.5 * s * s.transpose();
}

GraphMatrix mobius(const SymplecticMatrix& t, const GraphMatrix& z, const Tolerances& tol) {
  const Index n = z.modes();
  if (t.modes() != n) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic and graph mode counts differ");
  }
  const CMatrix tc = t.matrix().cast<std::complex<double>>();
  const CMatrix zc = z.complex();
  const CMatrix denom = tc.topLeftCorner(n, n) + tc.topRightCorner(n, n) * zc;
  const CMatrix numer = tc.bottomLeftCorner(n, n) + tc.bottomRightCorner(n, n) * zc;

  Eigen::JacobiSVD<CMatrix> svd(denom);
  const auto& sv = svd.singularValues();
  const double cond = sv(n - 1) > 0.0 ? sv(0) / sv(n - 1) : std::numeric_limits<double>::infinity();
  if (!(cond <= tol.condition_cap)) {
    std::ostringstream os;
    os << "A + B Z has condition number " << cond;
    throw Error(ErrorCode::SingularMobiusDenominator, os.str(), cond);
  }
  // Z' = N D^{-1}  <=>  D^T Z'^T = N^T.
  const CMatrix zt = denom.transpose().partialPivLu().solve(numer.transpose());
  return GraphMatrix::from_complex(zt.transpose(), tol);
}

StateRep state_transform(const SymplecticMatrix& t, const StateRep& rep, const Tolerances& tol) {
  const GraphMatrix z_new = mobius(t, rep.graph(), tol);
  const SymplecticMatrix o = s_from_graph(z_new, tol).inverse() * t * s_from_graph(rep.graph(), tol);
  const double res = orthosymplectic_residual(o.matrix());
  const double scale = std::max(1.0, max_abs(t.matrix()) * max_abs(t.matrix()));
  if (res > tol.sympl * scale) {
    std::ostringstream os;
    os << "S_{Z'}^{-1} T S_Z is not orthosymplectic: residual " << res;
    throw Error(ErrorCode::FrameNotOrthogonal, os.str(), res);
  }
  const Matrix gamma = o.matrix() * rep.gamma() * o.matrix().transpose();
  return StateRep::validated(z_new, gamma, tol);
}

double siegel_metric(const GraphMatrix& z, const CMatrix& dz) {
  require_symmetric_velocity(dz, z.modes());
  const Matrix y_inv_sqrt = spd_functions(z.y()).inv_sqrt;
  return whitened(y_inv_sqrt, dz).squaredNorm();
}

double qfi_pure_from_graph(const GraphMatrix& z, const CMatrix& dz_dt) {
  return 0.5 * siegel_metric(z, dz_dt);
}

Matrix qfim_pure_from_graph(const GraphMatrix& z, const std::vector<CMatrix>& dz) {
  const Matrix y_inv_sqrt = spd_functions(z.y()).inv_sqrt;
  std::vector<CMatrix> w;
  w.reserve(dz.size());
  for (const CMatrix& d : dz) {
    require_symmetric_velocity(d, z.modes());
    w.push_back(whitened(y_inv_sqrt, d));
  }
  const Index k = static_cast<Index>(w.size());
  Matrix f(k, k);
  for (Index a = 0; a < k; ++a) {
    for (Index b = 0; b < k; ++b) {
      // Re Tr[W_a W_b^H]
      f(a, b) = 0.5 * (w[a].array() * w[b].array().conjugate()).sum().real();
    }
  }
  return symmetrize(f);
}

}  // namespace gqfi
