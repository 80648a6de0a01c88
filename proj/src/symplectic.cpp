#include "gqfi/symplectic.hpp"

#include <Eigen/Eigenvalues>

#include <algorithm>
#include <cmath>
#include <sstream>

namespace gqfi {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotSquareEven: return "NotSquareEven";
    case ErrorCode::NotSymmetric: return "NotSymmetric";
    case ErrorCode::UncertaintyViolated: return "UncertaintyViolated";
    case ErrorCode::NotSymplectic: return "NotSymplectic";
    case ErrorCode::NumericallyDegenerate: return "NumericallyDegenerate";
    case ErrorCode::EigenvalueBelowFloor: return "EigenvalueBelowFloor";
    case ErrorCode::YNotPositiveDefinite: return "YNotPositiveDefinite";
    case ErrorCode::NotUnitary: return "NotUnitary";
    case ErrorCode::InvalidGraph: return "InvalidGraph";
    case ErrorCode::InvalidStateRep: return "InvalidStateRep";
    case ErrorCode::SingularMobiusDenominator: return "SingularMobiusDenominator";
    case ErrorCode::FrameNotOrthogonal: return "FrameNotOrthogonal";
    case ErrorCode::InconsistentPureDirection: return "InconsistentPureDirection";
    case ErrorCode::DerivativeUnstable: return "DerivativeUnstable";
    case ErrorCode::PureSpectralSingularity: return "PureSpectralSingularity";
    case ErrorCode::BoundDenominatorVanishes: return "BoundDenominatorVanishes";
    case ErrorCode::DerivativeSingularAtZero: return "DerivativeSingularAtZero";
    case ErrorCode::GainBelowOne: return "GainBelowOne";
    case ErrorCode::ParameterOutOfDomain: return "ParameterOutOfDomain";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::OutputInvalid: return "OutputInvalid";
    case ErrorCode::ConfigInvalid: return "ConfigInvalid";
  }
  return "Unknown";
}

Matrix omega(Index n) {
  Matrix w = Matrix::Zero(2 * n, 2 * n);
  w.topRightCorner(n, n).setIdentity();
  w.bottomLeftCorner(n, n) = -Matrix::Identity(n, n);
  return w;
}

Blocks split_blocks(const Matrix& m) {
  const Index n = m.rows() / 2;
  return {m.topLeftCorner(n, n), m.topRightCorner(n, n), m.bottomLeftCorner(n, n),
          m.bottomRightCorner(n, n)};
}

Matrix join_blocks(const Matrix& qq, const Matrix& qp, const Matrix& pq, const Matrix& pp) {
  const Index n = qq.rows();
  Matrix m(2 * n, 2 * n);
  m << qq, qp, pq, pp;
  return m;
}

Matrix doubled_diagonal(const Vector& k) {
  const Index n = k.size();
  Vector d(2 * n);
  d << k, k;
  return d.asDiagonal();
}

SpdFunctions spd_functions(const Matrix& m, double floor) {
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(m));
  const Vector& ev = es.eigenvalues();
  const double top = ev.maxCoeff();
  if (!(top > 0.0) || ev.minCoeff() <= floor * top) {
    std::ostringstream os;
    os << "smallest eigenvalue " << ev.minCoeff() << " is below the floor " << floor
       << " x " << top;
    throw Error(ErrorCode::EigenvalueBelowFloor, os.str(), ev.minCoeff());
  }
  const Matrix& q = es.eigenvectors();
  const Vector root = ev.cwiseSqrt();
  SpdFunctions out;
  out.sqrt = q * root.asDiagonal() * q.transpose();
  out.inv_sqrt = q * root.cwiseInverse().asDiagonal() * q.transpose();
  out.inv = q * ev.cwiseInverse().asDiagonal() * q.transpose();
  out.condition = top / ev.minCoeff();
  return out;
}

// ---------------------------------------------------------------------------
// Covariance matrices

CovarianceDiagnostics diagnose_covariance(const Matrix& v) {
  CovarianceDiagnostics d;
  d.asymmetry = max_abs(v - v.transpose());
  const Index n = v.rows() / 2;
  const CMatrix h = symmetrize(v).cast<std::complex<double>>() +
                    std::complex<double>(0.0, 0.5) * omega(n).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  d.min_uncertainty_eig = es.eigenvalues().minCoeff();
  return d;
}

CovarianceMatrix validate_covariance(const Matrix& v, const Tolerances& tol) {
  if (v.rows() != v.cols() || v.rows() == 0 || v.rows() % 2 != 0) {
    std::ostringstream os;
    os << "covariance must be square with even nonzero dimension, got " << v.rows() << "x"
       << v.cols();
    throw Error(ErrorCode::NotSquareEven, os.str());
  }
  if (!v.allFinite()) throw Error(ErrorCode::NotSymmetric, "covariance has non-finite entries");
  const double scale = std::max(1.0, max_abs(v));
  const CovarianceDiagnostics d = diagnose_covariance(v);
  if (d.asymmetry > tol.psd * scale) {
    std::ostringstream os;
    os << "max |V - V^T| = " << d.asymmetry;
    throw Error(ErrorCode::NotSymmetric, os.str(), d.asymmetry);
  }
  if (d.min_uncertainty_eig < -tol.psd * scale) {
    std::ostringstream os;
    os << "V + i Omega/2 has eigenvalue " << d.min_uncertainty_eig;
    throw Error(ErrorCode::UncertaintyViolated, os.str(), d.min_uncertainty_eig);
  }
  return CovarianceMatrix(symmetrize(v));
}

// ---------------------------------------------------------------------------
// Symplectic matrices

double symplectic_residual(const Matrix& s) {
  const Matrix w = omega(s.rows() / 2);
  return max_abs(s.transpose() * w * s - w);
}

double orthosymplectic_residual(const Matrix& o) {
  const Index dim = o.rows();
  return std::max(max_abs(o.transpose() * o - Matrix::Identity(dim, dim)), symplectic_residual(o));
}

SymplecticMatrix SymplecticMatrix::identity(Index n) {
  return SymplecticMatrix(Matrix::Identity(2 * n, 2 * n));
}

SymplecticMatrix SymplecticMatrix::validated(Matrix s, const Tolerances& tol) {
  if (s.rows() != s.cols() || s.rows() == 0 || s.rows() % 2 != 0) {
    throw Error(ErrorCode::NotSquareEven, "symplectic matrix must be square of even dimension");
  }
  const double res = symplectic_residual(s);
  const double scale = std::max(1.0, max_abs(s) * max_abs(s));
  if (!(res <= tol.sympl * scale)) {
    std::ostringstream os;
    os << "max |S^T Omega S - Omega| = " << res;
    throw Error(ErrorCode::NotSymplectic, os.str(), res);
  }
  return SymplecticMatrix(std::move(s));
}

SymplecticMatrix SymplecticMatrix::inverse() const {
  const Matrix w = omega(modes());
  return SymplecticMatrix(w.transpose() * s_.transpose() * w);
}

CovarianceMatrix congruence(const SymplecticMatrix& s, const CovarianceMatrix& v,
                            const Tolerances& tol) {
  if (s.modes() != v.modes()) {
    throw Error(ErrorCode::DimensionMismatch, "symplectic and covariance mode counts differ");
  }
  return validate_covariance(s.matrix() * v.matrix() * s.matrix().transpose(), tol);
}

// ---------------------------------------------------------------------------
// Williamson decomposition

namespace {

// Hermitian i V^{1/2} Omega V^{1/2}; eigenvalues are {+-k_i}.
struct SymplecticSpectrum {
  Matrix sqrt_v;
  Eigen::SelfAdjointEigenSolver<CMatrix> solver;
};

SymplecticSpectrum symplectic_spectrum(const CovarianceMatrix& v, bool vectors) {
  const Index n = v.modes();
  SymplecticSpectrum out;
  out.sqrt_v = spd_functions(v.matrix()).sqrt;
  const Matrix a = out.sqrt_v * omega(n) * out.sqrt_v;
  const CMatrix h = std::complex<double>(0.0, 1.0) * a.cast<std::complex<double>>();
  out.solver.compute(h, vectors ? Eigen::ComputeEigenvectors : Eigen::EigenvaluesOnly);
  return out;
}

// Canonical orthonormal basis of the span of `cols`: Gram-Schmidt on the
// projections P e_0, P e_1, ... of the standard basis, taking indices in
// order and skipping weak ones. Depends only on the subspace, so it fixes the
// U(d) freedom within a degenerate cluster. Each vector is multiplied by i so
// that its leading entry is positive imaginary.
CMatrix canonical_cluster_basis(const CMatrix& cols) {
  const Index dim = cols.rows();
  const Index d = cols.cols();
  const CMatrix proj = cols * cols.adjoint();
  CMatrix basis(dim, d);
  Index found = 0;
  const double threshold = 1e-2 / std::sqrt(static_cast<double>(dim));
  for (Index idx = 0; idx < dim && found < d; ++idx) {
    CVector cand = proj.col(idx);
    for (Index b = 0; b < found; ++b) {
      cand -= basis.col(b) * basis.col(b).dot(cand);
    }
    // Second pass keeps orthogonality at machine precision.
    for (Index b = 0; b < found; ++b) {
      cand -= basis.col(b) * basis.col(b).dot(cand);
    }
    const double norm = cand.norm();
    if (norm < threshold) continue;
    basis.col(found++) = std::complex<double>(0.0, 1.0) * cand / norm;
  }
  if (found < d) {
    throw Error(ErrorCode::NumericallyDegenerate, "could not build a basis for a degenerate cluster");
  }
  return basis;
}

}  // namespace

Vector symplectic_eigenvalues(const CovarianceMatrix& v) {
  const Index n = v.modes();
  const SymplecticSpectrum spec = symplectic_spectrum(v, false);
  return spec.solver.eigenvalues().tail(n);
}

WilliamsonData williamson(const CovarianceMatrix& v, const Tolerances& tol) {
  const Index n = v.modes();
  const SymplecticSpectrum spec = symplectic_spectrum(v, true);
  const Vector k = spec.solver.eigenvalues().tail(n);
  const CMatrix upos = spec.solver.eigenvectors().rightCols(n);

  if (k.minCoeff() < 0.5 - tol.psd * std::max(1.0, k.maxCoeff())) {
    std::ostringstream os;
    os << "symplectic eigenvalue " << k.minCoeff() << " below 1/2";
    throw Error(ErrorCode::UncertaintyViolated, os.str(), k.minCoeff() - 0.5);
  }

  // Clusters of (near-)equal k, chained on consecutive gaps.
  const double gap = tol.degeneracy * k.maxCoeff();
  std::vector<int> multiplicity;
  for (Index i = 0; i < n; ++i) {
    if (i == 0 || k(i) - k(i - 1) >= gap) {
      multiplicity.push_back(1);
    } else {
      ++multiplicity.back();
    }
  }

  // Orthogonal O with O^T A O = [[0, K], [-K, 0]] for A = V^{1/2} Omega V^{1/2}.
  // For an eigenvector u = x + i y of iA with eigenvalue +k, the columns
  // e = sqrt(2) y and f = sqrt(2) x satisfy A e = -k f and A f = k e.
  Matrix o(2 * n, 2 * n);
  Index start = 0;
  for (int size : multiplicity) {
    const CMatrix basis = canonical_cluster_basis(upos.middleCols(start, size));
    for (Index c = 0; c < size; ++c) {
      const Index j = start + c;
      o.col(j) = std::sqrt(2.0) * basis.col(c).imag();
      o.col(n + j) = std::sqrt(2.0) * basis.col(c).real();
    }
    start += size;
  }

  Vector inv_root(2 * n);
  inv_root << k.cwiseSqrt().cwiseInverse(), k.cwiseSqrt().cwiseInverse();
  Matrix s = spec.sqrt_v * o * inv_root.asDiagonal();

  const double scale = std::max(1.0, max_abs(v.matrix()));
  const double recon = max_abs(v.matrix() - s * doubled_diagonal(k) * s.transpose()) / scale;
  const double sres = symplectic_residual(s);
  if (recon > tol.recon || sres > tol.sympl * std::max(1.0, max_abs(s) * max_abs(s))) {
    std::ostringstream os;
    os << "Williamson reconstruction error " << recon << ", symplectic residual " << sres;
    throw Error(ErrorCode::NumericallyDegenerate, os.str(), std::max(recon, sres));
  }
  return WilliamsonData{SymplecticMatrix::validated(std::move(s), tol), k, std::move(multiplicity),
                        recon};
}

// ---------------------------------------------------------------------------
// Graph matrices and the pre-Iwasawa factorization

GraphMatrix GraphMatrix::validated(Matrix x, Matrix y, const Tolerances& tol) {
  if (x.rows() != x.cols() || y.rows() != y.cols() || x.rows() != y.rows() || x.rows() == 0) {
    throw Error(ErrorCode::InvalidGraph, "X and Y must be square matrices of equal size");
  }
  const double scale = std::max({1.0, max_abs(x), max_abs(y)});
  const double asym = std::max(max_abs(x - x.transpose()), max_abs(y - y.transpose()));
  if (!(asym <= tol.psd * scale)) {
    std::ostringstream os;
    os << "graph matrix is not symmetric: max asymmetry " << asym;
    throw Error(ErrorCode::InvalidGraph, os.str(), asym);
  }
  Eigen::SelfAdjointEigenSolver<Matrix> es(symmetrize(y), Eigen::EigenvaluesOnly);
  const double lo = es.eigenvalues().minCoeff();
  if (!(lo > tol.eigen_floor * es.eigenvalues().maxCoeff()) || !(lo > 0.0)) {
    std::ostringstream os;
    os << "Im Z has eigenvalue " << lo;
    throw Error(ErrorCode::YNotPositiveDefinite, os.str(), lo);
  }
  return GraphMatrix(symmetrize(x), symmetrize(y));
}

GraphMatrix GraphMatrix::from_complex(const CMatrix& z, const Tolerances& tol) {
  return validated(z.real(), z.imag(), tol);
}

GraphMatrix GraphMatrix::vacuum(Index n) {
  return GraphMatrix(Matrix::Zero(n, n), Matrix::Identity(n, n));
}

CMatrix GraphMatrix::complex() const {
  CMatrix z(x_.rows(), x_.cols());
  z.real() = x_;
  z.imag() = y_;
  return z;
}

SymplecticMatrix s_from_graph(const GraphMatrix& z, const Tolerances& tol) {
  const Index n = z.modes();
  SpdFunctions f;
  try {
    f = spd_functions(z.y(), tol.eigen_floor);
  } catch (const Error& e) {
    throw Error(ErrorCode::YNotPositiveDefinite, e.what(), e.magnitude());
  }
  Matrix s = Matrix::Zero(2 * n, 2 * n);
  s.topLeftCorner(n, n) = f.inv_sqrt;
  s.bottomLeftCorner(n, n) = z.x() * f.inv_sqrt;
  s.bottomRightCorner(n, n) = f.sqrt;
  return SymplecticMatrix::validated(std::move(s), tol);
}

PreIwasawaData pre_iwasawa(const SymplecticMatrix& s, const Tolerances& tol) {
  const Index n = s.modes();
  const Matrix& m = s.matrix();
  // S S^T = S_Z S_Z^T = [[Y^{-1}, Y^{-1} X], [X Y^{-1}, Y + X Y^{-1} X]].
  const Matrix top = m.topRows(n);
  const Matrix bottom = m.bottomRows(n);
  const SpdFunctions f = spd_functions(top * top.transpose(), tol.eigen_floor);
  const Matrix y = symmetrize(f.inv);
  const Matrix x = symmetrize(bottom * top.transpose() * y);

  // S_Z^{-1} = [[Y^{1/2}, 0], [-Y^{-1/2} X, Y^{-1/2}]], with Y^{1/2} = P^{-1/2}.
  Matrix sz_inv = Matrix::Zero(2 * n, 2 * n);
  sz_inv.topLeftCorner(n, n) = f.inv_sqrt;
  sz_inv.bottomLeftCorner(n, n) = -f.sqrt * x;
  sz_inv.bottomRightCorner(n, n) = f.sqrt;
  Matrix o = sz_inv * m;

  const double ores = orthosymplectic_residual(o);
  if (ores > tol.sympl) {
    std::ostringstream os;
    os << "pre-Iwasawa O factor is not orthosymplectic: residual " << ores;
    throw Error(ErrorCode::NumericallyDegenerate, os.str(), ores);
  }
  PreIwasawaData out{x, y, SymplecticMatrix::validated(std::move(o), tol), f.condition, false};
  out.ill_conditioned = f.condition > tol.condition_cap;
  return out;
}

// ---------------------------------------------------------------------------
// U(n) <-> O_sp

SymplecticMatrix orthosymplectic_from_unitary(const CMatrix& u, const Tolerances& tol) {
  if (u.rows() != u.cols() || u.rows() == 0) {
    throw Error(ErrorCode::NotUnitary, "unitary must be square and nonempty");
  }
  const Index n = u.rows();
  const double res = (u.adjoint() * u - CMatrix::Identity(n, n)).cwiseAbs().maxCoeff();
  if (!(res <= tol.sympl)) {
    std::ostringstream os;
    os << "max |U^dagger U - I| = " << res;
    throw Error(ErrorCode::NotUnitary, os.str(), res);
  }
  Matrix o = join_blocks(u.real(), -u.imag(), u.imag(), u.real());
  return SymplecticMatrix::validated(std::move(o), tol);
}

CMatrix unitary_from_orthosymplectic(const SymplecticMatrix& o, const Tolerances& tol) {
  const double res = orthosymplectic_residual(o.matrix());
  if (res > tol.sympl) {
    std::ostringstream os;
    os << "matrix is not orthogonal symplectic: residual " << res;
    throw Error(ErrorCode::NotSymplectic, os.str(), res);
  }
  const Blocks b = split_blocks(o.matrix());
  CMatrix u(b.qq.rows(), b.qq.cols());
  u.real() = b.qq;
  u.imag() = b.pq;
  return u;
}

}  // namespace gqfi
