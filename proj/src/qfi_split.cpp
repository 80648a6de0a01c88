#include "gqfi/qfi_split.hpp"

#include <Eigen/Cholesky>
#include <Eigen/SVD>
#include <unsupported/Eigen/KroneckerProduct>

#include <cmath>
#include <sstream>
#include <stdexcept>

namespace gqfi {

ParityParts parity_project(const Matrix& w) {
  const Matrix om = omega(w.rows() / 2);
  const Matrix flipped = om * w * om.transpose();
  return {0.5 * (w + flipped), 0.5 * (w - flipped)};
}

Matrix TangentBlocks::even() const { return join_blocks(m, -n, n, m); }

Matrix TangentBlocks::odd() const { return join_blocks(a, b, b, -a); }

TangentBlocks decompose_blocks(const Matrix& w) {
  const Blocks blk = split_blocks(w);
  const Matrix q = 0.5 * (blk.qp + blk.pq.transpose());
  return {0.5 * (blk.qq + blk.pp), 0.5 * (q.transpose() - q), 0.5 * (blk.qq - blk.pp),
          0.5 * (q + q.transpose())};
}

namespace {

void require_spectrum(const Vector& k, const SplitOptions& opts) {
  if (k.size() == 0) throw std::invalid_argument("empty symplectic spectrum");
  if (k.minCoeff() < 0.5 - opts.tol.psd) {
    std::ostringstream os;
    os << "symplectic eigenvalue " << k.minCoeff() << " below 1/2";
    throw Error(ErrorCode::UncertaintyViolated, os.str(), k.minCoeff() - 0.5);
  }
}

double frobenius_sq(const TangentBlocks& b) {
  return 2.0 * (b.m.squaredNorm() + b.n.squaredNorm() + b.a.squaredNorm() + b.b.squaredNorm());
}

}  // namespace

QfimSplit qfim_split_williamson(const Vector& k, const std::vector<TangentBlocks>& blocks,
                                const SplitOptions& opts) {
  require_spectrum(k, opts);
  const Index n = k.size();
  const Index p = static_cast<Index>(blocks.size());
  for (const TangentBlocks& b : blocks) {
    if (b.m.rows() != n || b.a.rows() != n) {
      throw Error(ErrorCode::DimensionMismatch, "tangent blocks do not match the spectrum size");
    }
  }
  std::vector<double> norm_sq(blocks.size());
  for (Index a = 0; a < p; ++a) norm_sq[a] = frobenius_sq(blocks[a]);

  QfimSplit out;
  out.even = Matrix::Zero(p, p);
  out.odd = Matrix::Zero(p, p);
  for (Index i = 0; i < n; ++i) {
    for (Index j = 0; j < n; ++j) {
      const double alpha_minus = 4.0 * k(i) * k(j) - 1.0;
      const double alpha_plus = 4.0 * k(i) * k(j) + 1.0;
      const bool pure_pair = alpha_minus < opts.pure_alpha;
      if (!pure_pair && alpha_minus < opts.near_pure_alpha) out.near_pure = true;
      if (pure_pair) {
        ++out.dropped_even_terms;
        for (Index a = 0; a < p; ++a) {
          const double num = blocks[a].m(i, j) * blocks[a].m(i, j) +
                             blocks[a].n(i, j) * blocks[a].n(i, j);
          if (num > opts.pure_numerator * norm_sq[a]) {
            std::ostringstream os;
            os << "velocity " << a << " has even weight " << num << " on pure pair (" << i << ", "
               << j << "), outside the range of the Bures superoperator";
            throw Error(ErrorCode::InconsistentPureDirection, os.str(), num);
          }
        }
      }
      for (Index a = 0; a < p; ++a) {
        for (Index b = a; b < p; ++b) {
          const double odd_num = blocks[a].a(i, j) * blocks[b].a(i, j) +
                                 blocks[a].b(i, j) * blocks[b].b(i, j);
          out.odd(a, b) += odd_num / alpha_plus;
          if (pure_pair) continue;
          const double even_num = blocks[a].m(i, j) * blocks[b].m(i, j) +
                                  blocks[a].n(i, j) * blocks[b].n(i, j);
          out.even(a, b) += even_num / alpha_minus;
        }
      }
    }
  }
  out.even = 4.0 * out.even.selfadjointView<Eigen::Upper>();
  out.odd = 4.0 * out.odd.selfadjointView<Eigen::Upper>();
  out.total = out.even + out.odd;
  return out;
}

QfiSplit qfi_split_williamson(const Vector& k, const TangentBlocks& blocks,
                              const SplitOptions& opts) {
  const QfimSplit m = qfim_split_williamson(k, {blocks}, opts);
  QfiSplit out;
  out.even = m.even(0, 0);
  out.odd = m.odd(0, 0);
  out.total = out.even + out.odd;
  out.dropped_even_terms = m.dropped_even_terms;
  out.near_pure = m.near_pure;
  return out;
}

VelocityFrame velocity_frame(const CovarianceMatrix& v, const std::vector<Matrix>& dv,
                             const SplitOptions& opts) {
  VelocityFrame frame{williamson(v, opts.tol), {}};
  const Matrix s_inv = frame.williamson.s.inverse().matrix();
  for (const Matrix& d : dv) {
    if (d.rows() != v.matrix().rows() || d.cols() != v.matrix().cols()) {
      throw Error(ErrorCode::DimensionMismatch, "velocity and covariance dimensions differ");
    }
    const double asym = max_abs(d - d.transpose());
    if (asym > 1e-10 * std::max(1.0, max_abs(d))) {
      std::ostringstream os;
      os << "covariance velocity is not symmetric: max asymmetry " << asym;
      throw Error(ErrorCode::NotSymmetric, os.str(), asym);
    }
    frame.sigma_dot.push_back(symmetrize(s_inv * symmetrize(d) * s_inv.transpose()));
  }
  return frame;
}

QfimSplit qfim_split_at(const CovarianceMatrix& v, const std::vector<Matrix>& dv,
                        const SplitOptions& opts) {
  const VelocityFrame frame = velocity_frame(v, dv, opts);
  std::vector<TangentBlocks> blocks;
  blocks.reserve(frame.sigma_dot.size());
  for (const Matrix& s : frame.sigma_dot) blocks.push_back(decompose_blocks(s));
  return qfim_split_williamson(frame.williamson.k, blocks, opts);
}

QfiSplit qfi_split_at(const CovarianceMatrix& v, const Matrix& dv, const SplitOptions& opts) {
  const VelocityFrame frame = velocity_frame(v, {dv}, opts);
  return qfi_split_williamson(frame.williamson.k, decompose_blocks(frame.sigma_dot[0]), opts);
}

Matrix path_velocity(const CovariancePath& path, double t0, DerivativeMode mode,
                     const SplitOptions& opts) {
  if (mode == DerivativeMode::Analytic) {
    if (!path.derivative) {
      throw std::invalid_argument("analytic derivative requested but the path provides none");
    }
    return path.derivative(t0);
  }
  return central_difference(path.value, t0, opts.fd);
}

std::vector<Matrix> family_gradient(const CovarianceFamily& family, const Vector& theta0,
                                    DerivativeMode mode, const SplitOptions& opts) {
  if (theta0.size() != family.parameters) {
    throw Error(ErrorCode::DimensionMismatch, "parameter point has the wrong length");
  }
  if (mode == DerivativeMode::Analytic) {
    if (!family.gradient) {
      throw std::invalid_argument("analytic gradient requested but the family provides none");
    }
    return family.gradient(theta0);
  }
  std::vector<Matrix> grad;
  for (Index a = 0; a < family.parameters; ++a) {
    const MatrixPath slice = [&](double t) {
      Vector th = theta0;
      th(a) = t;
      return family.value(th);
    };
    grad.push_back(central_difference(slice, theta0(a), opts.fd));
  }
  return grad;
}

QfiSplit qfi_split_path(const CovariancePath& path, double t0, DerivativeMode mode,
                        const SplitOptions& opts) {
  const CovarianceMatrix v = validate_covariance(path.value(t0), opts.tol);
  return qfi_split_at(v, path_velocity(path, t0, mode, opts), opts);
}

QfimSplit qfim_split(const CovarianceFamily& family, const Vector& theta0, DerivativeMode mode,
                     const SplitOptions& opts) {
  const CovarianceMatrix v = validate_covariance(family.value(theta0), opts.tol);
  return qfim_split_at(v, family_gradient(family, theta0, mode, opts), opts);
}

double qfi_thermometric(const Vector& k, const Vector& kdot, const SplitOptions& opts) {
  if (k.size() != kdot.size()) {
    throw Error(ErrorCode::DimensionMismatch, "k and kdot lengths differ");
  }
  require_spectrum(k, opts);
  double qfi = 0.0;
  for (Index i = 0; i < k.size(); ++i) {
    if (kdot(i) == 0.0) continue;
    const double denom = 4.0 * k(i) * k(i) - 1.0;
    if (denom < opts.pure_alpha) {
      std::ostringstream os;
      os << "mode " << i << " is pure (k = " << k(i) << ") but kdot = " << kdot(i);
      throw Error(ErrorCode::PureSpectralSingularity, os.str(), kdot(i));
    }
    qfi += 4.0 * kdot(i) * kdot(i) / denom;
  }
  return qfi;
}

double purity(const CovarianceMatrix& v) {
  const Eigen::LLT<Matrix> llt(v.matrix());
  const double log_det = 2.0 * llt.matrixL().toDenseMatrix().diagonal().array().log().sum();
  return std::exp(-static_cast<double>(v.modes()) * std::log(2.0) - 0.5 * log_det);
}

PurityBound purity_bound_at(const CovarianceMatrix& v, const Matrix& dv, const SplitOptions& opts) {
  const VelocityFrame frame = velocity_frame(v, {dv}, opts);
  const Vector& k = frame.williamson.k;
  const double n = static_cast<double>(v.modes());

  PurityBound out;
  out.lhs = qfi_split_williamson(k, decompose_blocks(frame.sigma_dot[0]), opts).even;
  // d ln mu / dt = -(1/2) Tr[V^{-1} dV]
  const Eigen::LLT<Matrix> llt(v.matrix());
  out.log_purity_rate = -0.5 * llt.solve(dv).trace();
  // |V^{-1}|_HS^2 evaluated in the Williamson frame: 2 sum_i k_i^{-2}.
  out.denominator = 8.0 * n - 2.0 * k.array().square().inverse().sum();
  if (out.denominator <= 1e-9 * 8.0 * n) {
    std::ostringstream os;
    os << "8n - |V^{-1}|^2 = " << out.denominator << "; the state is (numerically) pure";
    throw Error(ErrorCode::BoundDenominatorVanishes, os.str(), out.denominator);
  }
  out.rhs = 8.0 / out.denominator * out.log_purity_rate * out.log_purity_rate;
  return out;
}

PurityBound purity_bound(const CovariancePath& path, double t0, DerivativeMode mode,
                         const SplitOptions& opts) {
  const CovarianceMatrix v = validate_covariance(path.value(t0), opts.tol);
  return purity_bound_at(v, path_velocity(path, t0, mode, opts), opts);
}

// ---------------------------------------------------------------------------
// Superoperator reference

namespace {

class PseudoInverse {
 public:
  PseudoInverse(const Matrix& m, double cutoff)
      : svd_(m, Eigen::ComputeThinU | Eigen::ComputeThinV) {
    const Vector& sv = svd_.singularValues();
    const double limit = cutoff * (sv.size() ? sv(0) : 0.0);
    inv_ = Vector::Zero(sv.size());
    for (Index i = 0; i < sv.size(); ++i) {
      if (sv(i) > limit) inv_(i) = 1.0 / sv(i);
    }
  }

  Vector apply(const Vector& x) const {
    return svd_.matrixV() * (inv_.asDiagonal() * (svd_.matrixU().transpose() * x));
  }

 private:
  Eigen::JacobiSVD<Matrix> svd_;
  Vector inv_;
};

Vector vec(const Matrix& m) { return Eigen::Map<const Vector>(m.data(), m.size()); }

}  // namespace

Matrix bures_superoperator(const Matrix& v) {
  const Matrix om = omega(v.rows() / 2);
  return 4.0 * Matrix(Eigen::kroneckerProduct(v, v)) - Matrix(Eigen::kroneckerProduct(om, om));
}

Matrix qfim_full_oracle(const Matrix& v, const std::vector<Matrix>& dv, double cutoff) {
  const PseudoInverse pinv(bures_superoperator(v), cutoff);
  const Index p = static_cast<Index>(dv.size());
  Matrix f(p, p);
  std::vector<Vector> solved;
  for (const Matrix& d : dv) solved.push_back(pinv.apply(vec(d)));
  for (Index a = 0; a < p; ++a) {
    for (Index b = 0; b < p; ++b) f(a, b) = 2.0 * vec(dv[a]).dot(solved[b]);
  }
  return symmetrize(f);
}

double qfi_full_oracle(const Matrix& v, const Matrix& dv, double cutoff) {
  return qfim_full_oracle(v, {dv}, cutoff)(0, 0);
}

double qfi_full_oracle(const CovariancePath& path, double t0, DerivativeMode mode,
                       const SplitOptions& opts) {
  return qfi_full_oracle(path.value(t0), path_velocity(path, t0, mode, opts), opts.oracle_cutoff);
}

FrameSplit qfi_split_in_frame(const Matrix& frame_cov, const Matrix& velocity, double cutoff) {
  const PseudoInverse pinv(bures_superoperator(frame_cov), cutoff);
  const ParityParts parts = parity_project(velocity);
  const Vector e = vec(parts.even);
  const Vector o = vec(parts.odd);
  return {2.0 * e.dot(pinv.apply(e)), 2.0 * o.dot(pinv.apply(o)), 2.0 * e.dot(pinv.apply(o))};
}

double cross_term_check(const Vector& k, const Matrix& w, double cutoff) {
  return 0.5 * qfi_split_in_frame(doubled_diagonal(k), w, cutoff).cross;
}

}  // namespace gqfi
