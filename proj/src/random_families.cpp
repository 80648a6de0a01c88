#include "gqfi/random.hpp"

#include <Eigen/QR>
#include <unsupported/Eigen/MatrixFunctions>

#include <cmath>

namespace gqfi {

Matrix random_gaussian(Rng& rng, Index rows, Index cols) {
  std::normal_distribution<double> normal(0.0, 1.0);
  Matrix m(rows, cols);
  for (Index j = 0; j < cols; ++j) {
    for (Index i = 0; i < rows; ++i) m(i, j) = normal(rng);
  }
  return m;
}

Matrix random_symmetric(Rng& rng, Index n) { return symmetrize(random_gaussian(rng, n, n)); }

Matrix random_antisymmetric(Rng& rng, Index n) {
  const Matrix g = random_gaussian(rng, n, n);
  return 0.5 * (g - g.transpose());
}

CMatrix random_unitary(Rng& rng, Index n) {
  const CMatrix g = random_gaussian(rng, n, n).cast<std::complex<double>>() +
                    std::complex<double>(0.0, 1.0) * random_gaussian(rng, n, n);
  Eigen::HouseholderQR<CMatrix> qr(g);
  const CMatrix q = qr.householderQ() * CMatrix::Identity(n, n);
  const CMatrix r = qr.matrixQR().triangularView<Eigen::Upper>();
  CVector phases(n);
  for (Index i = 0; i < n; ++i) {
    const double a = std::abs(r(i, i));
    phases(i) = a > 0.0 ? r(i, i) / a : 1.0;
  }
  return q * phases.asDiagonal();
}

SymplecticMatrix random_orthosymplectic(Rng& rng, Index n) {
  return orthosymplectic_from_unitary(random_unitary(rng, n));
}

SymplecticMatrix random_symplectic(Rng& rng, Index n, double max_squeeze) {
  std::uniform_real_distribution<double> squeeze(-max_squeeze, max_squeeze);
  Vector d(2 * n);
  for (Index i = 0; i < n; ++i) {
    const double r = squeeze(rng);
    d(i) = std::exp(r);
    d(n + i) = std::exp(-r);
  }
  const Matrix o1 = random_orthosymplectic(rng, n).matrix();
  const Matrix o2 = random_orthosymplectic(rng, n).matrix();
  return SymplecticMatrix::validated(o1 * d.asDiagonal() * o2);
}

Matrix random_hamiltonian(Rng& rng, Index n, double scale) {
  const Matrix h = random_symmetric(rng, 2 * n);
  return scale / std::max(1e-12, max_abs(h)) * omega(n) * h;
}

Vector random_spectrum(Rng& rng, Index n, double min_k, double max_k) {
  std::uniform_real_distribution<double> u(min_k, max_k);
  Vector k(n);
  for (Index i = 0; i < n; ++i) k(i) = u(rng);
  return k;
}

namespace {

RandomFamily make_family(Index n, FamilyKind kind, const Matrix& s0, const Matrix& a,
                         const Vector& k0, const Vector& c, const Vector& d) {
  auto spectrum = [k0, c, d](double t) -> Vector {
    return k0 + t * c + t * t * d;
  };
  auto spectrum_rate = [c, d](double t) -> Vector { return c + 2.0 * t * d; };
  RandomFamily f;
  f.modes = n;
  f.kind = kind;
  f.path.value = [s0, a, spectrum](double t) -> Matrix {
    const Matrix s = s0 * Matrix(t * a).exp();
    return s * doubled_diagonal(spectrum(t)) * s.transpose();
  };
  f.path.derivative = [s0, a, spectrum, spectrum_rate](double t) -> Matrix {
    const Matrix e = Matrix(t * a).exp();
    const Matrix s = s0 * e;
    const Matrix ds = s0 * a * e;
    const Matrix k = doubled_diagonal(spectrum(t));
    const Matrix term = ds * k * s.transpose();
    return term + term.transpose() + s * doubled_diagonal(spectrum_rate(t)) * s.transpose();
  };
  return f;
}

}  // namespace

RandomFamily random_family(Rng& rng, Index n, FamilyKind kind, double max_squeeze) {
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> level(0.6, 2.0);
  const Matrix s0 = random_symplectic(rng, n, max_squeeze).matrix();
  const Matrix a = random_hamiltonian(rng, n, 0.5);
  Vector k0 = random_spectrum(rng, n);
  Vector c(n), d(n);
  for (Index i = 0; i < n; ++i) {
    c(i) = 0.5 * normal(rng);
    d(i) = 0.1 * normal(rng);
  }
  switch (kind) {
    case FamilyKind::Mixed:
      break;
    case FamilyKind::Pure:
      k0.setConstant(0.5);
      c.setZero();
      d.setZero();
      break;
    case FamilyKind::Degenerate:
      k0.setConstant(level(rng));
      break;
    case FamilyKind::PartlyPure:
      k0(0) = 0.5;
      c(0) = 0.0;
      d(0) = 0.0;
      break;
  }
  return make_family(n, kind, s0, a, k0, c, d);
}

RandomFamily random_passive_family(Rng& rng, Index n) {
  const Matrix p = random_antisymmetric(rng, n);
  const Matrix q = random_symmetric(rng, n);
  const Matrix a = join_blocks(p, -q, q, p);
  const Matrix o = random_orthosymplectic(rng, n).matrix();
  const Matrix gamma = o * doubled_diagonal(random_spectrum(rng, n)) * o.transpose();
  RandomFamily f;
  f.modes = n;
  f.kind = FamilyKind::Mixed;
  f.path.value = [a, gamma](double t) -> Matrix {
    const Matrix e = Matrix(t * a).exp();
    return e * gamma * e.transpose();
  };
  f.path.derivative = [a, gamma](double t) -> Matrix {
    const Matrix e = Matrix(t * a).exp();
    const Matrix v = e * gamma * e.transpose();
    return a * v + v * a.transpose();
  };
  return f;
}

RandomGraphPath random_graph_path(Rng& rng, Index n) {
  const std::complex<double> i(0.0, 1.0);
  const Matrix b = random_gaussian(rng, n, n);
  const Matrix y = 0.5 * b * b.transpose() + 0.5 * Matrix::Identity(n, n);
  RandomGraphPath p;
  p.z0 = random_symmetric(rng, n).cast<std::complex<double>>() + i * y;
  p.z1 = random_symmetric(rng, n).cast<std::complex<double>>() + i * random_symmetric(rng, n);
  p.z2 = 0.1 * (random_symmetric(rng, n).cast<std::complex<double>>() +
                i * random_symmetric(rng, n));
  return p;
}

Matrix pure_covariance_velocity(const CMatrix& z, const CMatrix& dz) {
  const Matrix x = z.real();
  const Matrix y = z.imag();
  const Matrix dx = dz.real();
  const Matrix dy = dz.imag();
  const Matrix w = y.inverse();
  const Matrix dw = -w * dy * w;
  const Matrix qp = dw * x + w * dx;
  const Matrix pp = dy + dx * w * x + x * dw * x + x * w * dx;
  return 0.5 * join_blocks(dw, qp, qp.transpose(), pp);
}

}  // namespace gqfi
