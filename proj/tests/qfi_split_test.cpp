#include "gqfi/qfi_split.hpp"
#include "gqfi/random.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gqfi;

namespace {

Matrix diag2(double x, double y) {
  Matrix m = Matrix::Zero(2, 2);
  m(0, 0) = x;
  m(1, 1) = y;
  return m;
}

Matrix rot(double th) {
  Matrix r(2, 2);
  r << std::cos(th), std::sin(th), -std::sin(th), std::cos(th);
  return r;
}

// Single-mode diagonal V = diag(x, y) with velocity diag(dx, dy): the
// Williamson frame is diag(s, 1/s) with s^2 = sqrt(x/y), which gives the
// split in closed form.
struct DiagonalSplit {
  double even, odd;
};
DiagonalSplit diagonal_split(double x, double y, double dx, double dy) {
  const double k = std::sqrt(x * y);
  const double p = dx * std::sqrt(y / x);
  const double r = dy * std::sqrt(x / y);
  const double m = 0.5 * (p + r), a = 0.5 * (p - r);
  return {4 * m * m / (4 * k * k - 1), 4 * a * a / (4 * k * k + 1)};
}

// Squeezed vacuum after pure loss of transmissivity eta.
Matrix lossy_squeezed(double eta, double r) {
  return diag2(eta * std::exp(2 * r) / 2 + (1 - eta) / 2, eta * std::exp(-2 * r) / 2 + (1 - eta) / 2);
}
Matrix lossy_squeezed_deta(double r) {
  return diag2(std::exp(2 * r) / 2 - 0.5, std::exp(-2 * r) / 2 - 0.5);
}

double rel(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected an Error";
  return ErrorCode::ConfigInvalid;
}

}  // namespace

TEST(ParityProject, Examples) {
  const ParityParts id = parity_project(Matrix::Identity(2, 2));
  EXPECT_LT(max_abs(id.even - Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(id.odd), 1e-15);
  const ParityParts sq = parity_project(diag2(1, -1));
  EXPECT_LT(max_abs(sq.even), 1e-15);
  EXPECT_LT(max_abs(sq.odd - diag2(1, -1)), 1e-15);
}

TEST(ParityProject, ProjectorProperties) {
  Rng rng(41);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 4;
    const Matrix w = random_symmetric(rng, 2 * n);
    const Matrix o = omega(n);
    const ParityParts p = parity_project(w);
    EXPECT_LT(max_abs(p.even + p.odd - w), 1e-14);
    EXPECT_LT(max_abs(p.even * o - o * p.even), 1e-13);
    EXPECT_LT(max_abs(p.odd * o + o * p.odd), 1e-13);
    EXPECT_LT(max_abs(parity_project(p.even).odd), 1e-14);
    EXPECT_LT(max_abs(parity_project(p.odd).even), 1e-14);
    EXPECT_NEAR((p.even.transpose() * p.odd).trace(), 0.0, 1e-12);
  }
}

TEST(DecomposeBlocks, MatchesParityAndReassembles) {
  Rng rng(42);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 4;
    const Matrix w = random_symmetric(rng, 2 * n);
    const TangentBlocks b = decompose_blocks(w);
    const ParityParts p = parity_project(w);
    EXPECT_LT(max_abs(b.reassemble() - w), 1e-14);
    EXPECT_LT(max_abs(b.even() - p.even), 1e-14);
    EXPECT_LT(max_abs(b.odd() - p.odd), 1e-14);
    EXPECT_LT(max_abs(b.m - b.m.transpose()), 1e-15);
    EXPECT_LT(max_abs(b.n + b.n.transpose()), 1e-15);
    EXPECT_LT(max_abs(b.a - b.a.transpose()), 1e-15);
    EXPECT_LT(max_abs(b.b - b.b.transpose()), 1e-15);
  }
}

TEST(DecomposeBlocks, IdentityIsPureM) {
  const TangentBlocks b = decompose_blocks(Matrix::Identity(4, 4));
  EXPECT_LT(max_abs(b.m - Matrix::Identity(2, 2)), 1e-15);
  EXPECT_LT(max_abs(b.n) + max_abs(b.a) + max_abs(b.b), 1e-15);
}

TEST(SplitWilliamson, ZeroVelocity) {
  Vector k(2);
  k << 0.8, 1.5;
  const QfiSplit s = qfi_split_williamson(k, decompose_blocks(Matrix::Zero(4, 4)));
  EXPECT_EQ(s.even, 0.0);
  EXPECT_EQ(s.odd, 0.0);
}

TEST(SplitWilliamson, BlockFormulaEntryByEntry) {
  Vector k(2);
  k << 0.75, 1.5;
  TangentBlocks b;
  b.m = Matrix::Zero(2, 2);
  b.n = Matrix::Zero(2, 2);
  b.a = Matrix::Zero(2, 2);
  b.b = Matrix::Zero(2, 2);
  b.m(0, 1) = b.m(1, 0) = 0.3;
  b.n(0, 1) = 0.2;
  b.n(1, 0) = -0.2;
  b.a(0, 0) = 0.5;
  b.b(0, 1) = b.b(1, 0) = -0.4;
  const QfiSplit s = qfi_split_williamson(k, b);
  const double c = 4 * 0.75 * 1.5;
  EXPECT_NEAR(s.even, 4 * 2 * (0.09 + 0.04) / (c - 1), 1e-14);
  EXPECT_NEAR(s.odd, 4 * (0.25 / (4 * 0.5625 + 1) + 2 * 0.16 / (c + 1)), 1e-14);
  EXPECT_NEAR(s.total, s.even + s.odd, 1e-15);
}

TEST(SplitAt, SqueezingOfVacuumIsOddOnly) {
  const QfiSplit s = qfi_split_at(validate_covariance(0.5 * Matrix::Identity(2, 2)), diag2(1, -1));
  EXPECT_NEAR(s.even, 0.0, 1e-15);
  EXPECT_NEAR(s.odd, 2.0, 1e-13);
  EXPECT_EQ(s.dropped_even_terms, 1);
  EXPECT_FALSE(s.near_pure);
}

TEST(SplitAt, EvenVelocityOnPureStateIsInconsistent) {
  EXPECT_EQ(code_of([] {
              qfi_split_at(validate_covariance(0.5 * Matrix::Identity(2, 2)), Matrix::Identity(2, 2));
            }),
            ErrorCode::InconsistentPureDirection);
}

TEST(SplitAt, NearPureFlag) {
  const double k = 0.5 + 1e-8;
  const QfiSplit s = qfi_split_at(validate_covariance(k * Matrix::Identity(2, 2)), Matrix::Identity(2, 2));
  EXPECT_TRUE(s.near_pure);
  EXPECT_EQ(s.dropped_even_terms, 0);
  EXPECT_NEAR(s.even, 4.0 / (4 * k * k - 1), 1e-6 * s.even);
}

TEST(SplitAt, RejectsAsymmetricVelocity) {
  Matrix dv = Matrix::Zero(2, 2);
  dv(0, 1) = 1.0;
  EXPECT_EQ(code_of([&] { qfi_split_at(validate_covariance(Matrix::Identity(2, 2)), dv); }),
            ErrorCode::NotSymmetric);
}

TEST(SplitAt, LossyDiagonalClosedForm) {
  for (double r : {0.25, 0.5, 1.0}) {
    for (double eta : {0.05, 0.3, 0.5, 0.8, 0.95}) {
      const Matrix v = lossy_squeezed(eta, r), dv = lossy_squeezed_deta(r);
      const DiagonalSplit want = diagonal_split(v(0, 0), v(1, 1), dv(0, 0), dv(1, 1));
      const QfiSplit got = qfi_split_at(validate_covariance(v), dv);
      EXPECT_LT(rel(got.even, want.even), 1e-10) << r << " " << eta;
      EXPECT_LT(rel(got.odd, want.odd), 1e-10) << r << " " << eta;
      EXPECT_LT(rel(got.total, qfi_full_oracle(v, dv)), 1e-10);
    }
  }
}

TEST(SplitAt, BalancedLossIsAllOdd) {
  const Matrix v = lossy_squeezed(0.5, 1.0), dv = lossy_squeezed_deta(1.0);
  const QfiSplit s = qfi_split_at(validate_covariance(v), dv);
  EXPECT_NEAR(s.even, 0.0, 1e-14);
  EXPECT_GT(s.odd, 0.0);
}

TEST(SplitPath, ThermalLadder) {
  const CovariancePath path{[](double t) { return (0.5 + t) * Matrix::Identity(4, 4); },
                            [](double) { return Matrix(Matrix::Identity(4, 4)); }};
  for (double t : {0.1, 0.5, 2.0}) {
    const double k = 0.5 + t;
    for (DerivativeMode mode : {DerivativeMode::Analytic, DerivativeMode::FiniteDifference}) {
      const QfiSplit s = qfi_split_path(path, t, mode);
      EXPECT_LT(rel(s.even, 2 * 4 / (4 * k * k - 1)), 1e-8);
      EXPECT_NEAR(s.odd, 0.0, 1e-12);
    }
  }
}

TEST(SplitPath, SqueezedPhaseRotation) {
  for (double r : {0.1, 0.5, 1.0}) {
    const CovariancePath path{[r](double th) {
                                return Matrix(rot(th) * diag2(std::exp(2 * r), std::exp(-2 * r)) *
                                              rot(th).transpose() / 2);
                              },
                              {}};
    const QfiSplit s = qfi_split_path(path, 0.3, DerivativeMode::FiniteDifference);
    const double want = 2 * std::pow(std::sinh(2 * r), 2);
    EXPECT_LT(rel(s.total, want), 1e-8);
    EXPECT_NEAR(s.even, 0.0, 1e-10);
  }
}

TEST(SplitPath, AnalyticRequiresDerivative) {
  const CovariancePath path{[](double) { return Matrix(Matrix::Identity(2, 2)); }, {}};
  EXPECT_THROW(qfi_split_path(path, 0.0, DerivativeMode::Analytic), std::exception);
}

TEST(SplitPath, UnstableFiniteDifference) {
  const CovariancePath path{
      [](double t) { return Matrix((1.0 + t + 1e-3 * std::sin(1e7 * t)) * Matrix::Identity(2, 2)); },
      {}};
  EXPECT_EQ(code_of([&] { qfi_split_path(path, 0.0, DerivativeMode::FiniteDifference); }),
            ErrorCode::DerivativeUnstable);
}

TEST(SplitOracle, RandomFamiliesOfEveryKind) {
  Rng rng(43);
  for (FamilyKind kind :
       {FamilyKind::Mixed, FamilyKind::Degenerate, FamilyKind::PartlyPure, FamilyKind::Pure}) {
    for (int trial = 0; trial < 40; ++trial) {
      const Index n = 1 + trial % 4;
      const RandomFamily f = random_family(rng, n, kind);
      const Matrix v = f.path.value(f.t0);
      const Matrix dv = f.path.derivative(f.t0);
      const QfiSplit s = qfi_split_at(validate_covariance(v), dv);
      const double oracle = qfi_full_oracle(v, dv);
      EXPECT_LT(rel(s.total, oracle), 1e-8) << static_cast<int>(kind) << " " << trial;
      EXPECT_GE(s.even, 0.0);
      EXPECT_GE(s.odd, 0.0);
      EXPECT_NEAR(s.total, s.even + s.odd, 1e-12 * std::max(1.0, s.total));
    }
  }
}

TEST(SplitOracle, AnalyticAndFiniteDifferenceAgree) {
  Rng rng(44);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomFamily f = random_family(rng, 1 + trial % 3, FamilyKind::Mixed);
    const QfiSplit a = qfi_split_path(f.path, f.t0, DerivativeMode::Analytic);
    const QfiSplit d = qfi_split_path(f.path, f.t0, DerivativeMode::FiniteDifference);
    EXPECT_LT(rel(a.even, d.even), 1e-6);
    EXPECT_LT(rel(a.odd, d.odd), 1e-6);
  }
}

TEST(SplitOracle, InvariantUnderSymplecticReframing) {
  Rng rng(45);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 3;
    const RandomFamily f = random_family(rng, n, FamilyKind::Mixed);
    const Matrix t = random_symplectic(rng, n).matrix();
    const Matrix v = f.path.value(0.0), dv = f.path.derivative(0.0);
    const QfiSplit a = qfi_split_at(validate_covariance(v), dv);
    const QfiSplit b =
        qfi_split_at(validate_covariance(t * v * t.transpose()), t * dv * t.transpose());
    EXPECT_LT(rel(a.even, b.even), 1e-8);
    EXPECT_LT(rel(a.odd, b.odd), 1e-8);
  }
}

TEST(FrameSplit, CrossTermVanishesInWilliamsonFrame) {
  Rng rng(46);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 3;
    const Vector k = random_spectrum(rng, n);
    const Matrix w = random_symmetric(rng, 2 * n);
    EXPECT_NEAR(cross_term_check(k, w), 0.0, 1e-10);
    const FrameSplit fs = qfi_split_in_frame(doubled_diagonal(k), w);
    const QfiSplit s = qfi_split_williamson(k, decompose_blocks(w));
    EXPECT_LT(rel(fs.even, s.even), 1e-9);
    EXPECT_LT(rel(fs.odd, s.odd), 1e-9);
    EXPECT_NEAR(fs.cross, 0.0, 1e-9);
  }
}

TEST(Oracle, SuperoperatorShape) {
  const Matrix m = bures_superoperator(0.5 * Matrix::Identity(2, 2));
  EXPECT_EQ(m.rows(), 4);
  EXPECT_LT(max_abs(m - m.transpose()), 1e-15);
  EXPECT_NEAR(qfi_full_oracle(Matrix::Identity(2, 2), Matrix::Zero(2, 2)), 0.0, 0.0);
}

TEST(Qfim, SingleParameterReducesToScalar) {
  Rng rng(47);
  const RandomFamily f = random_family(rng, 2, FamilyKind::Mixed);
  const CovarianceMatrix v = validate_covariance(f.path.value(0.0));
  const Matrix dv = f.path.derivative(0.0);
  const QfimSplit m = qfim_split_at(v, {dv});
  const QfiSplit s = qfi_split_at(v, dv);
  EXPECT_NEAR(m.even(0, 0), s.even, 1e-12 * std::max(1.0, s.even));
  EXPECT_NEAR(m.odd(0, 0), s.odd, 1e-12 * std::max(1.0, s.odd));
}

TEST(Qfim, DuplicatedParameterIsRankOne) {
  Rng rng(48);
  const RandomFamily f = random_family(rng, 2, FamilyKind::Mixed);
  const Matrix dv = f.path.derivative(0.0);
  const QfimSplit m = qfim_split_at(validate_covariance(f.path.value(0.0)), {dv, dv});
  EXPECT_NEAR(m.total.determinant(), 0.0, 1e-10 * m.total.squaredNorm());
  EXPECT_NEAR(m.total(0, 1), m.total(0, 0), 1e-12 * m.total(0, 0));
}

TEST(Qfim, SymmetricPsdAndMatchesOracle) {
  Rng rng(49);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 3;
    const RandomFamily f = random_family(rng, n, FamilyKind::Mixed);
    const RandomFamily g = random_family(rng, n, FamilyKind::Mixed);
    const Matrix v = f.path.value(0.0);
    const std::vector<Matrix> dv = {f.path.derivative(0.0), random_symmetric(rng, 2 * n),
                                    g.path.derivative(0.0)};
    const QfimSplit m = qfim_split_at(validate_covariance(v), dv);
    EXPECT_LT(max_abs(m.even - m.even.transpose()), 1e-14);
    EXPECT_LT(max_abs(m.odd - m.odd.transpose()), 1e-14);
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(m.even).eigenvalues().minCoeff(),
              -1e-10 * std::max(1.0, max_abs(m.even)));
    EXPECT_GT(Eigen::SelfAdjointEigenSolver<Matrix>(m.odd).eigenvalues().minCoeff(),
              -1e-10 * std::max(1.0, max_abs(m.odd)));
    EXPECT_LT(rel_max_diff(qfim_full_oracle(v, dv), m.total), 1e-8);
  }
}

TEST(Qfim, LossAndPhaseSeparateBySector) {
  const double r = 0.5, eta = 0.3;
  const Matrix v = lossy_squeezed(eta, r);
  Matrix gen(2, 2);
  gen << 0, 1, -1, 0;
  const Matrix dtheta = gen * v + v * gen.transpose();
  const QfimSplit m = qfim_split_at(validate_covariance(v), {lossy_squeezed_deta(r), dtheta});
  EXPECT_NEAR(m.even(1, 1), 0.0, 1e-12);
  EXPECT_NEAR(m.even(0, 1), 0.0, 1e-12);
  const DiagonalSplit want = diagonal_split(v(0, 0), v(1, 1), lossy_squeezed_deta(r)(0, 0),
                                            lossy_squeezed_deta(r)(1, 1));
  EXPECT_LT(rel(m.even(0, 0), want.even), 1e-10);
  EXPECT_LT(rel(m.total(1, 1), qfi_full_oracle(v, dtheta)), 1e-10);
}

TEST(Thermometric, SpectralFormula) {
  Vector k(1), kdot(1);
  k << 1.0;
  kdot << 1.0;
  EXPECT_NEAR(qfi_thermometric(k, kdot), 4.0 / 3.0, 1e-14);
  kdot << 0.0;
  EXPECT_EQ(qfi_thermometric(k, kdot), 0.0);
}

TEST(Thermometric, BathTemperature) {
  const double w = 1.0;
  for (double temp : {0.3, 1.0, 2.5}) {
    const double x = w / (2 * temp);
    Vector k(1), kdot(1);
    k << 0.5 / std::tanh(x);
    kdot << w / (4 * temp * temp * std::sinh(x) * std::sinh(x));
    const double want = w * w / (4 * std::pow(temp, 4) * std::sinh(x) * std::sinh(x));
    EXPECT_LT(rel(qfi_thermometric(k, kdot), want), 1e-12);
    const CovariancePath path{[w](double t) {
                                return Matrix(0.5 / std::tanh(w / (2 * t)) * Matrix::Identity(2, 2));
                              },
                              {}};
    EXPECT_LT(rel(qfi_full_oracle(path, temp, DerivativeMode::FiniteDifference), want), 1e-7);
  }
  Vector k(1), kdot(1);
  k << 0.5 / std::tanh(0.5);
  kdot << 1.0 / (4 * std::sinh(0.5) * std::sinh(0.5));
  EXPECT_NEAR(qfi_thermometric(k, kdot), 0.920674, 5e-7);
}

TEST(Thermometric, PureModeWithRateIsSingular) {
  Vector k(2), kdot(2);
  k << 0.5, 1.0;
  kdot << 0.0, 1.0;
  EXPECT_NO_THROW(qfi_thermometric(k, kdot));
  kdot << 1.0, 1.0;
  EXPECT_EQ(code_of([&] { qfi_thermometric(k, kdot); }), ErrorCode::PureSpectralSingularity);
}

TEST(Purity, Examples) {
  EXPECT_NEAR(purity(validate_covariance(0.5 * Matrix::Identity(4, 4))), 1.0, 1e-14);
  EXPECT_NEAR(purity(validate_covariance(Matrix::Identity(2, 2))), 0.5, 1e-14);
  EXPECT_NEAR(purity(validate_covariance(lossy_squeezed(1.0, 1.3))), 1.0, 1e-12);
  Vector k(2);
  k << 1.0, 2.0;
  EXPECT_NEAR(purity(validate_covariance(doubled_diagonal(k))), 0.125, 1e-14);
}

TEST(PurityBound, SingleModeThermalEquality) {
  const PurityBound b = purity_bound_at(validate_covariance(Matrix::Identity(2, 2)), Matrix::Identity(2, 2));
  EXPECT_NEAR(b.lhs, 4.0 / 3.0, 1e-13);
  EXPECT_NEAR(b.rhs, 4.0 / 3.0, 1e-13);
  EXPECT_NEAR(b.log_purity_rate, -1.0, 1e-14);
  EXPECT_NEAR(b.denominator, 6.0, 1e-14);
}

TEST(PurityBound, HoldsOnRandomFamilies) {
  Rng rng(50);
  for (int trial = 0; trial < 300; ++trial) {
    const Index n = 1 + trial % 4;
    const RandomFamily f = random_family(rng, n, trial % 2 ? FamilyKind::Mixed : FamilyKind::Degenerate);
    const PurityBound b = purity_bound(f.path, f.t0, DerivativeMode::Analytic);
    EXPECT_GE(b.lhs, b.rhs - 1e-9 * std::max(1.0, b.lhs)) << trial;
    const CovariancePath lmu{
        [&](double t) {
          Matrix m(1, 1);
          m(0, 0) = std::log(purity(validate_covariance(f.path.value(t))));
          return m;
        },
        {}};
    EXPECT_NEAR(b.log_purity_rate, central_difference(lmu.value, f.t0)(0, 0),
                1e-6 * std::max(1.0, std::abs(b.log_purity_rate)));
  }
}

TEST(PurityBound, PassiveMotionKeepsPurity) {
  Rng rng(51);
  const RandomFamily f = random_passive_family(rng, 3);
  const PurityBound b = purity_bound(f.path, 0.0, DerivativeMode::Analytic);
  EXPECT_NEAR(b.rhs, 0.0, 1e-20);
  EXPECT_NEAR(b.log_purity_rate, 0.0, 1e-12);
  EXPECT_GE(b.lhs, 0.0);
}

TEST(PurityBound, PureStateDenominatorVanishes) {
  EXPECT_EQ(code_of([] {
              purity_bound_at(validate_covariance(0.5 * Matrix::Identity(2, 2)), diag2(1, -1));
            }),
            ErrorCode::BoundDenominatorVanishes);
}

TEST(FiniteDifference, CentralAndOneSided) {
  const MatrixPath f = [](double t) {
    Matrix m(1, 1);
    m(0, 0) = std::exp(2 * t);
    return m;
  };
  EXPECT_NEAR(central_difference(f, 0.3)(0, 0), 2 * std::exp(0.6), 1e-9);
  EXPECT_NEAR(one_sided_difference(f, 0.3, +1)(0, 0), 2 * std::exp(0.6), 1e-8);
  EXPECT_NEAR(one_sided_difference(f, 0.3, -1)(0, 0), 2 * std::exp(0.6), 1e-8);
}
