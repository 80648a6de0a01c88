#include "gqfi/channels.hpp"
#include "gqfi/qfi_split.hpp"
#include "gqfi/random.hpp"
#include "gqfi/siegel.hpp"

#include <gtest/gtest.h>

#include <cmath>

using namespace gqfi;

namespace {

// Graph of a pure covariance read off its blocks: V_qq = Y^{-1}/2 and
// V_pq = X Y^{-1}/2.
CMatrix graph_of_pure_covariance(const Matrix& v) {
  const Blocks b = split_blocks(v);
  const Matrix y = (2.0 * b.qq).inverse();
  const Matrix x = 2.0 * b.pq * y;
  return x.cast<std::complex<double>>() + std::complex<double>(0, 1) * y.cast<std::complex<double>>();
}

GraphMatrix squeezed_pair(double r) {
  Matrix y = Matrix::Zero(2, 2);
  y(0, 0) = std::exp(-2 * r);
  y(1, 1) = std::exp(2 * r);
  return GraphMatrix::validated(Matrix::Zero(2, 2), y);
}

Matrix squeeze_pair_symplectic(double r) {
  return squeezer(2, 0).matrix(r) * squeezer(2, 1).matrix(-r);
}

}  // namespace

TEST(PureCovariance, VacuumAndSqueezedGraphs) {
  EXPECT_LT(max_abs(pure_covariance(GraphMatrix::vacuum(3)) - 0.5 * Matrix::Identity(6, 6)), 1e-15);
  const double r = 0.7;
  const Matrix v = pure_covariance(squeezed_pair(r));
  const Matrix s = squeeze_pair_symplectic(r);
  EXPECT_LT(max_abs(v - 0.5 * s * s.transpose()), 1e-13);
}

TEST(PureCovariance, InvertsBlockReadout) {
  Rng rng(21);
  for (int trial = 0; trial < 20; ++trial) {
    const RandomGraphPath g = random_graph_path(rng, 1 + trial % 3);
    const Matrix v = pure_covariance(GraphMatrix::from_complex(g.z0));
    EXPECT_LT(max_abs(graph_of_pure_covariance(v) - g.z0), 1e-10);
    EXPECT_NEAR(purity(validate_covariance(v)), 1.0, 1e-10);
  }
}

TEST(Mobius, IdentityFixesEveryPoint) {
  Rng rng(22);
  const RandomGraphPath g = random_graph_path(rng, 3);
  const GraphMatrix z = GraphMatrix::from_complex(g.z0);
  EXPECT_LT(max_abs(mobius(SymplecticMatrix::identity(3), z).complex() - g.z0), 1e-13);
}

TEST(Mobius, AgreesWithCongruenceOfPureCovariance) {
  Rng rng(23);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 3;
    const GraphMatrix z = GraphMatrix::from_complex(random_graph_path(rng, n).z0);
    const SymplecticMatrix t = random_symplectic(rng, n, 0.8);
    const Matrix v = t.matrix() * pure_covariance(z) * t.matrix().transpose();
    EXPECT_LT(max_abs(mobius(t, z).complex() - graph_of_pure_covariance(v)), 1e-8) << trial;
  }
}

TEST(Mobius, IsAGroupAction) {
  Rng rng(24);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 3;
    const GraphMatrix z = GraphMatrix::from_complex(random_graph_path(rng, n).z0);
    const SymplecticMatrix t1 = random_symplectic(rng, n, 0.6);
    const SymplecticMatrix t2 = random_symplectic(rng, n, 0.6);
    const CMatrix lhs = mobius(t1 * t2, z).complex();
    const CMatrix rhs = mobius(t1, mobius(t2, z)).complex();
    EXPECT_LT(max_abs(lhs - rhs) / std::max(1.0, max_abs(lhs)), 1e-9);
  }
}

TEST(Mobius, BeamSplitterOnSqueezedPair) {
  const double r = 1.0;
  const GaussianUnitaryFamily bs = beam_splitter(2, 0, 1);
  for (double t : {0.0, 0.3, 1.1, 2.0, 3.0}) {
    const Matrix rot = split_blocks(bs.matrix(t)).qq;
    const CMatrix z = mobius(bs.at(t), squeezed_pair(r)).complex();
    const double c = std::cos(t / 2), s = std::sin(t / 2);
    EXPECT_NEAR(z.real().cwiseAbs().maxCoeff(), 0.0, 1e-13);
    EXPECT_NEAR(z(0, 0).imag(), c * c * std::exp(-2 * r) + s * s * std::exp(2 * r), 1e-12);
    EXPECT_NEAR(z(1, 1).imag(), s * s * std::exp(-2 * r) + c * c * std::exp(2 * r), 1e-12);
    EXPECT_NEAR(std::abs(z(0, 1).imag()), std::abs(c * s) * 2 * std::sinh(2 * r), 1e-12);
    const Matrix y0 = squeezed_pair(r).y();
    EXPECT_LT(max_abs(z.imag() - rot * y0 * rot.transpose()), 1e-12);
  }
}

TEST(Mobius, RejectsIllConditionedDenominator) {
  Matrix t = Matrix::Identity(4, 4);
  t(0, 0) = std::exp(-30.0);
  t(2, 2) = std::exp(30.0);
  Tolerances tol;
  tol.sympl = 1.0;
  const SymplecticMatrix ts = SymplecticMatrix::validated(t, tol);
  try {
    mobius(ts, GraphMatrix::vacuum(2));
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::SingularMobiusDenominator);
    EXPECT_GT(e.magnitude(), 1e12);
  }
}

TEST(StateRep, CovarianceKeepsGammaSpectrum) {
  Rng rng(25);
  for (int trial = 0; trial < 30; ++trial) {
    const Index n = 1 + trial % 3;
    const Vector k = random_spectrum(rng, n);
    const Matrix o = random_orthosymplectic(rng, n).matrix();
    const Matrix gamma = o * doubled_diagonal(k) * o.transpose();
    const StateRep rep =
        StateRep::validated(GraphMatrix::from_complex(random_graph_path(rng, n).z0), gamma);
    const CovarianceMatrix v = covariance_from_state(rep);
    Vector sorted = k;
    std::sort(sorted.data(), sorted.data() + n);
    EXPECT_LT(rel_max_diff(sorted, symplectic_eigenvalues(v)), 1e-9);
  }
}

TEST(StateRep, PureRepMatchesPureCovariance) {
  Rng rng(26);
  const GraphMatrix z = GraphMatrix::from_complex(random_graph_path(rng, 2).z0);
  EXPECT_LT(max_abs(covariance_from_state(StateRep::pure(z)).matrix() - pure_covariance(z)), 1e-13);
}

TEST(StateRep, RejectsGammaNotCommutingWithOmega) {
  Matrix gamma = Matrix::Zero(2, 2);
  gamma(0, 0) = 1.0;
  gamma(1, 1) = 2.0;
  try {
    StateRep::validated(GraphMatrix::vacuum(1), gamma);
    FAIL();
  } catch (const Error& e) {
    EXPECT_EQ(e.code(), ErrorCode::InvalidStateRep);
  }
  EXPECT_THROW(StateRep::validated(GraphMatrix::vacuum(1), 0.25 * Matrix::Identity(2, 2)), Error);
  EXPECT_THROW(StateRep::validated(GraphMatrix::vacuum(2), 0.5 * Matrix::Identity(2, 2)), Error);
}

TEST(StateTransform, CommutesWithCongruence) {
  Rng rng(27);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 3;
    const Matrix o = random_orthosymplectic(rng, n).matrix();
    const Matrix gamma = o * doubled_diagonal(random_spectrum(rng, n)) * o.transpose();
    const StateRep rep =
        StateRep::validated(GraphMatrix::from_complex(random_graph_path(rng, n).z0), gamma);
    const SymplecticMatrix t = random_symplectic(rng, n, 0.8);
    const Matrix want =
        t.matrix() * covariance_from_state(rep).matrix() * t.matrix().transpose();
    const StateRep moved = state_transform(t, rep);
    EXPECT_LT(rel_max_diff(want, covariance_from_state(moved).matrix()), 1e-9);
    EXPECT_LT(max_abs(moved.gamma() * omega(n) - omega(n) * moved.gamma()), 1e-9);
  }
}

TEST(StateTransform, PureStaysPure) {
  Rng rng(28);
  const StateRep rep = StateRep::pure(GraphMatrix::vacuum(2));
  const StateRep moved = state_transform(random_symplectic(rng, 2), rep);
  EXPECT_LT(max_abs(moved.gamma() - 0.5 * Matrix::Identity(4, 4)), 1e-10);
}

TEST(SiegelMetric, Examples) {
  const GraphMatrix vac = GraphMatrix::vacuum(2);
  EXPECT_EQ(siegel_metric(vac, CMatrix::Zero(2, 2)), 0.0);
  CMatrix dz = CMatrix::Zero(2, 2);
  dz(0, 0) = std::complex<double>(0, 0.3);
  EXPECT_NEAR(siegel_metric(vac, dz), 0.09, 1e-15);
  EXPECT_NEAR(qfi_pure_from_graph(vac, dz), 0.045, 1e-15);
  dz(0, 0) = 0.3;
  EXPECT_NEAR(siegel_metric(vac, dz), 0.09, 1e-15);
}

TEST(SiegelMetric, InvariantUnderSymplecticMotion) {
  Rng rng(29);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 1 + trial % 3;
    const RandomGraphPath g = random_graph_path(rng, n);
    const SymplecticMatrix t = random_symplectic(rng, n, 0.5);
    const double h = 1e-5;
    const CMatrix dz_moved = (mobius(t, GraphMatrix::from_complex(g.at(h))).complex() -
                              mobius(t, GraphMatrix::from_complex(g.at(-h))).complex()) /
                             (2 * h);
    const GraphMatrix z = GraphMatrix::from_complex(g.z0);
    const double before = siegel_metric(z, g.z1);
    const double after = siegel_metric(mobius(t, z), dz_moved);
    EXPECT_NEAR(after / before, 1.0, 1e-7);
  }
}

TEST(QfiPure, BeamSplitterAngleIsSinhSquared) {
  const GaussianUnitaryFamily bs = beam_splitter(2, 0, 1);
  for (double r : {0.0, 0.25, 0.5, 1.0}) {
    for (double t : {0.0, 0.4, 1.5, 3.0}) {
      const double h = 1e-5;
      const CMatrix dz = (mobius(bs.at(t + h), squeezed_pair(r)).complex() -
                          mobius(bs.at(t - h), squeezed_pair(r)).complex()) /
                         (2 * h);
      const double want = std::pow(std::sinh(2 * r), 2);
      EXPECT_NEAR(qfi_pure_from_graph(mobius(bs.at(t), squeezed_pair(r)), dz), want,
                  1e-8 * std::max(1.0, want));
    }
  }
}

TEST(QfiPure, MatchesFullOracle) {
  Rng rng(30);
  for (int trial = 0; trial < 40; ++trial) {
    const Index n = 1 + trial % 3;
    const RandomGraphPath g = random_graph_path(rng, n);
    const GraphMatrix z = GraphMatrix::from_complex(g.z0);
    const MatrixPath vpath = [&](double t) {
      return pure_covariance(GraphMatrix::from_complex(g.at(t)));
    };
    const Matrix dv = central_difference(vpath, 0.0);
    EXPECT_LT(rel_max_diff(dv, pure_covariance_velocity(g.z0, g.z1)), 1e-7);
    const double oracle = qfi_full_oracle(pure_covariance(z), dv);
    const double graph = qfi_pure_from_graph(z, g.z1);
    EXPECT_LT(std::abs(oracle - graph) / std::max(1.0, oracle), 1e-7) << trial;
  }
}

TEST(QfimPure, ReducesToScalarAndIsRankOneForDuplicates) {
  Rng rng(31);
  const RandomGraphPath g = random_graph_path(rng, 2);
  const GraphMatrix z = GraphMatrix::from_complex(g.z0);
  const Matrix f1 = qfim_pure_from_graph(z, {g.z1});
  EXPECT_NEAR(f1(0, 0), qfi_pure_from_graph(z, g.z1), 1e-13);
  const Matrix f2 = qfim_pure_from_graph(z, {g.z1, 2.0 * g.z1});
  EXPECT_NEAR(f2(0, 1), 2 * f1(0, 0), 1e-12);
  EXPECT_NEAR(f2(1, 1), 4 * f1(0, 0), 1e-12);
  EXPECT_NEAR(f2.determinant(), 0.0, 1e-10 * f2.squaredNorm());
}

TEST(QfimPure, MatchesFullOracle) {
  Rng rng(32);
  for (int trial = 0; trial < 10; ++trial) {
    const Index n = 1 + trial % 3;
    const RandomGraphPath a = random_graph_path(rng, n);
    const RandomGraphPath b = random_graph_path(rng, n);
    const GraphMatrix z = GraphMatrix::from_complex(a.z0);
    const Matrix f = qfim_pure_from_graph(z, {a.z1, b.z1});
    const Matrix oracle = qfim_full_oracle(pure_covariance(z), {pure_covariance_velocity(a.z0, a.z1),
                                                                pure_covariance_velocity(a.z0, b.z1)});
    EXPECT_LT(rel_max_diff(oracle, f), 1e-8);
    EXPECT_LT(max_abs(f - f.transpose()), 1e-14);
  }
}

TEST(QfiPure, RejectsNonSymmetricVelocity) {
  CMatrix dz = CMatrix::Zero(2, 2);
  dz(0, 1) = 1.0;
  EXPECT_THROW(qfi_pure_from_graph(GraphMatrix::vacuum(2), dz), Error);
}
