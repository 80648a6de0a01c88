#include "gqfi/channels.hpp"

#include <Eigen/Eigenvalues>

#include <cmath>
#include <limits>
#include <sstream>

namespace gqfi {

namespace {

void require_mode(Index n, Index mode) {
  if (mode < 0 || mode >= n) {
    std::ostringstream os;
    os << "mode index " << mode << " out of range for " << n << " modes";
    throw Error(ErrorCode::DimensionMismatch, os.str(), static_cast<double>(mode));
  }
}

void require_pair(Index n, Index a, Index b) {
  require_mode(n, a);
  require_mode(n, b);
  if (a == b) throw Error(ErrorCode::DimensionMismatch, "two-mode stage needs distinct modes");
}

std::vector<Index> resolve_targets(Index n, std::vector<Index> targets) {
  if (targets.empty()) {
    for (Index i = 0; i < n; ++i) targets.push_back(i);
  }
  for (Index t : targets) require_mode(n, t);
  return targets;
}

// Diagonal 2n x 2n matrix equal to `on` at both quadratures of each target
// mode and `off` elsewhere.
Matrix mode_diagonal(Index n, const std::vector<Index>& targets, double on, double off) {
  Vector d = Vector::Constant(2 * n, off);
  for (Index t : targets) {
    d(t) = on;
    d(n + t) = on;
  }
  return d.asDiagonal();
}

}  // namespace

SymplecticMatrix GaussianUnitaryFamily::at(double t, const Tolerances& tol) const {
  return SymplecticMatrix::validated(matrix(t), tol);
}

GaussianUnitaryFamily squeezer(Index n, Index mode) {
  require_mode(n, mode);
  GaussianUnitaryFamily f;
  f.name = "squeezer";
  f.modes = n;
  f.passive = false;
  f.matrix = [n, mode](double r) {
    Matrix s = Matrix::Identity(2 * n, 2 * n);
    s(mode, mode) = std::exp(r);
    s(n + mode, n + mode) = std::exp(-r);
    return s;
  };
  f.derivative = [n, mode](double r) {
    Matrix d = Matrix::Zero(2 * n, 2 * n);
    d(mode, mode) = std::exp(r);
    d(n + mode, n + mode) = -std::exp(-r);
    return d;
  };
  return f;
}

GaussianUnitaryFamily beam_splitter(Index n, Index a, Index b) {
  require_pair(n, a, b);
  GaussianUnitaryFamily f;
  f.name = "beam_splitter";
  f.modes = n;
  f.passive = true;
  auto rotation = [n, a, b](double c, double s, double diag_rest) {
    Matrix m = diag_rest * Matrix::Identity(2 * n, 2 * n);
    for (Index off : {Index{0}, n}) {
      m(off + a, off + a) = c;
      m(off + a, off + b) = s;
      m(off + b, off + a) = -s;
      m(off + b, off + b) = c;
    }
    return m;
  };
  f.matrix = [rotation](double t) {
    return rotation(std::cos(t / 2), std::sin(t / 2), 1.0);
  };
  f.derivative = [rotation](double t) {
    return rotation(-0.5 * std::sin(t / 2), 0.5 * std::cos(t / 2), 0.0);
  };
  return f;
}

GaussianUnitaryFamily phase_rotation(Index n, Index mode) {
  require_mode(n, mode);
  GaussianUnitaryFamily f;
  f.name = "phase_rotation";
  f.modes = n;
  f.passive = true;
  auto block = [n, mode](double c, double s, double diag_rest) {
    Matrix m = diag_rest * Matrix::Identity(2 * n, 2 * n);
    m(mode, mode) = c;
    m(mode, n + mode) = s;
    m(n + mode, mode) = -s;
    m(n + mode, n + mode) = c;
    return m;
  };
  f.matrix = [block](double t) { return block(std::cos(t), std::sin(t), 1.0); };
  f.derivative = [block](double t) { return block(-std::sin(t), std::cos(t), 0.0); };
  return f;
}

GaussianUnitaryFamily two_mode_squeezer(Index n, Index a, Index b) {
  require_pair(n, a, b);
  GaussianUnitaryFamily f;
  f.name = "two_mode_squeezer";
  f.modes = n;
  f.passive = false;
  auto block = [n, a, b](double c, double s, double diag_rest) {
    Matrix m = diag_rest * Matrix::Identity(2 * n, 2 * n);
    m(a, a) = m(b, b) = m(n + a, n + a) = m(n + b, n + b) = c;
    m(a, b) = m(b, a) = s;
    m(n + a, n + b) = m(n + b, n + a) = -s;
    return m;
  };
  f.matrix = [block](double r) { return block(std::cosh(r), std::sinh(r), 1.0); };
  f.derivative = [block](double r) { return block(std::sinh(r), std::cosh(r), 0.0); };
  return f;
}

ChannelMatrices GaussianChannelFamily::at(double t) const {
  if (!in_domain(t)) {
    std::ostringstream os;
    os << name << " parameter " << t << " outside [" << lower << ", " << upper << "]";
    const ErrorCode code =
        (name == "amplifier" && t < lower) ? ErrorCode::GainBelowOne : ErrorCode::ParameterOutOfDomain;
    throw Error(code, os.str(), t);
  }
  return matrices(t);
}

double complete_positivity_margin(const ChannelMatrices& c) {
  const Index n = c.x.rows() / 2;
  const Matrix om = omega(n);
  const std::complex<double> i(0.0, 1.0);
  const CMatrix h = c.y.cast<std::complex<double>>() +
                    (0.5 * i) * (om - c.x * om * c.x.transpose()).cast<std::complex<double>>();
  Eigen::SelfAdjointEigenSolver<CMatrix> es(h, Eigen::EigenvaluesOnly);
  return es.eigenvalues().minCoeff();
}

GaussianChannelFamily loss_channel(Index n, std::vector<Index> targets) {
  targets = resolve_targets(n, std::move(targets));
  GaussianChannelFamily f;
  f.name = "loss";
  f.modes = n;
  f.lower = 0.0;
  f.upper = 1.0;
  f.matrices = [n, targets](double eta) {
    return ChannelMatrices{mode_diagonal(n, targets, std::sqrt(eta), 1.0),
                           mode_diagonal(n, targets, 0.5 * (1.0 - eta), 0.0)};
  };
  f.derivative = [n, targets](double eta) {
    if (eta <= 0.0) {
      throw Error(ErrorCode::DerivativeSingularAtZero,
                  "d sqrt(eta)/d eta is singular at eta = 0; use a one-sided difference", eta);
    }
    return ChannelMatrices{mode_diagonal(n, targets, 0.5 / std::sqrt(eta), 0.0),
                           mode_diagonal(n, targets, -0.5, 0.0)};
  };
  return f;
}

GaussianChannelFamily amplifier_channel(Index n, std::vector<Index> targets) {
  targets = resolve_targets(n, std::move(targets));
  GaussianChannelFamily f;
  f.name = "amplifier";
  f.modes = n;
  f.lower = 1.0;
  f.upper = std::numeric_limits<double>::infinity();
  f.matrices = [n, targets](double g) {
    return ChannelMatrices{mode_diagonal(n, targets, std::sqrt(g), 1.0),
                           mode_diagonal(n, targets, 0.5 * (g - 1.0), 0.0)};
  };
  f.derivative = [n, targets](double g) {
    return ChannelMatrices{mode_diagonal(n, targets, 0.5 / std::sqrt(g), 0.0),
                           mode_diagonal(n, targets, 0.5, 0.0)};
  };
  return f;
}

namespace {

CovarianceMatrix checked_output(const Matrix& out, const Tolerances& tol) {
  try {
    return validate_covariance(out, tol);
  } catch (const Error& e) {
    throw Error(ErrorCode::OutputInvalid, std::string("stage output invalid: ") + e.what(),
                e.magnitude());
  }
}

void require_dims(Index stage_rows, const CovarianceMatrix& v) {
  if (stage_rows != v.matrix().rows()) {
    throw Error(ErrorCode::DimensionMismatch, "stage and covariance dimensions differ");
  }
}

}  // namespace

CovarianceMatrix apply(const SymplecticMatrix& s, const CovarianceMatrix& v,
                       const Tolerances& tol) {
  require_dims(s.matrix().rows(), v);
  return checked_output(s.matrix() * v.matrix() * s.matrix().transpose(), tol);
}

CovarianceMatrix apply(const ChannelMatrices& c, const CovarianceMatrix& v,
                       const Tolerances& tol) {
  require_dims(c.x.rows(), v);
  return checked_output(c.x * v.matrix() * c.x.transpose() + c.y, tol);
}

double Binding::at(const Vector& theta) const {
  if (parameter < 0) return value;
  return scale * theta(parameter) + offset;
}

CovarianceFamily constant_initial(const Matrix& v, Index parameters) {
  CovarianceFamily f;
  f.parameters = parameters;
  f.value = [v](const Vector&) { return v; };
  f.gradient = [v, parameters](const Vector&) {
    return std::vector<Matrix>(parameters, Matrix::Zero(v.rows(), v.cols()));
  };
  return f;
}

namespace {

void require_theta(const ScenarioPath& path, const Vector& theta) {
  if (theta.size() != path.parameters()) {
    std::ostringstream os;
    os << "parameter vector has " << theta.size() << " entries, path expects "
       << path.parameters();
    throw Error(ErrorCode::DimensionMismatch, os.str());
  }
}

// Central, forward (+1) or backward (-1) stencil for parameter a, chosen so
// every stage bound to a stays in its domain.
int stencil_direction(const ScenarioPath& path, const Vector& theta, int a,
                      const FiniteDifference& fd) {
  const double h = fd.step * std::max(1.0, std::abs(theta(a)));
  bool central = true, forward = true, backward = true;
  for (const Stage& st : path.stages) {
    const auto* ch = std::get_if<GaussianChannelFamily>(&st.op);
    if (!ch || st.binding.parameter != a) continue;
    const double s0 = st.binding.at(theta);
    const double ds = st.binding.scale * h;
    auto ok = [ch](double s) { return ch->in_domain(s); };
    central = central && ok(s0 - std::abs(ds)) && ok(s0 + std::abs(ds));
    forward = forward && ok(s0 + ds) && ok(s0 + 2 * ds);
    backward = backward && ok(s0 - ds) && ok(s0 - 2 * ds);
  }
  if (central) return 0;
  if (forward) return 1;
  if (backward) return -1;
  throw Error(ErrorCode::ParameterOutOfDomain,
              "no finite-difference stencil fits inside the stage domains", theta(a));
}

Matrix fd_gradient(const ScenarioPath& path, const Vector& theta, int a,
                   const FiniteDifference& fd, const Tolerances& tol) {
  const MatrixPath slice = [&](double t) {
    Vector th = theta;
    th(a) = t;
    return path_value(path, th, tol).matrix();
  };
  const int dir = stencil_direction(path, theta, a, fd);
  return dir == 0 ? central_difference(slice, theta(a), fd)
                  : one_sided_difference(slice, theta(a), dir, fd);
}

}  // namespace

CovarianceMatrix path_value(const ScenarioPath& path, const Vector& theta, const Tolerances& tol) {
  require_theta(path, theta);
  CovarianceMatrix v = validate_covariance(path.initial.value(theta), tol);
  for (const Stage& st : path.stages) {
    const double s = st.binding.at(theta);
    if (const auto* u = std::get_if<GaussianUnitaryFamily>(&st.op)) {
      v = apply(u->at(s, tol), v, tol);
    } else {
      const auto& ch = std::get<GaussianChannelFamily>(st.op);
      v = apply(ch.at(s), v, tol);
    }
  }
  return v;
}

PathPoint path_covariance(const ScenarioPath& path, const Vector& theta, DerivativeMode mode,
                          const FiniteDifference& fd, const Tolerances& tol) {
  require_theta(path, theta);
  const Index p = path.parameters();
  std::vector<bool> needs_fd(p, mode == DerivativeMode::FiniteDifference);

  CovarianceMatrix v = validate_covariance(path.initial.value(theta), tol);
  const Index dim = v.matrix().rows();
  std::vector<Matrix> grad;
  if (mode == DerivativeMode::Analytic && path.initial.gradient) {
    grad = path.initial.gradient(theta);
  } else {
    grad.assign(p, Matrix::Zero(dim, dim));
    if (!path.initial.gradient) needs_fd.assign(p, true);
  }

  for (const Stage& st : path.stages) {
    const double s = st.binding.at(theta);
    const int a = st.binding.parameter;
    const Matrix& vm = v.matrix();
    if (const auto* u = std::get_if<GaussianUnitaryFamily>(&st.op)) {
      const Matrix sm = u->at(s, tol).matrix();
      for (Matrix& g : grad) g = sm * g * sm.transpose();
      if (a >= 0 && !needs_fd[a]) {
        const Matrix ds = u->derivative(s);
        const Matrix term = ds * vm * sm.transpose();
        grad[a] += st.binding.scale * (term + term.transpose());
      }
      v = apply(SymplecticMatrix::validated(sm, tol), v, tol);
    } else {
      const auto& chf = std::get<GaussianChannelFamily>(st.op);
      const ChannelMatrices c = chf.at(s);
      for (Matrix& g : grad) g = c.x * g * c.x.transpose();
      if (a >= 0 && !needs_fd[a]) {
        try {
          const ChannelMatrices dc = chf.derivative(s);
          const Matrix term = dc.x * vm * c.x.transpose();
          grad[a] += st.binding.scale * (term + term.transpose() + dc.y);
        } catch (const Error& e) {
          if (e.code() != ErrorCode::DerivativeSingularAtZero) throw;
          needs_fd[a] = true;
        }
      }
      v = apply(c, v, tol);
    }
  }

  PathPoint out{v, std::move(grad), true};
  for (Index a = 0; a < p; ++a) {
    if (!needs_fd[a]) {
      out.gradient[a] = symmetrize(out.gradient[a]);
      continue;
    }
    out.gradient[a] = symmetrize(fd_gradient(path, theta, static_cast<int>(a), fd, tol));
    out.analytic = false;
  }
  return out;
}

const std::vector<std::string>& stage_kinds() {
  static const std::vector<std::string> kinds = {"squeezer",          "beam_splitter",
                                                 "phase_rotation",    "two_mode_squeezer",
                                                 "loss",              "amplifier"};
  return kinds;
}

std::variant<GaussianUnitaryFamily, GaussianChannelFamily> make_stage(
    const std::string& kind, Index n, const std::vector<Index>& targets) {
  auto need = [&](std::size_t count) {
    if (targets.size() != count) {
      std::ostringstream os;
      os << kind << " acts on " << count << " mode(s), got " << targets.size();
      throw Error(ErrorCode::ConfigInvalid, os.str());
    }
  };
  if (kind == "squeezer") {
    need(1);
    return squeezer(n, targets[0]);
  }
  if (kind == "phase_rotation") {
    need(1);
    return phase_rotation(n, targets[0]);
  }
  if (kind == "beam_splitter") {
    need(2);
    return beam_splitter(n, targets[0], targets[1]);
  }
  if (kind == "two_mode_squeezer") {
    need(2);
    return two_mode_squeezer(n, targets[0], targets[1]);
  }
  if (kind == "loss") return loss_channel(n, targets);
  if (kind == "amplifier") return amplifier_channel(n, targets);
  throw Error(ErrorCode::ConfigInvalid, "unknown stage kind '" + kind + "'");
}

}  // namespace gqfi
