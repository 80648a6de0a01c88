#include "gqfi/acceptance.hpp"

#include "gqfi/channels.hpp"
#include "gqfi/qfi_split.hpp"
#include "gqfi/random.hpp"
#include "gqfi/scenario.hpp"
#include "gqfi/siegel.hpp"

#include <chrono>
#include <cmath>
#include <cstdio>
#include <limits>
#include <map>
#include <sstream>
#include <stdexcept>

namespace gqfi {

namespace {

constexpr double kPi = 3.14159265358979323846;

double rel_err(double got, double want) { return std::abs(got - want) / std::max(1.0, std::abs(want)); }

struct Check {
  Check(std::string n, double t, bool info = false)
      : name(std::move(n)), tol(t), informational(info) {}

  std::string name;
  double tol = 0.0;
  bool informational = false;  // reported, but does not decide the verdict
  double worst = 0.0;
  int count = 0;
  bool ok = true;

  void add(double residual) {
    ++count;
    if (!(residual <= tol)) ok = false;
    if (std::isnan(residual)) {
      worst = std::numeric_limits<double>::infinity();
    } else {
      worst = std::max(worst, residual);
    }
  }
  void fail_with(const std::string& why) {
    ok = false;
    worst = std::numeric_limits<double>::infinity();
    note = why;
  }
  std::string note;
};

std::string sci(double v) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.2e", v);
  return buf;
}

class Timer {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

CriterionResult finish(int id, std::string title, const std::vector<Check>& checks,
                       const Timer& timer, std::string extra = {}) {
  CriterionResult r;
  r.id = id;
  r.title = std::move(title);
  r.passed = true;
  r.tolerance = 1.0;
  std::ostringstream os;
  for (std::size_t i = 0; i < checks.size(); ++i) {
    const Check& c = checks[i];
    if (!c.informational) {
      r.passed = r.passed && c.ok && c.count > 0;
      r.worst = std::max(r.worst, c.tol > 0.0 ? c.worst / c.tol : c.worst);
    }
    os << (i ? "; " : "") << c.name << (c.informational ? " [info]" : "")
       << (c.ok ? "" : " FAILED") << " worst " << sci(c.worst) << " tol " << sci(c.tol) << " n "
       << c.count;
    if (!c.note.empty()) os << " (" << c.note << ")";
  }
  if (!extra.empty()) os << "; " << extra;
  r.detail = os.str();
  r.seconds = timer.seconds();
  return r;
}

// Closed forms for squeezed vacuum through pure loss.
struct LossForm {
  double l1, l2, m, a, even, odd;
};
LossForm loss_form(double eta, double r) {
  LossForm f{};
  f.l1 = (1.0 - eta) / 2.0 + eta * std::exp(2.0 * r) / 2.0;
  f.l2 = (1.0 - eta) / 2.0 + eta * std::exp(-2.0 * r) / 2.0;
  const double d1 = 0.5 * (std::exp(2.0 * r) - 1.0) * std::sqrt(f.l2 / f.l1);
  const double d2 = 0.5 * (std::exp(-2.0 * r) - 1.0) * std::sqrt(f.l1 / f.l2);
  f.m = 0.5 * (d1 + d2);
  f.a = 0.5 * (d1 - d2);
  f.even = 4.0 * f.m * f.m / (4.0 * f.l1 * f.l2 - 1.0);
  f.odd = 4.0 * f.a * f.a / (4.0 * f.l1 * f.l2 + 1.0);
  return f;
}

ParameterSpec grid(const std::string& name, std::vector<double> values) {
  return {name, std::move(values)};
}

std::vector<double> range(double start, double step, int count) {
  std::vector<double> v;
  for (int i = 0; i < count; ++i) v.push_back(start + step * i);
  return v;
}

void replace_parameter(ScenarioConfig& c, ParameterSpec p) {
  for (ParameterSpec& q : c.parameters) {
    if (q.name == p.name) {
      q = std::move(p);
      return;
    }
  }
  throw std::logic_error("builtin lacks parameter " + p.name);
}

bool flagged_error(const std::vector<std::string>& flags) {
  for (const std::string& f : flags) {
    if (f.rfind("error:", 0) == 0) return true;
  }
  return false;
}

// Minimal CSV reader for the files written by write_csv.
struct Table {
  std::vector<std::string> header;
  std::vector<std::vector<std::string>> rows;

  int column(const std::string& name) const {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (header[i] == name) return static_cast<int>(i);
    }
    throw std::runtime_error("CSV has no column " + name);
  }
  double number(std::size_t row, int col) const { return std::stod(rows[row][col]); }
};

Table parse_csv(const std::string& text) {
  Table t;
  std::istringstream in(text);
  std::string line;
  bool first = true;
  while (std::getline(in, line)) {
    std::vector<std::string> cells;
    std::string cell;
    std::istringstream ls(line);
    while (std::getline(ls, cell, ',')) cells.push_back(cell);
    if (!line.empty() && line.back() == ',') cells.emplace_back();
    if (first) {
      t.header = std::move(cells);
      first = false;
    } else {
      t.rows.push_back(std::move(cells));
    }
  }
  return t;
}

}  // namespace

CriterionResult criterion_beam_splitter(const AcceptanceOptions&) {
  Timer timer;
  Check total{"total vs sinh^2(2r)", 1e-9};
  Check even{"even / total", 1e-9};
  for (double r : {0.1, 0.5, 1.0, 2.0}) {
    ScenarioPath path;
    path.initial = constant_initial(0.5 * Matrix::Identity(4, 4), 1);
    path.stages.push_back({squeezer(2, 0), Binding::fixed(r)});
    path.stages.push_back({squeezer(2, 1), Binding::fixed(-r)});
    path.stages.push_back({beam_splitter(2, 0, 1), Binding::param(0)});
    for (double t : {0.0, kPi / 8, kPi / 4, kPi / 2}) {
      try {
        const PathPoint pp = path_covariance(path, Vector::Constant(1, t));
        const QfiSplit s = qfi_split_at(pp.value, pp.gradient[0]);
        const double want = std::sinh(2 * r) * std::sinh(2 * r);
        total.add(std::abs(s.total - want) / want);
        even.add(std::abs(s.even) / want);
      } catch (const Error& e) {
        total.fail_with(e.what());
      }
    }
  }
  Check runtime{"runtime [s]", 1.0};
  runtime.add(timer.seconds());
  return finish(1, "beam-splitter pure sensing", {total, even, runtime}, timer);
}

CriterionResult criterion_thermal_contrast(const AcceptanceOptions& opts) {
  Timer timer;
  ScenarioConfig c = builtin_config("thermal_contrast");
  RunOptions ro;
  ro.fd = opts.fd;
  Check even{"even vs closed form", 1e-9};
  Check odd{"odd vs closed form", 1e-9};
  Check equal{"v1 = v2 => even = 0", 1e-9};
  Check unsq{"r = 0 => odd = 0", 1e-9};
  Check pure{"v1 = v2 = 1/2 => odd = sinh^2(2r)", 1e-9};
  for (const ResultRow& row : run_scenario(c, ro)) {
    const double v1 = row.params[0], v2 = row.params[1], r = row.params[2];
    if (flagged_error(row.flags)) {
      even.fail_with("row error at v1=" + sci(v1) + " v2=" + sci(v2) + " r=" + sci(r));
      continue;
    }
    const double ch = std::cosh(2 * r), sh = std::sinh(2 * r);
    const double want_even =
        (v1 == 0.5 && v2 == 0.5) ? 0.0 : 2 * ch * ch * (v2 - v1) * (v2 - v1) / (4 * v1 * v2 - 1);
    const double want_odd = 2 * sh * sh * (v1 + v2) * (v1 + v2) / (4 * v1 * v2 + 1);
    even.add(rel_err(row.even, want_even));
    odd.add(rel_err(row.odd, want_odd));
    if (v1 == v2) equal.add(std::abs(row.even));
    if (r == 0.0) unsq.add(std::abs(row.odd));
    if (v1 == 0.5 && v2 == 0.5) pure.add(rel_err(row.odd, sh * sh));
  }
  return finish(2, "thermal-contrast closed forms", {even, odd, equal, unsq, pure}, timer);
}

CriterionResult criterion_loss(const AcceptanceOptions& opts) {
  Timer timer;
  RunOptions ro;
  ro.fd = opts.fd;
  ScenarioConfig c = builtin_config("loss_sweep");
  c.derivative = DerivativeMode::FiniteDifference;
  replace_parameter(c, grid("eta", range(0.05, 0.05, 19)));
  Check even{"even vs closed form", 1e-8};
  Check odd{"odd vs closed form", 1e-8};
  for (const ResultRow& row : run_scenario(c, ro)) {
    const double r = row.params[0], eta = row.params[1];
    const LossForm f = loss_form(eta, r);
    even.add(rel_err(row.even, f.even));
    odd.add(rel_err(row.odd, f.odd));
  }

  replace_parameter(c, grid("eta", {1e-3, 1.0 - 1e-3}));
  Check low{"even*eta -> (cosh 2r - 1)/2 at eta = 1e-3", 0.02};
  Check high{"even*(1-eta) -> (cosh 2r - 1)/2 at eta = 1 - 1e-3", 0.02};
  for (const ResultRow& row : run_scenario(c, ro)) {
    const double r = row.params[0], eta = row.params[1];
    const double limit = (std::cosh(2 * r) - 1.0) / 2.0;
    if (eta < 0.5) {
      low.add(std::abs(row.even * eta / limit - 1.0));
    } else {
      high.add(std::abs(row.even * (1.0 - eta) / limit - 1.0));
    }
  }
  return finish(3, "loss transmissivity", {even, odd, low, high}, timer);
}

CriterionResult criterion_thermometry(const AcceptanceOptions& opts) {
  Timer timer;
  RunOptions ro;
  ro.fd = opts.fd;
  const ScenarioConfig c = builtin_config("thermometry");
  const double omega = 1.0;
  Check printed{"QFI(T) vs omega^2/(4 T^2 sinh^2(omega/2T))", 1e-9};
  Check odd{"odd sector", 1e-12};
  Check spectral{"QFI(T) vs omega^2/(4 T^4 sinh^2(omega/2T))", 1e-9, true};
  Check log_t{"T^2 QFI(T) vs omega^2/(4 T^2 sinh^2(omega/2T))", 1e-9, true};
  for (const ResultRow& row : run_scenario(c, ro)) {
    const double t = row.params[0];
    const double s = std::sinh(omega / (2 * t));
    const double eq = omega * omega / (4 * t * t * s * s);
    printed.add(rel_err(row.total, eq));
    odd.add(std::abs(row.odd));
    spectral.add(rel_err(row.total, eq / (t * t)));
    log_t.add(rel_err(row.total * t * t, eq));
  }
  return finish(4, "thermometry", {printed, odd, spectral, log_t}, timer,
                "the printed closed form equals T^2 QFI(T), the information about ln T");
}

CriterionResult criterion_phase_loss(const AcceptanceOptions& opts) {
  Timer timer;
  RunOptions ro;
  ro.fd = opts.fd;
  const ScenarioConfig c = builtin_config("phase_loss");
  Check off{"|total_eta_theta|", 1e-10};
  Check tt{"theta-theta total vs 4 eta^2 sinh^2(2r)/(4 L1 L2 + 1)", 1e-8};
  Check tt_even{"theta-theta even", 1e-10};
  Check ee_even{"eta-eta even vs closed form", 1e-8};
  Check ee_odd{"eta-eta odd vs closed form", 1e-8};
  Check v_theta{"v_theta even component", 1e-10};
  for (const QfimRow& row : run_qfim_scenario(c, ro)) {
    const double r = row.params[0], eta = row.params[1];
    if (flagged_error(row.flags)) {
      off.fail_with("row error");
      continue;
    }
    const LossForm f = loss_form(eta, r);
    const double sh = std::sinh(2 * r);
    off.add(std::abs(row.total(0, 1)));
    tt.add(rel_err(row.total(1, 1), 4 * eta * eta * sh * sh / (4 * f.l1 * f.l2 + 1)));
    tt_even.add(std::abs(row.even(1, 1)));
    ee_even.add(rel_err(row.even(0, 0), f.even));
    ee_odd.add(rel_err(row.odd(0, 0), f.odd));
    v_theta.add(std::abs(row.sector_vectors[1][0]));
  }
  return finish(5, "joint phase-loss QFIM", {off, tt, tt_even, ee_even, ee_odd, v_theta}, timer);
}

CriterionResult criterion_oracle(const AcceptanceOptions& opts) {
  Timer timer;
  Rng rng(opts.seed);
  Check split{"even + odd vs superoperator oracle", 1e-7};
  Check nonneg{"min(even, odd) / total", 1e-12};
  std::map<std::string, int> kinds;
  const FamilyKind cycle[] = {FamilyKind::Mixed, FamilyKind::Pure, FamilyKind::Degenerate,
                              FamilyKind::PartlyPure};
  for (int i = 0; i < opts.samples; ++i) {
    const Index n = 1 + i % 3;
    FamilyKind kind = cycle[(i / 3) % 4];
    if (n == 1 && (kind == FamilyKind::PartlyPure || kind == FamilyKind::Degenerate)) {
      kind = FamilyKind::Mixed;
    }
    const RandomFamily fam = random_family(rng, n, kind);
    try {
      const Matrix v = fam.path.value(fam.t0);
      const Matrix dv = fam.path.derivative(fam.t0);
      const QfiSplit s = qfi_split_at(validate_covariance(v), dv);
      const double oracle = qfi_full_oracle(v, dv);
      split.add(rel_err(s.even + s.odd, oracle));
      nonneg.add(std::max(0.0, -std::min(s.even, s.odd)) / std::max(1.0, s.total));
      ++kinds[kind == FamilyKind::Mixed        ? "mixed"
              : kind == FamilyKind::Pure       ? "pure"
              : kind == FamilyKind::Degenerate ? "degenerate"
                                               : "partly_pure"];
    } catch (const Error& e) {
      split.fail_with(std::string("sample ") + std::to_string(i) + ": " + e.what());
    }
  }
  Check runtime{"runtime [s]", 60.0};
  runtime.add(timer.seconds());
  std::ostringstream mix;
  mix << "families:";
  for (const auto& [k, count] : kinds) mix << " " << k << "=" << count;
  return finish(6, "oracle equivalence", {split, nonneg, runtime}, timer, mix.str());
}

CriterionResult criterion_structure(const AcceptanceOptions& opts) {
  Timer timer;
  Rng rng(opts.seed + 7);
  std::uniform_real_distribution<double> level(0.6, 2.0);

  Check proj{"(a) parity projectors", 1e-12};
  for (int i = 0; i < opts.samples; ++i) {
    const Index n = 1 + i % 3;
    const Matrix w = random_symmetric(rng, 2 * n);
    const ParityParts p = parity_project(w);
    const ParityParts pe = parity_project(p.even);
    const ParityParts po = parity_project(p.odd);
    double res = max_abs(pe.even - p.even);             // idempotent
    res = std::max(res, max_abs(po.odd - p.odd));
    res = std::max(res, max_abs(pe.odd));               // orthogonal
    res = std::max(res, max_abs(po.even));
    res = std::max(res, max_abs(p.even + p.odd - w));   // complete
    proj.add(res / std::max(1.0, max_abs(w)));
  }

  Check cross{"(b) cross term", 1e-10};
  for (int i = 0; i < opts.samples; ++i) {
    const Index n = 1 + i % 3;
    cross.add(std::abs(cross_term_check(random_spectrum(rng, n), random_symmetric(rng, 2 * n))));
  }

  Check stab{"(c) stabilizer gauge invariance", 1e-9};
  Check frame{"(c) O_sp frame invariance", 1e-9};
  for (int i = 0; i < opts.samples / 4; ++i) {
    const Index n = 1 + i % 3;
    const Matrix w = random_symmetric(rng, 2 * n);
    Vector k = random_spectrum(rng, n);
    CMatrix u;
    if (i % 2 == 0) {
      k.setConstant(level(rng));
      u = random_unitary(rng, n);
    } else {
      u = CMatrix::Zero(n, n);
      for (Index j = 0; j < n; ++j) u(j, j) = std::polar(1.0, 2 * kPi * level(rng));
    }
    const QfiSplit base = qfi_split_williamson(k, decompose_blocks(w));
    const Matrix o = orthosymplectic_from_unitary(u).matrix();
    const QfiSplit gauged = qfi_split_williamson(k, decompose_blocks(o.transpose() * w * o));
    stab.add(std::max(rel_err(gauged.even, base.even), rel_err(gauged.odd, base.odd)));

    const Matrix g = random_orthosymplectic(rng, n).matrix();
    const FrameSplit fs =
        qfi_split_in_frame(g * doubled_diagonal(k) * g.transpose(), g * w * g.transpose());
    frame.add(std::max(rel_err(fs.even, base.even), rel_err(fs.odd, base.odd)));
  }

  Check passive{"(d) passive evolution odd / max(1, total)", 1e-10};
  for (int i = 0; i < opts.samples / 4; ++i) {
    const RandomFamily fam = random_passive_family(rng, 1 + i % 3);
    for (double t : {0.0, 0.4}) {
      const QfiSplit s = qfi_split_path(fam.path, t, DerivativeMode::Analytic);
      passive.add(std::abs(s.odd) / std::max(1.0, s.total));
    }
  }

  Check pure_even{"(e) pure manifold even / max(1, total)", 1e-8};
  Check pure_total{"(e) pure manifold total vs Siegel QFI", 1e-8};
  for (int i = 0; i < opts.samples / 4; ++i) {
    const RandomGraphPath gp = random_graph_path(rng, 1 + i % 3);
    try {
      const GraphMatrix z = GraphMatrix::from_complex(gp.z0);
      const Matrix v = pure_covariance(z);
      const Matrix dv = pure_covariance_velocity(gp.z0, gp.z1);
      const QfiSplit s = qfi_split_at(validate_covariance(v), dv);
      pure_even.add(std::abs(s.even) / std::max(1.0, s.total));
      pure_total.add(rel_err(s.total, qfi_pure_from_graph(z, gp.z1)));
    } catch (const Error& e) {
      pure_total.fail_with(e.what());
    }
  }
  return finish(7, "structural properties",
                {proj, cross, stab, frame, passive, pure_even, pure_total}, timer);
}

CriterionResult criterion_purity_bound(const AcceptanceOptions& opts) {
  Timer timer;
  Rng rng(opts.seed + 11);
  Check ineq{"(rhs - lhs)+ / max(1, lhs)", 1e-10};
  for (int i = 0; i < opts.samples; ++i) {
    const Index n = 1 + i % 3;
    const FamilyKind kind = (n > 1 && i % 2) ? FamilyKind::Degenerate : FamilyKind::Mixed;
    const RandomFamily fam = random_family(rng, n, kind);
    try {
      const PurityBound b = purity_bound(fam.path, fam.t0, DerivativeMode::Analytic);
      ineq.add(std::max(0.0, b.rhs - b.lhs) / std::max(1.0, b.lhs));
    } catch (const Error& e) {
      ineq.fail_with(e.what());
    }
  }
  Check equality{"single-mode thermometric equality", 1e-10};
  for (double k : {0.6, 1.0, 2.0}) {
    for (int conj = 0; conj < 2; ++conj) {
      const Matrix s = conj ? random_symplectic(rng, 1).matrix() : Matrix::Identity(2, 2);
      const Matrix v = k * s * s.transpose();
      const Matrix dv = 0.3 * s * s.transpose();
      const PurityBound b = purity_bound_at(validate_covariance(v), dv);
      equality.add(rel_err(b.rhs, b.lhs));
    }
  }
  return finish(8, "purity bound", {ineq, equality}, timer);
}

CriterionResult criterion_figure_shapes(const AcceptanceOptions& opts) {
  Timer timer;
  RunOptions ro;
  ro.fd = opts.fd;

  // Loss sweep.
  const Table loss = parse_csv(run_to_csv(builtin_config("loss_sweep"), ro));
  const int cr = loss.column("r"), ce = loss.column("eta"), cf = loss.column("odd_fraction"),
            cp = loss.column("purity");
  Check low{"loss r=0.5: odd_fraction for eta < 0.02 (< 1/2)", 0.5};
  Check high{"loss r=0.5: odd_fraction for eta > 0.98 (< 1/2)", 0.5};
  Check mid{"loss r=0.5: 1 - odd_fraction at eta = 0.5 (< 1/2)", 0.5};
  Check steep{"loss: odd_fraction at max |d mu/d eta| (< 1/2)", 0.5};
  std::map<double, std::vector<std::size_t>> by_r;
  for (std::size_t i = 0; i < loss.rows.size(); ++i) by_r[loss.number(i, cr)].push_back(i);
  for (const auto& [r, idx] : by_r) {
    double best = -1.0;
    std::size_t at = idx.front();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::size_t i = idx[j];
      const double eta = loss.number(i, ce), f = loss.number(i, cf);
      if (r == 0.5) {
        if (eta < 0.02) low.add(f);
        if (eta > 0.98) high.add(f);
        if (std::abs(eta - 0.5) < 1e-9) mid.add(1.0 - f);
      }
      if (j == 0 || j + 1 == idx.size()) continue;
      const double slope = std::abs((loss.number(idx[j + 1], cp) - loss.number(idx[j - 1], cp)) /
                                    (loss.number(idx[j + 1], ce) - loss.number(idx[j - 1], ce)));
      if (slope > best) {
        best = slope;
        at = i;
      }
    }
    steep.add(loss.number(at, cf));
  }
  for (Check* c : {&low, &high, &steep}) c->tol = std::nextafter(0.5, 0.0);
  mid.tol = std::nextafter(0.5, 0.0);

  // Amplifier sweep.
  const Table amp = parse_csv(run_to_csv(builtin_config("amplifier_sweep"), ro));
  const int ar = amp.column("r"), ag = amp.column("g"), af = amp.column("odd_fraction"),
            ap = amp.column("purity");
  Check amp_low{"amplifier: odd_fraction for g - 1 < 0.02 (< 1/2)", std::nextafter(0.5, 0.0)};
  Check amp_steep{"amplifier: odd_fraction at max |d mu/d g| (< 1/2)", std::nextafter(0.5, 0.0)};
  Check amp_range{"amplifier: odd_fraction outside [0, 1]", 0.0};
  double amp_peak = 0.0;
  std::map<double, std::vector<std::size_t>> amp_r;
  for (std::size_t i = 0; i < amp.rows.size(); ++i) amp_r[amp.number(i, ar)].push_back(i);
  for (const auto& [r, idx] : amp_r) {
    double best = -1.0;
    std::size_t at = idx.front();
    for (std::size_t j = 0; j < idx.size(); ++j) {
      const std::size_t i = idx[j];
      const double g = amp.number(i, ag), f = amp.number(i, af);
      amp_range.add(std::max(0.0, std::max(-f, f - 1.0)));
      if (r == 0.5) amp_peak = std::max(amp_peak, f);
      if (g - 1.0 < 0.02) amp_low.add(f);
      if (j == 0 || j + 1 == idx.size()) continue;
      const double slope = std::abs((amp.number(idx[j + 1], ap) - amp.number(idx[j - 1], ap)) /
                                    (amp.number(idx[j + 1], ag) - amp.number(idx[j - 1], ag)));
      if (slope > best) {
        best = slope;
        at = i;
      }
    }
    amp_steep.add(amp.number(at, af));
  }
  return finish(9, "figure-shape reproduction",
                {low, high, mid, steep, amp_low, amp_steep, amp_range}, timer,
                "amplifier r=0.5 peak odd_fraction " + sci(amp_peak));
}

const std::vector<std::string>& acceptance_suites() {
  static const std::vector<std::string> s = {"golden", "oracle", "structure", "all"};
  return s;
}

std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            const AcceptanceOptions& opts) {
  using Fn = CriterionResult (*)(const AcceptanceOptions&);
  std::vector<Fn> fns;
  const bool all = suite == "all";
  if (all || suite == "golden") {
    fns.insert(fns.end(), {criterion_beam_splitter, criterion_thermal_contrast, criterion_loss,
                           criterion_thermometry, criterion_phase_loss});
  }
  if (all || suite == "oracle") fns.push_back(criterion_oracle);
  if (all || suite == "structure") {
    fns.insert(fns.end(), {criterion_structure, criterion_purity_bound});
  }
  if (all || suite == "golden") fns.push_back(criterion_figure_shapes);
  if (fns.empty()) throw std::invalid_argument("unknown acceptance suite '" + suite + "'");
  std::vector<CriterionResult> out;
  for (Fn f : fns) out.push_back(f(opts));
  return out;
}

std::string format_result(const CriterionResult& r) {
  char head[160];
  std::snprintf(head, sizeof head, "criterion %d %s %s: worst/tol %.3g, %.3f s | ", r.id,
                r.passed ? "PASS" : "FAIL", r.title.c_str(), r.worst, r.seconds);
  return head + r.detail;
}

}  // namespace gqfi
