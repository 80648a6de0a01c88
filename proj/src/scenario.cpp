#include "gqfi/scenario.hpp"

#include "gqfi/siegel.hpp"

#include "json.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <limits>
#include <set>
#include <sstream>

namespace gqfi {

using nlohmann::json;

namespace {

// Error text without its leading code tag.
std::string message_of(const Error& e) {
  std::string msg = e.what();
  const std::string prefix = std::string(to_string(e.code())) + ": ";
  if (msg.rfind(prefix, 0) == 0) msg.erase(0, prefix.size());
  return msg;
}

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

[[noreturn]] void fail(const std::string& pointer, const std::string& message) {
  throw Error(ErrorCode::ConfigInvalid, (pointer.empty() ? "/" : pointer) + ": " + message);
}

void only_keys(const json& j, const std::string& ptr, std::initializer_list<const char*> keys) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool known = false;
    for (const char* k : keys) known = known || it.key() == k;
    if (!known) fail(ptr + "/" + it.key(), "unknown field");
  }
}

const json& require(const json& j, const std::string& ptr, const char* key) {
  if (!j.contains(key)) fail(ptr + "/" + key, "required field missing");
  return j.at(key);
}

double number(const json& j, const std::string& ptr) {
  if (!j.is_number()) fail(ptr, "expected a number");
  const double v = j.get<double>();
  if (!std::isfinite(v)) fail(ptr, "expected a finite number");
  return v;
}

std::string text(const json& j, const std::string& ptr) {
  if (!j.is_string()) fail(ptr, "expected a string");
  return j.get<std::string>();
}

Index integer(const json& j, const std::string& ptr) {
  if (!j.is_number_integer()) fail(ptr, "expected an integer");
  return j.get<Index>();
}

ValueSpec parse_value(const json& j, const std::string& ptr) {
  ValueSpec v;
  if (j.is_number()) {
    v.value = number(j, ptr);
    return v;
  }
  if (!j.is_object()) fail(ptr, "expected a number or {\"param\": name, \"scale\", \"offset\"}");
  only_keys(j, ptr, {"param", "scale", "offset"});
  v.param = text(require(j, ptr, "param"), ptr + "/param");
  if (j.contains("scale")) v.scale = number(j.at("scale"), ptr + "/scale");
  if (j.contains("offset")) v.offset = number(j.at("offset"), ptr + "/offset");
  return v;
}

Matrix parse_matrix(const json& j, const std::string& ptr, Index n) {
  if (!j.is_array() || static_cast<Index>(j.size()) != n) {
    fail(ptr, "expected an array of " + std::to_string(n) + " rows");
  }
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) {
    const json& row = j.at(i);
    const std::string rp = ptr + "/" + std::to_string(i);
    if (!row.is_array() || static_cast<Index>(row.size()) != n) {
      fail(rp, "expected a row of " + std::to_string(n) + " numbers");
    }
    for (Index k = 0; k < n; ++k) m(i, k) = number(row.at(k), rp + "/" + std::to_string(k));
  }
  return m;
}

InitialSpec parse_initial(const json& j, Index modes) {
  const std::string ptr = "/initial";
  if (!j.is_object()) fail(ptr, "expected an object");
  InitialSpec s;
  const std::string type = text(require(j, ptr, "type"), ptr + "/type");
  if (type == "vacuum") {
    only_keys(j, ptr, {"type"});
    s.kind = InitialSpec::Kind::Vacuum;
  } else if (type == "thermal") {
    only_keys(j, ptr, {"type", "nu"});
    s.kind = InitialSpec::Kind::Thermal;
    const json& nu = require(j, ptr, "nu");
    if (!nu.is_array() || static_cast<Index>(nu.size()) != modes) {
      fail(ptr + "/nu", "expected one value per mode (" + std::to_string(modes) + ")");
    }
    for (std::size_t i = 0; i < nu.size(); ++i) {
      s.nu.push_back(parse_value(nu.at(i), ptr + "/nu/" + std::to_string(i)));
    }
  } else if (type == "thermal_bath") {
    only_keys(j, ptr, {"type", "omega", "temperature"});
    s.kind = InitialSpec::Kind::ThermalBath;
    s.omega = parse_value(require(j, ptr, "omega"), ptr + "/omega");
    s.temperature = parse_value(require(j, ptr, "temperature"), ptr + "/temperature");
  } else if (type == "graph") {
    only_keys(j, ptr, {"type", "x", "y"});
    s.kind = InitialSpec::Kind::Graph;
    s.x = parse_matrix(require(j, ptr, "x"), ptr + "/x", modes);
    s.y = parse_matrix(require(j, ptr, "y"), ptr + "/y", modes);
  } else {
    fail(ptr + "/type", "unknown initial state type '" + type +
                            "' (vacuum, thermal, thermal_bath, graph)");
  }
  return s;
}

ParameterSpec parse_parameter(const json& j, const std::string& ptr) {
  if (!j.is_object()) fail(ptr, "expected an object");
  only_keys(j, ptr, {"name", "grid", "start", "stop", "count", "step"});
  ParameterSpec p;
  p.name = text(require(j, ptr, "name"), ptr + "/name");
  if (j.contains("grid")) {
    if (j.contains("start") || j.contains("stop") || j.contains("count") || j.contains("step")) {
      fail(ptr, "give either grid or start/stop with count or step, not both");
    }
    const json& g = j.at("grid");
    if (!g.is_array()) fail(ptr + "/grid", "expected an array of numbers");
    for (std::size_t i = 0; i < g.size(); ++i) {
      p.grid.push_back(number(g.at(i), ptr + "/grid/" + std::to_string(i)));
    }
  } else {
    const double start = number(require(j, ptr, "start"), ptr + "/start");
    const double stop = number(require(j, ptr, "stop"), ptr + "/stop");
    Index count = 0;
    if (j.contains("count") == j.contains("step")) {
      fail(ptr, "give exactly one of count or step");
    }
    if (j.contains("count")) {
      count = integer(j.at("count"), ptr + "/count");
      if (count < 1) fail(ptr + "/count", "must be at least 1");
    } else {
      const double step = number(j.at("step"), ptr + "/step");
      if (step <= 0.0) fail(ptr + "/step", "must be positive");
      count = static_cast<Index>(std::llround((stop - start) / step)) + 1;
      if (count < 1) fail(ptr, "stop lies before start");
    }
    for (Index i = 0; i < count; ++i) {
      p.grid.push_back(count == 1 ? start
                                  : start + (stop - start) * static_cast<double>(i) /
                                                static_cast<double>(count - 1));
    }
  }
  if (p.grid.empty()) fail(ptr + "/grid", "grid must not be empty");
  return p;
}

Output parse_output(const json& j, const std::string& ptr) {
  const std::string s = text(j, ptr);
  if (s == "qfi_split") return Output::QfiSplit;
  if (s == "qfim_split") return Output::QfimSplit;
  if (s == "purity") return Output::Purity;
  if (s == "odd_fraction") return Output::OddFraction;
  if (s == "sector_vectors") return Output::SectorVectors;
  if (s == "bound_check") return Output::BoundCheck;
  fail(ptr, "unknown output '" + s +
                "' (qfi_split, qfim_split, purity, odd_fraction, sector_vectors, bound_check)");
}

ScenarioConfig parse_document(const json& root) {
  if (!root.is_object()) fail("", "expected a JSON object");
  only_keys(root, "", {"name", "description", "modes", "initial", "stages", "parameters",
                       "estimate", "outputs", "derivative", "sector_sign_center"});
  ScenarioConfig c;
  c.name = text(require(root, "", "name"), "/name");
  if (root.contains("description")) c.description = text(root.at("description"), "/description");
  c.modes = integer(require(root, "", "modes"), "/modes");
  if (c.modes < 1) fail("/modes", "must be at least 1");
  c.initial = parse_initial(require(root, "", "initial"), c.modes);

  if (root.contains("stages")) {
    const json& st = root.at("stages");
    if (!st.is_array()) fail("/stages", "expected an array");
    for (std::size_t i = 0; i < st.size(); ++i) {
      const std::string ptr = "/stages/" + std::to_string(i);
      const json& s = st.at(i);
      if (!s.is_object()) fail(ptr, "expected an object");
      only_keys(s, ptr, {"kind", "modes", "value"});
      StageSpec spec;
      spec.kind = text(require(s, ptr, "kind"), ptr + "/kind");
      if (s.contains("modes")) {
        const json& m = s.at("modes");
        if (!m.is_array()) fail(ptr + "/modes", "expected an array of mode indices");
        for (std::size_t k = 0; k < m.size(); ++k) {
          spec.modes.push_back(integer(m.at(k), ptr + "/modes/" + std::to_string(k)));
        }
      }
      spec.parameter = parse_value(require(s, ptr, "value"), ptr + "/value");
      c.stages.push_back(std::move(spec));
    }
  }

  const json& params = require(root, "", "parameters");
  if (!params.is_array() || params.empty()) fail("/parameters", "expected a non-empty array");
  for (std::size_t i = 0; i < params.size(); ++i) {
    c.parameters.push_back(parse_parameter(params.at(i), "/parameters/" + std::to_string(i)));
  }

  if (root.contains("estimate")) {
    const json& e = root.at("estimate");
    if (!e.is_array() || e.empty()) fail("/estimate", "expected a non-empty array of names");
    for (std::size_t i = 0; i < e.size(); ++i) {
      c.estimate.push_back(text(e.at(i), "/estimate/" + std::to_string(i)));
    }
  } else if (c.parameters.size() == 1) {
    c.estimate.push_back(c.parameters[0].name);
  } else {
    fail("/estimate", "required when more than one parameter is declared");
  }

  if (root.contains("outputs")) {
    const json& o = root.at("outputs");
    if (!o.is_array() || o.empty()) fail("/outputs", "expected a non-empty array");
    for (std::size_t i = 0; i < o.size(); ++i) {
      c.outputs.push_back(parse_output(o.at(i), "/outputs/" + std::to_string(i)));
    }
  } else if (c.estimate.size() == 1) {
    c.outputs = {Output::QfiSplit, Output::OddFraction, Output::Purity, Output::BoundCheck};
  } else {
    c.outputs = {Output::QfimSplit, Output::SectorVectors, Output::Purity};
  }

  if (root.contains("derivative")) {
    const std::string d = text(root.at("derivative"), "/derivative");
    if (d == "analytic") {
      c.derivative = DerivativeMode::Analytic;
    } else if (d == "finite_difference") {
      c.derivative = DerivativeMode::FiniteDifference;
    } else {
      fail("/derivative", "expected 'analytic' or 'finite_difference'");
    }
  }

  if (root.contains("sector_sign_center")) {
    const json& s = root.at("sector_sign_center");
    if (!s.is_object()) fail("/sector_sign_center", "expected an object of name: center");
    for (auto it = s.begin(); it != s.end(); ++it) {
      c.sector_sign_center[it.key()] = number(it.value(), "/sector_sign_center/" + it.key());
    }
  }
  validate_config(c);
  return c;
}

int param_index(const ScenarioConfig& c, const std::string& name) {
  for (std::size_t i = 0; i < c.parameters.size(); ++i) {
    if (c.parameters[i].name == name) return static_cast<int>(i);
  }
  return -1;
}

// Every value the spec takes over the sweep.
std::vector<double> value_range(const ScenarioConfig& c, const ValueSpec& v) {
  if (!v.param) return {v.value};
  std::vector<double> out;
  for (double g : c.parameters[param_index(c, *v.param)].grid) out.push_back(v.scale * g + v.offset);
  return out;
}

void check_value(const ScenarioConfig& c, const ValueSpec& v, const std::string& ptr) {
  if (v.param && param_index(c, *v.param) < 0) {
    fail(ptr + "/param", "unknown parameter '" + *v.param + "'");
  }
}

Binding to_binding(const ScenarioConfig& c, const ValueSpec& v) {
  if (!v.param) return Binding::fixed(v.value);
  return Binding::param(param_index(c, *v.param), v.scale, v.offset);
}

// k = coth(omega / 2T) / 2 and its partial derivatives.
struct BathLevel {
  double k, dk_domega, dk_dt;
};
BathLevel bath_level(double omega, double t) {
  const double x = omega / (2.0 * t);
  const double csch2 = 1.0 / (std::sinh(x) * std::sinh(x));
  return {0.5 / std::tanh(x), -csch2 / (4.0 * t), omega * csch2 / (4.0 * t * t)};
}

CovarianceFamily initial_family(const ScenarioConfig& c) {
  const Index n = c.modes;
  const Index p = static_cast<Index>(c.parameters.size());
  const InitialSpec& init = c.initial;
  switch (init.kind) {
    case InitialSpec::Kind::Vacuum:
      return constant_initial(0.5 * Matrix::Identity(2 * n, 2 * n), p);
    case InitialSpec::Kind::Graph: {
      const GraphMatrix z = GraphMatrix::validated(init.x, init.y);
      return constant_initial(pure_covariance(z), p);
    }
    case InitialSpec::Kind::Thermal: {
      std::vector<Binding> nu;
      for (const ValueSpec& v : init.nu) nu.push_back(to_binding(c, v));
      CovarianceFamily f;
      f.parameters = p;
      f.value = [nu, n](const Vector& theta) {
        Vector k(n);
        for (Index i = 0; i < n; ++i) k(i) = nu[i].at(theta);
        return doubled_diagonal(k);
      };
      f.gradient = [nu, n, p](const Vector&) {
        std::vector<Matrix> g(p, Matrix::Zero(2 * n, 2 * n));
        for (Index i = 0; i < n; ++i) {
          if (nu[i].parameter < 0) continue;
          g[nu[i].parameter](i, i) += nu[i].scale;
          g[nu[i].parameter](n + i, n + i) += nu[i].scale;
        }
        return g;
      };
      return f;
    }
    case InitialSpec::Kind::ThermalBath: {
      const Binding om = to_binding(c, init.omega);
      const Binding temp = to_binding(c, init.temperature);
      CovarianceFamily f;
      f.parameters = p;
      f.value = [om, temp, n](const Vector& theta) {
        const double k = bath_level(om.at(theta), temp.at(theta)).k;
        return Matrix(k * Matrix::Identity(2 * n, 2 * n));
      };
      f.gradient = [om, temp, n, p](const Vector& theta) {
        const BathLevel b = bath_level(om.at(theta), temp.at(theta));
        std::vector<Matrix> g(p, Matrix::Zero(2 * n, 2 * n));
        for (Index a = 0; a < p; ++a) {
          const int ai = static_cast<int>(a);
          const double rate = b.dk_domega * om.rate(ai) + b.dk_dt * temp.rate(ai);
          g[a] = rate * Matrix::Identity(2 * n, 2 * n);
        }
        return g;
      };
      return f;
    }
  }
  throw std::logic_error("unhandled initial state kind");
}

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

std::string join_flags(const std::vector<std::string>& flags) {
  std::string out;
  for (const std::string& f : flags) out += (out.empty() ? "" : ";") + f;
  return out;
}

bool wants(const ScenarioConfig& c, Output o) {
  for (Output x : c.outputs) {
    if (x == o) return true;
  }
  return false;
}

std::vector<int> estimate_indices(const ScenarioConfig& c) {
  std::vector<int> idx;
  for (const std::string& e : c.estimate) idx.push_back(param_index(c, e));
  return idx;
}

}  // namespace

void validate_config(const ScenarioConfig& c) {
  std::set<std::string> names;
  for (std::size_t i = 0; i < c.parameters.size(); ++i) {
    const std::string ptr = "/parameters/" + std::to_string(i);
    if (!names.insert(c.parameters[i].name).second) {
      fail(ptr + "/name", "duplicate parameter '" + c.parameters[i].name + "'");
    }
    if (c.parameters[i].grid.empty()) fail(ptr + "/grid", "grid must not be empty");
  }

  const InitialSpec& init = c.initial;
  if (init.kind == InitialSpec::Kind::Thermal) {
    for (std::size_t i = 0; i < init.nu.size(); ++i) {
      const std::string ptr = "/initial/nu/" + std::to_string(i);
      check_value(c, init.nu[i], ptr);
      for (double v : value_range(c, init.nu[i])) {
        if (v < 0.5) fail(ptr, "symplectic eigenvalue " + fmt(v) + " below 1/2");
      }
    }
  } else if (init.kind == InitialSpec::Kind::ThermalBath) {
    check_value(c, init.omega, "/initial/omega");
    check_value(c, init.temperature, "/initial/temperature");
    for (double v : value_range(c, init.omega)) {
      if (v <= 0.0) fail("/initial/omega", "frequency must be positive");
    }
    for (double v : value_range(c, init.temperature)) {
      if (v <= 0.0) fail("/initial/temperature", "temperature must be positive");
    }
  } else if (init.kind == InitialSpec::Kind::Graph) {
    try {
      (void)GraphMatrix::validated(init.x, init.y);
    } catch (const Error& e) {
      fail("/initial", message_of(e));
    }
  }

  for (std::size_t i = 0; i < c.stages.size(); ++i) {
    const std::string ptr = "/stages/" + std::to_string(i);
    const StageSpec& s = c.stages[i];
    check_value(c, s.parameter, ptr + "/value");
    std::variant<GaussianUnitaryFamily, GaussianChannelFamily> op;
    const std::vector<std::string>& kinds = stage_kinds();
    if (std::find(kinds.begin(), kinds.end(), s.kind) == kinds.end()) {
      fail(ptr + "/kind", "unknown stage kind '" + s.kind + "'");
    }
    try {
      op = make_stage(s.kind, c.modes, s.modes);
    } catch (const Error& e) {
      fail(ptr + "/modes", message_of(e));
    }
    if (const auto* ch = std::get_if<GaussianChannelFamily>(&op)) {
      for (double v : value_range(c, s.parameter)) {
        if (!ch->in_domain(v)) {
          fail(ptr + "/value", ch->name + " parameter " + fmt(v) + " outside [" +
                                   fmt(ch->lower) + ", " + fmt(ch->upper) + "]");
        }
      }
    }
  }

  std::set<std::string> est;
  for (std::size_t i = 0; i < c.estimate.size(); ++i) {
    const std::string ptr = "/estimate/" + std::to_string(i);
    if (param_index(c, c.estimate[i]) < 0) fail(ptr, "unknown parameter '" + c.estimate[i] + "'");
    if (!est.insert(c.estimate[i]).second) fail(ptr, "duplicate estimate '" + c.estimate[i] + "'");
  }
  if (c.estimate.empty()) fail("/estimate", "at least one parameter must be estimated");
  for (const auto& [name, center] : c.sector_sign_center) {
    if (!est.count(name)) {
      fail("/sector_sign_center/" + name, "not an estimated parameter");
    }
  }
}

ScenarioConfig parse_config(const std::string& json_text) {
  json root;
  try {
    root = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw Error(ErrorCode::ConfigInvalid, std::string("JSON syntax error: ") + e.what(),
                static_cast<double>(e.byte));
  }
  return parse_document(root);
}

ScenarioConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::ConfigInvalid, "cannot open config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    return parse_config(ss.str());
  } catch (const Error& e) {
    throw Error(e.code(), path + ": " + message_of(e), e.magnitude());
  }
}

ScenarioPath build_path(const ScenarioConfig& c) {
  ScenarioPath path;
  path.initial = initial_family(c);
  for (const StageSpec& s : c.stages) {
    path.stages.push_back({make_stage(s.kind, c.modes, s.modes), to_binding(c, s.parameter)});
  }
  return path;
}

std::vector<std::vector<double>> sweep_points(const ScenarioConfig& c) {
  std::vector<std::vector<double>> points{{}};
  for (const ParameterSpec& p : c.parameters) {
    std::vector<std::vector<double>> next;
    for (const auto& prefix : points) {
      for (double g : p.grid) {
        next.push_back(prefix);
        next.back().push_back(g);
      }
    }
    points = std::move(next);
  }
  return points;
}

std::vector<ResultRow> run_scenario(const ScenarioConfig& c, const RunOptions& opts) {
  if (c.estimate.size() != 1) {
    throw Error(ErrorCode::ConfigInvalid,
                "/estimate: run_scenario needs exactly one estimated parameter");
  }
  const ScenarioPath path = build_path(c);
  const int a = estimate_indices(c)[0];
  SplitOptions split = opts.split;
  split.fd = opts.fd;

  std::vector<ResultRow> rows;
  for (const auto& point : sweep_points(c)) {
    ResultRow row;
    row.params = point;
    const Vector theta = Eigen::Map<const Vector>(point.data(), static_cast<Index>(point.size()));
    try {
      const PathPoint pp = path_covariance(path, theta, c.derivative, opts.fd, split.tol);
      const Matrix& dv = pp.gradient[a];
      const QfiSplit s = qfi_split_at(pp.value, dv, split);
      row.even = s.even;
      row.odd = s.odd;
      row.total = s.total;
      row.odd_fraction = s.total > 0.0 ? s.odd / s.total : kNaN;
      row.purity = purity(pp.value);
      if (s.near_pure) row.flags.push_back("near_pure");
      if (s.dropped_even_terms > 0) row.flags.push_back("pure_pairs_dropped");
      if (!pp.analytic && c.derivative == DerivativeMode::Analytic) {
        row.flags.push_back("fd_fallback");
      }
      try {
        const PurityBound b = purity_bound_at(pp.value, dv, split);
        row.bound_lhs = b.lhs;
        row.bound_rhs = b.rhs;
      } catch (const Error& e) {
        if (e.code() != ErrorCode::BoundDenominatorVanishes) throw;
        row.bound_lhs = s.even;
        row.bound_rhs = kNaN;
        row.flags.push_back("bound_undefined");
      }
    } catch (const Error& e) {
      row.even = row.odd = row.total = row.odd_fraction = kNaN;
      row.purity = row.bound_lhs = row.bound_rhs = kNaN;
      row.flags.push_back("error:" + std::string(to_string(e.code())));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::vector<QfimRow> run_qfim_scenario(const ScenarioConfig& c, const RunOptions& opts) {
  const ScenarioPath path = build_path(c);
  const std::vector<int> idx = estimate_indices(c);
  const Index p = static_cast<Index>(idx.size());
  SplitOptions split = opts.split;
  split.fd = opts.fd;

  std::vector<QfimRow> rows;
  for (const auto& point : sweep_points(c)) {
    QfimRow row;
    row.params = point;
    const Vector theta = Eigen::Map<const Vector>(point.data(), static_cast<Index>(point.size()));
    try {
      const PathPoint pp = path_covariance(path, theta, c.derivative, opts.fd, split.tol);
      std::vector<Matrix> dv;
      for (int i : idx) dv.push_back(pp.gradient[i]);
      const QfimSplit s = qfim_split_at(pp.value, dv, split);
      row.even = s.even;
      row.odd = s.odd;
      row.total = s.total;
      row.purity = purity(pp.value);
      for (Index k = 0; k < p; ++k) {
        double sign = 1.0;
        const auto center = c.sector_sign_center.find(c.estimate[k]);
        if (center != c.sector_sign_center.end()) {
          const double x = theta(idx[k]) - center->second;
          sign = x > 0.0 ? 1.0 : (x < 0.0 ? -1.0 : 0.0);
        }
        row.sector_vectors.push_back({sign * std::sqrt(std::max(0.0, s.even(k, k))),
                                      std::sqrt(std::max(0.0, s.odd(k, k)))});
      }
      if (s.near_pure) row.flags.push_back("near_pure");
      if (s.dropped_even_terms > 0) row.flags.push_back("pure_pairs_dropped");
      if (!pp.analytic && c.derivative == DerivativeMode::Analytic) {
        row.flags.push_back("fd_fallback");
      }
    } catch (const Error& e) {
      row.even = row.odd = row.total = Matrix::Constant(p, p, kNaN);
      row.sector_vectors.assign(p, {kNaN, kNaN});
      row.purity = kNaN;
      row.flags.push_back("error:" + std::string(to_string(e.code())));
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

void write_csv(std::ostream& os, const ScenarioConfig& c, const std::vector<ResultRow>& rows) {
  std::vector<std::string> header;
  for (const ParameterSpec& p : c.parameters) header.push_back(p.name);
  const bool split = wants(c, Output::QfiSplit) || wants(c, Output::QfimSplit);
  if (split) header.insert(header.end(), {"even", "odd", "total"});
  if (wants(c, Output::OddFraction)) header.push_back("odd_fraction");
  if (wants(c, Output::Purity)) header.push_back("purity");
  if (wants(c, Output::BoundCheck)) header.insert(header.end(), {"bound_lhs", "bound_rhs"});
  header.push_back("flags");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';

  for (const ResultRow& r : rows) {
    std::vector<std::string> cells;
    for (double v : r.params) cells.push_back(fmt(v));
    if (split) cells.insert(cells.end(), {fmt(r.even), fmt(r.odd), fmt(r.total)});
    if (wants(c, Output::OddFraction)) cells.push_back(fmt(r.odd_fraction));
    if (wants(c, Output::Purity)) cells.push_back(fmt(r.purity));
    if (wants(c, Output::BoundCheck)) {
      cells.insert(cells.end(), {fmt(r.bound_lhs), fmt(r.bound_rhs)});
    }
    cells.push_back(join_flags(r.flags));
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }
}

void write_csv(std::ostream& os, const ScenarioConfig& c, const std::vector<QfimRow>& rows) {
  const Index p = static_cast<Index>(c.estimate.size());
  std::vector<std::string> header;
  for (const ParameterSpec& par : c.parameters) header.push_back(par.name);
  const bool split = wants(c, Output::QfimSplit) || wants(c, Output::QfiSplit);
  if (split) {
    for (const char* sector : {"even", "odd", "total"}) {
      for (Index a = 0; a < p; ++a) {
        for (Index b = a; b < p; ++b) {
          header.push_back(std::string(sector) + "_" + c.estimate[a] + "_" + c.estimate[b]);
        }
      }
    }
  }
  if (wants(c, Output::SectorVectors)) {
    for (Index a = 0; a < p; ++a) {
      header.push_back("v_" + c.estimate[a] + "_even");
      header.push_back("v_" + c.estimate[a] + "_odd");
    }
  }
  if (wants(c, Output::Purity)) header.push_back("purity");
  header.push_back("flags");
  for (std::size_t i = 0; i < header.size(); ++i) os << (i ? "," : "") << header[i];
  os << '\n';

  for (const QfimRow& r : rows) {
    std::vector<std::string> cells;
    for (double v : r.params) cells.push_back(fmt(v));
    if (split) {
      for (const Matrix* m : {&r.even, &r.odd, &r.total}) {
        for (Index a = 0; a < p; ++a) {
          for (Index b = a; b < p; ++b) cells.push_back(fmt((*m)(a, b)));
        }
      }
    }
    if (wants(c, Output::SectorVectors)) {
      for (const auto& v : r.sector_vectors) {
        cells.push_back(fmt(v[0]));
        cells.push_back(fmt(v[1]));
      }
    }
    if (wants(c, Output::Purity)) cells.push_back(fmt(r.purity));
    cells.push_back(join_flags(r.flags));
    for (std::size_t i = 0; i < cells.size(); ++i) os << (i ? "," : "") << cells[i];
    os << '\n';
  }
}

std::string run_to_csv(const ScenarioConfig& c, const RunOptions& opts) {
  std::ostringstream os;
  if (c.estimate.size() == 1 && !wants(c, Output::QfimSplit) && !wants(c, Output::SectorVectors)) {
    write_csv(os, c, run_scenario(c, opts));
  } else {
    write_csv(os, c, run_qfim_scenario(c, opts));
  }
  return os.str();
}

ScenarioConfig builtin_config(const std::string& name) {
  return parse_config(builtin_config_text(name));
}

}  // namespace gqfi
