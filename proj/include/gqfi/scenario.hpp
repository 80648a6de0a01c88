// Declarative sensing scenarios: JSON configs, parameter sweeps and CSV
// output.

#pragma once

#include "gqfi/channels.hpp"
#include "gqfi/qfi_split.hpp"

#include <array>
#include <iosfwd>
#include <map>
#include <optional>
#include <string>
#include <vector>

namespace gqfi {

struct ParameterSpec {
  std::string name;
  std::vector<double> grid;
};

/// A scalar that is either fixed or an affine function of one parameter.
struct ValueSpec {
  std::optional<std::string> param;
  double value = 0.0;
  double scale = 1.0;
  double offset = 0.0;
};

struct InitialSpec {
  enum class Kind { Vacuum, Thermal, ThermalBath, Graph };
  Kind kind = Kind::Vacuum;
  std::vector<ValueSpec> nu;  // Thermal: one symplectic eigenvalue per mode
  ValueSpec omega;            // ThermalBath: mode frequency (shared by all modes)
  ValueSpec temperature;      // ThermalBath
  Matrix x, y;                // Graph
};

struct StageSpec {
  std::string kind;
  std::vector<Index> modes;
  ValueSpec parameter;
};

enum class Output { QfiSplit, QfimSplit, Purity, OddFraction, SectorVectors, BoundCheck };

struct ScenarioConfig {
  std::string name;
  std::string description;
  Index modes = 1;
  InitialSpec initial;
  std::vector<StageSpec> stages;
  std::vector<ParameterSpec> parameters;
  std::vector<std::string> estimate;  // parameters to differentiate, in QFIM order
  std::vector<Output> outputs;
  DerivativeMode derivative = DerivativeMode::Analytic;
  std::map<std::string, double> sector_sign_center;  // v_p even component *= sign(p - center)
};

/// Parses and validates a JSON document. Throws Error(ConfigInvalid) naming
/// the offending field as a JSON pointer, or the parse position for syntax
/// errors.
ScenarioConfig parse_config(const std::string& json_text);
ScenarioConfig load_config(const std::string& path);

/// Checks cross-references and domains on an already parsed config.
void validate_config(const ScenarioConfig& config);

/// Builds the pipeline; theta is ordered as config.parameters.
ScenarioPath build_path(const ScenarioConfig& config);

struct RunOptions {
  FiniteDifference fd;
  SplitOptions split;
};

struct ResultRow {
  std::vector<double> params;
  double even = 0.0;
  double odd = 0.0;
  double total = 0.0;
  double odd_fraction = 0.0;
  double purity = 0.0;
  double bound_lhs = 0.0;
  double bound_rhs = 0.0;
  std::vector<std::string> flags;
};

struct QfimRow {
  std::vector<double> params;
  Matrix even;
  Matrix odd;
  Matrix total;
  std::vector<std::array<double, 2>> sector_vectors;  // (even, odd) per estimated parameter
  double purity = 0.0;
  std::vector<std::string> flags;
};

/// Sweep points in lexicographic order, first parameter outermost.
std::vector<std::vector<double>> sweep_points(const ScenarioConfig& config);

/// Single-parameter run; requires exactly one estimated parameter.
std::vector<ResultRow> run_scenario(const ScenarioConfig& config, const RunOptions& opts = {});

/// Multi-parameter run over the estimated parameters.
std::vector<QfimRow> run_qfim_scenario(const ScenarioConfig& config, const RunOptions& opts = {});

/// CSV with a header row and %.17g numbers.
void write_csv(std::ostream& os, const ScenarioConfig& config, const std::vector<ResultRow>& rows);
void write_csv(std::ostream& os, const ScenarioConfig& config, const std::vector<QfimRow>& rows);

/// Runs the scenario (QFIM form when more than one parameter is estimated)
/// and returns the CSV text.
std::string run_to_csv(const ScenarioConfig& config, const RunOptions& opts = {});

/// Embedded configs.
const std::vector<std::string>& builtin_names();
std::string builtin_config_text(const std::string& name);
ScenarioConfig builtin_config(const std::string& name);

}  // namespace gqfi
