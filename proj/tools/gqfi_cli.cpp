// gqfi: run sensing scenarios and the acceptance harness from the command line.
//
//   gqfi list
//   gqfi builtin <name> [--out file.csv]
//   gqfi run <config.json> [--out file.csv]
//   gqfi accept <golden|oracle|structure|all> [--seed N]
//
// Exit status: 0 success, 1 invalid input, 2 acceptance failure.

#include "gqfi/acceptance.hpp"
#include "gqfi/channels.hpp"
#include "gqfi/scenario.hpp"

#include "CLI11.hpp"

#include <fstream>
#include <iostream>

namespace {

constexpr int kOk = 0;
constexpr int kInvalid = 1;
constexpr int kAcceptanceFailed = 2;

void print_tolerances(const gqfi::RunOptions& ro, std::uint64_t seed) {
  const gqfi::Tolerances& t = ro.split.tol;
  std::cerr << "tolerances: psd " << t.psd << ", symplectic " << t.sympl << ", reconstruction "
            << t.recon << ", degeneracy " << t.degeneracy << " x max k, eigenvalue floor "
            << t.eigen_floor << ", condition cap " << t.condition_cap << "\n"
            << "split: pure alpha " << ro.split.pure_alpha << ", pure numerator "
            << ro.split.pure_numerator << ", near-pure alpha " << ro.split.near_pure_alpha
            << ", oracle cutoff " << ro.split.oracle_cutoff << "\n"
            << "finite differences: step " << ro.fd.step << ", agreement " << ro.fd.agreement
            << "\nseed " << seed << "\n";
}

int emit(const gqfi::ScenarioConfig& config, const gqfi::RunOptions& ro, const std::string& out) {
  const std::string csv = gqfi::run_to_csv(config, ro);
  if (out.empty()) {
    std::cout << csv;
    return kOk;
  }
  std::ofstream f(out, std::ios::binary);
  if (!f) {
    std::cerr << "error: cannot write " << out << "\n";
    return kInvalid;
  }
  f << csv;
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Even/odd quantum Fisher information for Gaussian sensing scenarios"};
  app.require_subcommand(1);

  std::uint64_t seed = gqfi::AcceptanceOptions{}.seed;
  std::string out;
  double fd_step = gqfi::FiniteDifference{}.step;
  bool tol_report = false;
  app.add_option("--seed", seed, "Seed for random families")->capture_default_str();
  app.add_option("--out", out, "Write CSV to this file instead of stdout");
  app.add_option("--fd-step", fd_step, "Relative finite-difference step")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);
  app.add_flag("--tol-report", tol_report, "Print the tolerances in use to stderr");

  std::string config_path;
  auto* run = app.add_subcommand("run", "Run a scenario config (JSON)");
  run->add_option("config", config_path, "Path to the config file")->required();

  std::string builtin;
  auto* bi = app.add_subcommand("builtin", "Run an embedded scenario");
  bi->add_option("name", builtin, "Builtin scenario name")->required();
  bool show_config = false;
  bi->add_flag("--show-config", show_config, "Print the embedded config instead of running it");

  std::string suite;
  auto* acc = app.add_subcommand("accept", "Run an acceptance suite");
  acc->add_option("suite", suite, "golden, oracle, structure or all")->required();
  int samples = gqfi::AcceptanceOptions{}.samples;
  acc->add_option("--samples", samples, "Random families per randomized check")
      ->capture_default_str()
      ->check(CLI::PositiveNumber);

  auto* list = app.add_subcommand("list", "List builtin scenarios, stage kinds and suites");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kInvalid;
  }

  gqfi::RunOptions ro;
  ro.fd.step = fd_step;
  ro.split.fd = ro.fd;
  if (tol_report) print_tolerances(ro, seed);

  try {
    if (*list) {
      std::cout << "builtin scenarios:\n";
      for (const std::string& n : gqfi::builtin_names()) std::cout << "  " << n << "\n";
      std::cout << "stage kinds:\n";
      for (const std::string& k : gqfi::stage_kinds()) std::cout << "  " << k << "\n";
      std::cout << "acceptance suites:\n";
      for (const std::string& s : gqfi::acceptance_suites()) std::cout << "  " << s << "\n";
      return kOk;
    }
    if (*run) return emit(gqfi::load_config(config_path), ro, out);
    if (*bi) {
      if (show_config) {
        std::cout << gqfi::builtin_config_text(builtin) << "\n";
        return kOk;
      }
      return emit(gqfi::builtin_config(builtin), ro, out);
    }
    if (*acc) {
      gqfi::AcceptanceOptions opts;
      opts.seed = seed;
      opts.fd = ro.fd;
      opts.samples = samples;
      bool ok = true;
      for (const gqfi::CriterionResult& r : gqfi::run_acceptance(suite, opts)) {
        std::cout << gqfi::format_result(r) << "\n";
        ok = ok && r.passed;
      }
      return ok ? kOk : kAcceptanceFailed;
    }
  } catch (const gqfi::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kInvalid;
  }
  return kOk;
}
