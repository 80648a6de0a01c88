// Acceptance harness: closed-form regressions, oracle comparisons and
// structural checks, one result per numbered criterion.

#pragma once

#include "gqfi/derivatives.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace gqfi {

struct CriterionResult {
  int id = 0;
  std::string title;
  bool passed = false;
  double worst = 0.0;      // largest residual seen, in the units of `tolerance`
  double tolerance = 0.0;
  std::string detail;
  double seconds = 0.0;
};

struct AcceptanceOptions {
  std::uint64_t seed = 20240611;
  FiniteDifference fd;
  int samples = 1000;  // random families for the oracle, structure and bound suites
};

CriterionResult criterion_beam_splitter(const AcceptanceOptions& opts);       // 1
CriterionResult criterion_thermal_contrast(const AcceptanceOptions& opts);    // 2
CriterionResult criterion_loss(const AcceptanceOptions& opts);                // 3
CriterionResult criterion_thermometry(const AcceptanceOptions& opts);         // 4
CriterionResult criterion_phase_loss(const AcceptanceOptions& opts);          // 5
CriterionResult criterion_oracle(const AcceptanceOptions& opts);              // 6
CriterionResult criterion_structure(const AcceptanceOptions& opts);           // 7
CriterionResult criterion_purity_bound(const AcceptanceOptions& opts);        // 8
CriterionResult criterion_figure_shapes(const AcceptanceOptions& opts);       // 9

/// Suites: "golden" (1-5, 9), "oracle" (6), "structure" (7, 8), "all".
/// Throws std::invalid_argument for an unknown suite.
std::vector<CriterionResult> run_acceptance(const std::string& suite,
                                            const AcceptanceOptions& opts = {});

/// "criterion N PASS|FAIL title: detail (worst ..., tol ..., ... s)".
std::string format_result(const CriterionResult& r);

const std::vector<std::string>& acceptance_suites();

}  // namespace gqfi
