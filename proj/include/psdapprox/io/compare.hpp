#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "psdapprox/analyze.hpp"
#include "psdapprox/core.hpp"
#include "psdapprox/testgen.hpp"

namespace psdapprox::io {

struct CompareInput {
  std::string id;
  HermitianMatrix<double> matrix;
  /// Diagonal bounds; the pivot bounds are overridden by the sweep.
  BoundsConfig bounds;
};

struct CompareConfig {
  std::vector<PivotStrategy> strategies{PivotStrategy::max_d};
  std::vector<double> pivot_mins{1e-8};
  std::vector<bool> varying{false};
  double pivot_max = kInf;
};

struct CompareRow {
  std::string id;
  Index n = 0;
  PivotStrategy strategy = PivotStrategy::max_d;
  double pivot_min = 0.0;
  bool varying = false;
  double err_fro = 0.0;
  double err_inf = 0.0;
  double oracle_error = 0.0;
  bool oracle_is_lower_bound = false;
  double kappa_B = 0.0;  // eigenvalue ratio of B
  Definiteness definiteness = Definiteness::indefinite;
  double wall_time_ms = 0.0;
};

struct CompareResult {
  std::vector<CompareRow> rows;
};

/// Inputs for `count` seeds per dimension, seeds base_seed, base_seed + 1, ...
/// Correlation scenarios get a fixed unit diagonal, eigenvalue-range
/// scenarios unconstrained diagonals.
std::vector<CompareInput> scenario_inputs(const testgen::ScenarioSpec& base, const std::vector<Index>& dims,
                                          int count);

/// Runs every (strategy, pivot_min, varying) configuration on every input.
CompareResult run_compare(const std::vector<CompareInput>& inputs, const CompareConfig& cfg);

double median(std::vector<double> v);

/// Rows plus per-configuration medians of err_fro, err_fro / oracle_error and
/// kappa_B, and, for each condition cap (none, 10n, 5n, 2n), the median over
/// matrices of the smallest relative error among pivot_min values meeting the
/// cap.
nlohmann::json to_json(const CompareResult& r);
std::string to_csv(const CompareResult& r);

}  // namespace psdapprox::io
