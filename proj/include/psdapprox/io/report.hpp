#pragma once

#include <optional>
#include <string>

#include <json.hpp>

#include "psdapprox/analyze.hpp"
#include "psdapprox/core.hpp"

namespace psdapprox::io {

inline constexpr int kReportSchema = 1;

/// Number, or "inf" / "-inf" / "nan" for non-finite values.
nlohmann::json json_number(double v);

nlohmann::json bounds_to_json(const BoundsConfig& cfg);

/// One approx/decompose run.
struct RunReport {
  Index n = 0;
  bool complex = false;
  PivotStrategy strategy = PivotStrategy::max_d;
  BoundsConfig bounds;  // epsilon resolved
  DiagnosticsReport diagnostics;
  std::optional<double> oracle_error;
  bool oracle_is_lower_bound = false;
  double wall_time_ms = 0.0;
};

nlohmann::json to_json(const RunReport& r);

}  // namespace psdapprox::io
