#include "psdapprox/io/report.hpp"

#include <cmath>

namespace psdapprox::io {

nlohmann::json json_number(double v) {
  if (std::isnan(v)) return "nan";
  if (std::isinf(v)) return v > 0 ? "inf" : "-inf";
  return v;
}

namespace {

nlohmann::json number_array(const std::vector<double>& v) {
  auto out = nlohmann::json::array();
  for (double x : v) out.push_back(json_number(x));
  return out;
}

}  // namespace

nlohmann::json bounds_to_json(const BoundsConfig& cfg) {
  nlohmann::json j;
  j["diag_min"] = number_array(cfg.diag_min);
  j["diag_max"] = number_array(cfg.diag_max);
  j["pivot_min"] = json_number(cfg.pivot_min);
  j["pivot_max"] = json_number(cfg.pivot_max);
  j["epsilon"] = cfg.epsilon ? json_number(*cfg.epsilon) : nlohmann::json(nullptr);
  j["varying_lower_bound"] = cfg.use_varying_lower_bound;
  return j;
}

nlohmann::json to_json(const RunReport& r) {
  const DiagnosticsReport& d = r.diagnostics;
  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["n"] = r.n;
  j["scalar"] = r.complex ? "complex" : "real";
  j["strategy"] = std::string(to_string(r.strategy));
  j["bounds"] = bounds_to_json(r.bounds);
  j["d_min"] = json_number(d.d_min);
  j["d_max"] = json_number(d.d_max);
  j["definiteness"] = std::string(to_string(d.definiteness));
  j["err_inf"] = json_number(d.err_inf);
  j["err_fro"] = json_number(d.err_fro);
  j["err_source"] = d.err_from_formula ? "formula" : "direct";
  j["err_2_upper"] = json_number(d.err_inf);
  j["err_inf_bound"] = json_number(d.err_inf_bound);
  j["err_fro_bound"] = json_number(d.err_fro_bound);
  j["kappa_L_bound"] = json_number(d.condition.kappa_L);
  j["kappa_D_bound"] = json_number(d.condition.kappa_D);
  j["kappa_B_bound"] = json_number(d.condition.kappa_B);
  j["determinant"] = json_number(d.det);
  if (r.oracle_error) {
    j["oracle_error"] = json_number(*r.oracle_error);
    j["oracle_note"] = r.oracle_is_lower_bound
                           ? "lower bound, not attainable under unit-diagonal constraint"
                           : "nearest positive semidefinite matrix (eigenvalue clipping)";
  }
  j["wall_time_ms"] = json_number(r.wall_time_ms);
  return j;
}

}  // namespace psdapprox::io
