#include "psdapprox/io/compare.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <map>
#include <sstream>
#include <tuple>

#include "psdapprox/factorize.hpp"
#include "psdapprox/io/matrix_market.hpp"
#include "psdapprox/io/report.hpp"
#include "psdapprox/oracle.hpp"
#include "psdapprox/reconstruct.hpp"

namespace psdapprox::io {

namespace {

double relative_error(const CompareRow& r) {
  if (r.oracle_error > 0.0) return r.err_fro / r.oracle_error;
  return r.err_fro == 0.0 ? 1.0 : kInf;
}

double spectral_condition(const HermitianMatrix<double>& b) {
  const auto eig = oracle::jacobi_eigendecomposition(b);
  double lo = kInf;
  double hi = 0.0;
  for (double v : eig.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  return lo > 0.0 ? hi / lo : kInf;
}

bool has_finite_diag_bound(const BoundsConfig& cfg) {
  return std::any_of(cfg.diag_min.begin(), cfg.diag_min.end(), [](double v) { return std::isfinite(v); }) ||
         std::any_of(cfg.diag_max.begin(), cfg.diag_max.end(), [](double v) { return std::isfinite(v); });
}

}  // namespace

std::vector<CompareInput> scenario_inputs(const testgen::ScenarioSpec& base, const std::vector<Index>& dims,
                                          int count) {
  std::vector<CompareInput> out;
  std::uint64_t seed = base.seed;
  for (Index n : dims)
    for (int c = 0; c < count; ++c) {
      testgen::ScenarioSpec spec = base;
      spec.n = n;
      spec.seed = seed++;
      CompareInput in{std::string(testgen::to_string(spec.kind)) + "/n" + std::to_string(n) + "/seed" +
                          std::to_string(spec.seed),
                      testgen::generate(spec),
                      spec.kind == testgen::ScenarioKind::correlation_plus_noise ? BoundsConfig::fixed_diagonal(n, 1.0)
                                                                                 : BoundsConfig::unconstrained(n)};
      out.push_back(std::move(in));
    }
  return out;
}

CompareResult run_compare(const std::vector<CompareInput>& inputs, const CompareConfig& cfg) {
  CompareResult result;
  for (const CompareInput& in : inputs) {
    const auto& a = in.matrix;
    const double oracle_error = frobenius_norm(oracle::nearest_psd_eigclip(a).dense() - a.dense());
    for (PivotStrategy strategy : cfg.strategies)
      for (double l : cfg.pivot_mins)
        for (bool varying : cfg.varying) {
          BoundsConfig bounds = in.bounds;
          bounds.pivot_min = l;
          bounds.pivot_max = cfg.pivot_max;
          bounds.use_varying_lower_bound = varying;

          const auto start = std::chrono::steady_clock::now();
          const auto dec = decompose(a, bounds, strategy);
          const auto b = assemble(a, dec);
          const auto stop = std::chrono::steady_clock::now();

          const Matrix<double> diff = b.dense() - a.dense();
          CompareRow row;
          row.id = in.id;
          row.n = a.size();
          row.strategy = strategy;
          row.pivot_min = l;
          row.varying = varying;
          row.err_fro = frobenius_norm(diff);
          row.err_inf = inf_norm(diff);
          row.oracle_error = oracle_error;
          row.oracle_is_lower_bound = has_finite_diag_bound(bounds);
          row.kappa_B = spectral_condition(b);
          row.definiteness = psd_certificate(dec);
          row.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
          result.rows.push_back(std::move(row));
        }
  }
  return result;
}

double median(std::vector<double> v) {
  if (v.empty()) return std::nan("");
  std::sort(v.begin(), v.end());
  const std::size_t m = v.size() / 2;
  return v.size() % 2 ? v[m] : 0.5 * (v[m - 1] + v[m]);
}

nlohmann::json to_json(const CompareResult& r) {
  nlohmann::json j;
  j["schema"] = kReportSchema;
  auto rows = nlohmann::json::array();
  for (const CompareRow& row : r.rows) {
    rows.push_back({{"id", row.id},
                    {"n", row.n},
                    {"strategy", std::string(to_string(row.strategy))},
                    {"pivot_min", json_number(row.pivot_min)},
                    {"varying_lower_bound", row.varying},
                    {"err_fro", json_number(row.err_fro)},
                    {"err_inf", json_number(row.err_inf)},
                    {"oracle_error", json_number(row.oracle_error)},
                    {"oracle_is_lower_bound", row.oracle_is_lower_bound},
                    {"relative_error", json_number(relative_error(row))},
                    {"kappa_B", json_number(row.kappa_B)},
                    {"definiteness", std::string(to_string(row.definiteness))},
                    {"wall_time_ms", json_number(row.wall_time_ms)}});
  }
  j["rows"] = std::move(rows);

  // Per-configuration medians.
  using Key = std::tuple<PivotStrategy, double, bool>;
  std::map<Key, std::vector<const CompareRow*>> groups;
  for (const CompareRow& row : r.rows) groups[{row.strategy, row.pivot_min, row.varying}].push_back(&row);
  auto summary = nlohmann::json::array();
  for (const auto& [key, members] : groups) {
    std::vector<double> err, rel, kappa;
    for (const CompareRow* m : members) {
      err.push_back(m->err_fro);
      rel.push_back(relative_error(*m));
      kappa.push_back(m->kappa_B);
    }
    summary.push_back({{"strategy", std::string(to_string(std::get<0>(key)))},
                       {"pivot_min", json_number(std::get<1>(key))},
                       {"varying_lower_bound", std::get<2>(key)},
                       {"count", members.size()},
                       {"median_err_fro", json_number(median(err))},
                       {"median_relative_error", json_number(median(rel))},
                       {"median_kappa_B", json_number(median(kappa))}});
  }
  j["summary"] = std::move(summary);

  // Best error over the pivot_min sweep under a condition cap, per matrix.
  using Method = std::tuple<PivotStrategy, bool>;
  std::map<Method, std::map<std::string, std::vector<const CompareRow*>>> by_method;
  for (const CompareRow& row : r.rows) by_method[{row.strategy, row.varying}][row.id].push_back(&row);
  auto objectives = nlohmann::json::array();
  for (const auto& [method, per_matrix] : by_method) {
    for (double cap_factor : {0.0, 10.0, 5.0, 2.0}) {
      std::vector<double> best_rel;
      for (const auto& [id, rows] : per_matrix) {
        double best = kInf;
        for (const CompareRow* m : rows) {
          const double cap = cap_factor == 0.0 ? kInf : cap_factor * static_cast<double>(m->n);
          if (m->kappa_B <= cap) best = std::min(best, relative_error(*m));
        }
        if (std::isfinite(best)) best_rel.push_back(best);
      }
      objectives.push_back(
          {{"strategy", std::string(to_string(std::get<0>(method)))},
           {"varying_lower_bound", std::get<1>(method)},
           {"kappa_cap", cap_factor == 0.0 ? nlohmann::json("none") : nlohmann::json(std::to_string(static_cast<int>(cap_factor)) + "n")},
           {"matrices", per_matrix.size()},
           {"feasible", best_rel.size()},
           {"median_best_relative_error", json_number(median(best_rel))}});
    }
  }
  j["objectives"] = std::move(objectives);
  return j;
}

std::string to_csv(const CompareResult& r) {
  std::ostringstream os;
  os << "id,n,strategy,pivot_min,varying_lower_bound,err_fro,err_inf,oracle_error,oracle_is_lower_bound,"
        "relative_error,kappa_B,definiteness,wall_time_ms\n";
  for (const CompareRow& row : r.rows) {
    os << row.id << ',' << row.n << ',' << to_string(row.strategy) << ',' << format_double(row.pivot_min) << ','
       << (row.varying ? 1 : 0) << ',' << format_double(row.err_fro) << ',' << format_double(row.err_inf) << ','
       << format_double(row.oracle_error) << ',' << (row.oracle_is_lower_bound ? 1 : 0) << ','
       << format_double(relative_error(row)) << ',' << format_double(row.kappa_B) << ','
       << to_string(row.definiteness) << ',' << format_double(row.wall_time_ms) << '\n';
  }
  return os.str();
}

}  // namespace psdapprox::io
