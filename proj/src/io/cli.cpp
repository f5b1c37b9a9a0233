#include "psdapprox/io/cli.hpp"

#include <chrono>
#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "psdapprox/analyze.hpp"
#include "psdapprox/factorize.hpp"
#include "psdapprox/io/compare.hpp"
#include "psdapprox/io/matrix_market.hpp"
#include "psdapprox/io/report.hpp"
#include "psdapprox/oracle.hpp"
#include "psdapprox/reconstruct.hpp"
#include "psdapprox/testgen.hpp"

namespace psdapprox::io {

namespace {

struct BoundFlags {
  std::string diag_min = "-inf";
  std::string diag_max = "inf";
  std::string diag_fixed;
  std::string pivot_min = "0";
  std::string pivot_max = "inf";
  std::optional<double> epsilon;
  std::string strategy = "max-d";
  bool varying = false;
};

double parse_scalar(const std::string& s, const char* flag) {
  std::string t;
  for (char c : s) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  if (t == "inf" || t == "+inf") return kInf;
  if (t == "-inf") return -kInf;
  try {
    std::size_t used = 0;
    const double v = std::stod(s, &used);
    if (used == s.size()) return v;
  } catch (const std::exception&) {
  }
  throw Error(ErrorCode::InvalidConfiguration, std::string(flag) + ": expected a number, got '" + s + "'");
}

/// Scalar (repeated n times) or a vector file.
std::vector<double> bound_vector(const std::string& value, Index n, const char* flag) {
  std::string t;
  for (char c : value) t.push_back(static_cast<char>(std::tolower(static_cast<unsigned char>(c))));
  const bool numeric = !value.empty() && (std::isdigit(static_cast<unsigned char>(value[0])) || value[0] == '-' ||
                                          value[0] == '+' || value[0] == '.' || t == "inf");
  if (numeric && !std::filesystem::exists(value)) return std::vector<double>(n, parse_scalar(value, flag));
  std::vector<double> v = read_vector(value);
  if (v.size() != n)
    throw Error(ErrorCode::DimensionMismatch, std::string(flag) + ": expected " + std::to_string(n) + " values");
  return v;
}

PivotStrategy strategy_from(const std::string& name) {
  const auto s = parse_strategy(name);
  if (!s) throw Error(ErrorCode::InvalidConfiguration, "unknown strategy '" + name + "'");
  return *s;
}

BoundsConfig make_bounds(const BoundFlags& f, Index n) {
  BoundsConfig cfg;
  if (!f.diag_fixed.empty()) {
    cfg.diag_min = bound_vector(f.diag_fixed, n, "--diag-fixed");
    cfg.diag_max = cfg.diag_min;
  } else {
    cfg.diag_min = bound_vector(f.diag_min, n, "--diag-min");
    cfg.diag_max = bound_vector(f.diag_max, n, "--diag-max");
  }
  cfg.pivot_min = parse_scalar(f.pivot_min, "--pivot-min");
  cfg.pivot_max = parse_scalar(f.pivot_max, "--pivot-max");
  cfg.epsilon = f.epsilon;
  cfg.use_varying_lower_bound = f.varying;
  return cfg;
}

void add_bound_flags(CLI::App* cmd, BoundFlags& f) {
  cmd->add_option("--diag-min", f.diag_min, "Lower bounds x on diag(B): number or vector file")->capture_default_str();
  cmd->add_option("--diag-max", f.diag_max, "Upper bounds y on diag(B): number or vector file")->capture_default_str();
  cmd->add_option("--diag-fixed", f.diag_fixed, "Shorthand for --diag-min = --diag-max");
  cmd->add_option("--pivot-min", f.pivot_min, "Lower bound l on the pivots (>= 0)")->capture_default_str();
  cmd->add_option("--pivot-max", f.pivot_max, "Upper bound u on the pivots")->capture_default_str();
  cmd->add_option("--epsilon", f.epsilon, "Zero-pivot exclusion radius (default scales with max |A_ii|)");
  cmd->add_option("--strategy", f.strategy, "natural | min-error | max-d")->capture_default_str();
  cmd->add_flag("--varying-lower-bound", f.varying, "Use clamp(c_i / 2, l, u) as the pivot floor");
}

void emit_json(const nlohmann::json& j, const std::string& path, std::ostream& out) {
  if (path.empty()) {
    out << j.dump(2) << '\n';
    return;
  }
  std::ofstream f(path);
  if (!f) throw Error(ErrorCode::IoError, "cannot open '" + path + "' for writing");
  f << j.dump(2) << '\n';
}

template <class T>
void write_factors(const std::string& prefix, const ModifiedDecomposition<T>& dec) {
  write_general(prefix + ".L.mtx", dec.L);
  write_vector(prefix + ".d.mtx", dec.d);
  write_permutation(prefix + ".p.mtx", dec.p);
  write_vector(prefix + ".omega.mtx", dec.omega);
  write_vector(prefix + ".delta.mtx", dec.delta);
}

struct FactorArgs {
  std::string input;
  std::string output;
  std::string factors;
  std::string json;
  bool oracle = false;
  BoundFlags bounds;
};

template <class T>
int factor_matrix(const HermitianMatrix<T>& a, const FactorArgs& args, bool write_b, std::ostream& out) {
  const PivotStrategy strategy = strategy_from(args.bounds.strategy);
  const BoundsConfig bounds = resolve_epsilon(make_bounds(args.bounds, a.size()), a);

  const auto start = std::chrono::steady_clock::now();
  const auto dec = decompose(a, bounds, strategy);
  const auto b = assemble(a, dec);
  const auto stop = std::chrono::steady_clock::now();

  RunReport report;
  report.n = a.size();
  report.complex = is_complex_v<T>;
  report.strategy = strategy;
  report.bounds = bounds;
  report.diagnostics = diagnose(a, bounds, dec);
  report.wall_time_ms = std::chrono::duration<double, std::milli>(stop - start).count();
  if constexpr (!is_complex_v<T>) {
    if (args.oracle) {
      report.oracle_error = frobenius_norm(oracle::nearest_psd_eigclip(a).dense() - a.dense());
      report.oracle_is_lower_bound = std::any_of(bounds.diag_min.begin(), bounds.diag_min.end(),
                                                 [](double v) { return std::isfinite(v); }) ||
                                     std::any_of(bounds.diag_max.begin(), bounds.diag_max.end(),
                                                 [](double v) { return std::isfinite(v); });
    }
  }

  if (write_b && !args.output.empty()) write_matrix_market(std::filesystem::path(args.output), b);
  if (!args.factors.empty()) write_factors(args.factors, dec);
  emit_json(to_json(report), args.json, out);
  return kExitOk;
}

int run_factor(const FactorArgs& args, bool write_b, std::ostream& out) {
  const AnyHermitian input = read_matrix_market(std::filesystem::path(args.input));
  return std::visit([&](const auto& a) { return factor_matrix(a, args, write_b, out); }, input);
}

template <class T>
int certify_matrix(const HermitianMatrix<T>& a, const std::string& json_path, std::ostream& out) {
  const Index n = a.size();
  const auto dec = decompose(a, BoundsConfig::unconstrained(n, 0.0), PivotStrategy::natural);
  const auto b = assemble(a, dec);
  bool unmodified = true;
  for (double w : dec.omega) unmodified = unmodified && w == 1.0;
  const double scale = std::max(1.0, frobenius_norm(a.dense()));
  unmodified = unmodified && frobenius_norm(b.dense() - a.dense()) <= 1e-12 * scale;

  nlohmann::json j;
  j["schema"] = kReportSchema;
  j["n"] = n;
  j["ldl_unmodified"] = unmodified;
  j["definiteness"] = unmodified ? std::string(to_string(psd_certificate(dec))) : std::string("not-certified");
  j["determinant"] = unmodified ? json_number(determinant(dec)) : nlohmann::json(nullptr);
  if constexpr (!is_complex_v<T>) j["oracle_min_eigenvalue"] = json_number(oracle::min_eigenvalue(a));
  emit_json(j, json_path, out);
  return kExitOk;
}

std::vector<double> parse_list(const std::vector<std::string>& items, const char* flag) {
  std::vector<double> out;
  for (const auto& item : items) out.push_back(parse_scalar(item, flag));
  return out;
}

}  // namespace

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
  CLI::App app{"Positive semidefinite approximation of Hermitian matrices via modified LDL^H", "psdapprox"};
  app.require_subcommand(1);

  FactorArgs approx_args;
  auto* approx = app.add_subcommand("approx", "Approximate a matrix and report diagnostics");
  approx->add_option("--input", approx_args.input, "Matrix Market input")->required();
  approx->add_option("--output", approx_args.output, "Write the approximation B here");
  approx->add_option("--factors", approx_args.factors, "Write <prefix>.{L,d,p,omega,delta}.mtx");
  approx->add_option("--json", approx_args.json, "Write the JSON report here instead of stdout");
  approx->add_flag("--oracle", approx_args.oracle, "Add the eigenvalue-clipping error (real input)");
  add_bound_flags(approx, approx_args.bounds);

  FactorArgs decomp_args;
  auto* decomp = app.add_subcommand("decompose", "Write the modified LDL^H factors and a report");
  decomp->add_option("--input", decomp_args.input, "Matrix Market input")->required();
  decomp->add_option("--factors", decomp_args.factors, "Output prefix")->required();
  decomp->add_option("--json", decomp_args.json, "Write the JSON report here instead of stdout");
  add_bound_flags(decomp, decomp_args.bounds);

  std::string certify_input;
  std::string certify_json;
  auto* certify = app.add_subcommand("certify", "Report whether a matrix is positive (semi)definite");
  certify->add_option("--input", certify_input, "Matrix Market input")->required();
  certify->add_option("--json", certify_json, "Write the JSON report here instead of stdout");

  testgen::ScenarioSpec gen_spec;
  std::string gen_kind = "correlation-plus-noise";
  std::string gen_output;
  auto* generate = app.add_subcommand("generate", "Generate a random test matrix");
  generate->add_option("--kind", gen_kind, "correlation-plus-noise | eigenvalue-range")->capture_default_str();
  generate->add_option("--n", gen_spec.n, "Dimension")->capture_default_str();
  generate->add_option("--sigma", gen_spec.sigma, "Noise standard deviation")->capture_default_str();
  generate->add_option("--lambda-min", gen_spec.lambda_min, "Smallest eigenvalue bound")->capture_default_str();
  generate->add_option("--lambda-max", gen_spec.lambda_max, "Largest eigenvalue bound")->capture_default_str();
  generate->add_option("--seed", gen_spec.seed, "PRNG seed")->capture_default_str();
  generate->add_option("--output", gen_output, "Output file (stdout when omitted)");

  testgen::ScenarioSpec cmp_spec;
  std::string cmp_scenario;
  std::vector<std::string> cmp_inputs;
  std::vector<Index> cmp_dims{10, 20, 30, 40, 50};
  int cmp_count = 4;
  std::vector<std::string> cmp_strategies{"max-d"};
  std::vector<std::string> cmp_pivot_mins{"1e-8"};
  std::string cmp_varying = "off";
  std::string cmp_pivot_max = "inf";
  std::string cmp_json;
  std::string cmp_csv;
  BoundFlags cmp_bounds;
  auto* compare = app.add_subcommand("compare", "Compare strategies against the eigenvalue-clipping optimum");
  compare->add_option("--scenario", cmp_scenario, "correlation-plus-noise | eigenvalue-range");
  compare->add_option("--inputs", cmp_inputs, "Matrix Market inputs (real)");
  compare->add_option("--n", cmp_dims, "Dimensions for generated scenarios")->capture_default_str();
  compare->add_option("--count", cmp_count, "Matrices per dimension")->capture_default_str();
  compare->add_option("--seed", cmp_spec.seed, "Base seed")->capture_default_str();
  compare->add_option("--sigma", cmp_spec.sigma, "Noise standard deviation")->capture_default_str();
  compare->add_option("--lambda-min", cmp_spec.lambda_min, "Smallest eigenvalue bound")->capture_default_str();
  compare->add_option("--lambda-max", cmp_spec.lambda_max, "Largest eigenvalue bound")->capture_default_str();
  compare->add_option("--strategies", cmp_strategies, "Pivot strategies")->capture_default_str();
  compare->add_option("--pivot-min", cmp_pivot_mins, "Pivot lower bounds to sweep")->capture_default_str();
  compare->add_option("--pivot-max", cmp_pivot_max, "Pivot upper bound")->capture_default_str();
  compare->add_option("--varying-lower-bound", cmp_varying, "off | on | both")->capture_default_str();
  compare->add_option("--diag-min", cmp_bounds.diag_min, "Diagonal lower bounds for --inputs");
  compare->add_option("--diag-max", cmp_bounds.diag_max, "Diagonal upper bounds for --inputs");
  compare->add_option("--diag-fixed", cmp_bounds.diag_fixed, "Fixed diagonal for --inputs");
  compare->add_option("--json", cmp_json, "Write the JSON report here");
  compare->add_option("--csv", cmp_csv, "Write the per-run CSV table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitValidation;
  }

  try {
    if (approx->parsed()) return run_factor(approx_args, true, out);
    if (decomp->parsed()) return run_factor(decomp_args, false, out);

    if (certify->parsed()) {
      const AnyHermitian input = read_matrix_market(std::filesystem::path(certify_input));
      return std::visit([&](const auto& a) { return certify_matrix(a, certify_json, out); }, input);
    }

    if (generate->parsed()) {
      const auto kind = testgen::parse_scenario_kind(gen_kind);
      if (!kind) throw Error(ErrorCode::InvalidConfiguration, "unknown scenario kind '" + gen_kind + "'");
      gen_spec.kind = *kind;
      const auto m = testgen::generate(gen_spec);
      if (gen_output.empty()) write_matrix_market(out, m);
      else write_matrix_market(std::filesystem::path(gen_output), m);
      return kExitOk;
    }

    if (compare->parsed()) {
      CompareConfig cfg;
      cfg.strategies.clear();
      for (const auto& s : cmp_strategies) cfg.strategies.push_back(strategy_from(s));
      cfg.pivot_mins = parse_list(cmp_pivot_mins, "--pivot-min");
      cfg.pivot_max = parse_scalar(cmp_pivot_max, "--pivot-max");
      if (cmp_varying == "off") cfg.varying = {false};
      else if (cmp_varying == "on") cfg.varying = {true};
      else if (cmp_varying == "both") cfg.varying = {false, true};
      else throw Error(ErrorCode::InvalidConfiguration, "--varying-lower-bound must be off, on or both");

      std::vector<CompareInput> inputs;
      if (!cmp_scenario.empty()) {
        const auto kind = testgen::parse_scenario_kind(cmp_scenario);
        if (!kind) throw Error(ErrorCode::InvalidConfiguration, "unknown scenario '" + cmp_scenario + "'");
        cmp_spec.kind = *kind;
        inputs = scenario_inputs(cmp_spec, cmp_dims, cmp_count);
      }
      for (const auto& path : cmp_inputs) {
        const AnyHermitian m = read_matrix_market(std::filesystem::path(path));
        const auto* real = std::get_if<HermitianMatrix<double>>(&m);
        if (!real) throw Error(ErrorCode::InvalidConfiguration, "compare supports real matrices only: " + path);
        inputs.push_back({path, *real, make_bounds(cmp_bounds, real->size())});
      }
      if (inputs.empty()) throw Error(ErrorCode::InvalidConfiguration, "compare needs --scenario or --inputs");

      const CompareResult result = run_compare(inputs, cfg);
      if (!cmp_csv.empty()) {
        std::ofstream f(cmp_csv);
        if (!f) throw Error(ErrorCode::IoError, "cannot open '" + cmp_csv + "' for writing");
        f << to_csv(result);
      }
      if (!cmp_json.empty() || cmp_csv.empty()) emit_json(to_json(result), cmp_json, out);
      return kExitOk;
    }
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return is_numerical(e.code()) ? kExitNumerical : kExitValidation;
  }
  return kExitValidation;
}

}  // namespace psdapprox::io
