// Acceptance suite: one PASS/FAIL line per criterion, nonzero exit on failure.

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "psdapprox/analyze.hpp"
#include "psdapprox/factorize.hpp"
#include "psdapprox/io/compare.hpp"
#include "psdapprox/oracle.hpp"
#include "psdapprox/pivot.hpp"
#include "psdapprox/reconstruct.hpp"
#include "psdapprox/testgen.hpp"
#include "support.hpp"

using namespace psdapprox;
using Clock = std::chrono::steady_clock;

namespace {

constexpr PivotStrategy kStrategies[] = {PivotStrategy::natural, PivotStrategy::min_error, PivotStrategy::max_d};

struct Outcome {
  bool pass = true;
  int checked = 0;
  int failed = 0;
  std::string detail;

  void check(bool ok) {
    ++checked;
    if (!ok) {
      ++failed;
      pass = false;
    }
  }
};

struct Instance {
  testgen::ScenarioKind kind;
  HermitianMatrix<double> a;
  BoundsConfig cfg;
};

double seconds_since(Clock::time_point t) { return std::chrono::duration<double>(Clock::now() - t).count(); }

// 200 matrices per scenario with n in 5..50 and l = 1e-8. Correlation
// matrices keep a unit diagonal; eigenvalue-range matrices are unconstrained.
std::vector<Instance> scenario_instances() {
  std::vector<Instance> out;
  for (auto kind : {testgen::ScenarioKind::correlation_plus_noise, testgen::ScenarioKind::eigenvalue_range}) {
    for (std::uint64_t s = 0; s < 200; ++s) {
      testgen::ScenarioSpec spec;
      spec.kind = kind;
      spec.n = 5 + (s * 7) % 46;
      spec.sigma = 0.1 + 0.1 * static_cast<double>(s % 4);
      spec.lambda_min = -1e4;
      spec.lambda_max = 1e4;
      spec.seed = 1000 + s;
      BoundsConfig cfg = kind == testgen::ScenarioKind::correlation_plus_noise
                             ? BoundsConfig::fixed_diagonal(spec.n, 1.0, 1e-8)
                             : BoundsConfig::unconstrained(spec.n, 1e-8);
      out.push_back({kind, testgen::generate(spec), std::move(cfg)});
    }
  }
  return out;
}

Outcome ac1_psd(const std::vector<Instance>& inst) {
  Outcome o;
  const auto start = Clock::now();
  double worst = 0.0;
  for (const auto& in : inst) {
    const auto b = assemble(in.a, decompose(in.a, in.cfg));
    const auto eig = oracle::jacobi_eigendecomposition(b);
    const double norm = std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
    worst = std::min(worst, eig.values.front() / norm);
    o.check(eig.values.front() >= -1e-9 * norm);
  }
  const double t = seconds_since(start);
  o.check(t < 30.0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "min lambda/||B|| = %.3g, %.2f s", worst, t);
  o.detail = buf;
  return o;
}

Outcome ac2_representation(const std::vector<Instance>& inst) {
  Outcome o;
  double worst = 0.0;
  for (const auto& in : inst)
    for (auto s : kStrategies) {
      const auto dec = decompose(in.a, in.cfg, s);
      const double gap = frobenius_norm(assemble(in.a, dec).dense() - compose_explicit(dec).dense());
      const double rel = gap / (1 + frobenius_norm(in.a.dense()));
      worst = std::max(worst, rel);
      o.check(rel <= 1e-10);
    }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max gap/(1+||A||_F) = %.3g", worst);
  o.detail = buf;
  return o;
}

Outcome ac3_diagonal(const std::vector<Instance>& inst) {
  Outcome o;
  double worst = 0.0;
  for (const auto& in : inst) {
    if (in.kind != testgen::ScenarioKind::correlation_plus_noise) continue;
    for (auto s : kStrategies) {
      const auto b = assemble(in.a, decompose(in.a, in.cfg, s));
      for (Index i = 0; i < b.size(); ++i) {
        worst = std::max(worst, std::abs(b(i, i) - 1.0));
        o.check(std::abs(b(i, i) - 1.0) <= 1e-12);
      }
    }
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max |B_ii - 1| = %.3g", worst);
  o.detail = buf;
  return o;
}

Outcome ac4_error_formulas(const std::vector<Instance>& inst) {
  Outcome o;
  double worst = 0.0;
  auto rel = [](double a, double b) { return std::abs(a - b) / std::max({std::abs(a), std::abs(b), 1e-300}); };
  for (const auto& in : inst)
    for (auto s : kStrategies) {
      const auto dec = decompose(in.a, in.cfg, s);
      const auto e = error_norms(in.a, dec);
      const Matrix<double> diff = assemble(in.a, dec).dense() - in.a.dense();
      const double r = std::max(rel(e.inf, inf_norm(diff)), rel(e.fro, frobenius_norm(diff)));
      worst = std::max(worst, r);
      o.check(r <= 1e-10);
      const auto bound = error_bounds(in.a, in.cfg);
      if (std::isfinite(bound.inf)) {
        o.check(e.inf <= bound.inf);
        o.check(e.fro <= bound.fro);
      }
    }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max relative mismatch = %.3g", worst);
  o.detail = buf;
  return o;
}

Outcome ac5_condition() {
  Outcome o;
  testgen::Rng rng(5005);
  double tightest = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 1 + t % 6;
    const auto a = test::random_symmetric(n, rng, std::exp(rng.uniform(-1, 1)));
    BoundsConfig cfg = BoundsConfig::unconstrained(n, t % 2 ? 0.1 : 0.5);
    cfg.diag_max.assign(n, 1.0);
    cfg.pivot_max = 2.0;
    const auto dec = decompose(a, cfg, kStrategies[t % 3]);
    const auto bound = condition_bounds(cfg, n);
    const double kl = oracle::condition_number(dec.L);
    const double kd = *std::max_element(dec.d.begin(), dec.d.end()) / *std::min_element(dec.d.begin(), dec.d.end());
    const double kb = test::symmetric_condition(assemble(a, dec));
    o.check(kl <= bound.kappa_L * (1 + 1e-12));
    o.check(kd <= bound.kappa_D * (1 + 1e-12));
    o.check(kb <= bound.kappa_B * (1 + 1e-12));
    tightest = std::max({tightest, kl / bound.kappa_L, kd / bound.kappa_D, kb / bound.kappa_B});
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max kappa/bound = %.3g", tightest);
  o.detail = buf;
  return o;
}

Outcome ac6_ldl_interval() {
  Outcome o;
  testgen::Rng rng(6006);
  for (int t = 0; t < 100; ++t) {
    const Index n = 1 + t % 8;
    const double spread = std::exp(rng.uniform(0, 6));
    const auto a = test::random_pd(n, rng, 1.0, spread);
    const auto c = ldl_condition_interval(a);
    const auto dec = decompose(a, BoundsConfig::unconstrained(n, 0.0), PivotStrategy::natural);
    const double k = oracle::condition_number(dec.L);
    o.check(c.lower <= k * (1 + 1e-10));
    o.check(k <= c.upper * (1 + 1e-10));
  }
  o.detail = "100 matrices, n <= 8";
  return o;
}

Outcome ac7_minimal_change() {
  Outcome o;
  testgen::Rng rng(7007);
  auto pick = [&](double p) { return rng.uniform() < p; };
  double worst = 0.0;
  for (int t = 0; t < 10000; ++t) {
    PivotState st;
    st.alpha = pick(0.1) ? 0.0 : std::exp(rng.uniform(-4, 2));
    st.beta = st.alpha == 0.0 && pick(0.5) ? 0.0 : std::exp(rng.uniform(-4, 3));
    st.gamma = rng.normal() * 3;
    PivotWindow w;
    w.epsilon = std::exp(rng.uniform(-14, -2));
    w.l = pick(0.3) ? 0.0 : std::exp(rng.uniform(-8, 0));
    w.u = pick(0.6) ? kInf : w.l + std::exp(rng.uniform(-2, 2));
    const double lo = std::max(w.l, w.epsilon);
    if (pick(0.3)) {
      w.x = -kInf;
      w.y = kInf;
    } else if (pick(0.4)) {
      w.x = w.y = std::min(lo + std::exp(rng.uniform(-3, 2)), w.u);
    } else {
      w.x = pick(0.3) ? -kInf : rng.normal() * 2;
      w.y = pick(0.3) ? kInf : std::max(w.x, lo) + std::exp(rng.uniform(-3, 2));
    }
    if (std::max({w.l, w.epsilon, w.x}) > std::min(w.u, w.y)) {
      w.u = kInf;
      w.y = std::max({w.l, w.epsilon, w.x}) + 1.0;
    }
    const auto c = minimal_change(w, st);
    const auto g = oracle::grid_minimal_change(w, st, 400);
    worst = std::max(worst, (c.f - g.f) / (1 + g.f));
    o.check(c.f <= g.f + 1e-6 * (1 + g.f));
  }
  const PivotWindow w{1, 1, 1e-6, kInf, 1e-6};
  const auto c = minimal_change(w, PivotState{4, 8, 1});
  o.check(std::abs(c.d - 1e-6) <= 1e-12);
  o.check(std::abs(c.omega - 0.5) <= 1e-6);
  char buf[160];
  std::snprintf(buf, sizeof buf, "max (f - f_grid)/(1 + f_grid) = %.3g; example d = %.3g, omega = %.7f", worst, c.d,
                c.omega);
  o.detail = buf;
  return o;
}

Outcome ac8_identity() {
  Outcome o;
  testgen::Rng rng(8008);
  double worst = 0.0;
  for (int t = 0; t < 100; ++t) {
    const Index n = 2 + t % 20;
    const auto a = test::random_pd(n, rng, 0.5, std::exp(rng.uniform(1, 5)));
    const auto exact = decompose(a, BoundsConfig::unconstrained(n, 0.0), PivotStrategy::natural);
    const double dmin = *std::min_element(exact.d.begin(), exact.d.end());
    const double dmax = *std::max_element(exact.d.begin(), exact.d.end());
    BoundsConfig cfg = BoundsConfig::unconstrained(n, 0.5 * dmin);
    cfg.pivot_max = 2.0 * dmax;
    for (Index i = 0; i < n; ++i) {
      cfg.diag_min[i] = 0.5 * a(i, i);
      cfg.diag_max[i] = 2.0 * a(i, i);
    }
    const auto b = assemble(a, decompose(a, cfg, PivotStrategy::natural));
    const double rel = frobenius_norm(b.dense() - a.dense()) / frobenius_norm(a.dense());
    worst = std::max(worst, rel);
    o.check(rel <= 1e-12);
  }
  char buf[128];
  std::snprintf(buf, sizeof buf, "max ||B - A||_F/||A||_F = %.3g", worst);
  o.detail = buf;
  return o;
}

Outcome ac9_oracle() {
  Outcome o;
  io::CompareConfig cfg;
  cfg.strategies = {kStrategies[0], kStrategies[1], kStrategies[2]};
  cfg.pivot_mins = {0.0, 1e-8, 1e-2};
  cfg.varying = {false, true};
  std::vector<io::CompareInput> inputs;
  for (auto kind : {testgen::ScenarioKind::correlation_plus_noise, testgen::ScenarioKind::eigenvalue_range}) {
    testgen::ScenarioSpec spec;
    spec.kind = kind;
    spec.sigma = 0.3;
    spec.lambda_min = -1e4;
    spec.lambda_max = 1e4;
    spec.seed = 900;
    auto more = io::scenario_inputs(spec, {5, 10, 20, 40}, 5);
    inputs.insert(inputs.end(), more.begin(), more.end());
  }
  const auto res = io::run_compare(inputs, cfg);
  for (const auto& row : res.rows) o.check(row.err_fro >= row.oracle_error - 1e-9);
  const HermitianMatrix<double> a{{1, 2}, {2, 1}};
  const double dist = frobenius_norm(oracle::nearest_psd_eigclip(a).dense() - a.dense());
  o.check(std::abs(dist - 1.0) <= 1e-12);
  char buf[128];
  std::snprintf(buf, sizeof buf, "%zu rows; 2x2 oracle distance = %.15g", res.rows.size(), dist);
  o.detail = buf;
  return o;
}

double time_decompose(Index n) {
  testgen::ScenarioSpec spec;
  spec.kind = testgen::ScenarioKind::correlation_plus_noise;
  spec.n = n;
  spec.sigma = 0.1;
  spec.seed = 10;
  const auto a = testgen::generate(spec);
  const auto cfg = BoundsConfig::fixed_diagonal(n, 1.0, 1e-8);
  std::vector<double> times;
  for (int rep = 0; rep < 3; ++rep) {
    const auto start = Clock::now();
    const auto dec = decompose(a, cfg);
    times.push_back(seconds_since(start));
    if (dec.d.empty()) return 0.0;
  }
  return io::median(times);
}

Outcome ac10_scaling() {
  Outcome o;
  const double t200 = time_decompose(200);
  const double t400 = time_decompose(400);
  const double ratio = t400 / t200;
  o.check(ratio <= 10.0);
  char buf[128];
  std::snprintf(buf, sizeof buf, "t(200) = %.1f ms, t(400) = %.1f ms, ratio = %.2f", 1e3 * t200, 1e3 * t400, ratio);
  o.detail = buf;
  return o;
}

}  // namespace

int main() {
  const auto instances = scenario_instances();
  const std::vector<std::pair<const char*, std::function<Outcome()>>> criteria = {
      {"psd certificate", [&] { return ac1_psd(instances); }},
      {"representation", [&] { return ac2_representation(instances); }},
      {"diagonal bounds", [&] { return ac3_diagonal(instances); }},
      {"error formulas", [&] { return ac4_error_formulas(instances); }},
      {"condition bounds", ac5_condition},
      {"ldl condition interval", ac6_ldl_interval},
      {"minimal change optimality", ac7_minimal_change},
      {"identity on feasible input", ac8_identity},
      {"oracle sanity", ac9_oracle},
      {"cubic scaling", ac10_scaling},
  };
  int failures = 0;
  int id = 1;
  for (const auto& [name, run] : criteria) {
    Outcome o;
    try {
      o = run();
    } catch (const std::exception& e) {
      o.pass = false;
      o.detail = std::string("exception: ") + e.what();
    }
    std::printf("AC%-2d %s  %-28s %d/%d  %s\n", id++, o.pass ? "PASS" : "FAIL", name, o.checked - o.failed, o.checked,
                o.detail.c_str());
    std::fflush(stdout);
    failures += !o.pass;
  }
  return failures == 0 ? 0 : 1;
}
