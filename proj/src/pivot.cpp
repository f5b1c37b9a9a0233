#include "psdapprox/pivot.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <tuple>

namespace psdapprox {

namespace {

double cubic_value(double a3, double a1, double a0, double t) { return (a3 * t * t + a1) * t + a0; }

/// Up to three Newton steps; a step is kept only when it reduces the residual.
double polish(double a3, double a1, double a0, double t) {
  double r = std::abs(cubic_value(a3, a1, a0, t));
  for (int it = 0; it < 3 && r > 0.0; ++it) {
    const double slope = 3.0 * a3 * t * t + a1;
    if (slope == 0.0) break;
    const double next = t - cubic_value(a3, a1, a0, t) / slope;
    const double rn = std::abs(cubic_value(a3, a1, a0, next));
    if (!(rn < r)) break;
    t = next;
    r = rn;
  }
  return t;
}

}  // namespace

std::vector<double> solve_cubic_real_roots(double a3, double a1, double a0) {
  if (a3 == 0.0) throw Error(ErrorCode::DegenerateCubic, "leading coefficient is zero");
  // t^3 + p t + q = 0, solved as tau^3 + P tau + Q = 0 with t = s tau and s
  // the root magnitude, so tiny or huge coefficients neither under- nor overflow.
  const double p = a1 / a3;
  const double q = a0 / a3;
  const double s = std::max(std::sqrt(std::abs(p)), std::cbrt(std::abs(q)));
  if (s == 0.0) return {0.0};
  const double P = p / (s * s);
  const double Q = q / (s * s * s);
  std::vector<double> roots;

  if (P == 0.0) {
    roots.push_back(std::cbrt(-Q));
  } else {
    const double disc = -(4.0 * P * P * P + 27.0 * Q * Q);
    if (disc > 0.0) {
      // Three distinct real roots, P < 0.
      const double m = 2.0 * std::sqrt(-P / 3.0);
      const double arg = std::clamp(3.0 * Q / (P * m), -1.0, 1.0);
      const double theta = std::acos(arg) / 3.0;
      for (int k = 0; k < 3; ++k) roots.push_back(m * std::cos(theta - 2.0 * std::numbers::pi * k / 3.0));
    } else if (disc < 0.0) {
      if (P < 0.0) {
        const double m = std::sqrt(-P / 3.0);
        const double arg = -1.5 * std::abs(Q) / (P * m);
        roots.push_back(-2.0 * std::copysign(1.0, Q) * m * std::cosh(std::acosh(std::max(arg, 1.0)) / 3.0));
      } else {
        const double m = std::sqrt(P / 3.0);
        roots.push_back(-2.0 * m * std::sinh(std::asinh(1.5 * Q / (P * m)) / 3.0));
      }
    } else {
      // Double root -3Q/(2P) and simple root 3Q/P.
      roots.push_back(3.0 * Q / P);
      roots.push_back(-1.5 * Q / P);
    }
  }

  for (double& t : roots) t = polish(a3, a1, a0, s * t);
  std::sort(roots.begin(), roots.end());
  std::vector<double> merged;
  for (double t : roots)
    if (merged.empty() || std::abs(t - merged.back()) > 1e-12 * s) merged.push_back(t);
  return merged;
}

double objective(double d, double omega, const PivotState& st) {
  const double r = d + omega * omega * st.alpha - st.gamma;
  const double s = omega - 1.0;
  return r * r + s * s * st.beta;
}

PivotChoice minimal_change(const PivotWindow& w, const PivotState& st) {
  const double x = w.x;
  const double y = w.y;
  const double l = w.l;
  const double u = w.u;
  const double eps = w.epsilon;
  const double alpha = std::max(st.alpha, 0.0);
  const double beta = std::max(st.beta, 0.0);
  const double gamma = st.gamma;
  const PivotState state{alpha, beta, gamma};

  if (!(l >= 0.0)) throw Error(ErrorCode::InvalidConfiguration, "minimal change requires l >= 0");
  if (std::max({l, eps, x}) > std::min(u, y))
    throw Error(ErrorCode::InfeasiblePivot, "max{l, eps, x} > min{u, y}");

  const double low = std::max({l, eps, x - alpha});
  const double high = std::min(u, y - alpha);
  const double free_d = gamma - alpha;
  if (low <= free_d && free_d <= high) return {free_d, 1.0, 0.0};

  std::vector<std::pair<double, double>> candidates;
  if (low <= high) candidates.emplace_back(std::min({std::max(low, free_d), u, y - alpha}), 1.0);

  if (alpha != 0.0) {
    const double floor_d = std::max(l, eps);
    std::vector<double> ds;
    if (floor_d >= x - alpha) ds.push_back(floor_d);
    if (std::isfinite(u) && u <= y) ds.push_back(u);
    for (double d : ds) {
      std::vector<double> roots;
      if (beta == 0.0) {
        roots.push_back(0.0);
        const double sq = (gamma - d) / alpha;
        if (sq >= 0.0) {
          roots.push_back(std::sqrt(sq));
          roots.push_back(-std::sqrt(sq));
        }
      } else {
        roots = solve_cubic_real_roots(2.0 * alpha * alpha, 2.0 * alpha * (d - gamma) + beta, -beta);
      }
      const double lo_w = std::sqrt(std::max(x - d, 0.0) / alpha);
      const double hi_w = std::sqrt((y - d) / alpha);
      for (double r : roots) candidates.emplace_back(d, std::min({std::max(r, lo_w), hi_w, 1.0}));
    }
  }

  if (l == 0.0 && x <= 0.0 && 2.0 * gamma <= eps) candidates.emplace_back(0.0, 0.0);

  PivotChoice best{};
  bool have = false;
  for (const auto& [d, omega] : candidates) {
    const double f = objective(d, omega, state);
    if (!have || std::tuple(f, -d, omega) < std::tuple(best.f, -best.d, best.omega)) {
      best = {d, omega, f};
      have = true;
    }
  }
  // Unreachable given the precondition: the floor pivot with some omega is always feasible.
  if (!have) throw Error(ErrorCode::InfeasiblePivot, "no feasible candidate");
  return best;
}

PivotChoice minimal_change_large_alpha(const PivotWindow& w, double alpha_hat, int e, double beta, double gamma) {
  const double l = w.l;
  const double eps = w.epsilon;
  if (!(l >= 0.0)) throw Error(ErrorCode::InvalidConfiguration, "minimal change requires l >= 0");
  if (std::max({l, eps, w.x}) > std::min(w.u, w.y))
    throw Error(ErrorCode::InfeasiblePivot, "max{l, eps, x} > min{u, y}");
  beta = std::max(beta, 0.0);

  PivotChoice best{};
  double best_omega = 0.0;
  bool have = false;
  auto consider = [&](double d, double omega_hat) {
    const double t = d + omega_hat * omega_hat * alpha_hat;
    const double omega = std::ldexp(omega_hat, -e);
    const double f = (t - gamma) * (t - gamma) + (omega - 1.0) * (omega - 1.0) * beta;
    if (!have || std::tuple(f, -d, omega) < std::tuple(best.f, -best.d, best_omega)) {
      best = {d, omega_hat, f};
      best_omega = omega;
      have = true;
    }
  };

  const double floor_d = std::max(l, eps);
  std::vector<double> ds{floor_d};
  if (std::isfinite(w.u) && w.u <= w.y) ds.push_back(w.u);
  for (double d : ds) {
    const double t = std::min(std::max(gamma, std::max(w.x, d)), w.y);
    consider(d, std::sqrt(std::max(t - d, 0.0) / alpha_hat));
  }
  if (l == 0.0 && w.x <= 0.0 && 2.0 * gamma <= eps) consider(0.0, 0.0);
  return best;
}

}  // namespace psdapprox
