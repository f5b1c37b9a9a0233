#pragma once

#include <vector>

#include "psdapprox/core.hpp"

namespace psdapprox {

/// Per-pivot inputs of the (d, omega) choice.
struct PivotState {
  double alpha = 0.0;  // sum of |L_jk|^2 d_k over eliminated columns
  double beta = 0.0;   // 2 * sum of |A_jm|^2 over eliminated indices m
  double gamma = 0.0;  // current diagonal entry A_jj
};

/// Feasible window for a single pivot: d in [l, u], |d| outside (0, eps),
/// d + omega^2 alpha in [x, y].
struct PivotWindow {
  double x = -kInf;
  double y = kInf;
  double l = 0.0;
  double u = kInf;
  double epsilon = 1e-8;
};

struct PivotChoice {
  double d = 0.0;
  double omega = 0.0;
  double f = 0.0;
};

/// Real roots of a3 t^3 + a1 t + a0, ascending, Newton-polished and
/// de-duplicated. Throws DegenerateCubic when a3 == 0.
std::vector<double> solve_cubic_real_roots(double a3, double a1, double a0);

/// Incremental squared Frobenius error (d + omega^2 alpha - gamma)^2 + (omega - 1)^2 beta.
double objective(double d, double omega, const PivotState& st);

/// Chooses (d, omega) minimizing `objective` over the feasible set
///
///   {(d, w) | d in [max{l, eps}, u], w in [0, 1], d + w^2 alpha in [x, y]}
///   plus (0, 0) when max{l, x} <= 0.
///
/// Ties are broken by the larger d, then the smaller omega. Requires l >= 0,
/// alpha >= 0, beta >= 0. When beta == 0 but alpha > 0 (rounding upstream),
/// the stationarity equation degenerates to w (alpha w^2 + d - gamma) = 0 and
/// is solved directly.
PivotChoice minimal_change(const PivotWindow& window, const PivotState& st);

/// Threshold above which `minimal_change_large_alpha` replaces `minimal_change`.
inline constexpr double kLargeAlpha = 0x1p200;

/// minimal_change for alpha = alpha_hat * 2^(2 e) >= kLargeAlpha, which does
/// not fit the cubic's coefficients. omega is then below 1e-30 and its effect
/// on the (omega - 1)^2 beta term is under double resolution, so each
/// candidate pivot d in {max{l, eps}, u} takes the diagonal
/// t = clamp(gamma, max{x, d}, y). Returns omega_hat = omega * 2^e in the
/// omega field; f is evaluated with the true omega.
PivotChoice minimal_change_large_alpha(const PivotWindow& window, double alpha_hat, int e, double beta, double gamma);

}  // namespace psdapprox
