#include "psdapprox/analyze.hpp"

#include <algorithm>
#include <cmath>

#include "psdapprox/factorize.hpp"
#include "psdapprox/reconstruct.hpp"

namespace psdapprox {

std::string_view to_string(Definiteness d) {
  switch (d) {
    case Definiteness::positive_definite: return "positive-definite";
    case Definiteness::positive_semidefinite: return "positive-semidefinite";
    case Definiteness::indefinite: return "indefinite";
  }
  return "unknown";
}

template <class T>
ErrorNorms error_norms(const HermitianMatrix<T>& a, const ModifiedDecomposition<T>& dec) {
  const Index n = a.size();
  if (dec.size() != n) throw Error(ErrorCode::DimensionMismatch, "decomposition does not match matrix");
  const Permutation& p = dec.p;
  check_permutation(p);

  // A zero pivot at position i must be followed by omega == 0 at every position >= i.
  bool zero_seen = false;
  for (Index i = 0; i < n; ++i) {
    zero_seen = zero_seen || dec.d[i] == 0.0;
    if (zero_seen && dec.omega[p[i]] != 0.0)
      throw Error(ErrorCode::PreconditionViolated, "nonzero omega after a zero pivot", i);
  }

  ErrorNorms out;
  double fro2 = 0.0;
  for (Index i = 0; i < n; ++i) {
    const Index pi = p[i];
    const double wi = dec.omega[pi];
    double before = 0.0;
    double before2 = 0.0;
    double after = 0.0;
    for (Index j = 0; j < i; ++j) {
      const double v = std::abs(a(pi, p[j]));
      before += v;
      before2 += v * v;
    }
    for (Index j = i + 1; j < n; ++j) after += (1.0 - dec.omega[p[j]]) * std::abs(a(pi, p[j]));
    const double delta = dec.delta[pi];
    out.inf = std::max(out.inf, std::abs(delta) + (1.0 - wi) * before + after);
    fro2 += delta * delta + 2.0 * (1.0 - wi) * (1.0 - wi) * before2;
  }
  out.fro = std::sqrt(fro2);
  return out;
}

template <class T>
ErrorNorms error_bounds(const HermitianMatrix<T>& a, const BoundsConfig& cfg) {
  const Index n = a.size();
  if (cfg.diag_max.size() != n) throw Error(ErrorCode::DimensionMismatch, "diagonal bound length");
  if (n == 0) return {0.0, 0.0};
  const double ymax = *std::max_element(cfg.diag_max.begin(), cfg.diag_max.end());
  if (!std::isfinite(ymax)) return {kInf, kInf};
  double b = 0.0;
  double c = 0.0;
  for (Index i = 0; i < n; ++i) {
    b = std::max(b, std::abs(a.diag(i)));
    for (Index j = 0; j < n; ++j)
      if (j != i) c = std::max(c, static_cast<double>(std::abs(a(i, j))));
  }
  const double nn = static_cast<double>(n);
  const double ab = ymax + b;
  return {ab + (nn - 1.0) * c, std::sqrt(nn * (ab * ab + (nn - 1.0) * c * c))};
}

ConditionBounds condition_bounds(const BoundsConfig& cfg, Index n) {
  const double l = cfg.pivot_min;
  if (!(l > 0.0)) throw Error(ErrorCode::NonPositiveLowerBound, "condition bounds need l > 0");
  if (cfg.diag_max.size() != n || n == 0) throw Error(ErrorCode::DimensionMismatch, "diagonal bound length");
  double sum = 0.0;
  double ymax = -kInf;
  for (double y : cfg.diag_max) {
    sum += y;
    ymax = std::max(ymax, y);
  }
  const double nn = static_cast<double>(n);
  const double a = sum / nn;
  const double b = std::min(cfg.pivot_max, ymax);
  ConditionBounds out;
  out.kappa_D = b / l;
  if (std::isfinite(a)) {
    out.kappa_L = 2.0 * std::pow(a / l, nn / 2.0);
    out.kappa_B = 4.0 * std::pow(a / l, nn) * (b / l);
  }
  return out;
}

template <class T>
ConditionInterval ldl_condition_interval(const HermitianMatrix<T>& a) {
  const Index n = a.size();
  if (n == 0) throw Error(ErrorCode::DimensionMismatch, "empty matrix");
  const auto dec = decompose(a, BoundsConfig::unconstrained(n, 0.0), PivotStrategy::natural);
  for (Index i = 0; i < n; ++i)
    if (!(dec.d[i] > 0.0) || dec.omega[dec.p[i]] != 1.0)
      throw Error(ErrorCode::NotPositiveDefinite, "pivot is not positive", i);
  const double d_min = *std::min_element(dec.d.begin(), dec.d.end());
  const double d_max = *std::max_element(dec.d.begin(), dec.d.end());
  double trace = 0.0;
  for (Index i = 0; i < n; ++i) trace += a.diag(i);
  const double nn = static_cast<double>(n);
  ConditionInterval out;
  out.lower = n == 1 ? 1.0 : std::pow(trace / (nn * d_max), nn / (2.0 * (nn - 1.0)));
  out.upper = 2.0 * std::pow(trace / (nn * d_min), nn / 2.0);
  return out;
}

Definiteness psd_certificate(std::span<const double> d) {
  bool all_positive = true;
  for (double v : d) {
    if (v < 0.0 || std::isnan(v)) return Definiteness::indefinite;
    if (v == 0.0) all_positive = false;
  }
  return all_positive ? Definiteness::positive_definite : Definiteness::positive_semidefinite;
}

template <class T>
DiagnosticsReport diagnose(const HermitianMatrix<T>& a, const BoundsConfig& cfg, const ModifiedDecomposition<T>& dec) {
  DiagnosticsReport r;
  try {
    const ErrorNorms e = error_norms(a, dec);
    r.err_inf = e.inf;
    r.err_fro = e.fro;
  } catch (const Error& e) {
    if (e.code() != ErrorCode::PreconditionViolated) throw;
    const Matrix<T> diff = assemble(a, dec).dense() - a.dense();
    r.err_inf = inf_norm(diff);
    r.err_fro = frobenius_norm(diff);
    r.err_from_formula = false;
  }
  const ErrorNorms bounds = error_bounds(a, cfg);
  r.err_inf_bound = bounds.inf;
  r.err_fro_bound = bounds.fro;
  if (cfg.pivot_min > 0.0) r.condition = condition_bounds(cfg, a.size());
  r.definiteness = psd_certificate(dec);
  r.det = determinant(dec);
  if (!dec.d.empty()) {
    r.d_min = *std::min_element(dec.d.begin(), dec.d.end());
    r.d_max = *std::max_element(dec.d.begin(), dec.d.end());
  }
  return r;
}

#define PSDAPPROX_INSTANTIATE(T)                                                                    \
  template ErrorNorms error_norms(const HermitianMatrix<T>&, const ModifiedDecomposition<T>&);     \
  template ErrorNorms error_bounds(const HermitianMatrix<T>&, const BoundsConfig&);                \
  template ConditionInterval ldl_condition_interval(const HermitianMatrix<T>&);                    \
  template DiagnosticsReport diagnose(const HermitianMatrix<T>&, const BoundsConfig&,              \
                                      const ModifiedDecomposition<T>&);

PSDAPPROX_INSTANTIATE(double)
PSDAPPROX_INSTANTIATE(Complex)

#undef PSDAPPROX_INSTANTIATE

}  // namespace psdapprox
