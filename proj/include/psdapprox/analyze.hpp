#pragma once

#include <string_view>

#include "psdapprox/core.hpp"

namespace psdapprox {

enum class Definiteness { positive_definite, positive_semidefinite, indefinite };

std::string_view to_string(Definiteness d);

struct ErrorNorms {
  double inf = 0.0;  // ||B - A||_inf, also an upper bound on ||B - A||_2
  double fro = 0.0;  // ||B - A||_F
};

struct ConditionBounds {
  double kappa_L = kInf;
  double kappa_D = kInf;
  double kappa_B = kInf;
};

struct ConditionInterval {
  double lower = 1.0;
  double upper = kInf;
};

/// Closed-form diagnostics for one factorization.
struct DiagnosticsReport {
  double err_inf = 0.0;
  double err_fro = 0.0;
  /// False when the error formulas did not apply and the norms were taken
  /// from B - A directly.
  bool err_from_formula = true;
  double err_inf_bound = kInf;
  double err_fro_bound = kInf;
  ConditionBounds condition;
  Definiteness definiteness = Definiteness::indefinite;
  double det = 0.0;
  double d_min = 0.0;
  double d_max = 0.0;
};

/// Error norms of B - A from delta, omega and p alone. Requires that every zero
/// pivot is followed only by zero omegas; throws PreconditionViolated otherwise.
template <class T>
ErrorNorms error_norms(const HermitianMatrix<T>& a, const ModifiedDecomposition<T>& dec);

/// A-priori bounds a + b + (n-1)c and sqrt(n((a+b)^2 + (n-1)c^2)) with
/// a = max y_i, b = max |A_ii|, c = max_{i!=j} |A_ij|. +inf when y is unbounded.
template <class T>
ErrorNorms error_bounds(const HermitianMatrix<T>& a, const BoundsConfig& cfg);

/// Bounds on kappa_2 of L, D and B for l > 0:
///   kappa(L) <= 2 (a/l)^(n/2), kappa(D) <= b/l, kappa(B) <= 4 a^n b / l^(n+1)
/// with a = mean(y) and b = min{u, max y}. Throws NonPositiveLowerBound if l <= 0.
ConditionBounds condition_bounds(const BoundsConfig& cfg, Index n);

/// Interval containing kappa_2(L) of the exact LDL^H factor of a positive
/// definite matrix:
///   [(tr A / (n d_max))^(n / (2(n-1))), 2 (tr A / (n d_min))^(n/2)]
/// Throws NotPositiveDefinite when the unmodified factorization has a
/// nonpositive or modified pivot.
template <class T>
ConditionInterval ldl_condition_interval(const HermitianMatrix<T>& a);

/// Sign pattern of the pivots (inertia of L D L^H).
Definiteness psd_certificate(std::span<const double> d);

template <class T>
Definiteness psd_certificate(const ModifiedDecomposition<T>& dec) {
  return psd_certificate(std::span<const double>(dec.d));
}

/// Everything the CLI reports for one run. Falls back to direct norms of
/// B - A when the error formulas' precondition fails.
template <class T>
DiagnosticsReport diagnose(const HermitianMatrix<T>& a, const BoundsConfig& cfg, const ModifiedDecomposition<T>& dec);

}  // namespace psdapprox
