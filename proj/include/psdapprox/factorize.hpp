#pragma once

#include <utility>
#include <vector>

#include "psdapprox/core.hpp"
#include "psdapprox/pivot.hpp"

namespace psdapprox {

/// Varying pivot floor: clamp(c / 2, l, u) with c = clamp(a_ii, x, y).
double effective_lower_bound(double a_ii, double x, double y, double l, double u);

/// State of one modified LDL^H factorization, advanced one pivot at a time.
///
/// After `step()` has run for positions 0..i-1:
///   alpha()[p[j]] == sum_{k<i} |L(j,k)|^2 d[k]   for j >= i
///   beta()[p[j]]  == 2 sum_{m<i} |A(p[j], p[m])|^2 once update_beta() ran for i
///
/// Pending rows of L can grow by about 1/d per small pivot before their row
/// scaling is applied. Each such row is therefore stored times 2^-e, with e
/// raised whenever its alpha passes kLargeAlpha; factor() shows the stored
/// values and alpha() the unscaled ones (possibly +inf).
template <class T>
class FactorizeWorkspace {
 public:
  /// `cfg` must have a resolved epsilon; it is validated here.
  FactorizeWorkspace(const HermitianMatrix<T>& a, const BoundsConfig& cfg, PivotStrategy strategy);

  Index size() const noexcept { return n_; }
  /// Position of the next pivot.
  Index iteration() const noexcept { return i_; }
  bool done() const noexcept { return i_ == n_; }

  /// Accumulates 2|A(p[k], p[i-1])|^2 into beta for the remaining indices
  /// (zeroes beta at i == 0).
  void update_beta();

  /// Pivot position j >= i and its (d, omega) under the configured strategy.
  /// Ties resolve to the smallest position.
  std::pair<Index, PivotChoice> select_pivot() const;

  /// Runs update_beta, select_pivot, the row swap and column i of L.
  void step();

  /// Finalizes L (unit diagonal, zero upper triangle) and hands out the result.
  ModifiedDecomposition<T> finish() &&;

  std::vector<double> alpha() const;
  const std::vector<double>& beta() const noexcept { return beta_; }
  const Permutation& permutation() const noexcept { return p_; }
  const Matrix<T>& factor() const noexcept { return L_; }
  const std::vector<double>& pivots() const noexcept { return d_; }

 private:
  // choice.omega is the true omega; omega_hat = omega * 2^e multiplies the
  // stored row.
  struct Candidate {
    PivotChoice choice;
    double omega_hat = 0.0;
  };
  Candidate choose_at(Index k) const;
  std::pair<Index, Candidate> select() const;
  void eliminate();

  const HermitianMatrix<T>* a_;
  BoundsConfig cfg_;
  PivotStrategy strategy_;
  Index n_;
  Index i_ = 0;
  bool beta_current_ = false;

  Matrix<T> L_;
  std::vector<double> d_;
  Permutation p_;
  std::vector<double> omega_;
  std::vector<double> delta_;
  std::vector<double> alpha_;  // scaled by 2^(-2 e)
  std::vector<int> scale_;     // e per original index
  std::vector<double> beta_;
};

/// Modified LDL^H factorization of `a` subject to `cfg`. An unset epsilon
/// is derived with `default_epsilon`. Requires cfg.pivot_min >= 0.
template <class T>
ModifiedDecomposition<T> decompose(const HermitianMatrix<T>& a, const BoundsConfig& cfg,
                                   PivotStrategy strategy = PivotStrategy::max_d);

}  // namespace psdapprox
