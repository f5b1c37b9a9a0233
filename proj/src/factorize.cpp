#include "psdapprox/factorize.hpp"

#include <algorithm>
#include <cmath>
#include <tuple>

namespace psdapprox {

double effective_lower_bound(double a_ii, double x, double y, double l, double u) {
  const double c = a_ii < x ? x : (a_ii > y ? y : a_ii);
  const double half = 0.5 * c;
  if (half < l) return l;
  if (half > u) return u;
  return half;
}

template <class T>
FactorizeWorkspace<T>::FactorizeWorkspace(const HermitianMatrix<T>& a, const BoundsConfig& cfg,
                                          PivotStrategy strategy)
    : a_(&a),
      cfg_(validate_bounds(cfg, a.size())),
      strategy_(strategy),
      n_(a.size()),
      L_(n_, n_),
      d_(n_, 0.0),
      p_(identity_permutation(n_)),
      omega_(n_, 0.0),
      delta_(n_, 0.0),
      alpha_(n_, 0.0),
      scale_(n_, 0),
      beta_(n_, 0.0) {
  if (!(cfg_.pivot_min >= 0.0))
    throw Error(ErrorCode::InvalidConfiguration, "pivot lower bound must be >= 0 for minimal-change pivots");
}

template <class T>
void FactorizeWorkspace<T>::update_beta() {
  if (i_ == 0) {
    std::fill(beta_.begin(), beta_.end(), 0.0);
  } else {
    const Index prev = p_[i_ - 1];
    for (Index k = i_; k < n_; ++k) beta_[p_[k]] += 2.0 * abs2((*a_)(p_[k], prev));
  }
  beta_current_ = true;
}

template <class T>
std::vector<double> FactorizeWorkspace<T>::alpha() const {
  std::vector<double> out(n_);
  for (Index k = 0; k < n_; ++k) out[k] = std::ldexp(alpha_[k], 2 * scale_[k]);
  return out;
}

template <class T>
typename FactorizeWorkspace<T>::Candidate FactorizeWorkspace<T>::choose_at(Index k) const {
  const Index orig = p_[k];
  PivotWindow w;
  w.x = cfg_.diag_min[orig];
  w.y = cfg_.diag_max[orig];
  w.u = cfg_.pivot_max;
  w.epsilon = *cfg_.epsilon;
  const double gamma = a_->diag(orig);
  w.l = cfg_.use_varying_lower_bound ? effective_lower_bound(gamma, w.x, w.y, cfg_.pivot_min, w.u)
                                     : cfg_.pivot_min;
  const int e = scale_[orig];
  if (e == 0) {
    const PivotChoice c = minimal_change(w, PivotState{alpha_[orig], beta_[orig], gamma});
    return {c, c.omega};
  }
  PivotChoice c = minimal_change_large_alpha(w, alpha_[orig], e, beta_[orig], gamma);
  const double omega_hat = c.omega;
  c.omega = std::ldexp(omega_hat, -e);
  return {c, omega_hat};
}

template <class T>
std::pair<Index, PivotChoice> FactorizeWorkspace<T>::select_pivot() const {
  const auto [k, c] = select();
  return {k, c.choice};
}

template <class T>
std::pair<Index, typename FactorizeWorkspace<T>::Candidate> FactorizeWorkspace<T>::select() const {
  if (strategy_ == PivotStrategy::natural) return {i_, choose_at(i_)};

  Index best_k = i_;
  Candidate best_c = choose_at(i_);
  for (Index k = i_ + 1; k < n_; ++k) {
    const Candidate cand = choose_at(k);
    const PivotChoice& c = cand.choice;
    const PivotChoice& best = best_c.choice;
    const bool better = strategy_ == PivotStrategy::max_d
                            ? std::tuple(-c.d, c.f, c.omega) < std::tuple(-best.d, best.f, best.omega)
                            : std::tuple(c.f, -c.d, c.omega) < std::tuple(best.f, -best.d, best.omega);
    if (better) {
      best_k = k;
      best_c = cand;
    }
  }
  return {best_k, best_c};
}

template <class T>
void FactorizeWorkspace<T>::step() {
  if (done()) return;
  if (!beta_current_) update_beta();
  const auto [j, cand] = select();
  const PivotChoice& choice = cand.choice;
  const Index i = i_;
  if (j != i) {
    std::swap(p_[i], p_[j]);
    for (Index k = 0; k < i; ++k) std::swap(L_(i, k), L_(j, k));
  }

  const Index orig = p_[i];
  d_[i] = choice.d;
  omega_[orig] = choice.omega;
  const double w = cand.omega_hat;
  for (Index k = 0; k < i; ++k) L_(i, k) *= w;
  delta_[orig] = choice.d + w * w * alpha_[orig] - a_->diag(orig);

  eliminate();
  ++i_;
  beta_current_ = false;
}

template <class T>
void FactorizeWorkspace<T>::eliminate() {
  const Index i = i_;
  const double di = d_[i];
  if (di == 0.0) {
    for (Index j = i + 1; j < n_; ++j) L_(j, i) = T{};
    return;
  }
  // weights[k] = conj(L(i,k)) d_k
  std::vector<T> weights(i);
  for (Index k = 0; k < i; ++k) weights[k] = conj(L_(i, k)) * d_[k];
  const Index pi = p_[i];
  for (Index j = i + 1; j < n_; ++j) {
    const Index pj = p_[j];
    const auto row = L_.row(j);
    T s = (*a_)(pj, pi);
    if (scale_[pj] != 0) s *= std::ldexp(1.0, -scale_[pj]);
    for (Index k = 0; k < i; ++k) s -= row[k] * weights[k];
    const T lji = s / di;
    if (!std::isfinite(std::abs(lji)))
      throw Error(ErrorCode::NumericalBreakdown, "non-finite factor entry", j);
    L_(j, i) = lji;
    alpha_[pj] += abs2(lji) * di;
    if (alpha_[pj] > kLargeAlpha) {
      // Bring alpha back near 1 with an exact power-of-two rescale.
      const int shift = std::ilogb(alpha_[pj]) / 2;
      const double f = std::ldexp(1.0, -shift);
      for (Index k = 0; k <= i; ++k) row[k] *= f;
      alpha_[pj] = std::ldexp(alpha_[pj], -2 * shift);
      scale_[pj] += shift;
    }
  }
}

template <class T>
ModifiedDecomposition<T> FactorizeWorkspace<T>::finish() && {
  while (!done()) step();
  for (Index i = 0; i < n_; ++i) {
    L_(i, i) = T{1};
    for (Index j = i + 1; j < n_; ++j) L_(i, j) = T{};
  }
  return {std::move(L_), std::move(d_), std::move(p_), std::move(omega_), std::move(delta_)};
}

template <class T>
ModifiedDecomposition<T> decompose(const HermitianMatrix<T>& a, const BoundsConfig& cfg, PivotStrategy strategy) {
  FactorizeWorkspace<T> ws(a, resolve_epsilon(cfg, a), strategy);
  return std::move(ws).finish();
}

template class FactorizeWorkspace<double>;
template class FactorizeWorkspace<Complex>;
template ModifiedDecomposition<double> decompose(const HermitianMatrix<double>&, const BoundsConfig&,
                                                 PivotStrategy);
template ModifiedDecomposition<Complex> decompose(const HermitianMatrix<Complex>&, const BoundsConfig&,
                                                  PivotStrategy);

}  // namespace psdapprox
