#pragma once

// Helpers shared by the unit and acceptance suites.

#include <algorithm>
#include <cmath>
#include <vector>

#include "psdapprox/core.hpp"
#include "psdapprox/oracle.hpp"
#include "psdapprox/testgen.hpp"

namespace psdapprox::test {

/// Symmetric matrix with i.i.d. Normal(0, scale^2) entries.
inline HermitianMatrix<double> random_symmetric(Index n, testgen::Rng& rng, double scale = 1.0) {
  Matrix<double> m(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) {
      m(i, j) = scale * rng.normal();
      m(j, i) = m(i, j);
    }
  return HermitianMatrix<double>(std::move(m));
}

/// Hermitian matrix with complex Normal off-diagonals and real diagonal.
inline HermitianMatrix<Complex> random_hermitian(Index n, testgen::Rng& rng) {
  Matrix<Complex> m(n, n);
  for (Index i = 0; i < n; ++i) {
    m(i, i) = rng.normal();
    for (Index j = 0; j < i; ++j) {
      m(i, j) = Complex(rng.normal(), rng.normal());
      m(j, i) = std::conj(m(i, j));
    }
  }
  return HermitianMatrix<Complex>(std::move(m));
}

/// Positive definite matrix Q diag(lambda) Q^T with lambda ~ Uniform[lo, hi].
inline HermitianMatrix<double> random_pd(Index n, testgen::Rng& rng, double lo = 1.0, double hi = 10.0) {
  std::vector<double> lambda(n);
  for (double& v : lambda) v = rng.uniform(lo, hi);
  return testgen::with_spectrum(lambda, rng);
}

inline Permutation random_permutation(Index n, testgen::Rng& rng) {
  Permutation p = identity_permutation(n);
  for (Index i = n; i > 1; --i) std::swap(p[i - 1], p[rng.next() % i]);
  return p;
}

/// Largest |eigenvalue|, i.e. ||B||_2 for symmetric B.
inline double spectral_norm(const HermitianMatrix<double>& b) {
  const auto eig = oracle::jacobi_eigendecomposition(b);
  return std::max(std::abs(eig.values.front()), std::abs(eig.values.back()));
}

/// kappa_2 of a symmetric matrix from its eigenvalues.
inline double symmetric_condition(const HermitianMatrix<double>& b) {
  const auto eig = oracle::jacobi_eigendecomposition(b);
  double lo = kInf;
  double hi = 0.0;
  for (double v : eig.values) {
    lo = std::min(lo, std::abs(v));
    hi = std::max(hi, std::abs(v));
  }
  return lo > 0.0 ? hi / lo : kInf;
}

/// Real bisection on [lo, hi] for a sign change of f.
template <class F>
double bisect(F f, double lo, double hi) {
  double flo = f(lo);
  for (int it = 0; it < 200; ++it) {
    const double mid = 0.5 * (lo + hi);
    const double fm = f(mid);
    if ((fm < 0) == (flo < 0)) {
      lo = mid;
      flo = fm;
    } else {
      hi = mid;
    }
  }
  return 0.5 * (lo + hi);
}

}  // namespace psdapprox::test
