#include "psdapprox/reconstruct.hpp"

namespace psdapprox {

namespace {

template <class T>
void check_shapes(const ModifiedDecomposition<T>& dec) {
  const Index n = dec.size();
  if (dec.L.rows() != n || dec.L.cols() != n || dec.p.size() != n || dec.omega.size() != n ||
      dec.delta.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "inconsistent decomposition shapes");
}

}  // namespace

template <class T>
HermitianMatrix<T> assemble(const HermitianMatrix<T>& a, const ModifiedDecomposition<T>& dec) {
  check_shapes(dec);
  const Index n = a.size();
  if (dec.size() != n) throw Error(ErrorCode::DimensionMismatch, "decomposition does not match matrix");
  const Permutation q = inverse_permutation(dec.p);

  Matrix<T> b(n, n);
  for (Index i = 0; i < n; ++i) {
    b(i, i) = T{a.diag(i) + dec.delta[i]};
    for (Index j = i + 1; j < n; ++j) {
      const Index first = q[i] > q[j] ? j : i;
      const Index later = q[i] > q[j] ? i : j;
      T v;
      if (dec.d[q[first]] != 0.0 || dec.omega[later] == 0.0) {
        v = a(i, j) * dec.omega[later];
      } else {
        const auto li = dec.L.row(q[i]);
        const auto lj = dec.L.row(q[j]);
        v = T{};
        for (Index k = 0; k < q[first]; ++k) v += li[k] * dec.d[k] * conj(lj[k]);
      }
      b(i, j) = v;
      b(j, i) = conj(v);
    }
  }
  return HermitianMatrix<T>(std::move(b), 0.0);
}

template <class T>
HermitianMatrix<T> compose_explicit(const ModifiedDecomposition<T>& dec) {
  check_shapes(dec);
  check_permutation(dec.p);
  const Index n = dec.size();
  // M = L D L^H in pivot order, then B(p_i, p_j) = M(i, j).
  Matrix<T> b(n, n);
  for (Index i = 0; i < n; ++i) {
    const auto li = dec.L.row(i);
    for (Index j = 0; j <= i; ++j) {
      const auto lj = dec.L.row(j);
      T s{};
      for (Index k = 0; k <= j; ++k) s += li[k] * dec.d[k] * conj(lj[k]);
      b(dec.p[i], dec.p[j]) = s;
      b(dec.p[j], dec.p[i]) = conj(s);
    }
  }
  for (Index i = 0; i < n; ++i) b(i, i) = T{real_part(b(i, i))};
  return HermitianMatrix<T>(std::move(b), 0.0);
}

template <class T>
std::vector<T> solve_with_decomposition(const ModifiedDecomposition<T>& dec, std::span<const T> rhs) {
  check_shapes(dec);
  const Index n = dec.size();
  if (rhs.size() != n) throw Error(ErrorCode::DimensionMismatch, "right-hand side length");
  for (Index i = 0; i < n; ++i)
    if (dec.d[i] == 0.0) throw Error(ErrorCode::SingularDecomposition, "zero pivot", i);

  std::vector<T> w(n);
  for (Index i = 0; i < n; ++i) w[i] = rhs[dec.p[i]];
  for (Index i = 0; i < n; ++i) {
    const auto li = dec.L.row(i);
    for (Index k = 0; k < i; ++k) w[i] -= li[k] * w[k];
  }
  for (Index i = 0; i < n; ++i) w[i] /= dec.d[i];
  for (Index i = n; i-- > 0;)
    for (Index k = i + 1; k < n; ++k) w[i] -= conj(dec.L(k, i)) * w[k];

  std::vector<T> z(n);
  for (Index i = 0; i < n; ++i) z[dec.p[i]] = w[i];
  return z;
}

template <class T>
double determinant(const ModifiedDecomposition<T>& dec) {
  double det = 1.0;
  for (double v : dec.d) det *= v;
  return det;
}

#define PSDAPPROX_INSTANTIATE(T)                                                                         \
  template HermitianMatrix<T> assemble(const HermitianMatrix<T>&, const ModifiedDecomposition<T>&);     \
  template HermitianMatrix<T> compose_explicit(const ModifiedDecomposition<T>&);                        \
  template std::vector<T> solve_with_decomposition(const ModifiedDecomposition<T>&, std::span<const T>); \
  template double determinant(const ModifiedDecomposition<T>&);

PSDAPPROX_INSTANTIATE(double)
PSDAPPROX_INSTANTIATE(Complex)

#undef PSDAPPROX_INSTANTIATE

}  // namespace psdapprox
