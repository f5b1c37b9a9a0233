#pragma once

#include <span>
#include <vector>

#include "psdapprox/core.hpp"

namespace psdapprox {

/// The approximation B built from A and the factorization's scalings:
/// B_ii = A_ii + delta_i and B_ij = omega_b A_ij, where b is whichever of i, j
/// was pivoted later. Where an earlier zero pivot was followed by a nonzero
/// omega the entry is taken from the partial LDL^H product instead.
template <class T>
HermitianMatrix<T> assemble(const HermitianMatrix<T>& a, const ModifiedDecomposition<T>& dec);

/// Literal P^T L D L^H P.
template <class T>
HermitianMatrix<T> compose_explicit(const ModifiedDecomposition<T>& dec);

/// Solves B z = rhs with B = compose_explicit(dec). Throws SingularDecomposition
/// when a pivot is zero.
template <class T>
std::vector<T> solve_with_decomposition(const ModifiedDecomposition<T>& dec, std::span<const T> rhs);

/// det B = prod d_i.
template <class T>
double determinant(const ModifiedDecomposition<T>& dec);

}  // namespace psdapprox
