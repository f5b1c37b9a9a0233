#pragma once

#include <vector>

#include "psdapprox/core.hpp"
#include "psdapprox/pivot.hpp"

// Reference computations for testing and for the compare command. Nothing in
// the factorization path depends on this header.

namespace psdapprox::oracle {

struct EigenDecomposition {
  std::vector<double> values;  // ascending
  Matrix<double> vectors;      // column k pairs with values[k]
};

/// Cyclic Jacobi. Stops once the off-diagonal Frobenius mass is at most
/// 1e-14 ||A||_F; throws NoConvergence after `max_sweeps`.
EigenDecomposition jacobi_eigendecomposition(const HermitianMatrix<double>& a, int max_sweeps = 30);

/// V max(Lambda, 0) V^T, the Frobenius-nearest positive semidefinite matrix.
HermitianMatrix<double> nearest_psd_eigclip(const HermitianMatrix<double>& a);

double min_eigenvalue(const HermitianMatrix<double>& a);

/// kappa_2 of a square matrix from the eigenvalues of M^T M; +inf when singular.
double condition_number(const Matrix<double>& m);

/// Exhaustive search for the minimal-change pivot. For each of `grid_n`
/// pivot values d on [max{l, eps, x - alpha}, min{u, y, d_cap}] the feasible
/// omega interval is sampled at `grid_n` points including both ends. The exact
/// points (gamma - alpha, 1), the floor and ceiling pivots and (0, 0) are
/// added when feasible. d_cap = gamma + alpha + |gamma| + 1 when u is infinite.
PivotChoice grid_minimal_change(const PivotWindow& window, const PivotState& st, int grid_n);

}  // namespace psdapprox::oracle
