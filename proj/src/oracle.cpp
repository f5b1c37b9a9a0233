#include "psdapprox/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <tuple>

namespace psdapprox::oracle {

namespace {

double off_diagonal_mass(const Matrix<double>& a) {
  double s = 0.0;
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

void rotate(Matrix<double>& a, Matrix<double>& v, Index p, Index q) {
  const double apq = a(p, q);
  if (apq == 0.0) return;
  const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
  const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::hypot(theta, 1.0));
  const double c = 1.0 / std::sqrt(t * t + 1.0);
  const double s = t * c;
  const Index n = a.rows();
  for (Index k = 0; k < n; ++k) {
    const double akp = a(k, p);
    const double akq = a(k, q);
    a(k, p) = c * akp - s * akq;
    a(k, q) = s * akp + c * akq;
  }
  for (Index k = 0; k < n; ++k) {
    const double apk = a(p, k);
    const double aqk = a(q, k);
    a(p, k) = c * apk - s * aqk;
    a(q, k) = s * apk + c * aqk;
  }
  a(p, q) = 0.0;
  a(q, p) = 0.0;
  for (Index k = 0; k < n; ++k) {
    const double vkp = v(k, p);
    const double vkq = v(k, q);
    v(k, p) = c * vkp - s * vkq;
    v(k, q) = s * vkp + c * vkq;
  }
}

}  // namespace

EigenDecomposition jacobi_eigendecomposition(const HermitianMatrix<double>& a, int max_sweeps) {
  const Index n = a.size();
  Matrix<double> work = a.dense();
  Matrix<double> v = Matrix<double>::identity(n);
  const double target = 1e-14 * frobenius_norm(work);

  bool converged = false;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (off_diagonal_mass(work) <= target) {
      converged = true;
      break;
    }
    if (sweep == max_sweeps) break;
    for (Index p = 0; p + 1 < n; ++p)
      for (Index q = p + 1; q < n; ++q) rotate(work, v, p, q);
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweep limit reached");

  std::vector<Index> order(n);
  std::iota(order.begin(), order.end(), Index{0});
  std::sort(order.begin(), order.end(), [&](Index i, Index j) { return work(i, i) < work(j, j); });
  EigenDecomposition out{std::vector<double>(n), Matrix<double>(n, n)};
  for (Index k = 0; k < n; ++k) {
    out.values[k] = work(order[k], order[k]);
    for (Index i = 0; i < n; ++i) out.vectors(i, k) = v(i, order[k]);
  }
  return out;
}

HermitianMatrix<double> nearest_psd_eigclip(const HermitianMatrix<double>& a) {
  const Index n = a.size();
  const EigenDecomposition eig = jacobi_eigendecomposition(a);
  Matrix<double> out(n, n);
  for (Index k = 0; k < n; ++k) {
    const double lambda = std::max(eig.values[k], 0.0);
    if (lambda == 0.0) continue;
    for (Index i = 0; i < n; ++i) {
      const double vi = lambda * eig.vectors(i, k);
      for (Index j = 0; j < n; ++j) out(i, j) += vi * eig.vectors(j, k);
    }
  }
  return HermitianMatrix<double>(std::move(out), 1e-10);
}

double min_eigenvalue(const HermitianMatrix<double>& a) {
  const EigenDecomposition eig = jacobi_eigendecomposition(a);
  return eig.values.empty() ? 0.0 : eig.values.front();
}

double condition_number(const Matrix<double>& m) {
  const Matrix<double> gram = m.adjoint() * m;
  const EigenDecomposition eig = jacobi_eigendecomposition(HermitianMatrix<double>(gram, 1e-10));
  const double lo = eig.values.front();
  const double hi = eig.values.back();
  if (!(lo > 0.0)) return kInf;
  return std::sqrt(hi / lo);
}

PivotChoice grid_minimal_change(const PivotWindow& w, const PivotState& st, int grid_n) {
  if (grid_n < 2) throw Error(ErrorCode::InvalidConfiguration, "grid_n must be at least 2");
  const double alpha = st.alpha;
  const double gamma = st.gamma;
  const double floor_d = std::max(w.l, w.epsilon);
  if (std::max({w.l, w.epsilon, w.x}) > std::min(w.u, w.y))
    throw Error(ErrorCode::InfeasiblePivot, "max{l, eps, x} > min{u, y}");

  PivotChoice best{};
  bool have = false;
  auto consider = [&](double d, double omega) {
    const double f = objective(d, omega, st);
    if (!have || std::tuple(f, -d, omega) < std::tuple(best.f, -best.d, best.omega)) {
      best = {d, omega, f};
      have = true;
    }
  };

  // Samples the feasible omega interval of one pivot value.
  auto sweep_omega = [&](double d) {
    if (!(d >= floor_d && d <= w.u && d <= w.y)) return;
    double lo = 0.0;
    double hi = 1.0;
    if (alpha > 0.0) {
      // Squared omega range; the slack absorbs rounding in x - alpha and y - alpha.
      double lo2 = std::max(w.x - d, 0.0) / alpha;
      const double hi2 = std::min((w.y - d) / alpha, 1.0);
      if (lo2 > hi2 + 1e-12) return;
      lo2 = std::min(lo2, hi2);
      if (lo2 < 0.0) return;
      lo = std::sqrt(lo2);
      hi = std::sqrt(hi2);
    } else if (d < w.x) {
      return;
    }
    for (int k = 0; k < grid_n; ++k) {
      const double omega = lo + (hi - lo) * static_cast<double>(k) / static_cast<double>(grid_n - 1);
      consider(d, std::min(omega, hi));
    }
  };

  const double d_lo = std::max(floor_d, w.x - alpha);
  const double d_cap = std::isfinite(w.u) ? w.u : gamma + alpha + std::abs(gamma) + 1.0;
  const double d_hi = std::max(d_lo, std::min(w.y, d_cap));
  for (int k = 0; k < grid_n; ++k)
    sweep_omega(d_lo + (d_hi - d_lo) * static_cast<double>(k) / static_cast<double>(grid_n - 1));

  for (double d : {floor_d, w.u, gamma - alpha, w.x - alpha, w.y - alpha})
    if (std::isfinite(d)) sweep_omega(d);
  if (gamma - alpha >= d_lo && gamma - alpha <= std::min(w.u, w.y - alpha)) consider(gamma - alpha, 1.0);
  if (std::max(w.l, w.x) <= 0.0) consider(0.0, 0.0);

  if (!have) throw Error(ErrorCode::InfeasiblePivot, "grid found no feasible point");
  return best;
}

}  // namespace psdapprox::oracle
