#include "psdapprox/core.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace psdapprox {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InfeasibleBounds: return "InfeasibleBounds";
    case ErrorCode::EpsilonWindowViolation: return "EpsilonWindowViolation";
    case ErrorCode::NonPositiveEpsilon: return "NonPositiveEpsilon";
    case ErrorCode::InvalidConfiguration: return "InvalidConfiguration";
    case ErrorCode::NotAPermutation: return "NotAPermutation";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotSquare: return "NotSquare";
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::InfeasiblePivot: return "InfeasiblePivot";
    case ErrorCode::DegenerateCubic: return "DegenerateCubic";
    case ErrorCode::NumericalBreakdown: return "NumericalBreakdown";
    case ErrorCode::SingularDecomposition: return "SingularDecomposition";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::NonPositiveLowerBound: return "NonPositiveLowerBound";
    case ErrorCode::NotPositiveDefinite: return "NotPositiveDefinite";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::InvalidRange: return "InvalidRange";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::IoError: return "IoError";
  }
  return "Unknown";
}

bool is_numerical(ErrorCode code) {
  switch (code) {
    case ErrorCode::NumericalBreakdown:
    case ErrorCode::SingularDecomposition:
    case ErrorCode::NotPositiveDefinite:
    case ErrorCode::NoConvergence:
    case ErrorCode::DegenerateCubic:
      return true;
    default:
      return false;
  }
}

namespace {

std::string format_error(ErrorCode code, const std::string& what, std::optional<Index> index) {
  std::ostringstream os;
  os << to_string(code);
  if (index) os << '(' << (*index + 1) << ')';
  if (!what.empty()) os << ": " << what;
  return os.str();
}

}  // namespace

Error::Error(ErrorCode code, const std::string& what, std::optional<Index> index)
    : std::runtime_error(format_error(code, what, index)), code_(code), index_(index) {}

// ---------------------------------------------------------------------------
// Matrix
// ---------------------------------------------------------------------------

template <class T>
Matrix<T>::Matrix(Index rows, Index cols, std::vector<T> data)
    : rows_(rows), cols_(cols), data_(std::move(data)) {
  if (data_.size() != rows_ * cols_)
    throw Error(ErrorCode::DimensionMismatch, "data size does not match shape");
}

template <class T>
Matrix<T>::Matrix(std::initializer_list<std::initializer_list<T>> rows) {
  rows_ = rows.size();
  cols_ = rows_ == 0 ? 0 : rows.begin()->size();
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged initializer");
    data_.insert(data_.end(), r.begin(), r.end());
  }
}

template <class T>
Matrix<T> Matrix<T>::identity(Index n) {
  Matrix m(n, n);
  for (Index i = 0; i < n; ++i) m(i, i) = T{1};
  return m;
}

template <class T>
Matrix<T> Matrix<T>::adjoint() const {
  Matrix out(cols_, rows_);
  for (Index i = 0; i < rows_; ++i)
    for (Index j = 0; j < cols_; ++j) out(j, i) = conj((*this)(i, j));
  return out;
}

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.cols() != b.rows()) throw Error(ErrorCode::DimensionMismatch, "matrix product");
  Matrix<T> out(a.rows(), b.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index k = 0; k < a.cols(); ++k) {
      const T aik = a(i, k);
      if (aik == T{}) continue;
      for (Index j = 0; j < b.cols(); ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols())
    throw Error(ErrorCode::DimensionMismatch, "matrix difference");
  Matrix<T> out(a.rows(), a.cols());
  for (Index i = 0; i < a.rows(); ++i)
    for (Index j = 0; j < a.cols(); ++j) out(i, j) = a(i, j) - b(i, j);
  return out;
}

template <class T>
double frobenius_norm(const Matrix<T>& m) {
  double s = 0.0;
  for (const T& v : m.data()) s += abs2(v);
  return std::sqrt(s);
}

template <class T>
double inf_norm(const Matrix<T>& m) {
  double best = 0.0;
  for (Index i = 0; i < m.rows(); ++i) {
    double s = 0.0;
    for (const T& v : m.row(i)) s += std::abs(v);
    best = std::max(best, s);
  }
  return best;
}

template <class T>
double max_abs(const Matrix<T>& m) {
  double best = 0.0;
  for (const T& v : m.data()) best = std::max(best, static_cast<double>(std::abs(v)));
  return best;
}

// ---------------------------------------------------------------------------
// HermitianMatrix
// ---------------------------------------------------------------------------

template <class T>
HermitianMatrix<T>::HermitianMatrix(Matrix<T> m, double tol) : m_(std::move(m)) {
  if (!m_.square()) throw Error(ErrorCode::NotSquare, "matrix is not square");
  const Index n = m_.rows();
  for (const T& v : m_.data())
    if (!std::isfinite(std::abs(v))) throw Error(ErrorCode::NotHermitian, "non-finite entry");
  const double limit = tol * std::max(1.0, max_abs(m_));
  for (Index i = 0; i < n; ++i)
    for (Index j = i; j < n; ++j)
      if (std::abs(m_(i, j) - conj(m_(j, i))) > limit)
        throw Error(ErrorCode::NotHermitian,
                    "entries (" + std::to_string(i + 1) + "," + std::to_string(j + 1) +
                        ") and its mirror differ beyond tolerance");
  for (Index i = 0; i < n; ++i) {
    m_(i, i) = T{real_part(m_(i, i))};
    for (Index j = i + 1; j < n; ++j) {
      const T avg = (m_(i, j) + conj(m_(j, i))) * 0.5;
      m_(i, j) = avg;
      m_(j, i) = conj(avg);
    }
  }
}

template <class T>
HermitianMatrix<T>::HermitianMatrix(std::initializer_list<std::initializer_list<T>> rows)
    : HermitianMatrix(Matrix<T>(rows)) {}

template <class T>
HermitianMatrix<T> HermitianMatrix<T>::identity(Index n) {
  return HermitianMatrix(Matrix<T>::identity(n));
}

template <class T>
HermitianMatrix<T> HermitianMatrix<T>::zero(Index n) {
  return HermitianMatrix(Matrix<T>(n, n));
}

// ---------------------------------------------------------------------------
// Bounds
// ---------------------------------------------------------------------------

BoundsConfig BoundsConfig::unconstrained(Index n, double pivot_min) {
  BoundsConfig cfg;
  cfg.diag_min.assign(n, -kInf);
  cfg.diag_max.assign(n, kInf);
  cfg.pivot_min = pivot_min;
  return cfg;
}

BoundsConfig BoundsConfig::fixed_diagonal(Index n, double value, double pivot_min) {
  BoundsConfig cfg;
  cfg.diag_min.assign(n, value);
  cfg.diag_max.assign(n, value);
  cfg.pivot_min = pivot_min;
  return cfg;
}

std::string_view to_string(PivotStrategy s) {
  switch (s) {
    case PivotStrategy::natural: return "natural";
    case PivotStrategy::min_error: return "min-error";
    case PivotStrategy::max_d: return "max-d";
  }
  return "unknown";
}

std::optional<PivotStrategy> parse_strategy(std::string_view name) {
  if (name == "natural") return PivotStrategy::natural;
  if (name == "min-error") return PivotStrategy::min_error;
  if (name == "max-d") return PivotStrategy::max_d;
  return std::nullopt;
}

BoundsConfig validate_bounds(const BoundsConfig& cfg, Index n) {
  if (cfg.diag_min.size() != n || cfg.diag_max.size() != n)
    throw Error(ErrorCode::DimensionMismatch, "diagonal bound vectors must have length n");
  if (!cfg.epsilon) throw Error(ErrorCode::InvalidConfiguration, "epsilon is unresolved");
  const double eps = *cfg.epsilon;
  if (!(eps > 0.0)) throw Error(ErrorCode::NonPositiveEpsilon, "epsilon must be positive");
  const double l = cfg.pivot_min;
  const double u = cfg.pivot_max;
  if (std::isnan(l) || std::isnan(u) || l == kInf || u == -kInf)
    throw Error(ErrorCode::InvalidConfiguration, "pivot bounds must be l in R u {-inf}, u in R u {+inf}");
  for (Index i = 0; i < n; ++i) {
    const double x = cfg.diag_min[i];
    const double y = cfg.diag_max[i];
    if (std::isnan(x) || std::isnan(y) || x == kInf || y == -kInf)
      throw Error(ErrorCode::InvalidConfiguration, "invalid diagonal bound", i);
    if (std::max(x, l) > std::min(y, u))
      throw Error(ErrorCode::InfeasibleBounds, "max{x_i, l} > min{y_i, u}", i);
    const bool low_side = std::abs(x) >= eps && std::abs(l) >= eps;
    const bool high_side = std::abs(y) >= eps && std::abs(u) >= eps;
    if (!low_side && !high_side)
      throw Error(ErrorCode::EpsilonWindowViolation, "bounds lie inside the zero-pivot window", i);
  }
  return cfg;
}

template <class T>
double default_epsilon(const HermitianMatrix<T>& a) {
  constexpr double unit_roundoff = std::numeric_limits<double>::epsilon() / 2;
  double diag = 0.0;
  for (Index i = 0; i < a.size(); ++i) diag = std::max(diag, std::abs(a.diag(i)));
  return std::max(unit_roundoff * static_cast<double>(a.size()) * diag, 1e-300);
}

template <class T>
BoundsConfig resolve_epsilon(const BoundsConfig& cfg, const HermitianMatrix<T>& a) {
  BoundsConfig out = cfg;
  if (!out.epsilon) out.epsilon = default_epsilon(a);
  return out;
}

// ---------------------------------------------------------------------------
// Permutations
// ---------------------------------------------------------------------------

void check_permutation(std::span<const Index> p) {
  std::vector<bool> seen(p.size(), false);
  for (Index i = 0; i < p.size(); ++i) {
    if (p[i] >= p.size() || seen[p[i]])
      throw Error(ErrorCode::NotAPermutation, "duplicate or out-of-range entry", i);
    seen[p[i]] = true;
  }
}

Permutation inverse_permutation(std::span<const Index> p) {
  check_permutation(p);
  Permutation q(p.size());
  for (Index i = 0; i < p.size(); ++i) q[p[i]] = i;
  return q;
}

Permutation identity_permutation(Index n) {
  Permutation p(n);
  for (Index i = 0; i < n; ++i) p[i] = i;
  return p;
}

template <class T>
HermitianMatrix<T> apply_symmetric_permutation(const HermitianMatrix<T>& a, std::span<const Index> p) {
  if (p.size() != a.size()) throw Error(ErrorCode::DimensionMismatch, "permutation length");
  check_permutation(p);
  const Index n = a.size();
  Matrix<T> out(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j < n; ++j) out(i, j) = a(p[i], p[j]);
  return HermitianMatrix<T>(std::move(out));
}

// ---------------------------------------------------------------------------
// Instantiations
// ---------------------------------------------------------------------------

#define PSDAPPROX_INSTANTIATE(T)                                                        \
  template class Matrix<T>;                                                             \
  template class HermitianMatrix<T>;                                                    \
  template Matrix<T> operator*(const Matrix<T>&, const Matrix<T>&);                     \
  template Matrix<T> operator-(const Matrix<T>&, const Matrix<T>&);                     \
  template double frobenius_norm(const Matrix<T>&);                                     \
  template double inf_norm(const Matrix<T>&);                                           \
  template double max_abs(const Matrix<T>&);                                            \
  template double default_epsilon(const HermitianMatrix<T>&);                           \
  template BoundsConfig resolve_epsilon(const BoundsConfig&, const HermitianMatrix<T>&); \
  template HermitianMatrix<T> apply_symmetric_permutation(const HermitianMatrix<T>&,    \
                                                          std::span<const Index>);

PSDAPPROX_INSTANTIATE(double)
PSDAPPROX_INSTANTIATE(Complex)

#undef PSDAPPROX_INSTANTIATE

}  // namespace psdapprox
