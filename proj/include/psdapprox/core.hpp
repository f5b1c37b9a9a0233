#pragma once

#include <complex>
#include <cstddef>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace psdapprox {

using Index = std::size_t;
using Complex = std::complex<double>;

/// Permutation stored 0-based: entry i is the original index placed at position i.
using Permutation = std::vector<Index>;

inline constexpr double kInf = std::numeric_limits<double>::infinity();

/// Relative tolerance used when accepting a nearly Hermitian input.
inline constexpr double kHermitianTol = 1e-12;

// ---------------------------------------------------------------------------
// Errors
// ---------------------------------------------------------------------------

enum class ErrorCode {
  InfeasibleBounds,
  EpsilonWindowViolation,
  NonPositiveEpsilon,
  InvalidConfiguration,
  NotAPermutation,
  DimensionMismatch,
  NotSquare,
  NotHermitian,
  InfeasiblePivot,
  DegenerateCubic,
  NumericalBreakdown,
  SingularDecomposition,
  PreconditionViolated,
  NonPositiveLowerBound,
  NotPositiveDefinite,
  NoConvergence,
  InvalidRange,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// True for errors caused by the numbers themselves rather than by the caller's
/// configuration or input shape.
bool is_numerical(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what, std::optional<Index> index = std::nullopt);

  ErrorCode code() const noexcept { return code_; }
  /// 0-based index the error refers to, when there is one.
  std::optional<Index> index() const noexcept { return index_; }

 private:
  ErrorCode code_;
  std::optional<Index> index_;
};

// ---------------------------------------------------------------------------
// Scalar helpers
// ---------------------------------------------------------------------------

template <class T>
inline constexpr bool is_complex_v = false;
template <>
inline constexpr bool is_complex_v<Complex> = true;

inline double abs2(double v) { return v * v; }
inline double abs2(const Complex& v) { return std::norm(v); }
inline double conj(double v) { return v; }
inline Complex conj(const Complex& v) { return std::conj(v); }
inline double real_part(double v) { return v; }
inline double real_part(const Complex& v) { return v.real(); }

// ---------------------------------------------------------------------------
// Dense storage
// ---------------------------------------------------------------------------

/// Row-major dense matrix.
template <class T>
class Matrix {
 public:
  Matrix() = default;
  Matrix(Index rows, Index cols) : rows_(rows), cols_(cols), data_(rows * cols, T{}) {}
  Matrix(Index rows, Index cols, std::vector<T> data);
  Matrix(std::initializer_list<std::initializer_list<T>> rows);

  static Matrix identity(Index n);

  Index rows() const noexcept { return rows_; }
  Index cols() const noexcept { return cols_; }
  bool square() const noexcept { return rows_ == cols_; }

  T& operator()(Index i, Index j) { return data_[i * cols_ + j]; }
  const T& operator()(Index i, Index j) const { return data_[i * cols_ + j]; }

  std::span<T> row(Index i) { return {data_.data() + i * cols_, cols_}; }
  std::span<const T> row(Index i) const { return {data_.data() + i * cols_, cols_}; }

  std::span<const T> data() const noexcept { return data_; }
  std::span<T> data() noexcept { return data_; }

  Matrix adjoint() const;

  friend bool operator==(const Matrix&, const Matrix&) = default;

 private:
  Index rows_ = 0;
  Index cols_ = 0;
  std::vector<T> data_;
};

template <class T>
Matrix<T> operator*(const Matrix<T>& a, const Matrix<T>& b);
template <class T>
Matrix<T> operator-(const Matrix<T>& a, const Matrix<T>& b);

template <class T>
double frobenius_norm(const Matrix<T>& m);
/// Maximum absolute row sum.
template <class T>
double inf_norm(const Matrix<T>& m);
template <class T>
double max_abs(const Matrix<T>& m);

/// Dense matrix equal to its conjugate transpose, with real diagonal.
///
/// Construction accepts inputs whose asymmetry is within
/// `tol * max(1, max |A_ij|)` and then averages A and A^H so the stored
/// matrix is exactly Hermitian.
template <class T>
class HermitianMatrix {
 public:
  HermitianMatrix() = default;
  explicit HermitianMatrix(Matrix<T> m, double tol = kHermitianTol);
  HermitianMatrix(std::initializer_list<std::initializer_list<T>> rows);

  static HermitianMatrix identity(Index n);
  static HermitianMatrix zero(Index n);

  Index size() const noexcept { return m_.rows(); }
  const T& operator()(Index i, Index j) const { return m_(i, j); }
  const Matrix<T>& dense() const noexcept { return m_; }
  double diag(Index i) const { return real_part(m_(i, i)); }

  friend bool operator==(const HermitianMatrix&, const HermitianMatrix&) = default;

 private:
  Matrix<T> m_;
};

// ---------------------------------------------------------------------------
// Configuration and results
// ---------------------------------------------------------------------------

/// Bounds on the approximation's diagonal (x, y) and on the pivots (l, u).
struct BoundsConfig {
  std::vector<double> diag_min;  // x, entries may be -inf
  std::vector<double> diag_max;  // y, entries may be +inf
  double pivot_min = 0.0;        // l
  double pivot_max = kInf;       // u
  /// Zero-pivot exclusion radius; unset means "derive from the matrix".
  std::optional<double> epsilon;
  bool use_varying_lower_bound = false;

  static BoundsConfig unconstrained(Index n, double pivot_min = 0.0);
  static BoundsConfig fixed_diagonal(Index n, double value, double pivot_min = 0.0);
};

enum class PivotStrategy { natural, min_error, max_d };

std::string_view to_string(PivotStrategy s);
/// Accepts "natural", "min-error" and "max-d".
std::optional<PivotStrategy> parse_strategy(std::string_view name);

/// Output of the modified LDL^H factorization.
///
/// `L` and `d` are in pivot order (row i belongs to original index p[i]);
/// `omega` and `delta` are indexed by original index.
template <class T>
struct ModifiedDecomposition {
  Matrix<T> L;
  std::vector<double> d;
  Permutation p;
  std::vector<double> omega;
  std::vector<double> delta;

  Index size() const noexcept { return d.size(); }
};

// ---------------------------------------------------------------------------
// Operations
// ---------------------------------------------------------------------------

/// Checks the preconditions of the factorization; returns `cfg` unchanged.
BoundsConfig validate_bounds(const BoundsConfig& cfg, Index n);

/// eps = max(unit_roundoff * n * max_i |A_ii|, 1e-300)
template <class T>
double default_epsilon(const HermitianMatrix<T>& a);

/// Copy of `cfg` with epsilon filled from `default_epsilon` when unset.
template <class T>
BoundsConfig resolve_epsilon(const BoundsConfig& cfg, const HermitianMatrix<T>& a);

void check_permutation(std::span<const Index> p);
Permutation inverse_permutation(std::span<const Index> p);
Permutation identity_permutation(Index n);

/// result(i, j) = A(p[i], p[j])
template <class T>
HermitianMatrix<T> apply_symmetric_permutation(const HermitianMatrix<T>& a, std::span<const Index> p);

}  // namespace psdapprox
