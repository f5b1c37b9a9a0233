#include "psdapprox/testgen.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

namespace psdapprox::testgen {

namespace {

std::uint64_t splitmix64(std::uint64_t& z) {
  z += 0x9e3779b97f4a7c15ULL;
  std::uint64_t r = z;
  r = (r ^ (r >> 30)) * 0xbf58476d1ce4e5b9ULL;
  r = (r ^ (r >> 27)) * 0x94d049bb133111ebULL;
  return r ^ (r >> 31);
}

constexpr std::uint64_t rotl(std::uint64_t x, int k) { return (x << k) | (x >> (64 - k)); }

void check_common(const ScenarioSpec& spec) {
  if (spec.n < 2) throw Error(ErrorCode::InvalidConfiguration, "scenario dimension must be at least 2");
}

Matrix<double> random_orthogonal(Index n, Rng& rng) {
  Matrix<double> a(n, n);
  for (double& v : a.data()) v = rng.normal();

  std::vector<std::vector<double>> reflectors;
  std::vector<double> r_diag(n);
  for (Index k = 0; k < n; ++k) {
    double norm = 0.0;
    for (Index i = k; i < n; ++i) norm += a(i, k) * a(i, k);
    norm = std::sqrt(norm);
    const double alpha = a(k, k) > 0.0 ? -norm : norm;
    std::vector<double> v(n - k);
    for (Index i = k; i < n; ++i) v[i - k] = a(i, k);
    v[0] -= alpha;
    double vnorm = 0.0;
    for (double e : v) vnorm += e * e;
    vnorm = std::sqrt(vnorm);
    if (vnorm > 0.0)
      for (double& e : v) e /= vnorm;
    for (Index j = k; j < n; ++j) {
      double s = 0.0;
      for (Index i = k; i < n; ++i) s += v[i - k] * a(i, j);
      for (Index i = k; i < n; ++i) a(i, j) -= 2.0 * v[i - k] * s;
    }
    r_diag[k] = a(k, k);
    reflectors.push_back(std::move(v));
  }

  Matrix<double> q = Matrix<double>::identity(n);
  for (Index k = n; k-- > 0;) {
    const auto& v = reflectors[k];
    for (Index j = 0; j < n; ++j) {
      double s = 0.0;
      for (Index i = k; i < n; ++i) s += v[i - k] * q(i, j);
      for (Index i = k; i < n; ++i) q(i, j) -= 2.0 * v[i - k] * s;
    }
  }
  for (Index k = 0; k < n; ++k)
    if (r_diag[k] < 0.0)
      for (Index i = 0; i < n; ++i) q(i, k) = -q(i, k);
  return q;
}

std::vector<double> draw_spectrum(const ScenarioSpec& spec, Rng& rng) {
  check_common(spec);
  if (!(spec.lambda_min < 0.0) || !(spec.lambda_max > 0.0) || !(spec.lambda_min < spec.lambda_max))
    throw Error(ErrorCode::InvalidRange, "eigenvalue range must satisfy lambda_min < 0 < lambda_max");
  std::vector<double> lambda(spec.n);
  for (double& v : lambda) v = rng.uniform(spec.lambda_min, spec.lambda_max);
  auto [lo, hi] = std::minmax_element(lambda.begin(), lambda.end());
  // Resample the extremes until both signs are present.
  while (!(*lo < 0.0)) *lo = rng.uniform(spec.lambda_min, 0.0);
  while (!(*hi > 0.0)) *hi = rng.uniform(0.0, spec.lambda_max);
  return lambda;
}

Matrix<double> correlation_part(const ScenarioSpec& spec, Rng& rng) {
  check_common(spec);
  const Index n = spec.n;
  const Index dim = n + 2;
  Matrix<double> vecs(n, dim);
  for (Index i = 0; i < n; ++i) {
    double norm = 0.0;
    for (double& v : vecs.row(i)) {
      v = rng.normal();
      norm += v * v;
    }
    norm = std::sqrt(norm);
    for (double& v : vecs.row(i)) v /= norm;
  }
  Matrix<double> c(n, n);
  for (Index i = 0; i < n; ++i) {
    c(i, i) = 1.0;
    for (Index j = 0; j < i; ++j) {
      double s = 0.0;
      for (Index k = 0; k < dim; ++k) s += vecs(i, k) * vecs(j, k);
      c(i, j) = s;
      c(j, i) = s;
    }
  }
  return c;
}

}  // namespace

Rng::Rng(std::uint64_t seed) {
  std::uint64_t z = seed;
  for (auto& s : s_) s = splitmix64(z);
}

std::uint64_t Rng::next() {
  const std::uint64_t result = rotl(s_[1] * 5, 7) * 9;
  const std::uint64_t t = s_[1] << 17;
  s_[2] ^= s_[0];
  s_[3] ^= s_[1];
  s_[1] ^= s_[2];
  s_[0] ^= s_[3];
  s_[2] ^= t;
  s_[3] = rotl(s_[3], 45);
  return result;
}

double Rng::uniform() { return static_cast<double>(next() >> 11) * 0x1.0p-53; }

double Rng::uniform(double lo, double hi) { return lo + (hi - lo) * uniform(); }

double Rng::normal() {
  if (spare_) {
    const double v = *spare_;
    spare_.reset();
    return v;
  }
  double u1 = uniform();
  while (u1 == 0.0) u1 = uniform();
  const double u2 = uniform();
  const double radius = std::sqrt(-2.0 * std::log(u1));
  const double angle = 2.0 * std::numbers::pi * u2;
  spare_ = radius * std::sin(angle);
  return radius * std::cos(angle);
}

std::string_view to_string(ScenarioKind k) {
  return k == ScenarioKind::correlation_plus_noise ? "correlation-plus-noise" : "eigenvalue-range";
}

std::optional<ScenarioKind> parse_scenario_kind(std::string_view name) {
  if (name == "correlation-plus-noise" || name == "correlation") return ScenarioKind::correlation_plus_noise;
  if (name == "eigenvalue-range" || name == "eig-range") return ScenarioKind::eigenvalue_range;
  return std::nullopt;
}

HermitianMatrix<double> gen_correlation(const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  return HermitianMatrix<double>(correlation_part(spec, rng));
}

HermitianMatrix<double> gen_correlation_plus_noise(const ScenarioSpec& spec) {
  if (!(spec.sigma >= 0.0)) throw Error(ErrorCode::InvalidConfiguration, "sigma must be nonnegative");
  Rng rng(spec.seed);
  Matrix<double> c = correlation_part(spec, rng);
  for (Index i = 1; i < spec.n; ++i)
    for (Index j = 0; j < i; ++j) {
      const double noise = spec.sigma * rng.normal();
      c(i, j) += noise;
      c(j, i) = c(i, j);
    }
  return HermitianMatrix<double>(std::move(c));
}

HermitianMatrix<double> with_spectrum(std::span<const double> lambda, Rng& rng) {
  const Index n = lambda.size();
  const Matrix<double> q = random_orthogonal(n, rng);
  Matrix<double> a(n, n);
  for (Index i = 0; i < n; ++i)
    for (Index j = 0; j <= i; ++j) {
      double s = 0.0;
      for (Index k = 0; k < n; ++k) s += q(i, k) * lambda[k] * q(j, k);
      a(i, j) = s;
      a(j, i) = s;
    }
  return HermitianMatrix<double>(std::move(a));
}

HermitianMatrix<double> gen_symmetric_eigrange(const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  const std::vector<double> lambda = draw_spectrum(spec, rng);
  return with_spectrum(lambda, rng);
}

std::vector<double> planted_spectrum(const ScenarioSpec& spec) {
  Rng rng(spec.seed);
  std::vector<double> lambda = draw_spectrum(spec, rng);
  std::sort(lambda.begin(), lambda.end());
  return lambda;
}

HermitianMatrix<double> generate(const ScenarioSpec& spec) {
  return spec.kind == ScenarioKind::correlation_plus_noise ? gen_correlation_plus_noise(spec)
                                                           : gen_symmetric_eigrange(spec);
}

}  // namespace psdapprox::testgen
