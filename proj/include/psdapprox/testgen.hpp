#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "psdapprox/core.hpp"

namespace psdapprox::testgen {

/// xoshiro256** seeded through splitmix64, so streams are reproducible from
/// the 64-bit seed alone.
///
///   splitmix64: z += 0x9e3779b97f4a7c15;
///               z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9;
///               z = (z ^ (z >> 27)) * 0x94d049bb133111eb;  return z ^ (z >> 31)
///   xoshiro256**: result = rotl(s1 * 5, 7) * 9, standard state update with
///               t = s1 << 17 and final rotl(s3, 45)
///
/// uniform() = (next() >> 11) * 2^-53; normal() is Box-Muller on two uniforms
/// and caches the second variate.
class Rng {
 public:
  explicit Rng(std::uint64_t seed);

  std::uint64_t next();
  double uniform();
  double uniform(double lo, double hi);
  double normal();

 private:
  std::array<std::uint64_t, 4> s_{};
  std::optional<double> spare_;
};

enum class ScenarioKind { correlation_plus_noise, eigenvalue_range };

std::string_view to_string(ScenarioKind k);
std::optional<ScenarioKind> parse_scenario_kind(std::string_view name);

struct ScenarioSpec {
  ScenarioKind kind = ScenarioKind::correlation_plus_noise;
  Index n = 10;
  double sigma = 0.1;
  double lambda_min = -1.0;
  double lambda_max = 1.0;
  std::uint64_t seed = 0;
};

/// Unit-diagonal C + N: C is the Gram matrix of n random unit vectors in
/// dimension n + 2, N symmetric with zero diagonal and Normal(0, sigma^2)
/// off-diagonal entries.
HermitianMatrix<double> gen_correlation_plus_noise(const ScenarioSpec& spec);

/// The correlation part C alone, from the same stream.
HermitianMatrix<double> gen_correlation(const ScenarioSpec& spec);

/// Q diag(lambda) Q^T with lambda_i ~ Uniform[lambda_min, lambda_max], at least
/// one negative and one positive, and Q from a Householder QR of a Gaussian
/// matrix with sign-fixed R diagonal. Throws InvalidRange unless
/// lambda_min < 0 < lambda_max.
HermitianMatrix<double> gen_symmetric_eigrange(const ScenarioSpec& spec);

/// The planted spectrum of gen_symmetric_eigrange, ascending.
std::vector<double> planted_spectrum(const ScenarioSpec& spec);

/// Q diag(lambda) Q^T for a caller-chosen spectrum, with Q drawn from `rng`.
HermitianMatrix<double> with_spectrum(std::span<const double> lambda, Rng& rng);

/// Dispatches on spec.kind.
HermitianMatrix<double> generate(const ScenarioSpec& spec);

}  // namespace psdapprox::testgen
