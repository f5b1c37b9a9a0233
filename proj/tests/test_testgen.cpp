#include <doctest.h>

#include <cmath>

#include "psdapprox/testgen.hpp"
#include "support.hpp"

using namespace psdapprox;
using testgen::ScenarioKind;
using testgen::ScenarioSpec;

TEST_CASE("Rng is reproducible and in range") {
  testgen::Rng a(123);
  testgen::Rng b(123);
  testgen::Rng c(124);
  bool differs = false;
  for (int i = 0; i < 1000; ++i) {
    const auto x = a.next();
    CHECK(x == b.next());
    differs |= x != c.next();
  }
  CHECK(differs);
  double sum = 0.0;
  double sq = 0.0;
  const int m = 100000;
  for (int i = 0; i < m; ++i) {
    const double u = a.uniform();
    CHECK(u >= 0.0);
    CHECK(u < 1.0);
    const double z = a.normal();
    sum += z;
    sq += z * z;
  }
  CHECK(std::abs(sum / m) < 0.02);
  CHECK(std::abs(sq / m - 1.0) < 0.02);
}

TEST_CASE("correlation plus noise") {
  SUBCASE("sigma = 0 is a correlation matrix") {
    ScenarioSpec spec{ScenarioKind::correlation_plus_noise, 12, 0.0, -1, 1, 5};
    const auto a = testgen::gen_correlation_plus_noise(spec);
    for (Index i = 0; i < 12; ++i) CHECK(a(i, i) == 1.0);
    CHECK(oracle::min_eigenvalue(a) >= -1e-10);
  }
  SUBCASE("same seed twice") {
    ScenarioSpec spec{ScenarioKind::correlation_plus_noise, 9, 0.2, -1, 1, 77};
    CHECK(testgen::generate(spec) == testgen::generate(spec));
    ScenarioSpec other = spec;
    other.seed = 78;
    CHECK_FALSE(testgen::generate(spec) == testgen::generate(other));
  }
  SUBCASE("noise statistics") {
    ScenarioSpec spec{ScenarioKind::correlation_plus_noise, 10, 0.3, -1, 1, 42};
    const auto a = testgen::gen_correlation_plus_noise(spec);
    const auto c = testgen::gen_correlation(spec);
    double sum = 0.0;
    int count = 0;
    for (Index i = 0; i < 10; ++i) {
      CHECK(a(i, i) == 1.0);
      CHECK(c(i, i) == doctest::Approx(1.0));
      for (Index j = 0; j < i; ++j) {
        sum += a(i, j) - c(i, j);
        ++count;
      }
    }
    CHECK(count == 45);
    CHECK(std::abs(sum / count) <= 4 * 0.3 / std::sqrt(45.0));
  }
  SUBCASE("noise makes most instances indefinite") {
    int indefinite = 0;
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ScenarioSpec spec{ScenarioKind::correlation_plus_noise, 20, 0.3, -1, 1, seed};
      indefinite += oracle::min_eigenvalue(testgen::generate(spec)) < 0.0;
    }
    CHECK(indefinite >= 15);
  }
}

TEST_CASE("eigenvalue range") {
  SUBCASE("planted spectrum") {
    for (std::uint64_t seed = 0; seed < 20; ++seed) {
      ScenarioSpec spec{ScenarioKind::eigenvalue_range, 3 + seed % 15, 0.0, -1e4, 1e4, seed};
      const auto a = testgen::gen_symmetric_eigrange(spec);
      const auto planted = testgen::planted_spectrum(spec);
      const auto values = oracle::jacobi_eigendecomposition(a).values;
      REQUIRE(values.size() == planted.size());
      for (Index k = 0; k < values.size(); ++k)
        CHECK(values[k] == doctest::Approx(planted[k]).epsilon(1e-8).scale(1e4));
      CHECK(planted.front() < 0.0);
      CHECK(planted.back() > 0.0);
      const auto& m = a.dense();
      CHECK(frobenius_norm(m - m.adjoint()) <= 1e-14 * frobenius_norm(m));
    }
  }
  SUBCASE("same seed twice") {
    ScenarioSpec spec{ScenarioKind::eigenvalue_range, 8, 0.0, -5, 5, 3};
    CHECK(testgen::generate(spec) == testgen::generate(spec));
  }
  SUBCASE("both signs even for a lopsided range") {
    ScenarioSpec spec{ScenarioKind::eigenvalue_range, 10, 0.0, -1, 1e4, 7};
    const auto a = testgen::generate(spec);
    const auto values = oracle::jacobi_eigendecomposition(a).values;
    CHECK(values.front() < 0.0);
    CHECK(values.back() > 0.0);
  }
  SUBCASE("invalid ranges") {
    CHECK_THROWS_AS(testgen::gen_symmetric_eigrange({ScenarioKind::eigenvalue_range, 4, 0.0, 0.0, 1.0, 0}), Error);
    CHECK_THROWS_AS(testgen::gen_symmetric_eigrange({ScenarioKind::eigenvalue_range, 4, 0.0, -1.0, 0.0, 0}), Error);
  }
}

TEST_CASE("scenario names") {
  CHECK(testgen::parse_scenario_kind("correlation") == ScenarioKind::correlation_plus_noise);
  CHECK(testgen::parse_scenario_kind("eig-range") == ScenarioKind::eigenvalue_range);
  CHECK(testgen::parse_scenario_kind(testgen::to_string(ScenarioKind::eigenvalue_range)) ==
        ScenarioKind::eigenvalue_range);
  CHECK_FALSE(testgen::parse_scenario_kind("wishart").has_value());
}
