#include <doctest.h>

#include <cmath>

#include "psdapprox/oracle.hpp"
#include "support.hpp"

using namespace psdapprox;

TEST_CASE("jacobi_eigendecomposition examples") {
  auto e = oracle::jacobi_eigendecomposition(HermitianMatrix<double>{{3, 0, 0}, {0, 1, 0}, {0, 0, 2}});
  CHECK(e.values == std::vector<double>{1, 2, 3});

  e = oracle::jacobi_eigendecomposition(HermitianMatrix<double>{{0, 1}, {1, 0}});
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(1.0));

  e = oracle::jacobi_eigendecomposition(HermitianMatrix<double>{{1, 2}, {2, 1}});
  CHECK(e.values[0] == doctest::Approx(-1.0));
  CHECK(e.values[1] == doctest::Approx(3.0));
}

TEST_CASE("jacobi_eigendecomposition residuals") {
  testgen::Rng rng(70);
  for (int trial = 0; trial < 200; ++trial) {
    const Index n = 2 + rng.next() % 49;
    const auto a = test::random_symmetric(n, rng, std::exp(rng.uniform(-3, 3)));
    const auto e = oracle::jacobi_eigendecomposition(a);
    const double na = frobenius_norm(a.dense());
    Matrix<double> lambda(n, n);
    for (Index k = 0; k < n; ++k) lambda(k, k) = e.values[k];
    const Matrix<double> recon = e.vectors * lambda * e.vectors.adjoint();
    CHECK(frobenius_norm(recon - a.dense()) <= 1e-12 * na * std::sqrt(static_cast<double>(n)));
    const Matrix<double> gram = e.vectors.adjoint() * e.vectors;
    CHECK(frobenius_norm(gram - Matrix<double>::identity(n)) <= 1e-12 * n);
    CHECK(std::is_sorted(e.values.begin(), e.values.end()));
  }
}

TEST_CASE("nearest_psd_eigclip examples") {
  testgen::Rng rng(71);
  const auto q = test::random_pd(5, rng);
  CHECK(frobenius_norm(oracle::nearest_psd_eigclip(q).dense() - q.dense()) <= 1e-10 * frobenius_norm(q.dense()));

  const HermitianMatrix<double> a{{1, 2}, {2, 1}};
  const auto c = oracle::nearest_psd_eigclip(a);
  for (Index i = 0; i < 2; ++i)
    for (Index j = 0; j < 2; ++j) CHECK(c(i, j) == doctest::Approx(1.5));
  CHECK(frobenius_norm(c.dense() - a.dense()) == doctest::Approx(1.0));

  Matrix<double> neg = Matrix<double>::identity(2);
  neg(0, 0) = neg(1, 1) = -1.0;
  const auto z = oracle::nearest_psd_eigclip(HermitianMatrix<double>(neg));
  CHECK(max_abs(z.dense()) == 0.0);
}

TEST_CASE("nearest_psd_eigclip is no farther than any Gram matrix") {
  testgen::Rng rng(72);
  for (int trial = 0; trial < 20; ++trial) {
    const Index n = 2 + rng.next() % 9;
    const auto a = test::random_symmetric(n, rng);
    const auto c = oracle::nearest_psd_eigclip(a);
    CHECK(oracle::min_eigenvalue(c) >= -1e-10 * test::spectral_norm(a));
    const double best = frobenius_norm(c.dense() - a.dense());
    for (int s = 0; s < 100; ++s) {
      Matrix<double> g(n, n);
      for (Index i = 0; i < n; ++i)
        for (Index j = 0; j < n; ++j) g(i, j) = rng.normal() * 0.5;
      const HermitianMatrix<double> q(g * g.adjoint());
      CHECK(best <= frobenius_norm(q.dense() - a.dense()) + 1e-8);
    }
  }
}

TEST_CASE("min_eigenvalue") {
  CHECK(oracle::min_eigenvalue(HermitianMatrix<double>::identity(3)) == doctest::Approx(1.0));
  CHECK(oracle::min_eigenvalue(HermitianMatrix<double>{{1, 2}, {2, 1}}) == doctest::Approx(-1.0));
  CHECK(oracle::min_eigenvalue(HermitianMatrix<double>{{5, 0}, {0, -7}}) == -7.0);
}

TEST_CASE("condition_number") {
  CHECK(oracle::condition_number(Matrix<double>::identity(4)) == doctest::Approx(1.0));
  CHECK(oracle::condition_number(Matrix<double>{{2, 0}, {0, 0.5}}) == doctest::Approx(4.0));
  CHECK(oracle::condition_number(Matrix<double>{{1, 1}, {1, 1}}) == kInf);
}

TEST_CASE("grid_minimal_change never beats minimal_change") {
  testgen::Rng rng(73);
  for (int trial = 0; trial < 500; ++trial) {
    PivotWindow w{-kInf, kInf, 0.0, kInf, 1e-6};
    if (trial % 2) w.x = w.y = std::exp(rng.uniform(-2, 1));
    const PivotState st{std::exp(rng.uniform(-3, 2)), std::exp(rng.uniform(-3, 2)), rng.normal() * 2};
    const auto c = minimal_change(w, st);
    const auto g = oracle::grid_minimal_change(w, st, 200);
    CHECK(g.f >= c.f - 1e-9 * (1 + c.f));
  }
}
