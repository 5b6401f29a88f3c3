#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <numbers>

#include "cayley/rng.hpp"
#include "cayley/trace_inequalities.hpp"

using namespace cayley;

namespace {

// Brute-force oracle: sum_ij <x_i, A x_j>^2 - sum_ij <x_i, x_j>^2.
double defect_oracle(const Matrix& a, const Matrix& x) {
  double structure = 0.0, gram = 0.0;
  const Matrix ax = a * x;
  for (int i = 0; i < x.cols(); ++i) {
    for (int j = 0; j < x.cols(); ++j) {
      double dot_ax = 0.0, dot = 0.0;
      for (int r = 0; r < x.rows(); ++r) {
        dot_ax += x(r, i) * ax(r, j);
        dot += x(r, i) * x(r, j);
      }
      structure += dot_ax * dot_ax;
      gram += dot * dot;
    }
  }
  return structure - gram;
}

Matrix rotation2(double theta) {
  Matrix a(2, 2);
  a(0, 0) = std::cos(theta);
  a(0, 1) = -std::sin(theta);
  a(1, 0) = std::sin(theta);
  a(1, 1) = std::cos(theta);
  return a;
}

}  // namespace

TEST_CASE("identity A gives zero defect") {
  Rng rng(31);
  for (int i = 0; i < 100; ++i) {
    const int m = rng.range(1, 8);
    const Matrix x = random_gaussian(m, rng.range(1, 10), rng);
    const auto report = key_defect(Matrix::identity(m), x);
    CHECK(std::abs(report.defect) <= 1e-9 * (1.0 + std::pow(x.frobenius_norm(), 4.0)));
    CHECK(report.commutator_norm == doctest::Approx(0.0));
    CHECK(report.span_invariant);
  }
}

TEST_CASE("quarter rotation on a single axis column") {
  Matrix x(2, 1);
  x(0, 0) = 1.0;
  const auto report = key_defect(rotation2(std::numbers::pi / 2.0), x);
  CHECK(report.defect == doctest::Approx(-1.0));
  CHECK(report.defect == doctest::Approx(defect_oracle(rotation2(std::numbers::pi / 2.0), x)));
  CHECK_FALSE(report.span_invariant);
}

TEST_CASE("A-invariant plane is the equality case") {
  Rng rng(32);
  for (int i = 0; i < 200; ++i) {
    const int m = 2 * rng.range(1, 6);
    const Matrix q = random_orthonormal_columns(m, m, rng);
    Matrix rot = Matrix::identity(m);
    const double theta = 2.0 * std::numbers::pi * rng.uniform();
    rot(0, 0) = std::cos(theta);
    rot(0, 1) = -std::sin(theta);
    rot(1, 0) = std::sin(theta);
    rot(1, 1) = std::cos(theta);
    const Matrix a = q * rot * q.transposed();

    const int n = rng.range(2, 5);
    Matrix plane(m, 2);
    for (int r = 0; r < m; ++r) {
      plane(r, 0) = q(r, 0);
      plane(r, 1) = q(r, 1);
    }
    const Matrix x = plane * random_orthonormal_columns(n, 2, rng).transposed();

    const auto report = key_defect(a, x);
    REQUIRE(std::abs(report.defect) <= 1e-9);
    REQUIRE(report.commutator_norm <= 1e-9);
    REQUIRE(report.span_invariant);
  }
}

TEST_CASE("defect nonpositive and equality certificates on random pairs") {
  Rng rng(33);
  for (int i = 0; i < 10000; ++i) {
    const int m = rng.range(2, 16);
    const int n = rng.range(1, 24);
    const Matrix a = random_orthonormal_columns(m, m, rng);
    const Matrix x = random_gaussian(m, n, rng);
    const auto report = key_defect(a, x);
    const double norm = x.frobenius_norm();
    const double scale4 = 1.0 + norm * norm * norm * norm;
    REQUIRE(report.defect <= 1e-9 * scale4);
    if (report.commutator_norm <= 1e-10) {
      REQUIRE(std::abs(report.defect) <= 1e-9 * scale4);
      REQUIRE(report.span_invariant);
    }
    if (std::abs(report.defect) <= 1e-12 * scale4) {
      REQUIRE(report.commutator_norm <= 1e-6 * norm * norm);
    }
  }
}

TEST_CASE("brute-force oracle agreement") {
  Rng rng(34);
  for (int i = 0; i < 300; ++i) {
    const int m = rng.range(2, 8);
    const Matrix a = random_orthonormal_columns(m, m, rng);
    const Matrix x = random_gaussian(m, rng.range(1, 6), rng);
    const double norm = x.frobenius_norm();
    REQUIRE(key_defect(a, x).defect ==
            doctest::Approx(defect_oracle(a, x)).epsilon(1e-9).scale(1.0 + std::pow(norm, 4.0)));
  }
}

TEST_CASE("degree-4 scaling covariance is exact for power-of-two scales") {
  Rng rng(35);
  for (int i = 0; i < 100; ++i) {
    const int m = rng.range(2, 8);
    const Matrix a = random_orthonormal_columns(m, m, rng);
    const Matrix x = random_gaussian(m, rng.range(1, 6), rng);
    const auto base = key_defect(a, x);
    const auto scaled = key_defect(a, x * 2.0);
    CHECK(scaled.defect == 16.0 * base.defect);  // exact in binary floating point
  }
}

TEST_CASE("non-orthogonal A is rejected") {
  Matrix a = Matrix::identity(3);
  a(0, 0) = 2.0;
  CHECK_THROWS_AS(key_defect(a, Matrix(3, 2)), NotOrthogonal);
}

TEST_CASE("sum defect examples") {
  CHECK(sum_defect(Matrix::identity(3)) == doctest::Approx(0.0));

  // Two copies of the unit column in R^1: rank 1, defect 1*(1+1+1+1) - 4 = 0.
  Matrix duplicated(1, 2);
  duplicated(0, 0) = 1.0;
  duplicated(0, 1) = 1.0;
  CHECK(sum_defect(duplicated) == doctest::Approx(0.0));

  Matrix stretched(2, 2);
  stretched(0, 0) = 2.0;
  stretched(1, 1) = 1.0;
  CHECK(sum_defect(stretched) == doctest::Approx(9.0));
}

TEST_CASE("sum defect nonnegative on random matrices") {
  Rng rng(36);
  for (int i = 0; i < 10000; ++i) {
    const Matrix x = random_gaussian(rng.range(1, 10), rng.range(1, 12), rng);
    const double norm = x.frobenius_norm();
    REQUIRE(sum_defect(x) >= -1e-9 * (1.0 + norm * norm * norm * norm));
  }
}

TEST_CASE("scaled orthonormal columns reach equality") {
  Rng rng(37);
  for (int i = 0; i < 500; ++i) {
    const int m = rng.range(2, 10);
    const int n = rng.range(1, m);
    const double scale = 0.5 + 1.5 * rng.uniform();
    const Matrix x = random_orthonormal_columns(m, n, rng) * scale;
    REQUIRE(std::abs(sum_defect(x)) <= 1e-10);
  }
}
