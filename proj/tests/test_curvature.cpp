#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cayley/curvature.hpp"
#include "cayley/rng.hpp"

using namespace cayley;

namespace {

Octonion random_octonion(Rng& rng) {
  Octonion o;
  for (double& v : o.c) v = rng.gaussian();
  return o;
}

CayleyVector random_cayley(Rng& rng) {
  return CayleyVector(random_octonion(rng), random_octonion(rng));
}

CayleyVector random_unit(Rng& rng) {
  CayleyVector x = random_cayley(rng);
  return x * (1.0 / x.norm());
}

const CurvatureScale kScale = CurvatureScale::cayley_plane(4.0);

}  // namespace

TEST_CASE("scale constructors") {
  CHECK(CurvatureScale::cayley_plane().lambda_sq() == doctest::Approx(4.0));
  CHECK(CurvatureScale::holomorphic(6).lambda_sq() == doctest::Approx(1.5));
  CHECK(CurvatureScale::quaternionic(8).lambda_sq() == doctest::Approx(4.0 / 3.0));
  CHECK_THROWS_AS(CurvatureScale::cayley_plane(-1.0), std::invalid_argument);
}

TEST_CASE("hand-evaluated curvature values") {
  const CayleyVector e0(Octonion(1.0), Octonion{});
  const CayleyVector e1(Octonion::basis(1), Octonion{});
  const CayleyVector f0(Octonion{}, Octonion(1.0));

  CHECK(curvature_full(e0, e1, e0, e1, kScale) == doctest::Approx(-4.0));
  CHECK(curvature_full(e0, f0, e0, f0, kScale) == doctest::Approx(-1.0));
  CHECK(curvature_full(e0, e0, e1, f0, kScale) == doctest::Approx(0.0));

  CHECK(curvature_diag(e0, e0, kScale) == doctest::Approx(0.0));
  CHECK(curvature_diag(e0, e1, kScale) == doctest::Approx(-4.0));
  CHECK(curvature_diag(e0, f0, kScale) == doctest::Approx(-1.0));

  CHECK(sectional_curvature(e0, e1, kScale) == doctest::Approx(4.0));
  CHECK(sectional_curvature(e0, f0, kScale) == doctest::Approx(1.0));
}

TEST_CASE("diagonal specialization matches the full tensor") {
  Rng rng(51);
  for (int i = 0; i < 10000; ++i) {
    const CayleyVector x = random_cayley(rng), y = random_cayley(rng);
    const double scale = 1.0 + x.norm_sq() * y.norm_sq();
    REQUIRE(std::abs(curvature_diag(x, y, kScale) - curvature_full(x, y, x, y, kScale)) <=
            1e-10 * scale * scale);
  }
}

TEST_CASE("tensor symmetries") {
  Rng rng(52);
  for (int i = 0; i < 10000; ++i) {
    const CayleyVector x = random_cayley(rng), y = random_cayley(rng);
    const CayleyVector z = random_cayley(rng), w = random_cayley(rng);
    const double r = curvature_full(x, y, z, w, kScale);
    const double scale = 1.0 + x.norm() * y.norm() * z.norm() * w.norm();
    REQUIRE(std::abs(r + curvature_full(y, x, z, w, kScale)) <= 1e-10 * scale);
    REQUIRE(std::abs(r + curvature_full(x, y, w, z, kScale)) <= 1e-10 * scale);
    REQUIRE(std::abs(r - curvature_full(z, w, x, y, kScale)) <= 1e-10 * scale);
  }
}

TEST_CASE("first Bianchi residual, reported as a finding") {
  Rng rng(53);
  double worst = 0.0;
  for (int i = 0; i < 2000; ++i) {
    const CayleyVector x = random_cayley(rng), y = random_cayley(rng);
    const CayleyVector z = random_cayley(rng), w = random_cayley(rng);
    const double cyc = curvature_full(x, y, z, w, kScale) + curvature_full(y, z, x, w, kScale) +
                       curvature_full(z, x, y, w, kScale);
    worst = std::max(worst, std::abs(cyc) / (1.0 + x.norm() * y.norm() * z.norm() * w.norm()));
  }
  MESSAGE("first Bianchi max normalized residual: ", worst);
  WARN(worst <= 1e-10);
}

TEST_CASE("isotropy of the second fundamental form") {
  const CayleyVector e0(Octonion(1.0), Octonion{});
  CHECK(gauss_2ff_inner(e0, e0, e0, e0, kScale) == doctest::Approx(4.0));

  Rng rng(54);
  for (int i = 0; i < 10000; ++i) {
    const CayleyVector x = random_unit(rng);
    REQUIRE(std::abs(gauss_2ff_inner(x, x, x, x, kScale) - 4.0) <= 1e-10);
  }
}

TEST_CASE("mixed second fundamental form value") {
  const CayleyVector e0(Octonion(1.0), Octonion{});
  const CayleyVector f0(Octonion{}, Octonion(1.0));
  // (1/3)( <R(X,X)Y,Y> + <R(X,Y)X,Y> + lambda^2 ) = (1/3)(0 - 1 + 4) = 1.
  CHECK(gauss_2ff_inner(e0, f0, e0, f0, kScale) == doctest::Approx(1.0));
}

TEST_CASE("gauss inner product symmetries") {
  Rng rng(55);
  for (int i = 0; i < 2000; ++i) {
    const CayleyVector x = random_cayley(rng), y = random_cayley(rng);
    const CayleyVector z = random_cayley(rng), w = random_cayley(rng);
    const double b = gauss_2ff_inner(x, y, z, w, kScale);
    const double scale = 1.0 + x.norm() * y.norm() * z.norm() * w.norm();
    REQUIRE(std::abs(b - gauss_2ff_inner(y, x, z, w, kScale)) <= 1e-10 * scale);
    REQUIRE(std::abs(b - gauss_2ff_inner(x, y, w, z, kScale)) <= 1e-10 * scale);
    REQUIRE(std::abs(b - gauss_2ff_inner(z, w, x, y, kScale)) <= 1e-10 * scale);
  }
}

TEST_CASE("sectional curvature range with endpoints attained") {
  Rng rng(56);
  double lo = 1e300, hi = -1e300;
  for (int i = 0; i < 100000; ++i) {
    const CayleyVector x = random_unit(rng);
    CayleyVector y = random_cayley(rng);
    y -= x * inner(y, x);
    y *= 1.0 / y.norm();
    const double k = sectional_curvature(x, y, kScale);
    lo = std::min(lo, k);
    hi = std::max(hi, k);
    REQUIRE(k >= 1.0 - 1e-8);
    REQUIRE(k <= 4.0 + 1e-8);
  }
  MESSAGE("sampled sectional range: [", lo, ", ", hi, "]");

  const CayleyVector e0(Octonion(1.0), Octonion{});
  const CayleyVector e1(Octonion::basis(1), Octonion{});
  const CayleyVector f0(Octonion{}, Octonion(1.0));
  CHECK(std::abs(sectional_curvature(e0, e1, kScale) - 4.0) <= 1e-3);
  CHECK(std::abs(sectional_curvature(e0, f0, kScale) - 1.0) <= 1e-3);
}

TEST_CASE("lambda scaling is linear in the curvature") {
  Rng rng(57);
  const CurvatureScale half = CurvatureScale::cayley_plane(2.0);
  for (int i = 0; i < 200; ++i) {
    const CayleyVector x = random_cayley(rng), y = random_cayley(rng);
    const CayleyVector z = random_cayley(rng), w = random_cayley(rng);
    CHECK(curvature_full(x, y, z, w, half) ==
          doctest::Approx(0.5 * curvature_full(x, y, z, w, kScale)).epsilon(1e-12));
  }
}
