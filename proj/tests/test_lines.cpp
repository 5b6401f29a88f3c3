#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cayley/lines.hpp"
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

}  // namespace

TEST_CASE("line through axis vectors") {
  const LineParam l0 = line_through(CayleyVector(Octonion(1.0), Octonion{}));
  REQUIRE_FALSE(l0.is_infinity());
  CHECK(l0.slope().norm() == doctest::Approx(0.0));

  const LineParam linf = line_through(CayleyVector(Octonion{}, Octonion::basis(2)));
  CHECK(linf.is_infinity());

  CHECK_THROWS_AS(line_through(CayleyVector{}), ZeroVector);
}

TEST_CASE("membership: the returned line contains the vector") {
  Rng rng(41);
  for (int i = 0; i < 2000; ++i) {
    const CayleyVector x = random_cayley(rng);
    const LineParam line = line_through(x);
    REQUIRE((project_onto_line(x, line) - x).norm() <= 1e-10 * x.norm());
  }
}

TEST_CASE("line basis columns") {
  const Matrix b0 = line_basis(LineParam::finite(Octonion{}));
  for (int s = 0; s < 8; ++s) {
    CHECK(b0(s, s) == doctest::Approx(1.0));
    for (int i = 8; i < 16; ++i) CHECK(b0(i, s) == doctest::Approx(0.0));
  }

  const Matrix binf = line_basis(LineParam::at_infinity());
  for (int s = 0; s < 8; ++s) CHECK(binf(8 + s, s) == doctest::Approx(1.0));

  const Matrix b1 = line_basis(LineParam::finite(Octonion::basis(1)));
  CHECK((b1.transposed() * b1 - Matrix::identity(8)).frobenius_norm() <= 1e-12);

  Rng rng(42);
  for (int i = 0; i < 200; ++i) {
    const LineParam line = LineParam::finite(random_octonion(rng));
    const Matrix b = line_basis(line);
    REQUIRE((b.transposed() * b - Matrix::identity(8)).frobenius_norm() <= 1e-12);
    for (int s = 0; s < 8; ++s) {
      const CayleyVector column = CayleyVector::from_flat(b.column(s));
      REQUIRE((project_onto_line(column, line) - column).norm() <= 1e-12);
    }
  }
}

TEST_CASE("projection examples") {
  const CayleyVector e0(Octonion(1.0), Octonion{});
  CHECK((project_onto_line(e0, LineParam::at_infinity())).norm() == doctest::Approx(0.0));

  const CayleyVector p = project_onto_line(e0, LineParam::finite(Octonion::basis(1)));
  CHECK(p.norm_sq() == doctest::Approx(0.5));
}

TEST_CASE("projector is idempotent and self-adjoint") {
  Rng rng(43);
  for (int i = 0; i < 500; ++i) {
    const LineParam line = LineParam::finite(random_octonion(rng));
    const CayleyVector x = random_cayley(rng);
    const CayleyVector y = random_cayley(rng);
    const CayleyVector px = project_onto_line(x, line);
    REQUIRE((project_onto_line(px, line) - px).norm() <= 1e-12 * (1.0 + x.norm()));
    REQUIRE(px.norm() <= x.norm() * (1.0 + 1e-12));
    REQUIRE(inner(px, y) == doctest::Approx(inner(x, project_onto_line(y, line)))
                                .epsilon(1e-10));
  }
}

TEST_CASE("line gram on matched and orthogonal lines") {
  const LineParam l0 = LineParam::finite(Octonion{});
  const Matrix b0 = line_basis(l0);
  const LineGram same = line_gram(l0, l0, b0, b0);
  CHECK(same.c == doctest::Approx(1.0));
  CHECK((same.q - Matrix::identity(8)).frobenius_norm() <= 1e-12);

  const LineGram orthogonal =
      line_gram(l0, LineParam::at_infinity(), b0, line_basis(LineParam::at_infinity()));
  CHECK(orthogonal.c == doctest::Approx(0.0));
}

TEST_CASE("line gram factor formula and basis independence") {
  Rng rng(44);
  const LineParam l0 = LineParam::finite(Octonion{});
  for (int i = 0; i < 500; ++i) {
    const Octonion m2 = random_octonion(rng);
    const LineParam lm = LineParam::finite(m2);
    const LineGram standard = line_gram(l0, lm, line_basis(l0), line_basis(lm));
    REQUIRE(standard.c == doctest::Approx(1.0 / std::sqrt(1.0 + m2.norm_sq())).epsilon(1e-10));
    REQUIRE((standard.q.transposed() * standard.q - Matrix::identity(8)).frobenius_norm() <= 1e-10);

    const Matrix b1 = line_basis(l0) * random_orthogonal(8, rng.next_u64());
    const Matrix b2 = line_basis(lm) * random_orthogonal(8, rng.next_u64());
    const LineGram randomised = line_gram(l0, lm, b1, b2);
    REQUIRE(std::abs(randomised.c - standard.c) <= 1e-10);

    // Distinct lines meet only at the origin: the Gram operator norm is c < 1.
    REQUIRE(randomised.c < 1.0);
  }
}

TEST_CASE("line gram rejects bad bases") {
  const LineParam l0 = LineParam::finite(Octonion{});
  const LineParam l1 = LineParam::finite(Octonion::basis(1));
  CHECK_THROWS_AS(line_gram(l0, l1, line_basis(l0) * 2.0, line_basis(l1)), NotOrthonormalBasis);
  CHECK_THROWS_AS(line_gram(l0, l1, line_basis(LineParam::at_infinity()), line_basis(l1)),
                  NotOnLine);
  CHECK_THROWS_AS(line_gram(l0, l1, Matrix(16, 7), line_basis(l1)), ShapeMismatch);
}

TEST_CASE("hopf map and fiber constancy") {
  const LineParam h0 = hopf(CayleyVector(Octonion(1.0), Octonion{}));
  REQUIRE_FALSE(h0.is_infinity());
  CHECK(h0.slope().norm() == doctest::Approx(0.0));

  CHECK(hopf(CayleyVector(Octonion{}, Octonion(1.0))).is_infinity());

  CHECK_THROWS_AS(hopf(CayleyVector(Octonion(2.0), Octonion{})), NotUnit);

  Rng rng(45);
  for (int i = 0; i < 1000; ++i) {
    const Octonion m = random_octonion(rng);
    Octonion u = random_octonion(rng);
    Octonion w = random_octonion(rng);
    w *= 1.0 / w.norm();

    CayleyVector x(u, m * u);
    x *= 1.0 / x.norm();
    const Octonion uw = u * w;
    CayleyVector fiber(uw, m * (uw));
    fiber *= 1.0 / fiber.norm();

    const LineParam a = hopf(x);
    const LineParam b = hopf(fiber);
    REQUIRE_FALSE(a.is_infinity());
    REQUIRE_FALSE(b.is_infinity());
    REQUIRE((a.slope() - b.slope()).norm() <= 1e-10 * (1.0 + m.norm()));
    REQUIRE((a.slope() - m).norm() <= 1e-10 * (1.0 + m.norm()));
  }
}
