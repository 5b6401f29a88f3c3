#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "cayley/octonion.hpp"
#include "cayley/rng.hpp"

using namespace cayley;

namespace {

Octonion random_octonion(Rng& rng) {
  Octonion o;
  for (double& v : o.c) v = rng.gaussian();
  return o;
}

// Inner product oracle: real part of (a* b + b* a) / 2.
double inner_via_product(const Octonion& a, const Octonion& b) {
  const Octonion sym = a.conjugate() * b + b.conjugate() * a;
  return 0.5 * sym.real_part();
}

}  // namespace

TEST_CASE("unit element") {
  Rng rng(11);
  const Octonion one(1.0);
  for (int i = 0; i < 100; ++i) {
    const Octonion a = random_octonion(rng);
    CHECK((one * a - a).norm() == doctest::Approx(0.0).epsilon(1e-14));
    CHECK((a * one - a).norm() == doctest::Approx(0.0).epsilon(1e-14));
  }
}

TEST_CASE("imaginary units square to -1") {
  for (int s = 1; s < 8; ++s) {
    const Octonion sq = Octonion::basis(s) * Octonion::basis(s);
    CHECK((sq + Octonion(1.0)).norm() == doctest::Approx(0.0));
  }
}

TEST_CASE("doubling table: I1 I2 = I3, I1 I4 = I5, I2 I4 = I6, I3 I4 = I7") {
  CHECK((Octonion::basis(1) * Octonion::basis(2) - Octonion::basis(3)).norm() == doctest::Approx(0.0));
  CHECK((Octonion::basis(1) * Octonion::basis(4) - Octonion::basis(5)).norm() == doctest::Approx(0.0));
  CHECK((Octonion::basis(2) * Octonion::basis(4) - Octonion::basis(6)).norm() == doctest::Approx(0.0));
  CHECK((Octonion::basis(3) * Octonion::basis(4) - Octonion::basis(7)).norm() == doctest::Approx(0.0));
}

TEST_CASE("conjugation") {
  CHECK(Octonion(1.0).conjugate().c == Octonion(1.0).c);
  CHECK((Octonion::basis(3).conjugate() + Octonion::basis(3)).norm() == doctest::Approx(0.0));

  Rng rng(12);
  for (int i = 0; i < 10000; ++i) {
    const Octonion a = random_octonion(rng);
    const Octonion b = random_octonion(rng);
    CHECK(a.conjugate().conjugate().c == a.c);
    // Anti-automorphism: (ab)* = b* a*.
    const Octonion lhs = (a * b).conjugate();
    const Octonion rhs = b.conjugate() * a.conjugate();
    REQUIRE((lhs - rhs).norm() <= 1e-12 * (1.0 + a.norm() * b.norm()));
  }
}

TEST_CASE("inner product equals coefficient dot product") {
  CHECK(inner(Octonion(1.0), Octonion(1.0)) == doctest::Approx(1.0));
  for (int s = 0; s < 8; ++s) {
    for (int t = 0; t < 8; ++t) {
      const double expected = s == t ? 1.0 : 0.0;
      CHECK(inner(Octonion::basis(s), Octonion::basis(t)) == doctest::Approx(expected));
      CHECK(inner_via_product(Octonion::basis(s), Octonion::basis(t)) ==
            doctest::Approx(expected).epsilon(1e-13));
    }
  }

  Rng rng(13);
  for (int i = 0; i < 1000; ++i) {
    const Octonion a = random_octonion(rng);
    const Octonion b = random_octonion(rng);
    double dot = 0.0;
    for (int s = 0; s < 8; ++s) dot += a.c[static_cast<std::size_t>(s)] * b.c[static_cast<std::size_t>(s)];
    CHECK(inner(a, b) == doctest::Approx(dot));
    CHECK(inner_via_product(a, b) == doctest::Approx(dot).epsilon(1e-12));
  }
}

TEST_CASE("inverse") {
  CHECK((inverse(Octonion(1.0)) - Octonion(1.0)).norm() == doctest::Approx(0.0));

  const Octonion expected = Octonion::basis(5) * -0.5;
  CHECK((inverse(Octonion::basis(5) * 2.0) - expected).norm() == doctest::Approx(0.0));

  CHECK_THROWS_AS(inverse(Octonion{}), ZeroDivisor);

  Rng rng(14);
  for (int i = 0; i < 1000; ++i) {
    const Octonion a = random_octonion(rng);
    const Octonion inv = inverse(a);
    CHECK((a * inv - Octonion(1.0)).norm() <= 1e-12 * (1.0 + a.norm()));
    CHECK((inv * a - Octonion(1.0)).norm() <= 1e-12 * (1.0 + a.norm()));
  }
}

TEST_CASE("inverse loop property") {
  Rng rng(15);
  for (int i = 0; i < 1000; ++i) {
    const Octonion a = random_octonion(rng);
    const Octonion b = random_octonion(rng);
    const Octonion back = (b * inverse(a)) * a;
    REQUIRE((back - b).norm() <= 1e-11 * (1.0 + b.norm()));
  }
}

TEST_CASE("identity residuals") {
  const Octonion zero{};
  const IdentityReport trivial = check_identities(zero, zero, zero, zero, zero, zero);
  CHECK(trivial.max_residual() == 0.0);

  // <m I_s, m I_t> = |m|^2 delta_st, via the exchange identity with a = c = m.
  Rng rng(16);
  for (int i = 0; i < 100; ++i) {
    const Octonion m = random_octonion(rng);
    for (int s = 0; s < 8; ++s) {
      for (int t = 0; t < 8; ++t) {
        const Octonion is = Octonion::basis(s), it = Octonion::basis(t);
        const IdentityReport r = check_identities(m, is, m, it, is, it);
        CHECK(r.exchange_residual <= 1e-12 * (1.0 + m.norm_sq()));
        const double expected = s == t ? m.norm_sq() : 0.0;
        CHECK(inner(m * is, m * it) == doctest::Approx(expected).epsilon(1e-12));
      }
    }
  }
}

TEST_CASE("identities and norm multiplicativity on seeded random tuples") {
  Rng rng(42);
  double worst = 0.0;
  for (int i = 0; i < 10000; ++i) {
    const Octonion a = random_octonion(rng), b = random_octonion(rng), c = random_octonion(rng);
    const Octonion d = random_octonion(rng), x = random_octonion(rng), y = random_octonion(rng);
    const IdentityReport r = check_identities(a, b, c, d, x, y);  // throws on violation
    worst = std::max(worst, r.max_residual() /
                                (1.0 + a.norm() * b.norm() * c.norm() * d.norm() +
                                 a.norm() * x.norm() * y.norm()));

    const double nm = std::abs((a * b).norm() - a.norm() * b.norm());
    REQUIRE(nm <= 1e-12 * (1.0 + a.norm() * b.norm()));
  }
  CHECK(worst <= 1e-12);
}

TEST_CASE("alternativity") {
  Rng rng(17);
  for (int i = 0; i < 2000; ++i) {
    const Octonion a = random_octonion(rng);
    const Octonion b = random_octonion(rng);
    const double scale = 1.0 + a.norm_sq() * b.norm();
    CHECK((a * (a * b) - (a * a) * b).norm() <= 1e-12 * scale);
    CHECK(((b * a) * a - b * (a * a)).norm() <= 1e-12 * scale);
  }
}

TEST_CASE("identity violation carries the residual") {
  // A deliberately wrong "product" cannot be produced through the public
  // surface, so check the throw path via an impossible tolerance instead.
  Rng rng(18);
  const Octonion a = random_octonion(rng), b = random_octonion(rng), c = random_octonion(rng);
  const Octonion d = random_octonion(rng), x = random_octonion(rng), y = random_octonion(rng);
  Tolerance strict;
  strict.abs_tol = 0.0;
  bool thrown = false;
  try {
    (void)check_identities(a, b, c, d, x, y, strict);
  } catch (const IdentityViolation& e) {
    thrown = true;
    CHECK(e.residual >= 0.0);
  }
  // With abs_tol = 0 any nonzero rounding residual must throw.
  CHECK(thrown);
}
