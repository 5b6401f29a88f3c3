#include "cayley/octonion.hpp"

#include <algorithm>

namespace cayley {

namespace {

using C2 = std::array<double, 2>;
using Q4 = std::array<double, 4>;

constexpr C2 cconj(const C2& a) { return {a[0], -a[1]}; }

constexpr C2 cmul(const C2& a, const C2& b) {
  return {a[0] * b[0] - b[1] * a[1], b[1] * a[0] + a[1] * b[0]};
}

constexpr C2 cadd(const C2& a, const C2& b) { return {a[0] + b[0], a[1] + b[1]}; }
constexpr C2 csub(const C2& a, const C2& b) { return {a[0] - b[0], a[1] - b[1]}; }

constexpr Q4 qconj(const Q4& a) { return {a[0], -a[1], -a[2], -a[3]}; }

constexpr Q4 qmul(const Q4& a, const Q4& b) {
  const C2 a1{a[0], a[1]}, a2{a[2], a[3]};
  const C2 b1{b[0], b[1]}, b2{b[2], b[3]};
  const C2 r1 = csub(cmul(a1, b1), cmul(cconj(b2), a2));
  const C2 r2 = cadd(cmul(b2, a1), cmul(a2, cconj(b1)));
  return {r1[0], r1[1], r2[0], r2[1]};
}

constexpr Q4 qadd(const Q4& a, const Q4& b) {
  return {a[0] + b[0], a[1] + b[1], a[2] + b[2], a[3] + b[3]};
}
constexpr Q4 qsub(const Q4& a, const Q4& b) {
  return {a[0] - b[0], a[1] - b[1], a[2] - b[2], a[3] - b[3]};
}

}  // namespace

Octonion operator*(const Octonion& a, const Octonion& b) {
  const Q4 a1{a.c[0], a.c[1], a.c[2], a.c[3]}, a2{a.c[4], a.c[5], a.c[6], a.c[7]};
  const Q4 b1{b.c[0], b.c[1], b.c[2], b.c[3]}, b2{b.c[4], b.c[5], b.c[6], b.c[7]};
  const Q4 r1 = qsub(qmul(a1, b1), qmul(qconj(b2), a2));
  const Q4 r2 = qadd(qmul(b2, a1), qmul(a2, qconj(b1)));
  return Octonion({r1[0], r1[1], r1[2], r1[3], r2[0], r2[1], r2[2], r2[3]});
}

Octonion inverse(const Octonion& a, const Tolerance& tol) {
  const double n = a.norm();
  if (n <= tol.abs_tol) {
    throw ZeroDivisor("inverse: operand norm below tolerance");
  }
  return a.conjugate() * (1.0 / (n * n));
}

double IdentityReport::max_residual() const {
  return std::max({left_mult_residual, right_mult_residual, exchange_residual});
}

IdentityReport check_identities(const Octonion& a, const Octonion& b,
                                const Octonion& c, const Octonion& d,
                                const Octonion& x, const Octonion& y,
                                const Tolerance& tol) {
  IdentityReport report{};
  report.left_mult_residual = std::abs(inner(a * x, y) - inner(x, a.conjugate() * y));
  report.right_mult_residual = std::abs(inner(x * a, y) - inner(x, y * a.conjugate()));
  report.exchange_residual =
      std::abs(inner(a * b, c * d) + inner(a * d, c * b) - 2.0 * inner(a, c) * inner(b, d));

  const double mult_scale = a.norm() * x.norm() * y.norm();
  const double exchange_scale = a.norm() * b.norm() * c.norm() * d.norm();
  if (report.left_mult_residual > tol.abs_tol * (1.0 + mult_scale)) {
    throw IdentityViolation("left multiplication identity violated", report.left_mult_residual);
  }
  if (report.right_mult_residual > tol.abs_tol * (1.0 + mult_scale)) {
    throw IdentityViolation("right multiplication identity violated", report.right_mult_residual);
  }
  if (report.exchange_residual > tol.abs_tol * (1.0 + exchange_scale)) {
    throw IdentityViolation("exchange identity violated", report.exchange_residual);
  }
  return report;
}

}  // namespace cayley
