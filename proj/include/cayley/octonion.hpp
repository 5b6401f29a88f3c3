#pragma once

#include <array>
#include <cmath>

#include "cayley/errors.hpp"
#include "cayley/tolerance.hpp"

namespace cayley {

/// Element of the octonion algebra, stored as the eight real coefficients of
/// the basis 1, I1, ..., I7. The product is the Cayley-Dickson doubling of
/// the quaternions, which are themselves doubled from the complex numbers:
/// (a,b)(c,d) = (ac - d*b, da + bc*) at every level.
struct Octonion {
  std::array<double, 8> c{};

  constexpr Octonion() = default;
  constexpr explicit Octonion(double real) : c{real} {}
  constexpr explicit Octonion(const std::array<double, 8>& coeffs) : c(coeffs) {}

  /// The basis element I_s, with I_0 = 1.
  static constexpr Octonion basis(int s) {
    Octonion r;
    r.c[static_cast<std::size_t>(s)] = 1.0;
    return r;
  }

  constexpr double real_part() const { return c[0]; }

  constexpr Octonion conjugate() const {
    return Octonion({c[0], -c[1], -c[2], -c[3], -c[4], -c[5], -c[6], -c[7]});
  }

  constexpr double norm_sq() const {
    double s = 0.0;
    for (double x : c) s += x * x;
    return s;
  }

  double norm() const { return std::sqrt(norm_sq()); }

  Octonion& operator+=(const Octonion& o) {
    for (int i = 0; i < 8; ++i) c[static_cast<std::size_t>(i)] += o.c[static_cast<std::size_t>(i)];
    return *this;
  }
  Octonion& operator-=(const Octonion& o) {
    for (int i = 0; i < 8; ++i) c[static_cast<std::size_t>(i)] -= o.c[static_cast<std::size_t>(i)];
    return *this;
  }
  Octonion& operator*=(double s) {
    for (double& x : c) x *= s;
    return *this;
  }

  friend Octonion operator+(Octonion a, const Octonion& b) { return a += b; }
  friend Octonion operator-(Octonion a, const Octonion& b) { return a -= b; }
  friend Octonion operator*(Octonion a, double s) { return a *= s; }
  friend Octonion operator*(double s, Octonion a) { return a *= s; }
  friend Octonion operator-(const Octonion& a) { return a * -1.0; }
};

Octonion operator*(const Octonion& a, const Octonion& b);

/// Euclidean inner product of the coefficient vectors. Equals the real part
/// of (a*b + b*a)/2.
inline double inner(const Octonion& a, const Octonion& b) {
  double s = 0.0;
  for (int i = 0; i < 8; ++i) s += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(i)];
  return s;
}

/// conjugate(a) / |a|^2. Throws ZeroDivisor when |a| <= abs_tol.
Octonion inverse(const Octonion& a, const Tolerance& tol = {});

/// Residuals of the three inner-product identities the algebra satisfies:
///   <ax, y> = <x, a*y>
///   <xa, y> = <x, ya*>
///   <ab, cd> + <ad, cb> = 2 <a, c><b, d>
struct IdentityReport {
  double left_mult_residual;
  double right_mult_residual;
  double exchange_residual;

  double max_residual() const;
};

/// Evaluates the three identities on the given operands. Throws
/// IdentityViolation when a residual exceeds abs_tol * (1 + operand scale).
IdentityReport check_identities(const Octonion& a, const Octonion& b,
                                const Octonion& c, const Octonion& d,
                                const Octonion& x, const Octonion& y,
                                const Tolerance& tol = {});

}  // namespace cayley
