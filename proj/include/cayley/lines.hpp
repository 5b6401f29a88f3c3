#pragma once

#include <array>

#include "cayley/matrix.hpp"
#include "cayley/octonion.hpp"

namespace cayley {

/// Element of O + O, identified with R^16 (first eight coordinates u, last
/// eight v). Models a tangent vector of the Cayley plane at a point.
struct CayleyVector {
  Octonion u, v;

  CayleyVector() = default;
  CayleyVector(const Octonion& first, const Octonion& second) : u(first), v(second) {}

  double norm_sq() const { return u.norm_sq() + v.norm_sq(); }
  double norm() const { return std::sqrt(norm_sq()); }

  std::array<double, 16> flat() const {
    std::array<double, 16> out{};
    for (int i = 0; i < 8; ++i) {
      out[static_cast<std::size_t>(i)] = u.c[static_cast<std::size_t>(i)];
      out[static_cast<std::size_t>(8 + i)] = v.c[static_cast<std::size_t>(i)];
    }
    return out;
  }

  static CayleyVector from_flat(std::span<const double> x) {
    CayleyVector out;
    for (int i = 0; i < 8; ++i) {
      out.u.c[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(i)];
      out.v.c[static_cast<std::size_t>(i)] = x[static_cast<std::size_t>(8 + i)];
    }
    return out;
  }

  CayleyVector& operator+=(const CayleyVector& o) {
    u += o.u;
    v += o.v;
    return *this;
  }
  CayleyVector& operator-=(const CayleyVector& o) {
    u -= o.u;
    v -= o.v;
    return *this;
  }
  CayleyVector& operator*=(double s) {
    u *= s;
    v *= s;
    return *this;
  }
  friend CayleyVector operator+(CayleyVector a, const CayleyVector& b) { return a += b; }
  friend CayleyVector operator-(CayleyVector a, const CayleyVector& b) { return a -= b; }
  friend CayleyVector operator*(CayleyVector a, double s) { return a *= s; }
  friend CayleyVector operator*(double s, CayleyVector a) { return a *= s; }
};

inline double inner(const CayleyVector& a, const CayleyVector& b) {
  return inner(a.u, b.u) + inner(a.v, b.v);
}

/// Point of the line parameter space O + {infinity}: the finite value m
/// labels the line {(u, mu)}, infinity labels {(0, u)}.
class LineParam {
 public:
  static LineParam finite(const Octonion& m) { return LineParam(m, false); }
  static LineParam at_infinity() { return LineParam(Octonion{}, true); }

  bool is_infinity() const { return infinite_; }

  /// Pre: finite.
  const Octonion& slope() const {
    if (infinite_) throw std::logic_error("LineParam: slope of the line at infinity");
    return m_;
  }

  /// Same-line predicate at the given absolute-relative cutoff.
  bool same_line(const LineParam& other, double tol) const {
    if (infinite_ != other.infinite_) return false;
    if (infinite_) return true;
    return (m_ - other.m_).norm() <= tol * (1.0 + m_.norm());
  }

 private:
  LineParam(const Octonion& m, bool infinite) : m_(m), infinite_(infinite) {}
  Octonion m_;
  bool infinite_;
};

/// cQ factorization of the Gram matrix between two orthonormal line bases:
/// c in [0, 1], Q an 8x8 orthogonal matrix.
struct LineGram {
  double c = 0.0;
  Matrix q;
};

/// The unique line through x: finite with slope v u^{-1} when |u| > abs_tol,
/// the line at infinity otherwise. Throws ZeroVector when |x| <= abs_tol.
LineParam line_through(const CayleyVector& x, const Tolerance& tol = {});

/// 16x8 matrix whose columns are the scaled images of the octonion basis,
/// an orthonormal basis of the line.
Matrix line_basis(const LineParam& m);

/// Orthogonal projection of x onto the line.
CayleyVector project_onto_line(const CayleyVector& x, const LineParam& m);

/// Projection of x expressed against a 16x8 orthonormal column basis.
CayleyVector project_with_basis(const CayleyVector& x, const Matrix& basis);

/// Extracts c and Q from the basis Gram G = B1^T B2 = cQ. Validates that the
/// inputs are orthonormal bases lying on their lines, and that G/c really is
/// orthogonal; a failure of the latter throws LemmaViolation.
LineGram line_gram(const LineParam& m1, const LineParam& m2, const Matrix& b1,
                   const Matrix& b2, const Tolerance& tol = {});

/// The fibration sending a unit vector to the line containing it.
/// Pre: | |x| - 1 | <= rel_tol, else NotUnit.
LineParam hopf(const CayleyVector& x, const Tolerance& tol = {});

}  // namespace cayley
