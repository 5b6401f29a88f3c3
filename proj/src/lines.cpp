#include "cayley/lines.hpp"

#include <algorithm>
#include <cmath>

namespace cayley {

LineParam line_through(const CayleyVector& x, const Tolerance& tol) {
  if (x.norm() <= tol.abs_tol) throw ZeroVector("line_through: zero vector has no line");
  if (x.u.norm() > tol.abs_tol) {
    return LineParam::finite(x.v * inverse(x.u, tol));
  }
  return LineParam::at_infinity();
}

Matrix line_basis(const LineParam& m) {
  Matrix b(16, 8);
  if (m.is_infinity()) {
    for (int s = 0; s < 8; ++s) b(8 + s, s) = 1.0;
    return b;
  }
  const Octonion& slope = m.slope();
  const double scale = 1.0 / std::sqrt(1.0 + slope.norm_sq());
  for (int s = 0; s < 8; ++s) {
    const Octonion top = Octonion::basis(s);
    const Octonion bottom = slope * top;
    for (int i = 0; i < 8; ++i) {
      b(i, s) = top.c[static_cast<std::size_t>(i)] * scale;
      b(8 + i, s) = bottom.c[static_cast<std::size_t>(i)] * scale;
    }
  }
  return b;
}

CayleyVector project_with_basis(const CayleyVector& x, const Matrix& basis) {
  const auto flat = x.flat();
  const auto coeffs = matvec_transposed(basis, flat);
  const auto projected = matvec(basis, coeffs);
  return CayleyVector::from_flat(projected);
}

CayleyVector project_onto_line(const CayleyVector& x, const LineParam& m) {
  return project_with_basis(x, line_basis(m));
}

LineGram line_gram(const LineParam& m1, const LineParam& m2, const Matrix& b1,
                   const Matrix& b2, const Tolerance& tol) {
  if (b1.rows() != 16 || b1.cols() != 8 || b2.rows() != 16 || b2.cols() != 8) {
    throw ShapeMismatch("line_gram: bases must be 16x8");
  }
  const Matrix id8 = Matrix::identity(8);
  if ((b1.transposed() * b1 - id8).frobenius_norm() > 8.0 * tol.abs_tol ||
      (b2.transposed() * b2 - id8).frobenius_norm() > 8.0 * tol.abs_tol) {
    throw NotOrthonormalBasis("line_gram: basis columns not orthonormal");
  }
  const Matrix p1 = line_basis(m1);
  const Matrix p2 = line_basis(m2);
  const auto on_line = [&tol](const Matrix& basis, const Matrix& projector_basis) {
    for (int j = 0; j < 8; ++j) {
      const CayleyVector col = CayleyVector::from_flat(basis.column(j));
      const CayleyVector residual = col - project_with_basis(col, projector_basis);
      if (residual.norm() > 10.0 * tol.abs_tol) return false;
    }
    return true;
  };
  if (!on_line(b1, p1) || !on_line(b2, p2)) {
    throw NotOnLine("line_gram: basis column off its line");
  }

  const Matrix g = b1.transposed() * b2;
  LineGram out;
  out.c = g.frobenius_norm() / std::sqrt(8.0);
  if (out.c > 1.0 + tol.rel_tol) {
    throw LemmaViolation("line_gram: factor c exceeds 1");
  }
  out.c = std::min(out.c, 1.0);
  if (out.c > tol.abs_tol) {
    out.q = g * (1.0 / out.c);
    if ((out.q.transposed() * out.q - id8).frobenius_norm() > tol.rel_tol * 8.0) {
      throw LemmaViolation("line_gram: G/c not orthogonal");
    }
  } else {
    out.q = id8;
  }
  return out;
}

LineParam hopf(const CayleyVector& x, const Tolerance& tol) {
  if (std::abs(x.norm() - 1.0) > tol.rel_tol) {
    throw NotUnit("hopf: input not a unit vector");
  }
  return line_through(x, tol);
}

}  // namespace cayley
