#pragma once

#include "cayley/matrix.hpp"
#include "cayley/tolerance.hpp"

namespace cayley {

/// Diagnostics for the defect sum_ij <x_i, A x_j>^2 - sum_ij <x_i, x_j>^2.
/// The defect is never positive; equality holds exactly when X X^T commutes
/// with A, in which case the column span of X is A-invariant. Equality is
/// certified through the commutator norm because the defect itself is a
/// difference of large near-equal numbers.
struct KeyDefectReport {
  double defect = 0.0;
  double commutator_norm = 0.0;
  bool span_invariant = false;
};

/// Pre: A orthogonal (||A^T A - Id|| <= abs_tol * m, else NotOrthogonal),
/// X of shape m x n.
KeyDefectReport key_defect(const Matrix& a, const Matrix& x, const Tolerance& tol = {});

/// Returns m' * sum_ij <x_i, x_j>^2 - sum_ij |x_i|^2 |x_j|^2, where m' is the
/// numerical rank of X. Non-negative; zero exactly when the columns share a
/// length and are mutually orthogonal.
double sum_defect(const Matrix& x, const Tolerance& tol = {});

}  // namespace cayley
