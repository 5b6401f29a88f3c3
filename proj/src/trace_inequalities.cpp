#include "cayley/trace_inequalities.hpp"

#include <algorithm>
#include <cmath>

namespace cayley {

KeyDefectReport key_defect(const Matrix& a, const Matrix& x, const Tolerance& tol) {
  if (a.rows() != a.cols()) throw NotOrthogonal("key_defect: A not square");
  if (x.rows() != a.rows()) throw ShapeMismatch("key_defect: X rows must match A");
  const int m = a.rows();

  const Matrix at = a.transposed();
  if ((at * a - Matrix::identity(m)).frobenius_norm() > tol.abs_tol * std::max(1, m)) {
    throw NotOrthogonal("key_defect: A not orthogonal within tolerance");
  }

  const Matrix xt = x.transposed();
  const double structure_sq = (xt * (a * x)).frobenius_norm();
  const double gram_sq = (xt * x).frobenius_norm();

  KeyDefectReport report;
  report.defect = structure_sq * structure_sq - gram_sq * gram_sq;

  const Matrix g = x * xt;
  report.commutator_norm = (g * a - a * g).frobenius_norm();

  // Projector onto the column span, from the Gram eigendecomposition.
  const auto spectrum = sym_eig(g, tol);
  const double largest = spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
  const double cutoff = tol.abs_tol * std::max(1.0, largest);
  Matrix p(m, m);
  for (int k = 0; k < m; ++k) {
    if (spectrum.eigenvalues[static_cast<std::size_t>(k)] <= cutoff) continue;
    for (int i = 0; i < m; ++i)
      for (int j = 0; j < m; ++j) p(i, j) += spectrum.eigenvectors(i, k) * spectrum.eigenvectors(j, k);
  }
  const double span_residual = (p * a - a * p).frobenius_norm();
  report.span_invariant = span_residual <= 100.0 * tol.rel_tol * std::max(1, m);
  return report;
}

double sum_defect(const Matrix& x, const Tolerance& tol) {
  const int rank = numerical_rank(x, tol);
  const Matrix gram = x.transposed() * x;
  const double gram_norm = gram.frobenius_norm();
  const double trace = gram.trace();
  return static_cast<double>(rank) * gram_norm * gram_norm - trace * trace;
}

}  // namespace cayley
