#include "cayley/second_variation.hpp"

#include <algorithm>
#include <cmath>

#include "cayley/trace_inequalities.hpp"

namespace cayley {

namespace {

Matrix block(const Matrix& m, int row_begin, int row_count) {
  Matrix out(row_count, m.cols());
  for (int i = 0; i < row_count; ++i)
    for (int j = 0; j < m.cols(); ++j) out(i, j) = m(row_begin + i, j);
  return out;
}

CayleyVector factor1_cayley(const Matrix& columns, int j) {
  std::array<double, 16> flat{};
  for (int i = 0; i < 16; ++i) flat[static_cast<std::size_t>(i)] = columns(i, j);
  return CayleyVector::from_flat(flat);
}

}  // namespace

Matrix ProductFrame::tangent_factor1() const { return block(tangent, 0, m1); }
Matrix ProductFrame::tangent_factor2() const { return block(tangent, m1, m2); }
Matrix ProductFrame::normal_factor1() const { return block(normal, 0, m1); }
Matrix ProductFrame::normal_factor2() const { return block(normal, m1, m2); }

CayleyVector ProductFrame::tangent_cayley(int j) const {
  if (m1 != 16) throw DimensionMismatch("ProductFrame: factor 1 is not 16-dimensional");
  return factor1_cayley(tangent, j);
}

CayleyVector ProductFrame::normal_cayley(int k) const {
  if (m1 != 16) throw DimensionMismatch("ProductFrame: factor 1 is not 16-dimensional");
  return factor1_cayley(normal, k);
}

void ProductFrame::validate(const Tolerance& tol) const {
  const int dim = m1 + m2;
  if (m1 < 0 || m2 < 0 || dim <= 0) throw BadStructure("ProductFrame: bad factor dimensions");
  if (tangent.rows() != dim || (normal.cols() > 0 && normal.rows() != dim)) {
    throw BadStructure("ProductFrame: column length must be m1 + m2");
  }
  if (n() + d() > dim) throw BadStructure("ProductFrame: more frame vectors than dimensions");

  Matrix combined(dim, n() + d());
  for (int j = 0; j < n(); ++j)
    for (int i = 0; i < dim; ++i) combined(i, j) = tangent(i, j);
  for (int k = 0; k < d(); ++k)
    for (int i = 0; i < dim; ++i) combined(i, n() + k) = normal(i, k);
  const Matrix gram = combined.transposed() * combined;
  const double residual = (gram - Matrix::identity(n() + d())).frobenius_norm();
  if (residual > tol.abs_tol * std::max(1, n() + d())) {
    throw BadStructure("ProductFrame: frame not orthonormal within tolerance");
  }
}

ProductFrame ProductFrame::random(int m1, int m2, int n, int d, Rng& rng) {
  const int dim = m1 + m2;
  if (n + d > dim || n < 0 || d < 0) throw BadStructure("ProductFrame::random: n + d exceeds m1 + m2");
  const Matrix q = random_orthonormal_columns(dim, n + d, rng);
  ProductFrame frame;
  frame.m1 = m1;
  frame.m2 = m2;
  frame.tangent = Matrix(dim, n);
  frame.normal = Matrix(dim, d);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < dim; ++i) frame.tangent(i, j) = q(i, j);
  for (int k = 0; k < d; ++k)
    for (int i = 0; i < dim; ++i) frame.normal(i, k) = q(i, n + k);
  return frame;
}

ComplexStructure ComplexStructure::standard(int m) {
  if (m <= 0 || m % 2 != 0) throw BadStructure("ComplexStructure: dimension must be even");
  const int h = m / 2;
  ComplexStructure out;
  out.j = Matrix(m, m);
  for (int i = 0; i < h; ++i) {
    out.j(i, h + i) = -1.0;
    out.j(h + i, i) = 1.0;
  }
  return out;
}

void ComplexStructure::validate(const Tolerance& tol) const {
  if (j.rows() != j.cols() || j.rows() == 0) throw BadStructure("ComplexStructure: not square");
  const int m = j.rows();
  const Matrix id = Matrix::identity(m);
  if ((j.transposed() * j - id).frobenius_norm() > tol.abs_tol * std::max(1, m)) {
    throw BadStructure("ComplexStructure: not orthogonal");
  }
  if ((j * j + id).frobenius_norm() > tol.abs_tol * std::max(1, m)) {
    throw BadStructure("ComplexStructure: J^2 != -Id");
  }
}

QuaternionicStructure QuaternionicStructure::standard(int m) {
  if (m <= 0 || m % 4 != 0) throw BadStructure("QuaternionicStructure: dimension must be divisible by 4");
  QuaternionicStructure out;
  out.j1.j = Matrix(m, m);
  out.j2.j = Matrix(m, m);
  out.j3.j = Matrix(m, m);
  for (int b = 0; b < m; b += 4) {
    out.j1.j(b + 0, b + 1) = -1.0;
    out.j1.j(b + 1, b + 0) = 1.0;
    out.j1.j(b + 2, b + 3) = -1.0;
    out.j1.j(b + 3, b + 2) = 1.0;

    out.j2.j(b + 0, b + 2) = -1.0;
    out.j2.j(b + 1, b + 3) = 1.0;
    out.j2.j(b + 2, b + 0) = 1.0;
    out.j2.j(b + 3, b + 1) = -1.0;

    out.j3.j(b + 0, b + 3) = -1.0;
    out.j3.j(b + 1, b + 2) = -1.0;
    out.j3.j(b + 2, b + 1) = 1.0;
    out.j3.j(b + 3, b + 0) = 1.0;
  }
  return out;
}

void QuaternionicStructure::validate(const Tolerance& tol) const {
  j1.validate(tol);
  j2.validate(tol);
  j3.validate(tol);
  const int m = j1.j.rows();
  if (j2.j.rows() != m || j3.j.rows() != m) throw BadStructure("QuaternionicStructure: mixed dimensions");
  const double bound = tol.abs_tol * std::max(1, m);
  if ((j1.j * j2.j - j3.j).frobenius_norm() > bound ||
      (j2.j * j3.j - j1.j).frobenius_norm() > bound ||
      (j3.j * j1.j - j2.j).frobenius_norm() > bound) {
    throw BadStructure("QuaternionicStructure: quaternion relations violated");
  }
}

const ComplexStructure& QuaternionicStructure::structure(int s) const {
  switch (s) {
    case 1: return j1;
    case 2: return j2;
    case 3: return j3;
    default: throw BadIndex("QuaternionicStructure: index must be 1, 2 or 3");
  }
}

namespace {

// Key-inequality part shared by the complex and quaternionic integrands.
struct KeyPart {
  double defect;
  double commutator_norm;
  bool span_invariant;
};

KeyPart key_part(const Matrix& structure, const Matrix& x1) {
  const KeyDefectReport r = key_defect(structure, x1);
  return {r.defect, r.commutator_norm, r.span_invariant};
}

}  // namespace

VariationReport complex_integrand(const ProductFrame& frame, const ComplexStructure& j1,
                                  const CurvatureScale& scale) {
  j1.validate();
  if (j1.j.rows() != frame.m1) throw BadStructure("complex_integrand: J must act on factor 1");
  const Matrix x1 = frame.tangent_factor1();
  const KeyPart key = key_part(j1.j, x1);
  const double lam2 = scale.lambda_sq();
  const double gram_scale = x1.frobenius_norm();

  VariationReport report;
  report.value = lam2 * key.defect;
  report.components["key_term"] = lam2 * key.defect;
  report.components["commutator_norm"] = key.commutator_norm;
  report.equality_certificates["span_invariant"] = key.span_invariant;
  report.equality_certificates["commutator_vanishes"] =
      key.commutator_norm <= 1e-10 * (1.0 + gram_scale * gram_scale);
  return report;
}

VariationReport quaternionic_integrand(const ProductFrame& frame,
                                       const QuaternionicStructure& q, int s,
                                       const CurvatureScale& scale) {
  if (s < 1 || s > 3) throw BadIndex("quaternionic_integrand: s must be 1, 2 or 3");
  q.validate();
  if (q.j1.j.rows() != frame.m1) throw BadStructure("quaternionic_integrand: structure must act on factor 1");

  const Matrix x1 = frame.tangent_factor1();
  const Matrix n1 = frame.normal_factor1();
  const double lam2 = scale.lambda_sq();

  VariationReport report;
  double cross = 0.0;
  for (int k = 1; k <= 3; ++k) {
    if (k == s) continue;
    const Matrix inner_products = x1.transposed() * (q.structure(k).j * n1);  // n x d
    for (int j = 0; j < inner_products.rows(); ++j) {
      for (int beta = 0; beta < inner_products.cols(); ++beta) {
        const double value = inner_products(j, beta);
        cross += value * value;
        report.cross_residuals.push_back({k, beta, j, value});
      }
    }
  }

  const KeyPart key = key_part(q.structure(s).j, x1);
  const double gram_scale = x1.frobenius_norm();

  report.value = lam2 * (-cross + key.defect);
  report.components["cross_term"] = -lam2 * cross;
  report.components["key_term"] = lam2 * key.defect;
  report.components["commutator_norm"] = key.commutator_norm;
  double worst_cross = 0.0;
  for (const auto& r : report.cross_residuals) worst_cross = std::max(worst_cross, std::abs(r.value));
  report.equality_certificates["cross_vanishes"] = worst_cross <= 1e-8 * (1.0 + gram_scale);
  report.equality_certificates["span_invariant"] = key.span_invariant;
  report.equality_certificates["commutator_vanishes"] =
      key.commutator_norm <= 1e-10 * (1.0 + gram_scale * gram_scale);
  return report;
}

namespace {

VariationReport octonionic_integrand(const Matrix& lead1, const Matrix& other1,
                                     const LineParam& fallback, const CurvatureScale& scale) {
  const Tolerance tol{};
  const int lead_count = lead1.cols();
  const int other_count = other1.cols();
  const double lam2 = scale.lambda_sq();

  double projection_sum = 0.0;
  double gram_sum = 0.0;
  double cross_sum = 0.0;
  double scale_sq = 0.0;

  std::vector<CayleyVector> lead(static_cast<std::size_t>(lead_count));
  for (int j = 0; j < lead_count; ++j) {
    lead[static_cast<std::size_t>(j)] = factor1_cayley(lead1, j);
    scale_sq += lead[static_cast<std::size_t>(j)].norm_sq();
  }

  for (int j = 0; j < lead_count; ++j) {
    const CayleyVector& xj = lead[static_cast<std::size_t>(j)];
    const double nj_sq = xj.norm_sq();
    const LineParam line = xj.norm() > tol.abs_tol ? line_through(xj, tol) : fallback;
    const Matrix basis = line_basis(line);
    for (int i = 0; i < lead_count; ++i) {
      const CayleyVector& xi = lead[static_cast<std::size_t>(i)];
      const auto coeffs = matvec_transposed(basis, xi.flat());
      double proj_sq = 0.0;
      for (double cval : coeffs) proj_sq += cval * cval;
      projection_sum += nj_sq * proj_sq;
      const double dot = inner(xj, xi);
      gram_sum += dot * dot;
    }
  }
  for (int j = 0; j < lead_count; ++j) {
    for (int k = 0; k < other_count; ++k) {
      const double dot = inner(lead[static_cast<std::size_t>(j)], factor1_cayley(other1, k));
      cross_sum += dot * dot;
    }
  }

  VariationReport report;
  report.value = lam2 * (projection_sum - 8.0 * gram_sum - 6.0 * cross_sum);
  report.components["projection_term"] = lam2 * projection_sum;
  report.components["gram_term"] = -8.0 * lam2 * gram_sum;
  report.components["cross_term"] = -6.0 * lam2 * cross_sum;
  const double defect = projection_sum - 8.0 * gram_sum;
  report.equality_certificates["defect_vanishes"] =
      std::abs(defect) <= 1e-8 * (1.0 + scale_sq * scale_sq);
  report.equality_certificates["cross_vanishes"] = cross_sum <= 1e-8 * (1.0 + scale_sq);
  return report;
}

}  // namespace

VariationReport octonionic_integrand_tangent(const ProductFrame& frame,
                                             const LineParam& fallback,
                                             const CurvatureScale& scale) {
  if (frame.m1 != 16) throw DimensionMismatch("octonionic_integrand_tangent: m1 must be 16");
  return octonionic_integrand(frame.tangent_factor1(), frame.normal_factor1(), fallback, scale);
}

VariationReport octonionic_integrand_normal(const ProductFrame& frame,
                                            const LineParam& fallback,
                                            const CurvatureScale& scale) {
  if (frame.m1 != 16) throw DimensionMismatch("octonionic_integrand_normal: m1 must be 16");
  return octonionic_integrand(frame.normal_factor1(), frame.tangent_factor1(), fallback, scale);
}

double raw_2ff_sum(const ProductFrame& frame, const CurvatureScale& scale) {
  if (frame.m1 != 16) throw DimensionMismatch("raw_2ff_sum: m1 must be 16");
  double total = 0.0;
  for (int j = 0; j < frame.n(); ++j) {
    const CayleyVector e = frame.tangent_cayley(j);
    for (int k = 0; k < frame.d(); ++k) {
      const CayleyVector eta = frame.normal_cayley(k);
      total += 2.0 * gauss_2ff_inner(e, eta, e, eta, scale) -
               gauss_2ff_inner(eta, eta, e, e, scale);
    }
  }
  return total;
}

SplittingReport splitting_check(const ProductFrame& frame, const Tolerance& tol) {
  const Matrix t1 = frame.tangent_factor1();
  const Matrix t2 = frame.tangent_factor2();
  const Matrix n1 = frame.normal_factor1();
  const Matrix n2 = frame.normal_factor2();
  const Matrix g1 = t1.transposed() * n1;  // n x d of <e^1, eta^1>
  const Matrix g2 = t2.transposed() * n2;

  SplittingReport report;
  for (int i = 0; i < frame.n(); ++i) {
    for (int beta = 0; beta < frame.d(); ++beta) {
      SplittingReport::PairResidual pair{};
      pair.tangent_index = i;
      pair.normal_index = beta;
      pair.factor1 = g1(i, beta);
      pair.factor2 = g2(i, beta);
      pair.product = pair.factor1 - pair.factor2;
      report.pairs.push_back(pair);
      report.max_product_residual = std::max(report.max_product_residual, std::abs(pair.product));
      report.max_factor1_residual = std::max(report.max_factor1_residual, std::abs(pair.factor1));
      report.max_factor2_residual = std::max(report.max_factor2_residual, std::abs(pair.factor2));
    }
  }
  const double bound = std::max(tol.abs_tol, tol.rel_tol);
  report.product_invariant = report.max_product_residual <= bound;
  report.factor1_orthogonal = report.max_factor1_residual <= bound;
  report.factor2_orthogonal = report.max_factor2_residual <= bound;
  return report;
}

std::pair<double, double> structure_commutators(const Matrix& x1, const Matrix& x2,
                                                const ComplexStructure& j1,
                                                const ComplexStructure& j2) {
  const Matrix g1 = x1 * x1.transposed();
  const Matrix g2 = x2 * x2.transposed();
  return {(g1 * j1.j - j1.j * g1).frobenius_norm(), (g2 * j2.j - j2.j * g2).frobenius_norm()};
}

namespace {

std::vector<EigenvalueCluster> cluster_eigenvalues(const std::vector<double>& descending) {
  constexpr double kClusterWidth = 1e-7;
  std::vector<EigenvalueCluster> clusters;
  for (double v : descending) {
    if (!clusters.empty() && clusters.back().eigenvalue - v <= kClusterWidth) {
      auto& last = clusters.back();
      last.eigenvalue = (last.eigenvalue * last.multiplicity + v) / (last.multiplicity + 1);
      last.multiplicity += 1;
    } else {
      clusters.push_back({v, 1});
    }
  }
  return clusters;
}

int multiplicity_near(const std::vector<EigenvalueCluster>& clusters, double target) {
  constexpr double kClusterWidth = 1e-7;
  int total = 0;
  for (const auto& c : clusters) {
    if (std::abs(c.eigenvalue - target) <= kClusterWidth) total += c.multiplicity;
  }
  return total;
}

bool nonzero_clusters_even(const std::vector<EigenvalueCluster>& clusters) {
  constexpr double kClusterWidth = 1e-7;
  for (const auto& c : clusters) {
    if (std::abs(c.eigenvalue) > kClusterWidth && c.multiplicity % 2 != 0) return false;
  }
  return true;
}

}  // namespace

OddDimensionReport odd_dimension_certificate(const Matrix& x1, const Matrix& x2,
                                             const ComplexStructure& j1,
                                             const ComplexStructure& j2,
                                             const Tolerance& tol) {
  const int n = x1.cols();
  if (x2.cols() != n) throw ShapeMismatch("odd_dimension_certificate: column counts differ");
  if (j1.j.rows() != x1.rows() || j2.j.rows() != x2.rows()) {
    throw BadStructure("odd_dimension_certificate: structures must act on the factors");
  }

  const Matrix gram1 = x1.transposed() * x1;
  const Matrix gram2 = x2.transposed() * x2;
  const double constraint = (gram1 + gram2 - Matrix::identity(n)).frobenius_norm();
  if (constraint > tol.abs_tol * std::max(1, n)) {
    throw ConstraintViolated("odd_dimension_certificate: X1^T X1 + X2^T X2 != Id");
  }

  OddDimensionReport report;
  std::tie(report.commutator1, report.commutator2) = structure_commutators(x1, x2, j1, j2);
  if (std::max(report.commutator1, report.commutator2) > tol.abs_tol * std::max(1, n)) {
    throw CertificatesAbsent("odd_dimension_certificate: commutation certificates absent",
                             report.commutator1, report.commutator2);
  }

  report.gram1_clusters = cluster_eigenvalues(sym_eig(gram1).eigenvalues);
  report.gram2_clusters = cluster_eigenvalues(sym_eig(gram2).eigenvalues);
  report.multiplicity_one_gram1 = multiplicity_near(report.gram1_clusters, 1.0);
  report.multiplicity_zero_gram2 = multiplicity_near(report.gram2_clusters, 0.0);
  report.nonzero_multiplicities_even = nonzero_clusters_even(report.gram1_clusters) &&
                                       nonzero_clusters_even(report.gram2_clusters) &&
                                       report.multiplicity_one_gram1 == report.multiplicity_zero_gram2;
  report.verdict = (n % 2 != 0 || !report.nonzero_multiplicities_even)
                       ? ParityVerdict::contradiction
                       : ParityVerdict::consistent;
  return report;
}

}  // namespace cayley
