#pragma once

#include <map>
#include <string>
#include <utility>
#include <vector>

#include "cayley/curvature.hpp"
#include "cayley/lines.hpp"
#include "cayley/matrix.hpp"
#include "cayley/rng.hpp"

namespace cayley {

/// Orthonormal tangent/normal frame at a point of a product of two factor
/// manifolds, stored as column matrices over R^{m1+m2} with factor blocks
/// stacked (first m1 rows = factor 1, last m2 rows = factor 2).
struct ProductFrame {
  int m1 = 0;
  int m2 = 0;
  Matrix tangent;  // (m1+m2) x n
  Matrix normal;   // (m1+m2) x d

  int n() const { return tangent.cols(); }
  int d() const { return normal.cols(); }

  Matrix tangent_factor1() const;  // m1 x n
  Matrix tangent_factor2() const;  // m2 x n
  Matrix normal_factor1() const;   // m1 x d
  Matrix normal_factor2() const;   // m2 x d

  /// Factor-1 part of a tangent (or normal) column as an O+O vector.
  /// Pre: m1 == 16.
  CayleyVector tangent_cayley(int j) const;
  CayleyVector normal_cayley(int k) const;

  /// Checks that tangent + normal together form an orthonormal family and
  /// that n + d <= m1 + m2. Throws BadStructure on violation.
  void validate(const Tolerance& tol = {}) const;

  /// Haar frame: QR-orthonormalized Gaussian columns split into n tangent
  /// and d normal vectors. Pre: n + d <= m1 + m2.
  static ProductFrame random(int m1, int m2, int n, int d, Rng& rng);
};

/// Orthogonal skew structure J with J^2 = -Id.
struct ComplexStructure {
  Matrix j;

  /// Block form [[0, -Id], [Id, 0]] on R^m. Pre: m even.
  static ComplexStructure standard(int m);
  void validate(const Tolerance& tol = {}) const;
};

/// Triple of complex structures obeying the quaternion relations
/// J1 J2 = J3 and cyclic.
struct QuaternionicStructure {
  ComplexStructure j1, j2, j3;

  /// Left multiplication by i, j, k on R^m read as quaternion coordinates.
  /// Pre: m divisible by 4.
  static QuaternionicStructure standard(int m);
  void validate(const Tolerance& tol = {}) const;

  const ComplexStructure& structure(int s) const;  // s in {1,2,3}
};

/// One cross inner product <J_k eta_beta^1, e_j^1> from the quaternionic
/// integrand's first grouped term.
struct CrossResidual {
  int structure_index;  // k
  int normal_index;     // beta
  int tangent_index;    // j
  double value;
};

/// Result of a summed second-variation integrand evaluation. The value is
/// lambda-scaled and non-positive for every valid frame; components carry
/// the named sub-sums, certificates the equality-case conditions.
struct VariationReport {
  double value = 0.0;
  std::map<std::string, double> components;
  std::map<std::string, bool> equality_certificates;
  std::vector<CrossResidual> cross_residuals;
};

/// lambda1^2 * sum_ij (<J1 e_j^1, e_i^1>^2 - <e_j^1, e_i^1>^2).
/// Pre: J1 acts on R^{m1}.
VariationReport complex_integrand(const ProductFrame& frame, const ComplexStructure& j1,
                                  const CurvatureScale& scale);

/// lambda^2 * ( -sum_{k != s} sum_{j,beta} <J_k eta_beta^1, e_j^1>^2
///              + sum_ij (<J_s e_i^1, e_j^1>^2 - <e_i^1, e_j^1>^2) ).
/// Pre: the structure acts on R^{m1}, s in {1,2,3}.
VariationReport quaternionic_integrand(const ProductFrame& frame,
                                       const QuaternionicStructure& q, int s,
                                       const CurvatureScale& scale);

/// lambda^2 * ( sum_ji |e_j^1|^2 |Proj_{L(e_j^1)} e_i^1|^2
///              - 8 sum_ji <e_j^1, e_i^1>^2 - 6 sum_jk <e_j^1, eta_k^1>^2 ).
/// The fallback line is used for factor-1 parts of negligible norm; their
/// contribution vanishes regardless of the choice. Pre: m1 == 16.
VariationReport octonionic_integrand_tangent(const ProductFrame& frame,
                                             const LineParam& fallback,
                                             const CurvatureScale& scale);

/// Same with the tangent/normal roles swapped in the first two sums.
VariationReport octonionic_integrand_normal(const ProductFrame& frame,
                                            const LineParam& fallback,
                                            const CurvatureScale& scale);

/// sum_jk ( 2 |B(e_j^1, eta_k^1)|^2 - <B(eta_k^1, eta_k^1), B(e_j^1, e_j^1)> )
/// evaluated through gauss_2ff_inner. On complete frames (n + d = m1 + m2)
/// this equals both octonionic integrands; it is the independent oracle for
/// them. Pre: m1 == 16.
double raw_2ff_sum(const ProductFrame& frame, const CurvatureScale& scale);

/// Residuals of the product-structure invariance check F = P - Q and of the
/// two per-factor cross-orthogonality conditions.
struct SplittingReport {
  struct PairResidual {
    int tangent_index;
    int normal_index;
    double product;  // <e^1, eta^1> - <e^2, eta^2>
    double factor1;  // <e^1, eta^1>
    double factor2;  // <e^2, eta^2>
  };
  bool product_invariant = false;
  bool factor1_orthogonal = false;
  bool factor2_orthogonal = false;
  double max_product_residual = 0.0;
  double max_factor1_residual = 0.0;
  double max_factor2_residual = 0.0;
  std::vector<PairResidual> pairs;
};

SplittingReport splitting_check(const ProductFrame& frame, const Tolerance& tol = {});

enum class ParityVerdict { consistent, contradiction };

struct EigenvalueCluster {
  double eigenvalue;
  int multiplicity;
};

/// Eigenvalue multiplicity table of the two Gram matrices, plus the parity
/// conclusion. Contradiction certifies that no frame of this (odd) dimension
/// can satisfy both commutation certificates.
struct OddDimensionReport {
  double commutator1 = 0.0;
  double commutator2 = 0.0;
  std::vector<EigenvalueCluster> gram1_clusters;
  std::vector<EigenvalueCluster> gram2_clusters;
  bool nonzero_multiplicities_even = false;
  int multiplicity_one_gram1 = 0;
  int multiplicity_zero_gram2 = 0;
  ParityVerdict verdict = ParityVerdict::consistent;
};

/// Commutator norms ||X_i X_i^T J_i - J_i X_i X_i^T||, the two equality
/// certificates of the parity argument.
std::pair<double, double> structure_commutators(const Matrix& x1, const Matrix& x2,
                                                const ComplexStructure& j1,
                                                const ComplexStructure& j2);

/// Pre: ||X1^T X1 + X2^T X2 - Id|| <= abs_tol (ConstraintViolated otherwise).
/// Throws CertificatesAbsent when either commutator exceeds abs_tol. With
/// both certificates in hand, clusters the Gram spectra (1e-7 absolute) and
/// reports whether the even-multiplicity bookkeeping is consistent; an odd
/// frame dimension yields Contradiction.
OddDimensionReport odd_dimension_certificate(const Matrix& x1, const Matrix& x2,
                                             const ComplexStructure& j1,
                                             const ComplexStructure& j2,
                                             const Tolerance& tol = {});

}  // namespace cayley
