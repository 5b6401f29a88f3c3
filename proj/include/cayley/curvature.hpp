#pragma once

#include "cayley/lines.hpp"

namespace cayley {

/// Maximum sectional curvature of the ambient geometry. The default for the
/// Cayley plane is 4, putting sectional curvatures in [1, 4]; the projective
/// space constructors carry the standard-metric values for real dimension m1.
class CurvatureScale {
 public:
  static CurvatureScale cayley_plane(double lambda_sq = 4.0) { return CurvatureScale(lambda_sq); }

  /// Constant holomorphic sectional curvature 2 m1 / (m1 + 2).
  static CurvatureScale holomorphic(int m1) {
    return CurvatureScale(2.0 * m1 / (m1 + 2.0));
  }

  /// Quaternionic maximum sectional curvature 2 m1 / (m1 + 4).
  static CurvatureScale quaternionic(int m1) {
    return CurvatureScale(2.0 * m1 / (m1 + 4.0));
  }

  double lambda_sq() const { return lambda_sq_; }

 private:
  explicit CurvatureScale(double lambda_sq) : lambda_sq_(lambda_sq) {
    if (!(lambda_sq > 0.0) || !std::isfinite(lambda_sq)) {
      throw std::invalid_argument("CurvatureScale: lambda_sq must be positive and finite");
    }
  }
  double lambda_sq_;
};

/// <R(X, Y) Z, W> for the Cayley plane, with the tangent space identified
/// with O + O. Antisymmetric in (X, Y) and (Z, W), symmetric under pair swap.
double curvature_full(const CayleyVector& x, const CayleyVector& y, const CayleyVector& z,
                      const CayleyVector& w, const CurvatureScale& scale);

/// <R(X, Y) X, Y>, the diagonal specialization of curvature_full.
double curvature_diag(const CayleyVector& x, const CayleyVector& y, const CurvatureScale& scale);

/// <B(X, Y), B(Z, W)> for the isotropic embedding of the Cayley plane, via
/// the Gauss equation:
///   3 <B(X,Y), B(Z,W)> = <R(X,Z)W, Y> + <R(X,W)Z, Y>
///                        + lambda^2 (<X,Y><Z,W> + <X,W><Y,Z> + <X,Z><W,Y>).
/// For unit X, <B(X,X), B(X,X)> = lambda^2.
double gauss_2ff_inner(const CayleyVector& x, const CayleyVector& y, const CayleyVector& z,
                       const CayleyVector& w, const CurvatureScale& scale);

/// K(X, Y) = -<R(X,Y)X,Y> / (|X|^2 |Y|^2 - <X,Y>^2), signed so that the
/// maximum over plane sections is +lambda^2.
double sectional_curvature(const CayleyVector& x, const CayleyVector& y,
                           const CurvatureScale& scale);

}  // namespace cayley
