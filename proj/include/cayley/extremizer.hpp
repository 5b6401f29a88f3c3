#pragma once

#include <array>
#include <cstdint>
#include <span>
#include <vector>

#include "cayley/lines.hpp"

namespace cayley {

/// Grouping of a vector set by the octonionic lines the vectors lie on,
/// together with the per-group Gram eigenvalues, orthonormal line bases, and
/// the pairwise cQ couplings between lines.
struct LineDecomposition {
  std::vector<LineParam> lines;           // k distinct lines
  std::vector<std::vector<int>> groups;   // member indices per line
  Matrix eigen;                           // k x 8, non-negative, descending rows
  Matrix coupling_c;                      // k x k, c_{r,r} = 1
  std::vector<std::vector<Matrix>> coupling_q;  // k x k of 8x8 orthogonal
  std::vector<Matrix> bases;              // k of 16x8, group span in leading columns

  int k() const { return static_cast<int>(lines.size()); }
};

/// sum_ji |x_j|^2 |Proj_{L(x_j)} x_i|^2 - 8 sum_ji <x_i, x_j>^2. Zero vectors
/// contribute nothing; the fallback line stands in for their undefined line.
double octo_defect(std::span<const CayleyVector> xs, const LineParam& fallback);

/// Groups the vectors by line (two finite slopes coincide when
/// |m_r - m_s| <= 1e-8 (1 + |m_r|)), eigendecomposes each group Gram, and
/// extracts the couplings. Pre: every |x| > abs_tol (ZeroVector otherwise).
/// A group of numerical rank above 8 throws DegenerateGroup.
LineDecomposition decompose(std::span<const CayleyVector> xs, const Tolerance& tol = {});

/// f(lambda) = sum_{r,s} c_{r,s}^2 (sum_i lambda_{r,i}) (sum_j lambda_{s,j})
///           - 8 sum_{r,s,i,j} c_{r,s}^2 lambda_{r,i} lambda_{s,j} (A_{r,s})_{ij}^2.
/// With lambda = dec.eigen this reproduces octo_defect of the original set.
/// Pre: lambdas k x 8, entrywise >= 0 (NegativeEigenvalue otherwise).
double eigen_f(const LineDecomposition& dec, const Matrix& lambdas);

/// Analytic gradient of eigen_f; each row sums to zero because the coupling
/// factors are orthogonal matrices.
Matrix eigen_f_gradient(const LineDecomposition& dec, const Matrix& lambdas);

struct MaximizeResult {
  double best_value = 0.0;
  Matrix best_lambdas;
  double kkt_residual = 0.0;
};

/// Multi-start projected gradient ascent of eigen_f over the set
/// {lambda >= 0, sum lambda^2 = C}: 32 random starts, backtracking step from
/// 0.1, at most `iters` steps per start. Non-convergence shows up in the KKT
/// residual, never as an exception.
MaximizeResult maximize_f(const LineDecomposition& dec, double C, std::uint64_t seed, int iters);

struct FalsifyResult {
  static constexpr int kHistogramBins = 16;
  static constexpr double kHistogramLow = -8.0;   // normalized defect range
  static constexpr double kHistogramHigh = 0.0;

  double worst_normalized;  // max over trials of defect / (sum |x|^2)^2
  double worst_defect = 0.0;
  std::uint64_t worst_trial = 0;
  std::vector<CayleyVector> witness;
  std::array<std::uint64_t, kHistogramBins> histogram{};
};

/// Monte Carlo stress harness: per trial draws a Gaussian vector set in R^16
/// of size uniform in {1..n} and records the worst normalized defect seen,
/// plus a histogram of the normalized defects over [-8, 0). trials == 0
/// yields a -infinity sentinel and an empty witness.
FalsifyResult falsify_search(int n, std::uint64_t seed, std::uint64_t trials, int threads = 1);

}  // namespace cayley
