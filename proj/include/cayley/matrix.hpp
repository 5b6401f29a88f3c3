#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "cayley/errors.hpp"
#include "cayley/rng.hpp"
#include "cayley/tolerance.hpp"

namespace cayley {

/// Dense real matrix, row-major. Sized for desk-scale verification work
/// (dimensions up to a few dozen), not for performance.
class Matrix {
 public:
  Matrix() = default;
  Matrix(int rows, int cols)
      : rows_(rows), cols_(cols), data_(static_cast<std::size_t>(rows) * static_cast<std::size_t>(cols), 0.0) {}

  static Matrix identity(int n) {
    Matrix m(n, n);
    for (int i = 0; i < n; ++i) m(i, i) = 1.0;
    return m;
  }

  int rows() const { return rows_; }
  int cols() const { return cols_; }

  double& operator()(int i, int j) { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }
  double operator()(int i, int j) const { return data_[static_cast<std::size_t>(i) * static_cast<std::size_t>(cols_) + static_cast<std::size_t>(j)]; }

  std::span<const double> data() const { return data_; }
  std::span<double> data() { return data_; }

  Matrix transposed() const;
  double trace() const;
  double frobenius_norm() const;

  std::vector<double> column(int j) const;
  void set_column(int j, std::span<const double> v);

  Matrix& operator+=(const Matrix& o);
  Matrix& operator-=(const Matrix& o);
  Matrix& operator*=(double s);

  friend Matrix operator+(Matrix a, const Matrix& b) { return a += b; }
  friend Matrix operator-(Matrix a, const Matrix& b) { return a -= b; }
  friend Matrix operator*(Matrix a, double s) { return a *= s; }
  friend Matrix operator*(double s, Matrix a) { return a *= s; }
  Matrix operator*(const Matrix& o) const;

  bool operator==(const Matrix& o) const = default;

 private:
  int rows_ = 0;
  int cols_ = 0;
  std::vector<double> data_;
};

/// Tr(A^T B) = sum of entrywise products. Throws ShapeMismatch.
double frobenius_inner(const Matrix& a, const Matrix& b);

/// Matrix-vector product A x.
std::vector<double> matvec(const Matrix& a, std::span<const double> x);

/// A^T x.
std::vector<double> matvec_transposed(const Matrix& a, std::span<const double> x);

/// Eigen data of a symmetric matrix: eigenvalues in non-increasing order,
/// eigenvector columns in matching order.
struct SymmetricSpectrum {
  std::vector<double> eigenvalues;
  Matrix eigenvectors;
};

/// Cyclic Jacobi eigensolver. Converges when the off-diagonal Frobenius norm
/// drops below 1e-14 * ||S||, at most 100 sweeps. Throws NotSymmetric when
/// ||S - S^T|| exceeds tolerance, NoConvergence if the sweep cap is hit.
SymmetricSpectrum sym_eig(const Matrix& s, const Tolerance& tol = {});

/// Haar-distributed orthogonal matrix: Gaussian entries, then QR with the
/// R diagonal signs corrected. Deterministic per seed.
Matrix random_orthogonal(int m, std::uint64_t seed);

/// Matrix with independent standard Gaussian entries.
Matrix random_gaussian(int rows, int cols, Rng& rng);

/// rows x cols matrix with orthonormal columns, Haar-distributed frame.
/// Pre: cols <= rows.
Matrix random_orthonormal_columns(int rows, int cols, Rng& rng);

/// QR factorization via Householder reflections. q is rows x cols with
/// orthonormal columns, r is cols x cols upper triangular. Pre: cols <= rows.
void qr_decompose(const Matrix& a, Matrix& q, Matrix& r);

double determinant(Matrix a);

/// Count of Gram eigenvalues above tol.abs_tol * max(1, largest eigenvalue).
int numerical_rank(const Matrix& x, const Tolerance& tol = {});

/// Verdict for "X^T X and X X^T have the same nonzero eigenvalues with the
/// same multiplicity", with the paired eigenvalue lists above the cutoff.
struct SpectrumMatch {
  bool match = false;
  std::vector<double> gram_col_eigenvalues;  // nonzero spectrum of X^T X
  std::vector<double> gram_row_eigenvalues;  // nonzero spectrum of X X^T
  double worst_gap = 0.0;
};

SpectrumMatch nonzero_spectrum_match(const Matrix& x, const Tolerance& tol = {});

/// Verdict that the row spaces of X^T X X^T and X^T coincide, decided by
/// comparing numerical ranks of the two matrices and their row-stack. The
/// cubed-spectrum matrix is thresholded at the cubed cutoff so that both
/// rank computations classify the same singular directions.
bool row_space_equal(const Matrix& x, const Tolerance& tol = {});

}  // namespace cayley
