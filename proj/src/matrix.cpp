#include "cayley/matrix.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>

namespace cayley {

Matrix Matrix::transposed() const {
  Matrix t(cols_, rows_);
  for (int i = 0; i < rows_; ++i)
    for (int j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double Matrix::trace() const {
  double s = 0.0;
  for (int i = 0; i < std::min(rows_, cols_); ++i) s += (*this)(i, i);
  return s;
}

double Matrix::frobenius_norm() const {
  double s = 0.0;
  for (double x : data_) s += x * x;
  return std::sqrt(s);
}

std::vector<double> Matrix::column(int j) const {
  std::vector<double> v(static_cast<std::size_t>(rows_));
  for (int i = 0; i < rows_; ++i) v[static_cast<std::size_t>(i)] = (*this)(i, j);
  return v;
}

void Matrix::set_column(int j, std::span<const double> v) {
  for (int i = 0; i < rows_; ++i) (*this)(i, j) = v[static_cast<std::size_t>(i)];
}

Matrix& Matrix::operator+=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix addition shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

Matrix& Matrix::operator-=(const Matrix& o) {
  if (rows_ != o.rows_ || cols_ != o.cols_) throw ShapeMismatch("matrix subtraction shape mismatch");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

Matrix& Matrix::operator*=(double s) {
  for (double& x : data_) x *= s;
  return *this;
}

Matrix Matrix::operator*(const Matrix& o) const {
  if (cols_ != o.rows_) throw ShapeMismatch("matrix product shape mismatch");
  Matrix r(rows_, o.cols_);
  for (int i = 0; i < rows_; ++i) {
    for (int k = 0; k < cols_; ++k) {
      const double aik = (*this)(i, k);
      if (aik == 0.0) continue;
      for (int j = 0; j < o.cols_; ++j) r(i, j) += aik * o(k, j);
    }
  }
  return r;
}

double frobenius_inner(const Matrix& a, const Matrix& b) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw ShapeMismatch("frobenius_inner: shapes differ");
  }
  double s = 0.0;
  auto da = a.data();
  auto db = b.data();
  for (std::size_t i = 0; i < da.size(); ++i) s += da[i] * db[i];
  return s;
}

std::vector<double> matvec(const Matrix& a, std::span<const double> x) {
  std::vector<double> y(static_cast<std::size_t>(a.rows()), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    double s = 0.0;
    for (int j = 0; j < a.cols(); ++j) s += a(i, j) * x[static_cast<std::size_t>(j)];
    y[static_cast<std::size_t>(i)] = s;
  }
  return y;
}

std::vector<double> matvec_transposed(const Matrix& a, std::span<const double> x) {
  std::vector<double> y(static_cast<std::size_t>(a.cols()), 0.0);
  for (int i = 0; i < a.rows(); ++i) {
    const double xi = x[static_cast<std::size_t>(i)];
    if (xi == 0.0) continue;
    for (int j = 0; j < a.cols(); ++j) y[static_cast<std::size_t>(j)] += a(i, j) * xi;
  }
  return y;
}

namespace {

double off_diagonal_norm(const Matrix& a) {
  double s = 0.0;
  for (int i = 0; i < a.rows(); ++i)
    for (int j = 0; j < a.cols(); ++j)
      if (i != j) s += a(i, j) * a(i, j);
  return std::sqrt(s);
}

}  // namespace

SymmetricSpectrum sym_eig(const Matrix& s, const Tolerance& tol) {
  if (s.rows() != s.cols()) throw NotSymmetric("sym_eig: matrix not square");
  const int n = s.rows();
  const double scale = s.frobenius_norm();

  double asym = 0.0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double d = s(i, j) - s(j, i);
      asym += 2.0 * d * d;
    }
  if (std::sqrt(asym) > tol.abs_tol * std::max(1.0, scale)) {
    throw NotSymmetric("sym_eig: matrix not symmetric within tolerance");
  }

  Matrix a = s;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) {
      const double v = 0.5 * (a(i, j) + a(j, i));
      a(i, j) = v;
      a(j, i) = v;
    }
  Matrix v = Matrix::identity(n);

  const double threshold = 1e-14 * scale;
  constexpr int kMaxSweeps = 100;
  bool converged = scale == 0.0;
  for (int sweep = 0; sweep < kMaxSweeps && !converged; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      converged = true;
      break;
    }
    for (int p = 0; p < n - 1; ++p) {
      for (int q = p + 1; q < n; ++q) {
        const double apq = a(p, q);
        if (apq == 0.0) continue;
        const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
        const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double sn = t * c;

        const double app = a(p, p), aqq = a(q, q);
        a(p, p) = app - t * apq;
        a(q, q) = aqq + t * apq;
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        for (int k = 0; k < n; ++k) {
          if (k == p || k == q) continue;
          const double akp = a(k, p), akq = a(k, q);
          a(k, p) = c * akp - sn * akq;
          a(p, k) = a(k, p);
          a(k, q) = sn * akp + c * akq;
          a(q, k) = a(k, q);
        }
        for (int k = 0; k < n; ++k) {
          const double vkp = v(k, p), vkq = v(k, q);
          v(k, p) = c * vkp - sn * vkq;
          v(k, q) = sn * vkp + c * vkq;
        }
      }
    }
  }
  if (!converged && off_diagonal_norm(a) > threshold) {
    throw NoConvergence("sym_eig: Jacobi sweep cap reached");
  }

  std::vector<int> order(static_cast<std::size_t>(n));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&a](int i, int j) { return a(i, i) > a(j, j); });

  SymmetricSpectrum out;
  out.eigenvalues.resize(static_cast<std::size_t>(n));
  out.eigenvectors = Matrix(n, n);
  for (int j = 0; j < n; ++j) {
    const int src = order[static_cast<std::size_t>(j)];
    out.eigenvalues[static_cast<std::size_t>(j)] = a(src, src);
    for (int i = 0; i < n; ++i) out.eigenvectors(i, j) = v(i, src);
  }
  return out;
}

void qr_decompose(const Matrix& a, Matrix& q, Matrix& r) {
  const int m = a.rows();
  const int n = a.cols();
  if (n > m) throw ShapeMismatch("qr_decompose: expects rows >= cols");

  Matrix work = a;            // reduced to upper triangular in place
  Matrix qfull = Matrix::identity(m);
  std::vector<double> h(static_cast<std::size_t>(m));

  for (int k = 0; k < n; ++k) {
    double norm = 0.0;
    for (int i = k; i < m; ++i) norm += work(i, k) * work(i, k);
    norm = std::sqrt(norm);
    if (norm == 0.0) continue;

    const double alpha = work(k, k) >= 0.0 ? -norm : norm;
    double vnorm_sq = 0.0;
    for (int i = k; i < m; ++i) {
      h[static_cast<std::size_t>(i)] = work(i, k);
      if (i == k) h[static_cast<std::size_t>(i)] -= alpha;
      vnorm_sq += h[static_cast<std::size_t>(i)] * h[static_cast<std::size_t>(i)];
    }
    if (vnorm_sq == 0.0) continue;
    const double beta = 2.0 / vnorm_sq;

    for (int j = k; j < n; ++j) {
      double dot = 0.0;
      for (int i = k; i < m; ++i) dot += h[static_cast<std::size_t>(i)] * work(i, j);
      dot *= beta;
      for (int i = k; i < m; ++i) work(i, j) -= dot * h[static_cast<std::size_t>(i)];
    }
    for (int row = 0; row < m; ++row) {
      double dot = 0.0;
      for (int i = k; i < m; ++i) dot += qfull(row, i) * h[static_cast<std::size_t>(i)];
      dot *= beta;
      for (int i = k; i < m; ++i) qfull(row, i) -= dot * h[static_cast<std::size_t>(i)];
    }
  }

  q = Matrix(m, n);
  for (int i = 0; i < m; ++i)
    for (int j = 0; j < n; ++j) q(i, j) = qfull(i, j);
  r = Matrix(n, n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) r(i, j) = work(i, j);
}

Matrix random_gaussian(int rows, int cols, Rng& rng) {
  Matrix a(rows, cols);
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a(i, j) = rng.gaussian();
  return a;
}

Matrix random_orthonormal_columns(int rows, int cols, Rng& rng) {
  Matrix a = random_gaussian(rows, cols, rng);
  Matrix q, r;
  qr_decompose(a, q, r);
  for (int j = 0; j < cols; ++j) {
    if (r(j, j) < 0.0) {
      for (int i = 0; i < rows; ++i) q(i, j) = -q(i, j);
    }
  }
  return q;
}

Matrix random_orthogonal(int m, std::uint64_t seed) {
  Rng rng(seed);
  return random_orthonormal_columns(m, m, rng);
}

double determinant(Matrix a) {
  if (a.rows() != a.cols()) throw ShapeMismatch("determinant: matrix not square");
  const int n = a.rows();
  double det = 1.0;
  for (int k = 0; k < n; ++k) {
    int pivot = k;
    for (int i = k + 1; i < n; ++i) {
      if (std::abs(a(i, k)) > std::abs(a(pivot, k))) pivot = i;
    }
    if (a(pivot, k) == 0.0) return 0.0;
    if (pivot != k) {
      for (int j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      det = -det;
    }
    det *= a(k, k);
    for (int i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      for (int j = k; j < n; ++j) a(i, j) -= f * a(k, j);
    }
  }
  return det;
}

namespace {

// Eigenvalues of the smaller Gram matrix of X, descending.
std::vector<double> gram_eigenvalues(const Matrix& x) {
  const Matrix xt = x.transposed();
  const Matrix gram = x.rows() <= x.cols() ? x * xt : xt * x;
  return sym_eig(gram).eigenvalues;
}

int rank_from_eigenvalues(const std::vector<double>& eig, double cutoff) {
  int r = 0;
  for (double v : eig)
    if (v > cutoff) ++r;
  return r;
}

}  // namespace

int numerical_rank(const Matrix& x, const Tolerance& tol) {
  if (x.rows() == 0 || x.cols() == 0) return 0;
  const auto eig = gram_eigenvalues(x);
  const double largest = eig.empty() ? 0.0 : eig.front();
  return rank_from_eigenvalues(eig, tol.abs_tol * std::max(1.0, largest));
}

SpectrumMatch nonzero_spectrum_match(const Matrix& x, const Tolerance& tol) {
  const Matrix xt = x.transposed();
  const auto col_eig = sym_eig(xt * x).eigenvalues;
  const auto row_eig = sym_eig(x * xt).eigenvalues;
  const double largest = std::max(col_eig.empty() ? 0.0 : col_eig.front(),
                                  row_eig.empty() ? 0.0 : row_eig.front());
  const double cutoff = tol.abs_tol * std::max(1.0, largest);

  SpectrumMatch out;
  for (double v : col_eig)
    if (v > cutoff) out.gram_col_eigenvalues.push_back(v);
  for (double v : row_eig)
    if (v > cutoff) out.gram_row_eigenvalues.push_back(v);

  if (out.gram_col_eigenvalues.size() != out.gram_row_eigenvalues.size()) {
    out.match = false;
    out.worst_gap = std::numeric_limits<double>::infinity();
    return out;
  }
  double worst = 0.0;
  for (std::size_t i = 0; i < out.gram_col_eigenvalues.size(); ++i) {
    worst = std::max(worst, std::abs(out.gram_col_eigenvalues[i] - out.gram_row_eigenvalues[i]));
  }
  out.worst_gap = worst;
  out.match = worst <= tol.abs_tol * std::max(1.0, largest);
  return out;
}

bool row_space_equal(const Matrix& x, const Tolerance& tol) {
  const Matrix xt = x.transposed();
  const Matrix cubed = (xt * x) * xt;  // singular values are those of X^T, cubed

  const auto base_eig = gram_eigenvalues(xt);
  const double largest = base_eig.empty() ? 0.0 : base_eig.front();
  const double cutoff = tol.abs_tol * std::max(1.0, largest);
  const int rank_base = rank_from_eigenvalues(base_eig, cutoff);

  // The cubed matrix's spectrum is the base spectrum cubed, so its cutoff is
  // the cubed base cutoff; the second term keeps the cutoff above the cubed
  // matrix's own roundoff floor.
  const auto cubed_eig = gram_eigenvalues(cubed);
  const double cubed_largest = cubed_eig.empty() ? 0.0 : cubed_eig.front();
  const double cubed_cutoff =
      std::max(cutoff * cutoff * cutoff, tol.abs_tol * std::max(1.0, cubed_largest));
  const int rank_cubed = rank_from_eigenvalues(cubed_eig, cubed_cutoff);

  Matrix stacked(xt.rows() + cubed.rows(), xt.cols());
  for (int i = 0; i < cubed.rows(); ++i)
    for (int j = 0; j < cubed.cols(); ++j) stacked(i, j) = cubed(i, j);
  for (int i = 0; i < xt.rows(); ++i)
    for (int j = 0; j < xt.cols(); ++j) stacked(cubed.rows() + i, j) = xt(i, j);
  const int rank_stacked = rank_from_eigenvalues(gram_eigenvalues(stacked), cutoff);

  return rank_base == rank_cubed && rank_base == rank_stacked;
}

}  // namespace cayley
