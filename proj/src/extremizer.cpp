#include "cayley/extremizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <thread>

namespace cayley {

namespace {

constexpr double kLineMatchTol = 1e-8;

}  // namespace

double octo_defect(std::span<const CayleyVector> xs, const LineParam& fallback) {
  const Tolerance tol{};
  double projection_sum = 0.0;
  double gram_sum = 0.0;
  for (const CayleyVector& xj : xs) {
    const double nj_sq = xj.norm_sq();
    const LineParam line = xj.norm() > tol.abs_tol ? line_through(xj, tol) : fallback;
    const Matrix basis = line_basis(line);
    for (const CayleyVector& xi : xs) {
      const auto coeffs = matvec_transposed(basis, xi.flat());
      double proj_sq = 0.0;
      for (double c : coeffs) proj_sq += c * c;
      projection_sum += nj_sq * proj_sq;
      const double dot = inner(xj, xi);
      gram_sum += dot * dot;
    }
  }
  return projection_sum - 8.0 * gram_sum;
}

LineDecomposition decompose(std::span<const CayleyVector> xs, const Tolerance& tol) {
  LineDecomposition dec;
  for (int i = 0; i < static_cast<int>(xs.size()); ++i) {
    const CayleyVector& x = xs[static_cast<std::size_t>(i)];
    if (x.norm() <= tol.abs_tol) throw ZeroVector("decompose: zero vector in input");
    const LineParam line = line_through(x, tol);
    bool placed = false;
    for (int r = 0; r < dec.k(); ++r) {
      if (dec.lines[static_cast<std::size_t>(r)].same_line(line, kLineMatchTol)) {
        dec.groups[static_cast<std::size_t>(r)].push_back(i);
        placed = true;
        break;
      }
    }
    if (!placed) {
      dec.lines.push_back(line);
      dec.groups.push_back({i});
    }
  }

  const int k = dec.k();
  dec.eigen = Matrix(k, 8);
  dec.bases.resize(static_cast<std::size_t>(k));

  for (int r = 0; r < k; ++r) {
    const auto& members = dec.groups[static_cast<std::size_t>(r)];
    const int count = static_cast<int>(members.size());
    Matrix group(16, count);
    for (int j = 0; j < count; ++j) {
      group.set_column(j, xs[static_cast<std::size_t>(members[static_cast<std::size_t>(j)])].flat());
    }
    const auto spectrum = sym_eig(group.transposed() * group);
    const double largest = spectrum.eigenvalues.empty() ? 0.0 : spectrum.eigenvalues.front();
    const double cutoff = tol.abs_tol * std::max(1.0, largest);

    int rank = 0;
    for (double v : spectrum.eigenvalues)
      if (v > cutoff) ++rank;
    if (rank > 8) throw DegenerateGroup("decompose: group rank exceeds 8");

    for (int i = 0; i < std::min(8, count); ++i) {
      dec.eigen(r, i) = std::max(0.0, spectrum.eigenvalues[static_cast<std::size_t>(i)]);
    }

    // Y_r: scaled principal columns of X Q, completed to a full line basis.
    // The construction runs in the line's canonical coordinates so every
    // column is a combination of canonical columns — exactly on the line —
    // and each column gets a second orthogonalization pass, since one pass
    // loses up to eps / residual of orthogonality on near-parallel
    // candidates.
    const Matrix canonical = line_basis(dec.lines[static_cast<std::size_t>(r)]);
    const Matrix principal = (canonical.transposed() * group) * spectrum.eigenvectors;  // 8 x count
    Matrix coords(8, 8);
    int filled = 0;
    const auto try_append = [&coords, &filled](std::vector<double> candidate, double min_residual) {
      for (int pass = 0; pass < 2; ++pass) {
        for (int c = 0; c < filled; ++c) {
          double dot = 0.0;
          for (int row = 0; row < 8; ++row) dot += coords(row, c) * candidate[static_cast<std::size_t>(row)];
          for (int row = 0; row < 8; ++row) candidate[static_cast<std::size_t>(row)] -= dot * coords(row, c);
        }
      }
      double norm = 0.0;
      for (double v : candidate) norm += v * v;
      norm = std::sqrt(norm);
      if (norm <= min_residual) return false;
      for (int row = 0; row < 8; ++row) coords(row, filled) = candidate[static_cast<std::size_t>(row)] / norm;
      ++filled;
      return true;
    };

    for (int i = 0; i < std::min(rank, 8); ++i) {
      const double inv = 1.0 / std::sqrt(spectrum.eigenvalues[static_cast<std::size_t>(i)]);
      std::vector<double> column(8);
      for (int row = 0; row < 8; ++row) column[static_cast<std::size_t>(row)] = principal(row, i) * inv;
      try_append(std::move(column), 1e-8);
    }
    for (int s = 0; s < 8 && filled < 8; ++s) {
      std::vector<double> axis(8, 0.0);
      axis[static_cast<std::size_t>(s)] = 1.0;
      try_append(std::move(axis), 1e-6);
    }
    if (filled < 8) throw DegenerateGroup("decompose: could not complete a line basis");
    dec.bases[static_cast<std::size_t>(r)] = canonical * coords;
  }

  dec.coupling_c = Matrix(k, k);
  dec.coupling_q.assign(static_cast<std::size_t>(k), std::vector<Matrix>(static_cast<std::size_t>(k)));
  for (int r = 0; r < k; ++r) {
    for (int s = r; s < k; ++s) {
      const LineGram gram = line_gram(dec.lines[static_cast<std::size_t>(r)],
                                      dec.lines[static_cast<std::size_t>(s)],
                                      dec.bases[static_cast<std::size_t>(r)],
                                      dec.bases[static_cast<std::size_t>(s)], tol);
      dec.coupling_c(r, s) = gram.c;
      dec.coupling_c(s, r) = gram.c;
      dec.coupling_q[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)] = gram.q;
      dec.coupling_q[static_cast<std::size_t>(s)][static_cast<std::size_t>(r)] = gram.q.transposed();
    }
  }
  return dec;
}

namespace {

void check_lambdas(const LineDecomposition& dec, const Matrix& lambdas) {
  if (lambdas.rows() != dec.k() || lambdas.cols() != 8) {
    throw ShapeMismatch("eigen_f: lambdas must be k x 8");
  }
  for (double v : lambdas.data()) {
    if (v < 0.0) throw NegativeEigenvalue("eigen_f: negative eigenvalue entry");
  }
}

}  // namespace

double eigen_f(const LineDecomposition& dec, const Matrix& lambdas) {
  check_lambdas(dec, lambdas);
  const int k = dec.k();
  std::vector<double> row_sum(static_cast<std::size_t>(k), 0.0);
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < 8; ++i) row_sum[static_cast<std::size_t>(r)] += lambdas(r, i);

  double total = 0.0;
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      const double c_sq = dec.coupling_c(r, s) * dec.coupling_c(r, s);
      if (c_sq == 0.0) continue;
      total += c_sq * row_sum[static_cast<std::size_t>(r)] * row_sum[static_cast<std::size_t>(s)];
      const Matrix& a = dec.coupling_q[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      double weighted = 0.0;
      for (int i = 0; i < 8; ++i) {
        if (lambdas(r, i) == 0.0) continue;
        for (int j = 0; j < 8; ++j) {
          weighted += lambdas(r, i) * lambdas(s, j) * a(i, j) * a(i, j);
        }
      }
      total -= 8.0 * c_sq * weighted;
    }
  }
  return total;
}

Matrix eigen_f_gradient(const LineDecomposition& dec, const Matrix& lambdas) {
  check_lambdas(dec, lambdas);
  const int k = dec.k();
  std::vector<double> row_sum(static_cast<std::size_t>(k), 0.0);
  for (int r = 0; r < k; ++r)
    for (int i = 0; i < 8; ++i) row_sum[static_cast<std::size_t>(r)] += lambdas(r, i);

  Matrix grad(k, 8);
  for (int r = 0; r < k; ++r) {
    for (int s = 0; s < k; ++s) {
      const double c_sq = dec.coupling_c(r, s) * dec.coupling_c(r, s);
      if (c_sq == 0.0) continue;
      const Matrix& a = dec.coupling_q[static_cast<std::size_t>(r)][static_cast<std::size_t>(s)];
      for (int i = 0; i < 8; ++i) {
        double weighted = 0.0;
        for (int j = 0; j < 8; ++j) weighted += lambdas(s, j) * a(i, j) * a(i, j);
        grad(r, i) += 2.0 * c_sq * row_sum[static_cast<std::size_t>(s)] - 16.0 * c_sq * weighted;
      }
    }
  }
  return grad;
}

namespace {

// Projection onto {lambda >= 0, sum lambda^2 = C}: clamp, then rescale.
void project_feasible(Matrix& lambdas, double C) {
  double norm_sq = 0.0;
  for (double& v : lambdas.data()) {
    if (v < 0.0) v = 0.0;
    norm_sq += v * v;
  }
  if (norm_sq == 0.0) {
    lambdas(0, 0) = std::sqrt(C);
    return;
  }
  const double scale = std::sqrt(C / norm_sq);
  for (double& v : lambdas.data()) v *= scale;
}

double kkt_residual(const LineDecomposition& dec, const Matrix& lambdas, double C) {
  const Matrix grad = eigen_f_gradient(dec, lambdas);
  double glam = 0.0;
  for (int r = 0; r < lambdas.rows(); ++r)
    for (int i = 0; i < 8; ++i) glam += grad(r, i) * lambdas(r, i);
  const double alpha = glam / C;  // sphere multiplier

  double residual_sq = 0.0;
  for (int r = 0; r < lambdas.rows(); ++r) {
    for (int i = 0; i < 8; ++i) {
      double ri = grad(r, i) - alpha * lambdas(r, i);
      // At an active bound, only an ascent direction into the orthant counts.
      if (lambdas(r, i) <= 1e-14 && ri < 0.0) ri = 0.0;
      residual_sq += ri * ri;
    }
  }
  return std::sqrt(residual_sq);
}

}  // namespace

MaximizeResult maximize_f(const LineDecomposition& dec, double C, std::uint64_t seed, int iters) {
  if (!(C > 0.0)) throw std::invalid_argument("maximize_f: constraint level must be positive");
  const int k = dec.k();
  if (k == 0) return {0.0, Matrix(0, 8), 0.0};
  constexpr int kStarts = 32;

  MaximizeResult best;
  best.best_value = -std::numeric_limits<double>::infinity();

  for (int start = 0; start < kStarts; ++start) {
    Rng rng(seed + static_cast<std::uint64_t>(start) * 0x9E3779B97F4A7C15ULL);
    Matrix lambdas(k, 8);
    for (double& v : lambdas.data()) v = std::abs(rng.gaussian());
    project_feasible(lambdas, C);

    double value = eigen_f(dec, lambdas);
    double step = 0.1;
    for (int it = 0; it < iters; ++it) {
      const Matrix grad = eigen_f_gradient(dec, lambdas);
      double grad_norm = 0.0;
      for (double g : grad.data()) grad_norm += g * g;
      grad_norm = std::sqrt(grad_norm);
      if (grad_norm * step < 1e-16 * std::max(1.0, std::abs(value))) break;

      bool advanced = false;
      while (step > 1e-18) {
        Matrix trial = lambdas;
        for (int r = 0; r < k; ++r)
          for (int i = 0; i < 8; ++i) trial(r, i) += step * grad(r, i);
        project_feasible(trial, C);
        const double trial_value = eigen_f(dec, trial);
        if (trial_value > value) {
          lambdas = std::move(trial);
          value = trial_value;
          step = std::min(step * 1.5, 1.0);
          advanced = true;
          break;
        }
        step *= 0.5;
      }
      if (!advanced) break;
    }

    if (value > best.best_value) {
      best.best_value = value;
      best.best_lambdas = lambdas;
    }
  }
  best.kkt_residual = kkt_residual(dec, best.best_lambdas, C);
  return best;
}

FalsifyResult falsify_search(int n, std::uint64_t seed, std::uint64_t trials, int threads) {
  FalsifyResult result;
  result.worst_normalized = -std::numeric_limits<double>::infinity();
  if (trials == 0 || n <= 0) return result;

  const LineParam fallback = LineParam::finite(Octonion{});
  const int worker_count = std::max(1, threads);
  std::vector<FalsifyResult> locals(static_cast<std::size_t>(worker_count));
  for (auto& l : locals) l.worst_normalized = -std::numeric_limits<double>::infinity();

  auto body = [&](int worker) {
    FalsifyResult& local = locals[static_cast<std::size_t>(worker)];
    for (std::uint64_t trial = static_cast<std::uint64_t>(worker); trial < trials;
         trial += static_cast<std::uint64_t>(worker_count)) {
      Rng rng(seed ^ trial);
      const int count = 1 + static_cast<int>(rng.below(static_cast<std::uint64_t>(n)));
      std::vector<CayleyVector> xs(static_cast<std::size_t>(count));
      double scale_sq = 0.0;
      for (auto& x : xs) {
        std::array<double, 16> flat{};
        for (double& v : flat) v = rng.gaussian();
        x = CayleyVector::from_flat(flat);
        scale_sq += x.norm_sq();
      }
      const double defect = octo_defect(xs, fallback);
      const double normalized = defect / (scale_sq * scale_sq);
      const double span = FalsifyResult::kHistogramHigh - FalsifyResult::kHistogramLow;
      const int bin = std::clamp(
          static_cast<int>((normalized - FalsifyResult::kHistogramLow) / span *
                           FalsifyResult::kHistogramBins),
          0, FalsifyResult::kHistogramBins - 1);
      ++local.histogram[static_cast<std::size_t>(bin)];
      if (normalized > local.worst_normalized ||
          (normalized == local.worst_normalized && trial < local.worst_trial)) {
        local.worst_normalized = normalized;
        local.worst_defect = defect;
        local.worst_trial = trial;
        local.witness = xs;
      }
    }
  };

  if (worker_count == 1) {
    body(0);
  } else {
    std::vector<std::thread> pool;
    pool.reserve(static_cast<std::size_t>(worker_count));
    for (int w = 0; w < worker_count; ++w) pool.emplace_back(body, w);
    for (auto& t : pool) t.join();
  }

  std::array<std::uint64_t, FalsifyResult::kHistogramBins> histogram{};
  for (const auto& local : locals) {
    for (std::size_t b = 0; b < histogram.size(); ++b) histogram[b] += local.histogram[b];
    if (local.witness.empty() && !std::isfinite(local.worst_normalized)) continue;
    if (local.worst_normalized > result.worst_normalized ||
        (local.worst_normalized == result.worst_normalized && local.worst_trial < result.worst_trial)) {
      result = local;
    }
  }
  result.histogram = histogram;
  return result;
}

}  // namespace cayley
