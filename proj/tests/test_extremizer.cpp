#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "cayley/extremizer.hpp"
#include "cayley/rng.hpp"

using namespace cayley;

namespace {

Octonion random_octonion(Rng& rng) {
  Octonion o;
  for (double& v : o.c) v = rng.gaussian();
  return o;
}

CayleyVector random_cayley(Rng& rng) {
  return CayleyVector(random_octonion(rng), random_octonion(rng));
}

std::vector<CayleyVector> on_line(const LineParam& line, int count, Rng& rng) {
  const Matrix basis = line_basis(line);
  std::vector<CayleyVector> xs;
  for (int i = 0; i < count; ++i) {
    std::vector<double> coeffs(8);
    for (double& v : coeffs) v = rng.gaussian();
    xs.push_back(CayleyVector::from_flat(matvec(basis, coeffs)));
  }
  return xs;
}

std::vector<CayleyVector> mixed_set(Rng& rng) {
  std::vector<CayleyVector> xs;
  const int lines = rng.range(1, 3);
  for (int l = 0; l < lines; ++l) {
    const LineParam line = rng.uniform() < 0.85 ? LineParam::finite(random_octonion(rng))
                                                : LineParam::at_infinity();
    const auto group = on_line(line, rng.range(1, 4), rng);
    xs.insert(xs.end(), group.begin(), group.end());
  }
  for (int i = rng.range(0, 3); i > 0; --i) xs.push_back(random_cayley(rng));
  return xs;
}

const LineParam kFallback = LineParam::finite(Octonion{});

}  // namespace

TEST_CASE("octo defect examples") {
  CHECK(octo_defect({}, kFallback) == doctest::Approx(0.0));

  // Orthonormal basis of one line: 64 - 64 = 0.
  Rng rng(81);
  for (int trial = 0; trial < 50; ++trial) {
    const LineParam line = LineParam::finite(random_octonion(rng));
    const Matrix basis = line_basis(line) * random_orthogonal(8, rng.next_u64());
    std::vector<CayleyVector> xs;
    for (int s = 0; s < 8; ++s) xs.push_back(CayleyVector::from_flat(basis.column(s)));
    REQUIRE(std::abs(octo_defect(xs, kFallback)) <= 1e-10);
  }

  // Two orthogonal-complement lines: 2 - 16 = -14.
  const std::vector<CayleyVector> pair = {CayleyVector(Octonion(1.0), Octonion{}),
                                          CayleyVector(Octonion{}, Octonion(1.0))};
  CHECK(octo_defect(pair, kFallback) == doctest::Approx(-14.0));

  // A single unit vector: 1 - 8 = -7.
  const std::vector<CayleyVector> single = {CayleyVector(Octonion(1.0), Octonion{})};
  CHECK(octo_defect(single, kFallback) == doctest::Approx(-7.0));
}

TEST_CASE("octo defect scale covariance is exact for powers of two") {
  Rng rng(82);
  for (int trial = 0; trial < 50; ++trial) {
    auto xs = mixed_set(rng);
    const double base = octo_defect(xs, kFallback);
    for (auto& x : xs) x *= 2.0;
    CHECK(octo_defect(xs, kFallback) == 16.0 * base);
  }
}

TEST_CASE("decompose: grouping, eigenvalues, couplings") {
  Rng rng(83);

  // Eight orthonormal vectors on one line: k = 1, unit eigenvalues.
  const Matrix basis = line_basis(LineParam::finite(Octonion{}));
  std::vector<CayleyVector> one_line;
  for (int s = 0; s < 8; ++s) one_line.push_back(CayleyVector::from_flat(basis.column(s)));
  const LineDecomposition dec1 = decompose(one_line);
  REQUIRE(dec1.k() == 1);
  for (int i = 0; i < 8; ++i) CHECK(dec1.eigen(0, i) == doctest::Approx(1.0));
  CHECK(dec1.coupling_c(0, 0) == doctest::Approx(1.0));
  CHECK((dec1.coupling_q[0][0] - Matrix::identity(8)).frobenius_norm() <= 1e-10);

  // Orthogonal-complement lines: c = 0.
  const std::vector<CayleyVector> pair = {CayleyVector(Octonion(1.0), Octonion{}),
                                          CayleyVector(Octonion{}, Octonion(1.0))};
  const LineDecomposition dec2 = decompose(pair);
  REQUIRE(dec2.k() == 2);
  CHECK(dec2.coupling_c(0, 1) == doctest::Approx(0.0));

  // Standard bases of the slope-0 and slope-I1 lines: c = 1/sqrt(2).
  std::vector<CayleyVector> two_lines = on_line(LineParam::finite(Octonion{}), 3, rng);
  const auto second = on_line(LineParam::finite(Octonion::basis(1)), 3, rng);
  two_lines.insert(two_lines.end(), second.begin(), second.end());
  const LineDecomposition dec3 = decompose(two_lines);
  REQUIRE(dec3.k() == 2);
  CHECK(dec3.coupling_c(0, 1) == doctest::Approx(1.0 / std::sqrt(2.0)).epsilon(1e-10));
  CHECK(dec3.coupling_c(0, 1) == dec3.coupling_c(1, 0));
  CHECK((dec3.coupling_q[0][1] - dec3.coupling_q[1][0].transposed()).frobenius_norm() <= 1e-12);

  // Vectors sharing a line group together even after re-generation.
  const Octonion slope = random_octonion(rng);
  auto grouped = on_line(LineParam::finite(slope), 4, rng);
  const LineDecomposition dec4 = decompose(grouped);
  REQUIRE(dec4.k() == 1);
  REQUIRE(dec4.groups[0].size() == 4);

  CHECK_THROWS_AS(decompose(std::vector<CayleyVector>{CayleyVector{}}), ZeroVector);
}

TEST_CASE("decomposition bases are orthonormal, on-line and span their groups") {
  Rng rng(89);
  for (int trial = 0; trial < 100; ++trial) {
    const auto xs = mixed_set(rng);
    const LineDecomposition dec = decompose(xs);
    for (int r = 0; r < dec.k(); ++r) {
      const Matrix& basis = dec.bases[static_cast<std::size_t>(r)];
      REQUIRE((basis.transposed() * basis - Matrix::identity(8)).frobenius_norm() <= 1e-10);
      for (int s = 0; s < 8; ++s) {
        const CayleyVector column = CayleyVector::from_flat(basis.column(s));
        REQUIRE((project_onto_line(column, dec.lines[static_cast<std::size_t>(r)]) - column)
                    .norm() <= 1e-9);
      }
      // Every group member is reproduced by its line basis.
      for (int member : dec.groups[static_cast<std::size_t>(r)]) {
        const CayleyVector& x = xs[static_cast<std::size_t>(member)];
        REQUIRE((project_with_basis(x, basis) - x).norm() <= 1e-9 * (1.0 + x.norm()));
      }
      REQUIRE(dec.coupling_c(r, r) == doctest::Approx(1.0));
    }
  }
}

TEST_CASE("decompose handles near-parallel completion candidates") {
  // A vector whose direction almost coincides with the first canonical line
  // basis column leaves a completion candidate with residual ~3e-6. A single
  // orthogonalization pass loses ~eps/residual of orthogonality there, which
  // the coupling factorization's certificate would reject.
  Rng rng(90);
  for (int trial = 0; trial < 50; ++trial) {
    const Octonion slope = random_octonion(rng);
    const Matrix basis = line_basis(LineParam::finite(slope));
    std::vector<double> coeffs(8, 0.0);
    coeffs[0] = 1.0;
    coeffs[1] = 3e-6;
    std::vector<CayleyVector> xs = {CayleyVector::from_flat(matvec(basis, coeffs)) * 2.3,
                                    random_cayley(rng)};
    const LineDecomposition dec = decompose(xs);
    REQUIRE(dec.k() == 2);
    const double defect = octo_defect(xs, kFallback);
    double scale_sq = 0.0;
    for (const auto& x : xs) scale_sq += x.norm_sq();
    REQUIRE(std::abs(eigen_f(dec, dec.eigen) - defect) <=
            1e-9 * (1.0 + std::abs(defect) + scale_sq * scale_sq));
  }
}

TEST_CASE("eigen_f reproduces the defect") {
  Rng rng(84);

  // k = 1 with unit eigenvalues: f = 64 - 64 = 0.
  const Matrix basis = line_basis(LineParam::finite(Octonion{}));
  std::vector<CayleyVector> one_line;
  for (int s = 0; s < 8; ++s) one_line.push_back(CayleyVector::from_flat(basis.column(s)));
  const LineDecomposition dec1 = decompose(one_line);
  Matrix ones(1, 8);
  for (int i = 0; i < 8; ++i) ones(0, i) = 1.0;
  CHECK(eigen_f(dec1, ones) == doctest::Approx(0.0));
  CHECK(eigen_f(dec1, Matrix(1, 8)) == doctest::Approx(0.0));

  // Orthogonal lines with native eigenvalues: matches -14.
  const std::vector<CayleyVector> pair = {CayleyVector(Octonion(1.0), Octonion{}),
                                          CayleyVector(Octonion{}, Octonion(1.0))};
  const LineDecomposition dec2 = decompose(pair);
  CHECK(eigen_f(dec2, dec2.eigen) == doctest::Approx(-14.0));

  for (int trial = 0; trial < 500; ++trial) {
    const auto xs = mixed_set(rng);
    const double defect = octo_defect(xs, kFallback);
    double scale_sq = 0.0;
    for (const auto& x : xs) scale_sq += x.norm_sq();
    const LineDecomposition dec = decompose(xs);
    REQUIRE(std::abs(eigen_f(dec, dec.eigen) - defect) <=
            1e-9 * (1.0 + std::abs(defect) + scale_sq * scale_sq));
  }

  Matrix negative(dec2.k(), 8);
  negative(0, 0) = -1.0;
  CHECK_THROWS_AS(eigen_f(dec2, negative), NegativeEigenvalue);
}

TEST_CASE("groups larger than the line dimension cap at rank 8") {
  Rng rng(91);
  for (int trial = 0; trial < 30; ++trial) {
    const LineParam line = LineParam::finite(random_octonion(rng));
    std::vector<CayleyVector> xs = on_line(line, 12, rng);
    xs.push_back(random_cayley(rng));

    const LineDecomposition dec = decompose(xs);
    REQUIRE(dec.k() == 2);
    REQUIRE(dec.groups[0].size() == 12);
    // Twelve vectors span at most the eight line dimensions; the eigenvalue
    // row keeps the top eight, all positive here.
    for (int i = 0; i < 8; ++i) REQUIRE(dec.eigen(0, i) > 0.0);

    const double defect = octo_defect(xs, kFallback);
    double scale_sq = 0.0;
    for (const auto& x : xs) scale_sq += x.norm_sq();
    REQUIRE(std::abs(eigen_f(dec, dec.eigen) - defect) <=
            1e-9 * (1.0 + std::abs(defect) + scale_sq * scale_sq));
  }
}

TEST_CASE("gradient: row sums vanish and finite differences agree") {
  Rng rng(85);
  for (int trial = 0; trial < 300; ++trial) {
    const auto xs = mixed_set(rng);
    const LineDecomposition dec = decompose(xs);

    Matrix lambdas(dec.k(), 8);
    for (double& v : lambdas.data()) v = 0.1 + std::abs(rng.gaussian());
    const Matrix grad = eigen_f_gradient(dec, lambdas);

    double lam_total = 0.0;
    for (double v : lambdas.data()) lam_total += v;
    for (int r = 0; r < dec.k(); ++r) {
      double row = 0.0;
      for (int i = 0; i < 8; ++i) row += grad(r, i);
      REQUIRE(std::abs(row) <= 1e-10 * (1.0 + lam_total));
    }

    const int r = static_cast<int>(rng.below(static_cast<std::uint64_t>(dec.k())));
    const int i = static_cast<int>(rng.below(8));
    const double h = 1e-5;
    Matrix up = lambdas, down = lambdas;
    up(r, i) += h;
    down(r, i) -= h;
    const double fd = (eigen_f(dec, up) - eigen_f(dec, down)) / (2.0 * h);
    REQUIRE(std::abs(fd - grad(r, i)) <= 1e-5 * (1.0 + std::abs(grad(r, i))));
  }

  // Zero lambdas: zero gradient.
  const std::vector<CayleyVector> pair = {CayleyVector(Octonion(1.0), Octonion{}),
                                          CayleyVector(Octonion{}, Octonion(1.0))};
  const LineDecomposition dec = decompose(pair);
  const Matrix zero_grad = eigen_f_gradient(dec, Matrix(2, 8));
  CHECK(zero_grad.frobenius_norm() == doctest::Approx(0.0));
}

TEST_CASE("maximize_f: single line maximum is zero at equal eigenvalues") {
  Rng rng(86);
  const auto xs = on_line(LineParam::finite(random_octonion(rng)), 3, rng);
  const LineDecomposition dec = decompose(xs);
  REQUIRE(dec.k() == 1);

  const MaximizeResult result = maximize_f(dec, 1.0, 99, 10000);
  CHECK(result.best_value <= 1e-7);
  CHECK(result.best_value >= -1e-6);
  // Argmax has all eight eigenvalues equal (to the sphere radius / sqrt(8)).
  const double expected = 1.0 / std::sqrt(8.0);
  for (int i = 0; i < 8; ++i) {
    REQUIRE(result.best_lambdas(0, i) == doctest::Approx(expected).epsilon(1e-3));
  }
  CHECK(result.kkt_residual <= 1e-5);
}

TEST_CASE("maximize_f: orthogonal lines decouple") {
  const std::vector<CayleyVector> pair = {CayleyVector(Octonion(1.0), Octonion{}),
                                          CayleyVector(Octonion{}, Octonion(1.0))};
  const LineDecomposition dec = decompose(pair);
  const MaximizeResult result = maximize_f(dec, 1.0, 7, 10000);
  CHECK(result.best_value <= 1e-7);
  CHECK(result.best_value >= -1e-6);
}

TEST_CASE("maximize_f stays nonpositive on random decompositions") {
  Rng rng(87);
  for (int trial = 0; trial < 20; ++trial) {
    const auto xs = mixed_set(rng);
    const LineDecomposition dec = decompose(xs);
    const MaximizeResult result = maximize_f(dec, 1.0, rng.next_u64(), 10000);
    REQUIRE(result.best_value <= 1e-7);
  }
  CHECK_THROWS_AS(maximize_f(decompose(mixed_set(rng)), 0.0, 1, 10), std::invalid_argument);
}

TEST_CASE("falsify_search") {
  const FalsifyResult empty = falsify_search(8, 1, 0);
  CHECK(empty.witness.empty());
  CHECK(std::isinf(empty.worst_normalized));

  // Single-vector sets: the normalized defect is identically -7.
  const FalsifyResult single = falsify_search(1, 5, 2000);
  CHECK(single.worst_normalized == doctest::Approx(-7.0).epsilon(1e-12));
  CHECK(single.witness.size() == 1);

  const FalsifyResult search = falsify_search(8, 5, 5000);
  CHECK(search.worst_normalized <= 1e-8);

  // Schedule invariance: four workers find the same worst case.
  const FalsifyResult parallel = falsify_search(8, 5, 5000, 4);
  CHECK(parallel.worst_normalized == search.worst_normalized);
  CHECK(parallel.worst_trial == search.worst_trial);
}

TEST_CASE("simple bound certifies small sets on distinct lines") {
  Rng rng(88);
  for (int trial = 0; trial < 500; ++trial) {
    const int count = rng.range(1, 8);
    std::vector<CayleyVector> xs;
    for (int i = 0; i < count; ++i) xs.push_back(random_cayley(rng));

    double pair_products = 0.0, gram_sum = 0.0, scale_sq = 0.0;
    for (const auto& xi : xs) scale_sq += xi.norm_sq();
    for (const auto& xi : xs) {
      for (const auto& xj : xs) {
        pair_products += xi.norm_sq() * xj.norm_sq();
        const double dot = inner(xi, xj);
        gram_sum += dot * dot;
      }
    }
    const double simple_bound = pair_products - 8.0 * gram_sum;
    const double defect = octo_defect(xs, kFallback);
    const double scale = 1.0 + scale_sq * scale_sq;
    REQUIRE(defect <= simple_bound + 1e-9 * scale);
    REQUIRE(simple_bound <= 1e-9 * scale);
  }
}
