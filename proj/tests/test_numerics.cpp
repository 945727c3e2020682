#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "conelearn/errors.hpp"
#include "conelearn/numerics.hpp"
#include "conelearn/rng.hpp"
#include "conelearn/tolerances.hpp"

using namespace conelearn;

namespace {

Mat random_symmetric(Rng& rng, std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) {
      const double v = 2.0 * rng.next_double() - 1.0;
      m(i, j) = v;
      m(j, i) = v;
    }
  return m;
}

double reconstruction_error(const SymmetricMatrix& s, const EigenDecomposition& e) {
  const std::size_t n = s.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        v += e.eigenvectors(i, k) * e.eigenvalues[k] * e.eigenvectors(j, k);
      worst = std::max(worst, std::fabs(v - s(i, j)));
    }
  return worst;
}

double orthonormality_error(const Mat& v) {
  const Mat g = matmul(v.transposed(), v);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j)
      worst = std::max(worst, std::fabs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

}  // namespace

TEST_CASE("sym_eig: diagonal input") {
  SymmetricMatrix s(2, {2.0, 0.0, 0.0, 5.0});
  const auto e = sym_eig(s);
  CHECK(e.eigenvalues[0] == doctest::Approx(2.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(5.0).epsilon(1e-12));
  CHECK(e.eigenvectors(0, 0) == doctest::Approx(1.0));
  CHECK(e.eigenvectors(1, 1) == doctest::Approx(1.0));
}

TEST_CASE("sym_eig: known 2x2 off-diagonal") {
  SymmetricMatrix s(2, {0.0, 1.0, 1.0, 0.0});
  const auto e = sym_eig(s);
  CHECK(e.eigenvalues[0] == doctest::Approx(-1.0).epsilon(1e-12));
  CHECK(e.eigenvalues[1] == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("sym_eig: random 5x5 reconstruction") {
  Rng rng(12345);
  SymmetricMatrix s(random_symmetric(rng, 5));
  const auto e = sym_eig(s);
  CHECK(reconstruction_error(s, e) <= tol().eig_reconstruct * std::max(1.0, max_abs(s.full())));
  CHECK(orthonormality_error(e.eigenvectors) <= tol().eig_orthonormal);
}

TEST_CASE("sym_eig: 1000 random matrices dim <= 8 stay within tolerance") {
  Rng rng(777);
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng.next_below(8);
    SymmetricMatrix s(random_symmetric(rng, n));
    const auto e = sym_eig(s);
    const double scale = std::max(1.0, max_abs(s.full()));
    REQUIRE(reconstruction_error(s, e) <= tol().eig_reconstruct * scale);
    REQUIRE(orthonormality_error(e.eigenvectors) <= tol().eig_orthonormal);
    for (std::size_t i = 0; i + 1 < n; ++i) REQUIRE(e.eigenvalues[i] <= e.eigenvalues[i + 1]);
  }
}

TEST_CASE("gram_schmidt: axis-aligned pair") {
  const auto basis = gram_schmidt({{2.0, 0.0, 0.0}, {1.0, 1.0, 0.0}});
  REQUIRE(basis.size() == 2);
  CHECK(basis[0][0] == doctest::Approx(1.0));
  CHECK(basis[1][1] == doctest::Approx(1.0));
  CHECK(std::fabs(basis[1][0]) <= tol().gs_orthogonal);
}

TEST_CASE("gram_schmidt: single unit vector unchanged") {
  const auto basis = gram_schmidt({{1.0, 0.0}});
  REQUIRE(basis.size() == 1);
  CHECK(basis[0][0] == doctest::Approx(1.0));
}

TEST_CASE("gram_schmidt: random triple in R^5 is orthonormal and idempotent") {
  Rng rng(99);
  for (int trial = 0; trial < 50; ++trial) {
    std::vector<Vec> vs;
    for (int i = 0; i < 3; ++i) vs.push_back(rng.unit_vector(5));
    const auto basis = gram_schmidt(vs);
    REQUIRE(basis.size() == 3);
    for (std::size_t i = 0; i < 3; ++i) {
      CHECK(std::fabs(norm(basis[i]) - 1.0) <= tol().gs_unit);
      for (std::size_t j = i + 1; j < 3; ++j) CHECK(std::fabs(dot(basis[i], basis[j])) <= tol().gs_orthogonal);
    }
    const auto twice = gram_schmidt(basis);
    for (std::size_t i = 0; i < 3; ++i)
      for (std::size_t k = 0; k < 5; ++k) CHECK(std::fabs(twice[i][k] - basis[i][k]) <= 1e-12);
  }
}

TEST_CASE("gram_schmidt: dependent input raises") {
  CHECK_THROWS_AS(gram_schmidt({{1.0, 0.0}, {2.0, 0.0}}), Error);
  try {
    gram_schmidt({{1.0, 0.0}, {-1.0, 1e-13}});
    FAIL("expected dependent-input error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::DependentInput);
  }
}

TEST_CASE("solve_linear: identity and diagonal") {
  CHECK(solve_linear(Mat::identity(3), {1.0, 2.0, 3.0})[2] == doctest::Approx(3.0));
  Mat d(2, 2);
  d(0, 0) = 2.0;
  d(1, 1) = 4.0;
  const auto x = solve_linear(d, {2.0, 8.0});
  CHECK(x[0] == doctest::Approx(1.0));
  CHECK(x[1] == doctest::Approx(2.0));
}

TEST_CASE("solve_linear: random well-conditioned 6x6 residual") {
  Rng rng(4242);
  for (int trial = 0; trial < 50; ++trial) {
    Mat a(6, 6);
    for (auto& v : a.a) v = 2.0 * rng.next_double() - 1.0;
    for (std::size_t i = 0; i < 6; ++i) a(i, i) += 4.0;  // diagonal dominance
    Vec b(6);
    for (auto& v : b) v = 2.0 * rng.next_double() - 1.0;
    const Vec x = solve_linear(a, b);
    const Vec r = sub(matvec(a, x), b);
    CHECK(norm(r) <= tol().solve_residual * std::max(1.0, norm(b)));
  }
}

TEST_CASE("solve_linear: singular system raises") {
  Mat a(2, 2);
  a(0, 0) = 1.0;
  a(0, 1) = 1.0;
  a(1, 0) = 1.0;
  a(1, 1) = 1.0;
  try {
    solve_linear(a, {1.0, 2.0});
    FAIL("expected singular-system error");
  } catch (const Error& e) {
    CHECK(e.kind() == ErrorKind::SingularSystem);
  }
}

TEST_CASE("min_norm_point: symmetric two-point hull") {
  const auto r = min_norm_point({{1.0, 0.0}, {0.0, 1.0}});
  CHECK(r.point[0] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.point[1] == doctest::Approx(0.5).epsilon(1e-9));
  CHECK(r.weights[0] == doctest::Approx(0.5).epsilon(1e-6));
}

TEST_CASE("min_norm_point: singleton") {
  const auto r = min_norm_point({{1.0, 1.0}});
  CHECK(r.point[0] == doctest::Approx(1.0));
  CHECK(r.point[1] == doctest::Approx(1.0));
  CHECK(r.weights[0] == doctest::Approx(1.0));
}

TEST_CASE("min_norm_point: hull crossing near the origin vs grid oracle") {
  const Vec p0{1.0, 0.0};
  const Vec p1{-1.0, 0.1};
  // Independent oracle: exhaustive grid over the segment at step 1e-5.
  Vec best = p0;
  double best_n = norm(p0);
  for (double g = 0.0; g <= 1.0; g += 1e-5) {
    const Vec q = add(scaled(p0, g), scaled(p1, 1.0 - g));
    const double n = norm(q);
    if (n < best_n) {
      best_n = n;
      best = q;
    }
  }
  const auto r = min_norm_point({p0, p1});
  CHECK(std::fabs(r.point[0] - best[0]) <= 1e-4);
  CHECK(std::fabs(r.point[1] - best[1]) <= 1e-4);
  CHECK(std::fabs(r.point[0]) < 0.01);
}

TEST_CASE("min_norm_point: random hulls satisfy the Wolfe certificate and norm bounds") {
  Rng rng(31337);
  for (int trial = 0; trial < 200; ++trial) {
    const std::size_t d = 2 + rng.next_below(4);
    const std::size_t m = 1 + rng.next_below(6);
    std::vector<Vec> pts;
    for (std::size_t i = 0; i < m; ++i) {
      Vec p(d);
      for (auto& v : p) v = 2.0 * rng.next_double() - 1.0;
      pts.push_back(p);
    }
    const auto r = min_norm_point(pts);
    const double xx = dot(r.point, r.point);
    Vec avg(d, 0.0);
    double wsum = 0.0;
    Vec recomposed(d, 0.0);
    for (std::size_t i = 0; i < m; ++i) {
      REQUIRE(dot(pts[i], r.point) >= xx - tol().wolfe);
      REQUIRE(norm(r.point) <= norm(pts[i]) + 1e-12);
      REQUIRE(r.weights[i] >= -1e-15);
      wsum += r.weights[i];
      axpy(1.0 / static_cast<double>(m), pts[i], avg);
      axpy(r.weights[i], pts[i], recomposed);
    }
    REQUIRE(norm(r.point) <= norm(avg) + 1e-12);
    REQUIRE(wsum == doctest::Approx(1.0).epsilon(1e-9));
    REQUIRE(norm(sub(recomposed, r.point)) <= 1e-8);
  }
}

TEST_CASE("angle_between: clamped and zero-vector convention") {
  CHECK(angle_between({1.0, 0.0}, {1.0, 0.0}) == doctest::Approx(0.0));
  CHECK(angle_between({1.0, 0.0}, {0.0, 0.0}) == doctest::Approx(0.0));
  CHECK(angle_between({1.0, 0.0}, {-1.0, 0.0}) == doctest::Approx(M_PI));
}
