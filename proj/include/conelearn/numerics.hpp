#pragma once

#include <cstddef>
#include <vector>

namespace conelearn {

using Vec = std::vector<double>;

/// Dense row-major matrix, sized for the small systems this library works with
/// (dimensions of at most a few dozen).
struct Mat {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> a;

  Mat() = default;
  Mat(std::size_t r, std::size_t c, double fill = 0.0) : rows(r), cols(c), a(r * c, fill) {}

  double& operator()(std::size_t i, std::size_t j) { return a[i * cols + j]; }
  double operator()(std::size_t i, std::size_t j) const { return a[i * cols + j]; }

  static Mat identity(std::size_t n);
  Vec col(std::size_t j) const;
  Vec row(std::size_t i) const;
  void set_col(std::size_t j, const Vec& v);
  Mat transposed() const;
};

// Basic vector/matrix kernels.
double dot(const Vec& a, const Vec& b);
double norm(const Vec& a);
Vec normalized(const Vec& a);
Vec sub(const Vec& a, const Vec& b);
Vec add(const Vec& a, const Vec& b);
Vec scaled(const Vec& a, double s);
void axpy(double s, const Vec& x, Vec& y);  // y += s*x
Vec matvec(const Mat& m, const Vec& v);
Vec matvec_t(const Mat& m, const Vec& v);  // m' v
Mat matmul(const Mat& a, const Mat& b);
double max_abs(const Mat& m);
Vec basis_vector(std::size_t d, std::size_t i);

/// Angle between two vectors; inner products are clamped to [-1, 1] before
/// arccos, and the angle against a zero vector is 0 by convention.
double angle_between(const Vec& a, const Vec& b);

/// Symmetric matrix, mirrored from the upper triangle at construction.
struct SymmetricMatrix {
  explicit SymmetricMatrix(const Mat& m);
  SymmetricMatrix(std::size_t dim, const std::vector<double>& upper_row_major);
  std::size_t dim() const { return m_.rows; }
  const Mat& full() const { return m_; }
  double operator()(std::size_t i, std::size_t j) const { return m_(i, j); }

 private:
  Mat m_;
};

/// Eigenvalues in nondecreasing order, eigenvectors as matching orthonormal
/// columns with each column's first nonzero entry made nonnegative.
struct EigenDecomposition {
  Vec eigenvalues;
  Mat eigenvectors;
};

/// Cyclic Jacobi eigendecomposition (fails after 1000 sweeps without
/// convergence).
EigenDecomposition sym_eig(const SymmetricMatrix& s);

/// Modified Gram-Schmidt with one re-orthogonalization pass. Inputs must be
/// linearly independent; a residual below the rank tolerance raises
/// DependentInput.
std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors);

/// Gram-Schmidt that silently drops dependent vectors; used to complete
/// orthonormal bases from over-specified spanning sets.
std::vector<Vec> orthonormalize_dropping(const std::vector<Vec>& vectors);

/// Gaussian elimination with partial pivoting.
Vec solve_linear(const Mat& a, const Vec& b);

/// Least-squares projection of v onto span(basis) via normal equations; basis
/// vectors are the columns of the returned problem. Returns the projection.
Vec project_onto_span(const std::vector<Vec>& basis, const Vec& v);

struct MinNormPoint {
  Vec point;
  Vec weights;  // convex coefficients over the input points
};

/// Minimum-norm point of the convex hull of `points` (Wolfe's algorithm).
/// Ties among equally optimal vertices break toward the lowest index. The
/// result satisfies the Wolfe certificate: q_j'x >= ||x||^2 - tol for all j.
MinNormPoint min_norm_point(const std::vector<Vec>& points);

}  // namespace conelearn
