#include "conelearn/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

#include "conelearn/errors.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

Mat Mat::identity(std::size_t n) {
  Mat m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

Vec Mat::col(std::size_t j) const {
  Vec v(rows);
  for (std::size_t i = 0; i < rows; ++i) v[i] = (*this)(i, j);
  return v;
}

Vec Mat::row(std::size_t i) const {
  Vec v(cols);
  for (std::size_t j = 0; j < cols; ++j) v[j] = (*this)(i, j);
  return v;
}

void Mat::set_col(std::size_t j, const Vec& v) {
  for (std::size_t i = 0; i < rows; ++i) (*this)(i, j) = v[i];
}

Mat Mat::transposed() const {
  Mat t(cols, rows);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) t(j, i) = (*this)(i, j);
  return t;
}

double dot(const Vec& a, const Vec& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const Vec& a) { return std::sqrt(dot(a, a)); }

Vec normalized(const Vec& a) {
  const double n = norm(a);
  if (n <= 0.0) fail(ErrorKind::NumericalFailure, "cannot normalize a zero vector");
  return scaled(a, 1.0 / n);
}

Vec sub(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

Vec add(const Vec& a, const Vec& b) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

Vec scaled(const Vec& a, double s) {
  Vec r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = a[i] * s;
  return r;
}

void axpy(double s, const Vec& x, Vec& y) {
  for (std::size_t i = 0; i < x.size(); ++i) y[i] += s * x[i];
}

Vec matvec(const Mat& m, const Vec& v) {
  Vec r(m.rows, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < m.cols; ++j) s += m(i, j) * v[j];
    r[i] = s;
  }
  return r;
}

Vec matvec_t(const Mat& m, const Vec& v) {
  Vec r(m.cols, 0.0);
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = 0; j < m.cols; ++j) r[j] += m(i, j) * v[i];
  return r;
}

Mat matmul(const Mat& a, const Mat& b) {
  Mat r(a.rows, b.cols);
  for (std::size_t i = 0; i < a.rows; ++i)
    for (std::size_t k = 0; k < a.cols; ++k) {
      const double aik = a(i, k);
      if (aik == 0.0) continue;
      for (std::size_t j = 0; j < b.cols; ++j) r(i, j) += aik * b(k, j);
    }
  return r;
}

double max_abs(const Mat& m) {
  double v = 0.0;
  for (double x : m.a) v = std::max(v, std::fabs(x));
  return v;
}

Vec basis_vector(std::size_t d, std::size_t i) {
  Vec v(d, 0.0);
  v[i] = 1.0;
  return v;
}

double angle_between(const Vec& a, const Vec& b) {
  const double na = norm(a);
  const double nb = norm(b);
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = std::clamp(dot(a, b) / (na * nb), -1.0, 1.0);
  return std::acos(c);
}

SymmetricMatrix::SymmetricMatrix(const Mat& m) : m_(m.rows, m.cols) {
  if (m.rows != m.cols || m.rows == 0) fail(ErrorKind::InternalInvariant, "symmetric matrix must be square and nonempty");
  for (std::size_t i = 0; i < m.rows; ++i)
    for (std::size_t j = i; j < m.cols; ++j) {
      const double v = 0.5 * (m(i, j) + m(j, i));
      m_(i, j) = v;
      m_(j, i) = v;
    }
}

SymmetricMatrix::SymmetricMatrix(std::size_t dim, const std::vector<double>& entries)
    : SymmetricMatrix([&] {
        Mat m(dim, dim);
        m.a = entries;
        return m;
      }()) {}

namespace {

constexpr int kJacobiSweepCap = 1000;

void sign_fix_columns(Mat& v) {
  for (std::size_t j = 0; j < v.cols; ++j) {
    for (std::size_t i = 0; i < v.rows; ++i) {
      const double x = v(i, j);
      if (std::fabs(x) > 1e-14) {
        if (x < 0.0)
          for (std::size_t k = 0; k < v.rows; ++k) v(k, j) = -v(k, j);
        break;
      }
    }
  }
}

}  // namespace

EigenDecomposition sym_eig(const SymmetricMatrix& s) {
  const std::size_t n = s.dim();
  Mat a = s.full();
  Mat v = Mat::identity(n);
  const double scale = std::max(1.0, max_abs(a));
  const double target = tol().eig_offdiag * scale;

  if (n > 1) {
    int sweep = 0;
    for (; sweep < kJacobiSweepCap; ++sweep) {
      double off = 0.0;
      for (std::size_t i = 0; i + 1 < n; ++i)
        for (std::size_t j = i + 1; j < n; ++j) off = std::max(off, std::fabs(a(i, j)));
      if (off <= target) break;
      for (std::size_t p = 0; p + 1 < n; ++p) {
        for (std::size_t q = p + 1; q < n; ++q) {
          const double apq = a(p, q);
          if (std::fabs(apq) <= target * 1e-2) continue;
          const double theta = (a(q, q) - a(p, p)) / (2.0 * apq);
          const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::fabs(theta) + std::sqrt(theta * theta + 1.0));
          const double c = 1.0 / std::sqrt(t * t + 1.0);
          const double sn = t * c;
          for (std::size_t k = 0; k < n; ++k) {
            const double akp = a(k, p);
            const double akq = a(k, q);
            a(k, p) = c * akp - sn * akq;
            a(k, q) = sn * akp + c * akq;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double apk = a(p, k);
            const double aqk = a(q, k);
            a(p, k) = c * apk - sn * aqk;
            a(q, k) = sn * apk + c * aqk;
          }
          for (std::size_t k = 0; k < n; ++k) {
            const double vkp = v(k, p);
            const double vkq = v(k, q);
            v(k, p) = c * vkp - sn * vkq;
            v(k, q) = sn * vkp + c * vkq;
          }
        }
      }
    }
    if (sweep == kJacobiSweepCap) fail(ErrorKind::NumericalFailure, "Jacobi iteration did not converge");
  }

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a(i, i) < a(j, j); });

  EigenDecomposition out;
  out.eigenvalues.resize(n);
  out.eigenvectors = Mat(n, n);
  for (std::size_t j = 0; j < n; ++j) {
    out.eigenvalues[j] = a(order[j], order[j]);
    out.eigenvectors.set_col(j, v.col(order[j]));
  }
  sign_fix_columns(out.eigenvectors);
  return out;
}

namespace {

std::vector<Vec> mgs(const std::vector<Vec>& vectors, bool drop_dependent) {
  std::vector<Vec> basis;
  for (const Vec& input : vectors) {
    Vec w = input;
    // Two passes of modified Gram-Schmidt.
    for (int pass = 0; pass < 2; ++pass)
      for (const Vec& u : basis) axpy(-dot(u, w), u, w);
    const double r = norm(w);
    if (r < tol().gs_rank * std::max(1.0, norm(input))) {
      if (drop_dependent) continue;
      fail(ErrorKind::DependentInput, "gram_schmidt: linearly dependent input");
    }
    basis.push_back(scaled(w, 1.0 / r));
  }
  return basis;
}

}  // namespace

std::vector<Vec> gram_schmidt(const std::vector<Vec>& vectors) {
  for (const Vec& v : vectors)
    if (norm(v) == 0.0) fail(ErrorKind::DependentInput, "gram_schmidt: zero input vector");
  return mgs(vectors, /*drop_dependent=*/false);
}

std::vector<Vec> orthonormalize_dropping(const std::vector<Vec>& vectors) {
  return mgs(vectors, /*drop_dependent=*/true);
}

Vec solve_linear(const Mat& a_in, const Vec& b_in) {
  if (a_in.rows != a_in.cols || a_in.rows != b_in.size())
    fail(ErrorKind::InternalInvariant, "solve_linear: dimension mismatch");
  const std::size_t n = a_in.rows;
  Mat a = a_in;
  Vec b = b_in;
  const double scale = std::max(1.0, max_abs(a));

  for (std::size_t k = 0; k < n; ++k) {
    std::size_t pivot = k;
    for (std::size_t i = k + 1; i < n; ++i)
      if (std::fabs(a(i, k)) > std::fabs(a(pivot, k))) pivot = i;
    if (std::fabs(a(pivot, k)) < tol().solve_pivot * scale)
      fail(ErrorKind::SingularSystem, "solve_linear: singular or near-singular system");
    if (pivot != k) {
      for (std::size_t j = 0; j < n; ++j) std::swap(a(k, j), a(pivot, j));
      std::swap(b[k], b[pivot]);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      const double f = a(i, k) / a(k, k);
      if (f == 0.0) continue;
      a(i, k) = 0.0;
      for (std::size_t j = k + 1; j < n; ++j) a(i, j) -= f * a(k, j);
      b[i] -= f * b[k];
    }
  }
  Vec x(n);
  for (std::size_t ii = n; ii-- > 0;) {
    double s = b[ii];
    for (std::size_t j = ii + 1; j < n; ++j) s -= a(ii, j) * x[j];
    x[ii] = s / a(ii, ii);
  }
  return x;
}

Vec project_onto_span(const std::vector<Vec>& basis, const Vec& v) {
  if (basis.empty()) return Vec(v.size(), 0.0);
  const std::vector<Vec> ortho = orthonormalize_dropping(basis);
  Vec p(v.size(), 0.0);
  for (const Vec& u : ortho) axpy(dot(u, v), u, p);
  return p;
}

namespace {

// Affine minimizer over the points indexed by `active`: minimize ||sum l_i q_i||
// subject to sum l_i = 1 (KKT system solved directly).
Vec affine_minimizer(const std::vector<Vec>& points, const std::vector<std::size_t>& active) {
  const std::size_t m = active.size();
  Mat k(m + 1, m + 1);
  Vec rhs(m + 1, 0.0);
  for (std::size_t i = 0; i < m; ++i) {
    for (std::size_t j = 0; j < m; ++j) k(i, j) = dot(points[active[i]], points[active[j]]);
    k(i, m) = 1.0;
    k(m, i) = 1.0;
  }
  rhs[m] = 1.0;
  Vec sol;
  try {
    sol = solve_linear(k, rhs);
  } catch (const Error&) {
    // Nearly affinely dependent active set: regularize slightly and retry.
    for (std::size_t i = 0; i < m; ++i) k(i, i) += 1e-13;
    sol = solve_linear(k, rhs);
  }
  sol.resize(m);
  return sol;
}

}  // namespace

MinNormPoint min_norm_point(const std::vector<Vec>& points) {
  if (points.empty()) fail(ErrorKind::InternalInvariant, "min_norm_point: empty point list");
  const std::size_t m = points.size();

  // Start from the shortest input point (lowest index on ties).
  std::size_t start = 0;
  for (std::size_t j = 1; j < m; ++j)
    if (norm(points[j]) < norm(points[start])) start = j;

  std::vector<std::size_t> active{start};
  Vec lambda{1.0};
  Vec x = points[start];

  const int major_cap = static_cast<int>(200 + 20 * m * std::max<std::size_t>(1, points[0].size()));
  for (int iter = 0; iter < major_cap; ++iter) {
    // Wolfe optimality check against all vertices.
    std::size_t best = 0;
    double best_val = dot(points[0], x);
    for (std::size_t j = 1; j < m; ++j) {
      const double v = dot(points[j], x);
      if (v < best_val - 1e-15) {
        best_val = v;
        best = j;
      }
    }
    const double xx = dot(x, x);
    if (best_val >= xx - 0.1 * tol().wolfe * std::max(1.0, xx)) break;

    if (std::find(active.begin(), active.end(), best) == active.end()) {
      active.push_back(best);
      lambda.push_back(0.0);
    }

    // Minor cycle: pull x to the affine minimizer, trimming negative weights.
    for (int minor = 0; minor < static_cast<int>(2 * m + 4); ++minor) {
      Vec mu = affine_minimizer(points, active);
      const double mu_min = *std::min_element(mu.begin(), mu.end());
      if (mu_min >= -1e-12) {
        lambda = mu;
        break;
      }
      double t = 1.0;
      for (std::size_t i = 0; i < active.size(); ++i)
        if (mu[i] < lambda[i]) t = std::min(t, lambda[i] / (lambda[i] - mu[i]));
      for (std::size_t i = 0; i < active.size(); ++i) lambda[i] += t * (mu[i] - lambda[i]);
      // Drop points whose weight hit zero (keep at least one).
      for (std::size_t i = active.size(); i-- > 0 && active.size() > 1;) {
        if (lambda[i] <= 1e-12) {
          active.erase(active.begin() + static_cast<std::ptrdiff_t>(i));
          lambda.erase(lambda.begin() + static_cast<std::ptrdiff_t>(i));
        }
      }
    }
    x.assign(points[0].size(), 0.0);
    for (std::size_t i = 0; i < active.size(); ++i) axpy(lambda[i], points[active[i]], x);
  }

  // Final certificate.
  const double xx = dot(x, x);
  for (std::size_t j = 0; j < m; ++j)
    if (dot(points[j], x) < xx - tol().wolfe)
      fail(ErrorKind::NumericalFailure, "min_norm_point: Wolfe certificate not reached");

  MinNormPoint out;
  out.point = x;
  out.weights.assign(m, 0.0);
  double wsum = 0.0;
  for (std::size_t i = 0; i < active.size(); ++i) {
    const double w = std::max(0.0, lambda[i]);
    out.weights[active[i]] += w;
    wsum += w;
  }
  if (wsum > 0.0)
    for (double& w : out.weights) w /= wsum;
  return out;
}

}  // namespace conelearn
