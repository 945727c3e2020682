#include "conelearn/cones.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "conelearn/errors.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

EllipsoidalCone checked_cone(EllipsoidalCone cone) {
  if (cone.p == 0 || cone.u.rows != cone.p || cone.u.cols != cone.p)
    fail(ErrorKind::InternalInvariant, "cone: U must be p x p");
  if (cone.w.size() + 1 != cone.p)
    fail(ErrorKind::InternalInvariant, "cone: W must have p-1 entries");
  for (double v : cone.w)
    if (!(v > 0.0)) fail(ErrorKind::InternalInvariant, "cone: W entries must be positive");

  const Mat gram = matmul(cone.u.transposed(), cone.u);
  double drift = 0.0;
  for (std::size_t i = 0; i < cone.p; ++i)
    for (std::size_t j = 0; j < cone.p; ++j)
      drift = std::max(drift, std::fabs(gram(i, j) - (i == j ? 1.0 : 0.0)));
  if (drift > tol().u_drift) {
    std::vector<Vec> cols;
    for (std::size_t j = 0; j < cone.p; ++j) cols.push_back(cone.u.col(j));
    const auto ortho = gram_schmidt(cols);
    for (std::size_t j = 0; j < cone.p; ++j) cone.u.set_col(j, ortho[j]);
  }
  return cone;
}

bool cone_contains_with_slack(const EllipsoidalCone& cone, const Vec& c, double slack) {
  if (c.size() != cone.p) fail(ErrorKind::InternalInvariant, "cone_contains: dimension mismatch");
  if (cone.p == 1) {
    const double t = cone.u(0, 0) * c[0];
    return t >= -slack;
  }
  const Vec z = matvec_t(cone.u, c);
  if (z[0] < -slack) return false;
  double q = 0.0;
  for (std::size_t i = 1; i < cone.p; ++i) q += z[i] * z[i] / cone.w[i - 1];
  return q <= z[0] * z[0] + slack;
}

bool cone_contains(const EllipsoidalCone& cone, const Vec& c) {
  return cone_contains_with_slack(cone, c, tol().cone_membership);
}

double cone_angle(const EllipsoidalCone& cone) {
  if (cone.p == 1) return 0.0;
  return std::atan(std::sqrt(*std::max_element(cone.w.begin(), cone.w.end())));
}

EllipsoidalCone revolution_to_cone(double aperture, const Vec& axis) {
  if (aperture >= M_PI / 2.0) fail(ErrorKind::NotPointed, "revolution cone aperture must be below pi/2");
  if (!(aperture > 0.0)) fail(ErrorKind::InternalInvariant, "revolution cone aperture must be positive");
  const std::size_t p = axis.size();
  std::vector<Vec> seed{normalized(axis)};
  for (std::size_t i = 0; i < p; ++i) seed.push_back(basis_vector(p, i));
  const auto basis = orthonormalize_dropping(seed);
  if (basis.size() != p) fail(ErrorKind::NumericalFailure, "failed to complete an orthonormal basis");
  EllipsoidalCone cone;
  cone.p = p;
  cone.w.assign(p - 1, std::tan(aperture) * std::tan(aperture));
  cone.u = Mat(p, p);
  for (std::size_t j = 0; j < p; ++j) cone.u.set_col(j, basis[j]);
  return checked_cone(cone);
}

EllipsoidalCone cone_update(const Vec& w, const Mat& u, const Vec& delta, double eta,
                            const Mat& basis_rows, std::size_t p) {
  if (p < 2) fail(ErrorKind::InternalInvariant, "cone_update: p must be at least 2");
  if (eta < 0.0) fail(ErrorKind::InternalInvariant, "cone_update: eta must be nonnegative");
  if (w.size() + 1 != p) fail(ErrorKind::InternalInvariant, "cone_update: W size mismatch");

  const Vec mapped = matvec(basis_rows, delta);   // B delta, subspace coordinates
  const Vec dbar = matvec_t(u, mapped);           // U^-1 B delta
  if (dbar[0] > tol().membership)
    fail(ErrorKind::InternalInvariant, "cone_update: cut would discard the axis side");

  Vec s(dbar.begin() + 1, dbar.end());
  const double s_norm = norm(s);
  if (s_norm < tol().degenerate_cut)
    fail(ErrorKind::DegenerateCut, "cone_update: cut direction parallel to the axis");

  double q = 0.0;
  for (std::size_t i = 0; i + 1 < p; ++i) q += s[i] * s[i] * w[i];
  const double root_q = std::sqrt(q);
  if (eta > 0.0 && eta > root_q / (2.0 * static_cast<double>(p - 1)) * (1.0 + 1e-12))
    fail(ErrorKind::InternalInvariant, "cone_update: shallow-cut margin too large for this cut");

  const double beta = -eta / root_q;
  Vec b(p - 1);
  for (std::size_t i = 0; i + 1 < p; ++i) b[i] = w[i] * s[i] / root_q;
  const double pd = static_cast<double>(p);
  const Vec a = scaled(b, (1.0 + (pd - 1.0) * beta) / pd);

  // Lowner-John body of the cut cross-section at height one. The closed-form
  // coefficient is singular at p == 2, where the cross-section is an interval
  // and the minimal enclosing body is the kept subinterval itself.
  Mat n_mat(p - 1, p - 1);
  if (p == 2) {
    const double half = 0.5 * (1.0 - beta);
    n_mat(0, 0) = half * half * w[0];
  } else {
    const double coeff = (pd - 1.0) * (pd - 1.0) / ((pd - 1.0) * (pd - 1.0) - 1.0) * (1.0 - beta * beta);
    const double c2 = 2.0 * (1.0 + (pd - 1.0) * beta) / (pd * (1.0 + beta));
    for (std::size_t i = 0; i + 1 < p; ++i)
      for (std::size_t j = 0; j + 1 < p; ++j)
        n_mat(i, j) = coeff * ((i == j ? w[i] : 0.0) - c2 * b[i] * b[j]);
  }

  Mat m(p, p);
  m(0, 0) = 1.0;
  for (std::size_t i = 0; i + 1 < p; ++i) {
    m(0, i + 1) = a[i];
    m(i + 1, 0) = a[i];
    for (std::size_t j = 0; j + 1 < p; ++j) m(i + 1, j + 1) = a[i] * a[j] - n_mat(i, j);
  }

  const auto em = sym_eig(SymmetricMatrix(m));
  // Exactly one positive eigenvalue is expected; its eigenvector is the new
  // axis. The remaining columns are ordered by ascending magnitude of their
  // (negative) eigenvalues so they pair with the ascending eigenvalues of N.
  if (!(em.eigenvalues[p - 1] > 0.0) || !(em.eigenvalues[p - 2] < 0.0))
    fail(ErrorKind::NumericalFailure, "cone_update: unexpected inertia of the update matrix");

  Mat v(p, p);
  for (std::size_t j = 0; j < p; ++j) v.set_col(j, em.eigenvectors.col(p - 1 - j));

  // The axis must point into the updated body; (1, a) is its interior point.
  Vec interior(p);
  interior[0] = 1.0;
  for (std::size_t i = 0; i + 1 < p; ++i) interior[i + 1] = a[i];
  if (dot(v.col(0), interior) < 0.0) {
    Vec flipped = scaled(v.col(0), -1.0);
    v.set_col(0, flipped);
  }

  Vec w_new;
  if (p == 2) {
    w_new = {n_mat(0, 0)};
  } else {
    w_new = sym_eig(SymmetricMatrix(n_mat)).eigenvalues;
  }
  for (double lam : w_new)
    if (!(lam > 0.0)) fail(ErrorKind::NumericalFailure, "cone_update: updated body is not positive definite");

  EllipsoidalCone out;
  out.p = p;
  out.w = w_new;
  out.u = matmul(u, v);
  return checked_cone(out);
}

RayCircumcenter ray_circumcenter(const std::vector<Vec>& unit_rays) {
  if (unit_rays.empty()) fail(ErrorKind::InternalInvariant, "ray_circumcenter: empty ray list");
  const auto mn = min_norm_point(unit_rays);
  if (norm(mn.point) <= tol().pointed)
    fail(ErrorKind::NotPointed, "ray_circumcenter: hull contains the origin");
  RayCircumcenter out;
  out.center = normalized(mn.point);
  for (const Vec& g : unit_rays) out.max_angle = std::max(out.max_angle, angle_between(g, out.center));
  return out;
}

PolyCenterResult poly_center_full(const std::vector<Vec>& deltas, const Mat& basis_rows,
                                  std::size_t p) {
  if (deltas.size() != p)
    fail(ErrorKind::DependentInput, "poly_center: need exactly p directions");
  std::vector<Vec> mapped;
  for (const Vec& d : deltas) mapped.push_back(matvec(basis_rows, d));
  if (orthonormalize_dropping(mapped).size() != p)
    fail(ErrorKind::DependentInput, "poly_center: directions are dependent in the subspace");

  Vec zsum(p, 0.0);
  for (const Vec& d : mapped) axpy(1.0, d, zsum);
  const Vec z = normalized(zsum);

  PolyCenterResult out;
  for (std::size_t k = 0; k < p; ++k) {
    Mat sys(p, p);
    Vec rhs(p, 0.0);
    for (std::size_t j = 0; j < p; ++j) sys(0, j) = z[j];
    rhs[0] = 1.0;
    std::size_t row = 1;
    for (std::size_t i = 0; i < p; ++i) {
      if (i == k) continue;
      for (std::size_t j = 0; j < p; ++j) sys(row, j) = mapped[i][j];
      ++row;
    }
    out.rays.push_back(normalized(solve_linear(sys, rhs)));
  }

  const auto rc = ray_circumcenter(out.rays);
  out.center = rc.center;
  out.max_ray_angle = rc.max_angle;
  for (const Vec& d : mapped)
    if (dot(d, out.center) < -tol().membership)
      fail(ErrorKind::InternalInvariant, "poly_center: center violates a defining halfspace");
  return out;
}

Vec poly_center(const std::vector<Vec>& deltas, const Mat& basis_rows, std::size_t p) {
  return poly_center_full(deltas, basis_rows, p).center;
}

double polyhedral_angle_bound(double eta, std::size_t d) {
  if (!(eta > 0.0) || eta > 1.0) fail(ErrorKind::InternalInvariant, "polyhedral_angle_bound: eta must be in (0,1]");
  if (d < 2) fail(ErrorKind::InternalInvariant, "polyhedral_angle_bound: d must be at least 2");
  const double dd = static_cast<double>(d);
  return std::acos(std::pow(eta, dd - 1.0) / std::pow(dd, 1.5));
}

InradiusDiagnostics inradius_diagnostics(const Mat& unit_columns, std::size_t p) {
  if (unit_columns.cols != p || unit_columns.rows != p)
    fail(ErrorKind::InternalInvariant, "inradius_diagnostics: expected a p x p generator matrix");
  std::vector<Vec> cols;
  for (std::size_t j = 0; j < p; ++j) cols.push_back(unit_columns.col(j));
  if (orthonormalize_dropping(cols).size() != p)
    fail(ErrorKind::DependentInput, "inradius_diagnostics: rank-deficient generators");

  const Mat gram = matmul(unit_columns.transposed(), unit_columns);
  const auto eg = sym_eig(SymmetricMatrix(gram));
  const double lmin = eg.eigenvalues.front();
  const double lmax = eg.eigenvalues.back();
  if (!(lmin > 0.0)) fail(ErrorKind::DependentInput, "inradius_diagnostics: Gram matrix not positive definite");

  InradiusDiagnostics out;
  out.rho_lower = std::sqrt(lmin / lmax) / std::sqrt(static_cast<double>(p));
  out.phi = std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < p; ++i) {
    std::vector<Vec> others;
    for (std::size_t j = 0; j < p; ++j)
      if (j != i) others.push_back(cols[j]);
    const Vec proj = project_onto_span(others, cols[i]);
    out.phi = std::min(out.phi, norm(sub(cols[i], proj)));
  }
  out.cond_upper = (static_cast<double>(p) / out.phi) * (static_cast<double>(p) / out.phi);
  return out;
}

}  // namespace conelearn
