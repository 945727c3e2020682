#pragma once

#include <cstddef>
#include <vector>

#include "conelearn/numerics.hpp"

namespace conelearn {

/// Knowledge superset: the rotation by U of the standard-position cone
/// { c : c_[2:p]' W^{-1} c_[2:p] <= c_[1]^2, c_[1] >= 0 }. W holds the diagonal
/// (squared semi-axes of the cross-section at height 1), U holds orthonormal
/// columns with the cone axis in column one. For p == 1 the cone degenerates
/// to the ray along the single column of U and W is empty.
struct EllipsoidalCone {
  std::size_t p = 0;
  Vec w;  // length p-1, strictly positive
  Mat u;  // p x p orthonormal columns

  Vec axis() const { return u.col(0); }
};

/// Validates the invariants (positive W, orthonormal U) and re-orthonormalizes
/// U when its drift exceeds the threshold.
EllipsoidalCone checked_cone(EllipsoidalCone cone);

bool cone_contains(const EllipsoidalCone& cone, const Vec& c);
bool cone_contains_with_slack(const EllipsoidalCone& cone, const Vec& c, double slack);

/// Uncertainty angle arctan(sqrt(lambda_max(W))); 0 for a ray.
double cone_angle(const EllipsoidalCone& cone);

/// Revolution cone with the given axis and aperture in (0, pi/2):
/// W = tan^2(aperture) I, first column of U is the axis.
EllipsoidalCone revolution_to_cone(double aperture, const Vec& axis);

/// One knowledge-cone update: cuts E(W,U) with the halfspace induced by
/// `delta` (ambient coordinates, mapped through the subspace basis B), keeping
/// the side containing consistent costs, with shallow-cut margin eta >= 0.
/// Preconditions: the cut must not discard the axis side (delta'(B'Ue1) <= 0)
/// and, for eta > 0, eta <= sqrt(q)/(2(p-1)) where q is the cut's quadratic
/// form. A cut parallel to the axis raises DegenerateCut.
EllipsoidalCone cone_update(const Vec& w, const Mat& u, const Vec& delta, double eta,
                            const Mat& basis_rows, std::size_t p);

/// Circumcenter of the conic hull of finitely many unit rays: the normalized
/// minimum-norm point of their convex hull, paired with the max angle from the
/// center to any ray. Raises NotPointed when the hull contains the origin.
struct RayCircumcenter {
  Vec center;
  double max_angle = 0.0;
};
RayCircumcenter ray_circumcenter(const std::vector<Vec>& unit_rays);

/// Circumcenter of the polyhedral cone { c : delta_i'c >= 0 } inside the
/// subspace spanned by the rows of B. Builds the cone's extreme rays from the
/// linear systems through the normalized constraint sum, then takes the ray
/// circumcenter. `rays` are reported for diagnostics.
struct PolyCenterResult {
  Vec center;                // in subspace coordinates (R^p)
  std::vector<Vec> rays;     // extreme rays q_k, unit norm
  double max_ray_angle = 0;  // max angle from center to a ray
};
PolyCenterResult poly_center_full(const std::vector<Vec>& deltas, const Mat& basis_rows,
                                  std::size_t p);
Vec poly_center(const std::vector<Vec>& deltas, const Mat& basis_rows, std::size_t p);

/// arccos(eta^(d-1) / d^(3/2)): aperture guarantee for polyhedral cones built
/// from residual-filtered directions.
double polyhedral_angle_bound(double eta, std::size_t d);

/// Lower bound machinery for simplicial cones spanned by the unit columns of
/// G: inradius bound (1/sqrt(p)) sqrt(lmin/lmax) of the Gram matrix, the
/// minimal leave-one-out projection residual phi, and the Gram condition
/// number bound (p/phi)^2.
struct InradiusDiagnostics {
  double rho_lower = 0.0;
  double cond_upper = 0.0;
  double phi = 0.0;
};
InradiusDiagnostics inradius_diagnostics(const Mat& unit_columns, std::size_t p);

}  // namespace conelearn
