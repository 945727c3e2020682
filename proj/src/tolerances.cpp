#include "conelearn/tolerances.hpp"

#include <cstdlib>
#include <initializer_list>

namespace conelearn {

namespace {

Tolerances make_scaled() {
  Tolerances t;
  double scale = 1.0;
  if (const char* env = std::getenv("CONELEARN_TOL_SCALE")) {
    char* end = nullptr;
    double parsed = std::strtod(env, &end);
    if (end != env && parsed > 0.0) scale = parsed;
  }
  for (double* field : {&t.unit_norm, &t.eig_reconstruct, &t.eig_orthonormal, &t.eig_offdiag,
                        &t.gs_orthogonal, &t.gs_unit, &t.gs_rank, &t.solve_residual,
                        &t.solve_pivot, &t.wolfe, &t.tie, &t.zero_difference, &t.expert_optimal,
                        &t.membership, &t.cone_membership, &t.u_orthonormal, &t.u_drift,
                        &t.degenerate_cut, &t.pointed, &t.min_sample_rate}) {
    *field *= scale;
  }
  return t;
}

}  // namespace

const Tolerances& tol() {
  static const Tolerances t = make_scaled();
  return t;
}

}  // namespace conelearn
