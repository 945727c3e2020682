#pragma once

namespace conelearn {

/// Numerical tolerances used across the library. Every threshold lives here so
/// tests can reference them symbolically. The environment variable
/// CONELEARN_TOL_SCALE (default 1) multiplies all of them.
struct Tolerances {
  double unit_norm = 1e-9;       // |  ||c|| - 1  | for unit vectors
  double eig_reconstruct = 1e-9; // || S - V L V' ||_max, relative to max(1, ||S||_max)
  double eig_orthonormal = 1e-10;
  double eig_offdiag = 1e-14;    // Jacobi sweep convergence target
  double gs_orthogonal = 1e-10;  // pairwise inner products after Gram-Schmidt
  double gs_unit = 1e-12;        // basis vector norm deviation
  double gs_rank = 1e-10;        // residual norm below which input is dependent
  double solve_residual = 1e-8;  // || Ax - b ||, relative to max(1, ||b||)
  double solve_pivot = 1e-12;    // pivot threshold, relative to matrix scale
  double wolfe = 1e-9;           // min-norm-point optimality certificate
  double tie = 1e-12;            // forward-problem tie detection
  double zero_difference = 1e-12;
  double expert_optimal = 1e-9;  // expert must be a minimizer within this
  double membership = 1e-9;      // halfspace membership slack
  double cone_membership = 1e-9; // ellipsoidal cone membership slack
  double u_orthonormal = 1e-9;   // || U'U - I ||_max hard bound
  double u_drift = 1e-10;        // re-orthonormalize above this
  double degenerate_cut = 1e-12; // || cut component off the axis ||
  double pointed = 1e-9;         // min-norm point below this: not pointed
  double min_sample_rate = 1e-6; // rejection sampling acceptance floor
};

/// Process-wide tolerance record, scaled once from CONELEARN_TOL_SCALE.
const Tolerances& tol();

}  // namespace conelearn
