#pragma once

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "conelearn/cones.hpp"
#include "conelearn/numerics.hpp"

namespace conelearn {

struct CheckResult {
  std::string name;
  double tolerance = 0.0;
  double observed = 0.0;
  bool pass = false;
};

/// Runs one of the property suites {geometry, cones, policies, adversary} or
/// "all", with fixed seeds and deterministic ordering.
std::vector<CheckResult> verify_suite(const std::string& suite);

std::string format_report(const std::vector<CheckResult>& results);
bool all_pass(const std::vector<CheckResult>& results);

// --- independent oracles shared by the verify suites and the test binaries --

/// Maximize fn over the unit sphere by seeded coarse sampling followed by
/// shrinking-cap refinement around the incumbent. Pure sampling; never calls
/// the solvers it is used to check.
struct SphereSearchResult {
  Vec argmax;
  double value = 0.0;
};
SphereSearchResult sphere_search_max(std::size_t d, const std::function<double(const Vec&)>& fn,
                                     std::size_t coarse_samples, std::size_t refine_rounds,
                                     std::uint64_t seed);

/// A point of E(W,U) at height one: U (1, x) with x drawn uniformly from the
/// cross-section ellipsoid.
Vec sample_cone_point(const EllipsoidalCone& cone, class Rng& rng);

/// Random cone with eigenvalues in [lo, hi] and a random orthonormal rotation.
EllipsoidalCone random_cone(std::size_t p, double lo, double hi, class Rng& rng);

/// Random unit sequence g_1..g_p whose running projection residuals all stay
/// at or above eta (the subspace-update filter).
std::vector<Vec> residual_filtered_sequence(std::size_t p, double eta, class Rng& rng);

}  // namespace conelearn
