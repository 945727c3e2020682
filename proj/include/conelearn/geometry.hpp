#pragma once

#include <cstddef>
#include <cstdint>
#include <variant>
#include <vector>

#include "conelearn/numerics.hpp"

namespace conelearn {

/// Vector on the unit sphere; the constructor enforces the norm invariant.
class UnitVector {
 public:
  explicit UnitVector(Vec coords);
  const Vec& coords() const { return coords_; }
  std::size_t dim() const { return coords_.size(); }

 private:
  Vec coords_;
};

/// All directions within `aperture` of `axis`; apertures are strictly below
/// pi/2.
struct RevolutionCone {
  RevolutionCone(UnitVector axis, double aperture);
  UnitVector axis;
  double aperture;
};

// Region variants.
struct Cap {
  RevolutionCone cone;
};
struct Generators {
  std::vector<Vec> dirs;  // unit vectors spanning the region conically
  bool pointed = false;   // caller asserts containment in an open halfspace
};
struct Halfspaces {
  std::vector<Vec> normals;  // h_i'c >= 0
};
struct FullSphere {
  std::size_t dim = 0;
};

using KnowledgeRegion = std::variant<FullSphere, Cap, Generators, Halfspaces>;

std::size_t region_dim(const KnowledgeRegion& region);
bool region_contains(const KnowledgeRegion& region, const Vec& c);

/// Angle between two vectors, with angle(c, 0) = 0 by convention.
double angle(const Vec& a, const Vec& b);

struct Circumcenter {
  Vec center;
  double uncertainty_angle = 0.0;
};

/// Axis and aperture of the smallest revolution cone containing the region.
/// Caps and the full sphere are immediate; pointed generator regions go
/// through the min-norm-point machinery. Halfspace regions and non-pointed
/// generator regions are unsupported.
Circumcenter circumcenter(const KnowledgeRegion& region);

/// Deterministic rejection sampling from the unit sphere; every returned
/// vector is re-checked for membership. Raises SamplingFailure when the
/// acceptance rate stays below the floor across the draw budget.
std::vector<Vec> sample_region(const KnowledgeRegion& region, std::size_t n, std::uint64_t seed);

}  // namespace conelearn
