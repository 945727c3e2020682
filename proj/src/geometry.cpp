#include "conelearn/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "conelearn/cones.hpp"
#include "conelearn/errors.hpp"
#include "conelearn/rng.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

UnitVector::UnitVector(Vec coords) : coords_(std::move(coords)) {
  if (coords_.empty()) fail(ErrorKind::InternalInvariant, "unit vector must be nonempty");
  if (std::fabs(norm(coords_) - 1.0) > tol().unit_norm)
    fail(ErrorKind::InternalInvariant, "vector is not unit norm");
}

RevolutionCone::RevolutionCone(UnitVector axis_in, double aperture_in)
    : axis(std::move(axis_in)), aperture(aperture_in) {
  if (!(aperture >= 0.0) || aperture >= M_PI / 2.0)
    fail(ErrorKind::NotPointed, "revolution cone aperture must lie in [0, pi/2)");
}

double angle(const Vec& a, const Vec& b) { return angle_between(a, b); }

std::size_t region_dim(const KnowledgeRegion& region) {
  return std::visit(
      [](const auto& r) -> std::size_t {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Cap>) return r.cone.axis.dim();
        if constexpr (std::is_same_v<T, Generators>) return r.dirs.front().size();
        if constexpr (std::is_same_v<T, Halfspaces>) return r.normals.front().size();
        if constexpr (std::is_same_v<T, FullSphere>) return r.dim;
      },
      region);
}

namespace {

// Nonnegative least squares (Lawson-Hanson active set), used for membership
// in finitely generated cones.
Vec nnls(const std::vector<Vec>& cols, const Vec& b) {
  const std::size_t m = cols.size();
  Vec lambda(m, 0.0);
  std::vector<std::size_t> passive;
  Vec residual = b;
  for (std::size_t outer = 0; outer < 4 * m + 8; ++outer) {
    std::size_t best = m;
    double best_w = 1e-12;
    for (std::size_t j = 0; j < m; ++j) {
      if (std::find(passive.begin(), passive.end(), j) != passive.end()) continue;
      const double wj = dot(cols[j], residual);
      if (wj > best_w) {
        best_w = wj;
        best = j;
      }
    }
    if (best == m) break;
    passive.push_back(best);
    for (std::size_t inner = 0; inner < 4 * m + 8; ++inner) {
      const std::size_t k = passive.size();
      Mat gram(k, k);
      Vec rhs(k);
      for (std::size_t i = 0; i < k; ++i) {
        for (std::size_t j = 0; j < k; ++j) gram(i, j) = dot(cols[passive[i]], cols[passive[j]]);
        gram(i, i) += 1e-13;
        rhs[i] = dot(cols[passive[i]], b);
      }
      const Vec sol = solve_linear(gram, rhs);
      const double smin = *std::min_element(sol.begin(), sol.end());
      if (smin > -1e-12) {
        for (double& l : lambda) l = 0.0;
        for (std::size_t i = 0; i < k; ++i) lambda[passive[i]] = std::max(0.0, sol[i]);
        break;
      }
      double alpha = 1.0;
      for (std::size_t i = 0; i < k; ++i)
        if (sol[i] <= 0.0) alpha = std::min(alpha, lambda[passive[i]] / (lambda[passive[i]] - sol[i]));
      for (std::size_t i = 0; i < k; ++i)
        lambda[passive[i]] += alpha * (sol[i] - lambda[passive[i]]);
      for (std::size_t i = passive.size(); i-- > 0;)
        if (lambda[passive[i]] <= 1e-14) passive.erase(passive.begin() + static_cast<std::ptrdiff_t>(i));
    }
    residual = b;
    for (std::size_t j = 0; j < m; ++j)
      if (lambda[j] != 0.0) axpy(-lambda[j], cols[j], residual);
  }
  return lambda;
}

bool in_conic_hull(const std::vector<Vec>& gens, const Vec& c) {
  const Vec lambda = nnls(gens, c);
  Vec reconstructed(c.size(), 0.0);
  for (std::size_t j = 0; j < gens.size(); ++j) axpy(lambda[j], gens[j], reconstructed);
  return norm(sub(reconstructed, c)) <= 1e-8 * std::max(1.0, norm(c));
}

}  // namespace

bool region_contains(const KnowledgeRegion& region, const Vec& c) {
  return std::visit(
      [&](const auto& r) -> bool {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Cap>) {
          return angle(r.cone.axis.coords(), c) <= r.cone.aperture + tol().membership;
        }
        if constexpr (std::is_same_v<T, Generators>) {
          return in_conic_hull(r.dirs, c);
        }
        if constexpr (std::is_same_v<T, Halfspaces>) {
          for (const Vec& h : r.normals)
            if (dot(h, c) < -tol().membership) return false;
          return true;
        }
        if constexpr (std::is_same_v<T, FullSphere>) {
          (void)r;
          return true;
        }
      },
      region);
}

Circumcenter circumcenter(const KnowledgeRegion& region) {
  return std::visit(
      [](const auto& r) -> Circumcenter {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Cap>) {
          return {r.cone.axis.coords(), r.cone.aperture};
        } else if constexpr (std::is_same_v<T, Generators>) {
          if (r.dirs.empty()) fail(ErrorKind::InternalInvariant, "circumcenter: empty generator list");
          for (const Vec& g : r.dirs)
            if (std::fabs(norm(g) - 1.0) > tol().unit_norm)
              fail(ErrorKind::InternalInvariant, "circumcenter: generators must be unit norm");
          RayCircumcenter rc;
          try {
            rc = ray_circumcenter(r.dirs);
          } catch (const Error& e) {
            if (e.kind() == ErrorKind::NotPointed && !r.pointed)
              fail(ErrorKind::UnsupportedRepresentation,
                   "circumcenter: non-pointed generator region has no supported center");
            throw;
          }
          return {rc.center, rc.max_angle};
        } else if constexpr (std::is_same_v<T, Halfspaces>) {
          fail(ErrorKind::UnsupportedRepresentation,
               "circumcenter: halfspace regions have no supported center");
        } else {
          return {basis_vector(r.dim, 0), M_PI};
        }
      },
      region);
}

std::vector<Vec> sample_region(const KnowledgeRegion& region, std::size_t n, std::uint64_t seed) {
  std::visit(
      [](const auto& r) {
        using T = std::decay_t<decltype(r)>;
        if constexpr (std::is_same_v<T, Cap>) {
          if (!(r.cone.aperture > 0.0))
            fail(ErrorKind::InternalInvariant, "sample_region: cap must have positive aperture");
        } else if constexpr (std::is_same_v<T, Generators>) {
          if (r.dirs.size() < 2)
            fail(ErrorKind::InternalInvariant, "sample_region: need at least two generators");
        }
      },
      region);

  const std::size_t d = region_dim(region);
  Rng rng(seed);
  std::vector<Vec> out;
  out.reserve(n);
  constexpr std::uint64_t kDrawCap = 10'000'000;
  std::uint64_t draws = 0;
  while (out.size() < n) {
    if (draws >= kDrawCap) {
      const double rate = static_cast<double>(out.size()) / static_cast<double>(draws);
      if (rate < tol().min_sample_rate)
        fail(ErrorKind::SamplingFailure, "sample_region: acceptance rate below the floor");
      fail(ErrorKind::SamplingFailure, "sample_region: draw budget exhausted");
    }
    ++draws;
    Vec c = rng.unit_vector(d);
    if (region_contains(region, c)) out.push_back(std::move(c));
  }
  return out;
}

}  // namespace conelearn
