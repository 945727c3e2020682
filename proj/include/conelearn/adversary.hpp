#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "conelearn/forward.hpp"
#include "conelearn/geometry.hpp"

namespace conelearn {

struct PeriodOutcome {
  Instance instance;
  std::size_t chosen;
  std::size_t expert;
};
using History = std::vector<PeriodOutcome>;

/// Nature: a true cost, an initial region containing it, and a per-period
/// instance stream. The stream receives the realized history so closed-loop
/// adversaries fit the same interface; the built-in ones are open loop.
struct Environment {
  Vec c_star;
  KnowledgeRegion initial_region;
  std::function<Instance(std::size_t t, const History& history)> next_instance;
  std::function<std::optional<std::size_t>(std::size_t t)> expert_override;  // replay files
  std::string name;
};

/// Worst-case family for the repeated circumcenter policy in R^3: a flat
/// three-generator region whose circumcenter sits on its boundary, probed by
/// two-action instances that drift just past the circumcenter.
Environment greedy_killer(double alpha_bar, std::size_t T, std::size_t d = 3);

/// Normalized generators of the region this family reaches after accumulating
/// the constraint with offset eps.
std::vector<Vec> killer_generators(double alpha_bar, double eps);

/// Single-period instance that makes any policy realize regret sin(aperture)
/// on a cap region under adversarial tie-breaking.
Environment offline_tight(const Cap& region);

enum class CStarMode { Uniform, Boundary };

/// Non-adversarial stress stream: k feature vectors per period drawn from a
/// diameter-one ball, true cost drawn once from the initial region.
Environment random_pairs(std::size_t d, std::size_t k_actions, std::uint64_t seed, CStarMode mode,
                         const KnowledgeRegion& initial_region);

/// JSON Lines replay: one object per period with "t", "features" and an
/// optional "expert" (recomputed from the true cost when absent).
Environment replay_environment(const std::string& path, std::optional<Vec> c_star_override);

}  // namespace conelearn
