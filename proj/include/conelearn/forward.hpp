#pragma once

#include <cstddef>
#include <vector>

#include "conelearn/geometry.hpp"
#include "conelearn/numerics.hpp"

namespace conelearn {

/// One-period problem: the finite list of feature vectors of the feasible
/// actions. Pairwise distances are bounded by one (unit diameter, 1-Lipschitz
/// context), checked at construction.
struct Instance {
  explicit Instance(std::vector<Vec> feature_rows);
  std::vector<Vec> features;
  std::size_t size() const { return features.size(); }
  std::size_t dim() const { return features.front().size(); }
};

struct Feedback {
  Instance instance;
  std::size_t expert_index;
  std::size_t chosen_index;
};

/// Accumulated consistency information: the initial region plus one halfspace
/// v'c >= 0 per observed action-difference, with the single normalized
/// per-period difference kept on a separate relaxed track.
struct KnowledgeState {
  KnowledgeRegion initial;
  std::vector<Vec> full_constraints;
  std::vector<Vec> relaxed_constraints;
};

struct TieBreak {
  enum class Kind { FirstIndex, AdversarialAgainst };
  Kind kind = Kind::FirstIndex;
  Vec c_star;  // used by AdversarialAgainst

  static TieBreak first() { return {Kind::FirstIndex, {}}; }
  static TieBreak adversarial(Vec c_star_in) { return {Kind::AdversarialAgainst, std::move(c_star_in)}; }
};

/// argmin over actions of f(x)'c. Ties within the tie tolerance break to the
/// lowest index, or, adversarially, to the minimizer that maximizes the regret
/// against the supplied true cost.
std::size_t forward_solve(const Vec& c, const Instance& instance, const TieBreak& tiebreak);

/// (f(chosen) - f(expert))'c_star; the expert must be optimal for c_star.
double regret(const Instance& instance, std::size_t chosen, std::size_t expert, const Vec& c_star);

/// One-period worst case as a function of the proxy/true angle: sin(theta)
/// below pi/2, one beyond.
double worst_case_loss(double theta);

/// Normalized chosen-minus-expert feature difference; zero when the features
/// coincide.
Vec effective_difference(const Feedback& feedback);

KnowledgeState update_knowledge(KnowledgeState state, const Feedback& feedback);

/// c in the initial region and on the consistent side of every stored
/// halfspace.
bool membership(const KnowledgeState& state, const Vec& c);

}  // namespace conelearn
