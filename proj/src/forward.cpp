#include "conelearn/forward.hpp"

#include <cmath>
#include <limits>

#include "conelearn/errors.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

Instance::Instance(std::vector<Vec> feature_rows) : features(std::move(feature_rows)) {
  if (features.empty()) fail(ErrorKind::InternalInvariant, "instance must have at least one action");
  const std::size_t d = features.front().size();
  for (const Vec& f : features)
    if (f.size() != d) fail(ErrorKind::InternalInvariant, "instance features must share a dimension");
  for (std::size_t i = 0; i < features.size(); ++i)
    for (std::size_t j = i + 1; j < features.size(); ++j)
      if (norm(sub(features[i], features[j])) > 1.0 + tol().unit_norm)
        fail(ErrorKind::InternalInvariant, "instance features exceed unit diameter");
}

std::size_t forward_solve(const Vec& c, const Instance& instance, const TieBreak& tiebreak) {
  double best = std::numeric_limits<double>::infinity();
  for (const Vec& f : instance.features) best = std::min(best, dot(f, c));

  std::vector<std::size_t> ties;
  for (std::size_t j = 0; j < instance.size(); ++j)
    if (dot(instance.features[j], c) <= best + tol().tie) ties.push_back(j);

  if (tiebreak.kind == TieBreak::Kind::FirstIndex || ties.size() == 1) return ties.front();

  const std::size_t expert = forward_solve(tiebreak.c_star, instance, TieBreak::first());
  std::size_t pick = ties.front();
  double worst = -std::numeric_limits<double>::infinity();
  for (std::size_t j : ties) {
    const double r = dot(sub(instance.features[j], instance.features[expert]), tiebreak.c_star);
    if (r > worst + tol().tie) {
      worst = r;
      pick = j;
    }
  }
  return pick;
}

double regret(const Instance& instance, std::size_t chosen, std::size_t expert, const Vec& c_star) {
  if (chosen >= instance.size() || expert >= instance.size())
    fail(ErrorKind::InternalInvariant, "regret: action index out of range");
  const double expert_value = dot(instance.features[expert], c_star);
  for (const Vec& f : instance.features)
    if (dot(f, c_star) < expert_value - tol().expert_optimal)
      fail(ErrorKind::InconsistentFeedback, "regret: expert action is not optimal for the given cost");
  return dot(sub(instance.features[chosen], instance.features[expert]), c_star);
}

double worst_case_loss(double theta) {
  if (theta < 0.0 || theta > M_PI + 1e-12)
    fail(ErrorKind::InternalInvariant, "worst_case_loss: angle must lie in [0, pi]");
  return theta < M_PI / 2.0 ? std::sin(theta) : 1.0;
}

Vec effective_difference(const Feedback& feedback) {
  const Vec diff = sub(feedback.instance.features[feedback.chosen_index],
                       feedback.instance.features[feedback.expert_index]);
  const double n = norm(diff);
  if (n <= tol().zero_difference) return Vec(diff.size(), 0.0);
  return scaled(diff, 1.0 / n);
}

KnowledgeState update_knowledge(KnowledgeState state, const Feedback& feedback) {
  const Vec& expert = feedback.instance.features[feedback.expert_index];
  for (const Vec& f : feedback.instance.features) state.full_constraints.push_back(sub(f, expert));
  const Vec delta = effective_difference(feedback);
  if (norm(delta) > 0.0) state.relaxed_constraints.push_back(delta);
  return state;
}

bool membership(const KnowledgeState& state, const Vec& c) {
  if (!region_contains(state.initial, c)) return false;
  for (const Vec& v : state.full_constraints)
    if (dot(v, c) < -tol().membership) return false;
  return true;
}

}  // namespace conelearn
