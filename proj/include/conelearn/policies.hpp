#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <vector>

#include "conelearn/cones.hpp"
#include "conelearn/forward.hpp"
#include "conelearn/geometry.hpp"

namespace conelearn {

struct PolicyParams {
  double epsilon = 0.0;  // low-regret threshold
  double eta = 0.0;      // subspace / shallow-cut margin

  static PolicyParams defaults(std::size_t d, std::size_t T);
  void validate(bool needs_eta) const;
};

enum class PeriodKind { LowRegret, ConeUpdate, SubspaceUpdate, ZeroDifference };

const char* period_kind_name(PeriodKind kind);

/// Repeated circumcenter policy. Acts with the circumcenter of the current
/// region and intersects the region with every consistency halfspace after
/// feedback. Acting is supported for caps (until the first constraint
/// arrives) and for pointed generator regions, which are maintained in closed
/// form under halfspace cuts.
class GreedyPolicy {
 public:
  explicit GreedyPolicy(KnowledgeRegion initial);

  Vec proxy_cost() const;
  std::size_t act(const Instance& instance, const TieBreak& tiebreak) const;
  void observe(const Feedback& feedback);

  const KnowledgeRegion& region() const { return current_; }
  const std::vector<Vec>& halfspaces() const { return halfspaces_; }

 private:
  void cut_generators(const Vec& h);

  KnowledgeRegion current_;
  std::vector<Vec> halfspaces_;
  bool generator_track_;
};

/// Pointed-case policy: a revolution cone around the initial circumcenter,
/// updated by central cuts whenever the observed difference certifies more
/// than epsilon regret.
class EllipsoidalConesPolicy {
 public:
  EllipsoidalConesPolicy(EllipsoidalCone initial, PolicyParams params);
  static EllipsoidalConesPolicy from_region(const KnowledgeRegion& region, PolicyParams params);

  Vec proxy_cost() const { return cone_.axis(); }
  std::size_t act(const Instance& instance, const TieBreak& tiebreak) const;
  PeriodKind observe(const Feedback& feedback);

  const EllipsoidalCone& cone() const { return cone_; }
  const PolicyParams& params() const { return params_; }
  double lambda_max() const;
  double lambda_min() const;
  std::size_t cone_updates() const { return cone_updates_; }

 private:
  EllipsoidalCone cone_;
  PolicyParams params_;
  std::size_t cone_updates_ = 0;
};

/// General-case policy: tracks the subspace spanned by the informative
/// differences, runs the pointed-case machinery with shallow cuts inside it,
/// and grows the subspace when a difference has a large residual.
class ProjectedConesPolicy {
 public:
  ProjectedConesPolicy(std::size_t d, PolicyParams params);

  Vec proxy_cost() const;
  std::size_t act(const Instance& instance, const TieBreak& tiebreak) const;
  PeriodKind observe(const Feedback& feedback);

  std::size_t dim() const { return d_; }
  std::size_t subspace_dim() const { return p_; }
  std::size_t subspace_updates() const { return tau_.size(); }
  const std::vector<std::size_t>& tau() const { return tau_; }
  const std::vector<Vec>& tau_deltas() const { return tau_deltas_; }
  const Mat& basis_rows() const { return basis_; }
  const std::optional<EllipsoidalCone>& cone() const { return cone_; }
  std::optional<double> lambda_max() const;
  const std::map<std::size_t, std::size_t>& cone_updates_per_dim() const { return cone_updates_per_dim_; }
  const PolicyParams& params() const { return params_; }

  /// Coordinates of c in the current subspace basis (length p).
  Vec subspace_coordinates(const Vec& c) const;
  /// Aperture of the revolution cone installed at the last subspace update.
  std::optional<double> last_restart_max_angle() const { return last_restart_max_angle_; }

 private:
  std::size_t d_;
  PolicyParams params_;
  std::size_t p_ = 0;
  std::size_t period_ = 0;
  std::vector<std::size_t> tau_;
  std::vector<Vec> tau_deltas_;
  Mat basis_;  // p x d orthonormal rows
  Vec ray_;    // axis while p == 1
  std::optional<EllipsoidalCone> cone_;
  std::map<std::size_t, std::size_t> cone_updates_per_dim_;
  std::optional<double> last_restart_max_angle_;
};

}  // namespace conelearn
