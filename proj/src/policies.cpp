#include "conelearn/policies.hpp"

#include <algorithm>
#include <cmath>

#include "conelearn/errors.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

PolicyParams PolicyParams::defaults(std::size_t d, std::size_t T) {
  PolicyParams p;
  p.epsilon = static_cast<double>(d) / static_cast<double>(T);
  p.eta = p.epsilon / (2.0 * static_cast<double>(d));
  return p;
}

void PolicyParams::validate(bool needs_eta) const {
  if (!(epsilon > 0.0)) fail(ErrorKind::ConfigError, "epsilon must be positive");
  if (needs_eta && !(eta > 0.0)) fail(ErrorKind::ConfigError, "eta must be positive");
  if (eta > epsilon) fail(ErrorKind::ConfigError, "eta must not exceed epsilon");
}

const char* period_kind_name(PeriodKind kind) {
  switch (kind) {
    case PeriodKind::LowRegret: return "low_regret";
    case PeriodKind::ConeUpdate: return "cone_update";
    case PeriodKind::SubspaceUpdate: return "subspace_update";
    case PeriodKind::ZeroDifference: return "zero_difference";
  }
  return "unknown";
}

// --- GreedyPolicy -----------------------------------------------------------

GreedyPolicy::GreedyPolicy(KnowledgeRegion initial)
    : current_(std::move(initial)), generator_track_(std::holds_alternative<Generators>(current_)) {}

Vec GreedyPolicy::proxy_cost() const {
  if (!generator_track_ && !halfspaces_.empty())
    fail(ErrorKind::UnsupportedRepresentation,
         "greedy: acting on a cap with accumulated halfspaces is unsupported");
  return circumcenter(current_).center;
}

std::size_t GreedyPolicy::act(const Instance& instance, const TieBreak& tiebreak) const {
  return forward_solve(proxy_cost(), instance, tiebreak);
}

void GreedyPolicy::cut_generators(const Vec& h) {
  auto& gens = std::get<Generators>(current_).dirs;
  std::vector<Vec> keep, drop;
  std::vector<double> keep_val, drop_val;
  for (const Vec& g : gens) {
    const double v = dot(h, g);
    if (v >= -tol().tie) {
      keep.push_back(g);
      keep_val.push_back(v);
    } else {
      drop.push_back(g);
      drop_val.push_back(v);
    }
  }
  if (drop.empty()) return;  // the halfspace does not cut the cone
  if (keep.empty())
    fail(ErrorKind::InternalInvariant, "greedy: halfspace removed the whole generator cone");

  // Double-description step: kept rays plus the cut points of every crossing
  // pair, deduplicated.
  std::vector<Vec> next = keep;
  for (std::size_t i = 0; i < keep.size(); ++i) {
    if (keep_val[i] <= tol().tie) continue;  // ray lies on the cut plane
    for (std::size_t j = 0; j < drop.size(); ++j) {
      Vec mix = scaled(drop[j], keep_val[i]);
      axpy(-drop_val[j], keep[i], mix);
      const double n = norm(mix);
      if (n <= tol().degenerate_cut) continue;
      mix = scaled(mix, 1.0 / n);
      bool duplicate = false;
      for (const Vec& g : next)
        if (norm(sub(g, mix)) <= 1e-10) {
          duplicate = true;
          break;
        }
      if (!duplicate) next.push_back(std::move(mix));
    }
  }
  gens = std::move(next);
}

void GreedyPolicy::observe(const Feedback& feedback) {
  const Vec& expert = feedback.instance.features[feedback.expert_index];
  for (const Vec& f : feedback.instance.features) {
    Vec h = sub(f, expert);
    if (norm(h) <= tol().zero_difference) continue;
    halfspaces_.push_back(h);
    if (generator_track_) cut_generators(h);
  }
}

// --- EllipsoidalConesPolicy -------------------------------------------------

EllipsoidalConesPolicy::EllipsoidalConesPolicy(EllipsoidalCone initial, PolicyParams params)
    : cone_(checked_cone(std::move(initial))), params_(params) {
  params_.validate(/*needs_eta=*/false);
  if (cone_.p < 2) fail(ErrorKind::ConfigError, "ellipsoidal policy needs dimension at least 2");
}

EllipsoidalConesPolicy EllipsoidalConesPolicy::from_region(const KnowledgeRegion& region,
                                                           PolicyParams params) {
  const Circumcenter cc = circumcenter(region);
  if (cc.uncertainty_angle >= M_PI / 2.0)
    fail(ErrorKind::NotPointed, "ellipsoidal policy requires a pointed initial region");
  if (!(cc.uncertainty_angle > 0.0))
    fail(ErrorKind::ConfigError, "initial region has zero uncertainty angle");
  return EllipsoidalConesPolicy(revolution_to_cone(cc.uncertainty_angle, cc.center), params);
}

std::size_t EllipsoidalConesPolicy::act(const Instance& instance, const TieBreak& tiebreak) const {
  return forward_solve(proxy_cost(), instance, tiebreak);
}

double EllipsoidalConesPolicy::lambda_max() const {
  return *std::max_element(cone_.w.begin(), cone_.w.end());
}

double EllipsoidalConesPolicy::lambda_min() const {
  return *std::min_element(cone_.w.begin(), cone_.w.end());
}

PeriodKind EllipsoidalConesPolicy::observe(const Feedback& feedback) {
  const Vec delta = effective_difference(feedback);
  if (norm(delta) == 0.0) return PeriodKind::ZeroDifference;

  const Vec dbar = matvec_t(cone_.u, delta);
  double quad = 0.0;
  for (std::size_t i = 1; i < cone_.p; ++i) quad += dbar[i] * dbar[i] * cone_.w[i - 1];
  if (quad <= params_.epsilon * params_.epsilon) return PeriodKind::LowRegret;

  cone_ = cone_update(cone_.w, cone_.u, delta, 0.0, Mat::identity(cone_.p), cone_.p);
  ++cone_updates_;
  return PeriodKind::ConeUpdate;
}

// --- ProjectedConesPolicy ---------------------------------------------------

ProjectedConesPolicy::ProjectedConesPolicy(std::size_t d, PolicyParams params)
    : d_(d), params_(params), basis_(0, d) {
  params_.validate(/*needs_eta=*/true);
  if (d_ < 2) fail(ErrorKind::ConfigError, "projected policy needs dimension at least 2");
}

Vec ProjectedConesPolicy::proxy_cost() const {
  if (p_ == 0) return basis_vector(d_, 0);
  if (p_ == 1) return ray_;
  return matvec_t(basis_, cone_->axis());  // B' U e1
}

std::size_t ProjectedConesPolicy::act(const Instance& instance, const TieBreak& tiebreak) const {
  return forward_solve(proxy_cost(), instance, tiebreak);
}

Vec ProjectedConesPolicy::subspace_coordinates(const Vec& c) const { return matvec(basis_, c); }

std::optional<double> ProjectedConesPolicy::lambda_max() const {
  if (!cone_) return std::nullopt;
  return *std::max_element(cone_->w.begin(), cone_->w.end());
}

PeriodKind ProjectedConesPolicy::observe(const Feedback& feedback) {
  ++period_;
  const Vec delta = effective_difference(feedback);
  if (norm(delta) == 0.0) return PeriodKind::ZeroDifference;

  // Residual of the projection onto the current subspace.
  Vec projection(d_, 0.0);
  for (std::size_t i = 0; i < p_; ++i) axpy(dot(basis_.row(i), delta), basis_.row(i), projection);
  const Vec residual = sub(delta, projection);

  if (norm(residual) > params_.eta) {
    // Subspace update: adopt the new direction, rebuild the cone around the
    // polyhedral center of the accumulated directions.
    tau_.push_back(period_);
    tau_deltas_.push_back(delta);
    std::vector<Vec> rows;
    for (std::size_t i = 0; i < p_; ++i) rows.push_back(basis_.row(i));
    rows.push_back(delta);
    const auto ortho = gram_schmidt(rows);
    ++p_;
    basis_ = Mat(p_, d_);
    for (std::size_t i = 0; i < p_; ++i)
      for (std::size_t j = 0; j < d_; ++j) basis_(i, j) = ortho[i][j];

    if (p_ == 1) {
      ray_ = delta;
      cone_.reset();
      last_restart_max_angle_.reset();
      return PeriodKind::SubspaceUpdate;
    }
    const auto pc = poly_center_full(tau_deltas_, basis_, p_);
    last_restart_max_angle_ = pc.max_ray_angle;
    const double w_scale =
        std::pow(static_cast<double>(d_), 3.0) / std::pow(params_.eta, 2.0 * (static_cast<double>(d_) - 1.0));
    std::vector<Vec> seed{pc.center};
    for (std::size_t i = 0; i < p_; ++i) seed.push_back(basis_vector(p_, i));
    const auto cols = orthonormalize_dropping(seed);
    EllipsoidalCone cone;
    cone.p = p_;
    cone.w.assign(p_ - 1, w_scale);
    cone.u = Mat(p_, p_);
    for (std::size_t j = 0; j < p_; ++j) cone.u.set_col(j, cols[j]);
    cone_ = checked_cone(cone);
    return PeriodKind::SubspaceUpdate;
  }

  if (p_ == 1) return PeriodKind::LowRegret;  // no quadratic form on a ray

  const Vec dhat = matvec_t(cone_->u, matvec(basis_, delta));
  double tail = 0.0;
  double quad = 0.0;
  for (std::size_t i = 1; i < p_; ++i) {
    tail += dhat[i] * dhat[i];
    quad += dhat[i] * dhat[i] * cone_->w[i - 1];
  }
  // A cut with no component off the axis carries no information about W.
  if (std::sqrt(tail) < tol().degenerate_cut) return PeriodKind::LowRegret;
  if (quad <= params_.epsilon * params_.epsilon) return PeriodKind::LowRegret;

  if (params_.eta > std::sqrt(quad) / (2.0 * static_cast<double>(p_ - 1)))
    fail(ErrorKind::InternalInvariant, "projected policy: shallow-cut margin precondition violated");
  cone_ = cone_update(cone_->w, cone_->u, projection, params_.eta, basis_, p_);
  ++cone_updates_per_dim_[p_];
  return PeriodKind::ConeUpdate;
}

}  // namespace conelearn
