#include "conelearn/harness.hpp"

#include <cmath>
#include <fstream>
#include <future>
#include <variant>

#include <json.hpp>

#include "conelearn/errors.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

PolicyParams RunConfig::resolved_params() const {
  PolicyParams p = PolicyParams::defaults(d, T);
  if (epsilon) p.epsilon = *epsilon;
  if (eta) p.eta = *eta;
  if (epsilon && !eta) p.eta = p.epsilon / (2.0 * static_cast<double>(d));
  return p;
}

Environment make_environment(const RunConfig& config) {
  switch (config.env.kind) {
    case EnvKind::Killer:
      return greedy_killer(config.env.alpha, config.T, config.d);
    case EnvKind::Offline: {
      if (config.d < 2) fail(ErrorKind::ConfigError, "offline environment needs d >= 2");
      Vec axis = basis_vector(config.d, 0);
      return offline_tight(Cap{RevolutionCone(UnitVector(axis), config.env.alpha)});
    }
    case EnvKind::Random: {
      KnowledgeRegion initial = config.env.full_sphere_start
                                    ? KnowledgeRegion(FullSphere{config.d})
                                    : KnowledgeRegion(Cap{RevolutionCone(
                                          UnitVector(basis_vector(config.d, 0)), config.env.alpha)});
      return random_pairs(config.d, config.env.k_actions, config.seed, config.env.cstar_mode, initial);
    }
    case EnvKind::Replay:
      return replay_environment(config.env.replay_path, config.env.c_star);
  }
  fail(ErrorKind::ConfigError, "unknown environment kind");
}

double theorem_bound(const RunConfig& config, double initial_angle) {
  const PolicyParams params = config.resolved_params();
  const double d = static_cast<double>(config.d);
  const double T = static_cast<double>(config.T);
  switch (config.policy) {
    case PolicyKind::Greedy:
      return T;  // no sublinear guarantee exists for the greedy policy
    case PolicyKind::Ellipsoidal: {
      const double tan_alpha = std::tan(initial_angle);
      return 2.0 * (d - 1.0) * (d - 1.0) * std::log(10.0 * d * tan_alpha / params.epsilon) +
             T * params.epsilon;
    }
    case PolicyKind::Projected: {
      const double log_term = std::log(10.0 * std::pow(d, 2.5) /
                                       (params.epsilon * std::pow(params.eta, d - 1.0)));
      return T * (params.epsilon + params.eta) + d + 20.0 * d * d * d * log_term;
    }
  }
  fail(ErrorKind::ConfigError, "unknown policy kind");
}

namespace {

struct PolicyDriver {
  std::variant<GreedyPolicy, EllipsoidalConesPolicy, ProjectedConesPolicy> impl;

  Vec proxy() const {
    return std::visit([](const auto& p) { return p.proxy_cost(); }, impl);
  }
  PeriodKind observe(const Feedback& fb) {
    return std::visit(
        [&](auto& p) -> PeriodKind {
          using T = std::decay_t<decltype(p)>;
          if constexpr (std::is_same_v<T, GreedyPolicy>) {
            p.observe(fb);
            return PeriodKind::ConeUpdate;  // greedy always absorbs all constraints
          } else {
            return p.observe(fb);
          }
        },
        impl);
  }
};

PolicyDriver make_policy(const RunConfig& config, const Environment& env) {
  const PolicyParams params = config.resolved_params();
  switch (config.policy) {
    case PolicyKind::Greedy:
      return {GreedyPolicy(env.initial_region)};
    case PolicyKind::Ellipsoidal:
      return {EllipsoidalConesPolicy::from_region(env.initial_region, params)};
    case PolicyKind::Projected:
      return {ProjectedConesPolicy(config.d, params)};
  }
  fail(ErrorKind::ConfigError, "unknown policy kind");
}

void verify_period(const RunConfig& config, const PolicyDriver& driver, const Environment& env,
                   const KnowledgeState& knowledge, const Feedback& fb, const Vec& proxy_used,
                   PeriodKind kind, double realized_regret) {
  const PolicyParams params = config.resolved_params();
  if (!membership(knowledge, env.c_star))
    fail(ErrorKind::InternalInvariant, "verify: true cost left the knowledge set");
  const Vec delta = effective_difference(fb);
  if (norm(delta) > 0.0) {
    if (dot(delta, proxy_used) > tol().membership)
      fail(ErrorKind::InternalInvariant, "verify: effective difference not on the proxy's cut side");
    if (dot(delta, env.c_star) < -tol().membership)
      fail(ErrorKind::InternalInvariant, "verify: effective difference inconsistent with the true cost");
  }
  if (kind == PeriodKind::LowRegret) {
    const double slack = config.policy == PolicyKind::Projected ? params.epsilon + params.eta : params.epsilon;
    if (realized_regret > slack + tol().membership)
      fail(ErrorKind::InternalInvariant, "verify: low-regret certificate violated");
  }
  if (const auto* ec = std::get_if<EllipsoidalConesPolicy>(&driver.impl)) {
    if (!cone_contains_with_slack(ec->cone(), env.c_star, 1e-7))
      fail(ErrorKind::InternalInvariant, "verify: true cost left the ellipsoidal cone");
    const double floor =
        std::pow(params.epsilon / (10.0 * static_cast<double>(config.d)), 2.0) - 1e-12;
    if (ec->lambda_min() < floor)
      fail(ErrorKind::InternalInvariant, "verify: eigenvalue floor violated");
  }
  if (const auto* pc = std::get_if<ProjectedConesPolicy>(&driver.impl)) {
    if (pc->subspace_updates() > config.d)
      fail(ErrorKind::InternalInvariant, "verify: more subspace updates than dimensions");
    if (pc->subspace_dim() >= 2 && pc->cone()) {
      const Vec coords = pc->subspace_coordinates(env.c_star);
      if (!cone_contains_with_slack(*pc->cone(), coords, 1e-7))
        fail(ErrorKind::InternalInvariant, "verify: projected true cost left the cone");
    }
  }
}

}  // namespace

RunResult run(const RunConfig& config) {
  if (config.T < 1) fail(ErrorKind::ConfigError, "T must be at least 1");
  if (config.d < 2) fail(ErrorKind::ConfigError, "d must be at least 2");
  const PolicyParams params = config.resolved_params();
  params.validate(config.policy == PolicyKind::Projected);

  Environment env = make_environment(config);
  if (region_dim(env.initial_region) != config.d)
    fail(ErrorKind::ConfigError, "environment dimension does not match d");
  if (!region_contains(env.initial_region, env.c_star))
    fail(ErrorKind::InternalInvariant, "environment: true cost outside the initial region");

  PolicyDriver driver = make_policy(config, env);
  KnowledgeState knowledge{env.initial_region, {}, {}};
  History history;

  RunResult result;
  result.config = config;
  result.records.reserve(config.T);

  double cum = 0.0;
  std::size_t cone_updates = 0;
  for (std::size_t t = 1; t <= config.T; ++t) {
    const Instance instance = env.next_instance(t, history);
    std::size_t expert;
    if (env.expert_override) {
      const auto forced = env.expert_override(t);
      expert = forced ? *forced : forward_solve(env.c_star, instance, TieBreak::first());
    } else {
      expert = forward_solve(env.c_star, instance, TieBreak::first());
    }
    const TieBreak tie = config.tiebreak == TieMode::Adversarial
                             ? TieBreak::adversarial(env.c_star)
                             : TieBreak::first();
    const Vec proxy_used = driver.proxy();
    const std::size_t chosen = forward_solve(proxy_used, instance, tie);
    const double r = regret(instance, chosen, expert, env.c_star);
    const Feedback fb{instance, expert, chosen};
    const PeriodKind kind = driver.observe(fb);
    knowledge = update_knowledge(std::move(knowledge), fb);

    cum += r;
    PeriodRecord rec;
    rec.t = t;
    rec.kind = kind;
    rec.regret = r;
    rec.cum_regret = cum;
    if (kind == PeriodKind::ConeUpdate && config.policy != PolicyKind::Greedy) ++cone_updates;
    rec.cone_updates_so_far = cone_updates;
    if (const auto* ec = std::get_if<EllipsoidalConesPolicy>(&driver.impl)) {
      rec.lambda_max = ec->lambda_max();
    } else if (const auto* pc = std::get_if<ProjectedConesPolicy>(&driver.impl)) {
      rec.lambda_max = pc->lambda_max();
      rec.p = pc->subspace_dim();
    }
    result.records.push_back(rec);
    history.push_back({instance, chosen, expert});

    if (config.verify_inline) verify_period(config, driver, env, knowledge, fb, proxy_used, kind, r);
  }

  result.cum_regret = cum;
  if (const auto* ec = std::get_if<EllipsoidalConesPolicy>(&driver.impl)) {
    if (ec->cone_updates() > 0) result.cone_updates_per_dim[config.d] = ec->cone_updates();
  } else if (const auto* pc = std::get_if<ProjectedConesPolicy>(&driver.impl)) {
    result.cone_updates_per_dim = pc->cone_updates_per_dim();
    result.subspace_updates = pc->subspace_updates();
  }

  double initial_angle = M_PI;
  if (config.policy == PolicyKind::Ellipsoidal || config.policy == PolicyKind::Greedy) {
    initial_angle = circumcenter(env.initial_region).uncertainty_angle;
  }
  result.bound = theorem_bound(config, initial_angle);
  result.bound_ok = !(config.assert_bounds && result.cum_regret > *result.bound);

  if (!config.out_path.empty()) {
    std::ofstream out(config.out_path);
    if (!out) fail(ErrorKind::ConfigError, "cannot open output path " + config.out_path);
    out << run_result_jsonl(result);
  }
  return result;
}

namespace {

const char* policy_name(PolicyKind k) {
  switch (k) {
    case PolicyKind::Greedy: return "greedy";
    case PolicyKind::Ellipsoidal: return "ellipsoidal";
    case PolicyKind::Projected: return "projected";
  }
  return "unknown";
}

const char* env_name(EnvKind k) {
  switch (k) {
    case EnvKind::Killer: return "killer";
    case EnvKind::Offline: return "offline";
    case EnvKind::Random: return "random";
    case EnvKind::Replay: return "replay";
  }
  return "unknown";
}

}  // namespace

std::string run_result_jsonl(const RunResult& result) {
  std::string out;
  for (const PeriodRecord& rec : result.records) {
    nlohmann::json j;
    j["t"] = rec.t;
    j["kind"] = period_kind_name(rec.kind);
    j["regret"] = rec.regret;
    j["cum_regret"] = rec.cum_regret;
    j["lambda_max"] = rec.lambda_max ? nlohmann::json(*rec.lambda_max) : nlohmann::json(nullptr);
    j["p"] = rec.p ? nlohmann::json(*rec.p) : nlohmann::json(nullptr);
    j["cone_updates"] = rec.cone_updates_so_far;
    out += j.dump();
    out += '\n';
  }

  const PolicyParams params = result.config.resolved_params();
  nlohmann::json summary;
  summary["summary"] = true;
  summary["config"] = {
      {"policy", policy_name(result.config.policy)},
      {"env", env_name(result.config.env.kind)},
      {"d", result.config.d},
      {"T", result.config.T},
      {"epsilon", params.epsilon},
      {"eta", params.eta},
      {"seed", result.config.seed},
      {"tiebreak", result.config.tiebreak == TieMode::Adversarial ? "adversarial" : "first"},
      {"alpha", result.config.env.alpha},
  };
  summary["cum_regret"] = result.cum_regret;
  nlohmann::json per_dim = nlohmann::json::object();
  for (const auto& [p, count] : result.cone_updates_per_dim) per_dim[std::to_string(p)] = count;
  summary["cone_updates_per_dim"] = per_dim;
  summary["subspace_updates"] = result.subspace_updates;
  summary["bound"] = result.bound ? nlohmann::json(*result.bound) : nlohmann::json(nullptr);
  summary["bound_ok"] = result.bound_ok;
  out += summary.dump();
  out += '\n';
  return out;
}

std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<std::size_t>& T_values) {
  for (std::size_t i = 1; i < T_values.size(); ++i)
    if (T_values[i] <= T_values[i - 1]) fail(ErrorKind::ConfigError, "sweep: T values must increase");

  std::vector<std::future<RunResult>> futures;
  futures.reserve(T_values.size());
  for (std::size_t T : T_values) {
    RunConfig config = base;
    config.T = T;
    config.out_path.clear();
    futures.push_back(std::async(std::launch::async, [config] { return run(config); }));
  }
  std::vector<SweepRow> rows;
  rows.reserve(T_values.size());
  for (std::size_t i = 0; i < T_values.size(); ++i) {
    const RunResult r = futures[i].get();
    SweepRow row;
    row.T = T_values[i];
    row.cum_regret = r.cum_regret;
    row.bound = r.bound.value_or(0.0);
    for (const auto& [p, count] : r.cone_updates_per_dim) row.cone_updates += count;
    row.subspace_updates = r.subspace_updates;
    rows.push_back(row);
  }
  return rows;
}

std::string sweep_csv(const std::vector<SweepRow>& rows) {
  std::string out = "T,cum_regret,bound_thm,I_T,subspace_updates\n";
  char buf[160];
  for (const SweepRow& r : rows) {
    std::snprintf(buf, sizeof(buf), "%zu,%.12g,%.12g,%zu,%zu\n", r.T, r.cum_regret, r.bound,
                  r.cone_updates, r.subspace_updates);
    out += buf;
  }
  return out;
}

}  // namespace conelearn
