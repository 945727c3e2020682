#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include "conelearn/adversary.hpp"
#include "conelearn/policies.hpp"

namespace conelearn {

enum class PolicyKind { Greedy, Ellipsoidal, Projected };
enum class EnvKind { Killer, Offline, Random, Replay };
enum class TieMode { First, Adversarial };

struct EnvSpec {
  EnvKind kind = EnvKind::Random;
  double alpha = M_PI / 4.0;       // killer / offline / cap-start apertures
  std::size_t k_actions = 2;
  CStarMode cstar_mode = CStarMode::Uniform;
  bool full_sphere_start = true;   // random environment initial region
  std::string replay_path;
  std::optional<Vec> c_star;       // replay override
};

struct RunConfig {
  PolicyKind policy = PolicyKind::Ellipsoidal;
  EnvSpec env;
  std::size_t d = 3;
  std::size_t T = 100;
  std::optional<double> epsilon;  // default d/T
  std::optional<double> eta;      // default epsilon/(2d)
  std::uint64_t seed = 0;
  TieMode tiebreak = TieMode::Adversarial;
  bool assert_bounds = false;
  bool verify_inline = false;
  std::string out_path;

  PolicyParams resolved_params() const;
};

struct PeriodRecord {
  std::size_t t = 0;
  PeriodKind kind = PeriodKind::ZeroDifference;
  double regret = 0.0;
  double cum_regret = 0.0;
  std::optional<double> lambda_max;
  std::optional<std::size_t> p;
  std::size_t cone_updates_so_far = 0;
};

struct RunResult {
  RunConfig config;
  std::vector<PeriodRecord> records;
  double cum_regret = 0.0;
  std::map<std::size_t, std::size_t> cone_updates_per_dim;
  std::size_t subspace_updates = 0;
  std::optional<double> bound;  // applicable explicit theorem bound
  bool bound_ok = true;
};

Environment make_environment(const RunConfig& config);

/// Explicit worst-case regret bound for the configured policy, when one
/// applies (pointed-start bound for the ellipsoidal policy, general-case
/// bound for the projected one, the trivial bound T for greedy).
double theorem_bound(const RunConfig& config, double initial_angle);

RunResult run(const RunConfig& config);

/// JSON Lines serialization: one object per period plus a summary object.
std::string run_result_jsonl(const RunResult& result);

struct SweepRow {
  std::size_t T = 0;
  double cum_regret = 0.0;
  double bound = 0.0;
  std::size_t cone_updates = 0;
  std::size_t subspace_updates = 0;
};

/// One run per horizon (executed in parallel, reported in input order);
/// epsilon/eta defaults are re-derived per horizon.
std::vector<SweepRow> sweep(const RunConfig& base, const std::vector<std::size_t>& T_values);

std::string sweep_csv(const std::vector<SweepRow>& rows);

}  // namespace conelearn
