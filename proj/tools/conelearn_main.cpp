#include <cstdio>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "conelearn/errors.hpp"
#include "conelearn/harness.hpp"
#include "conelearn/verify.hpp"

namespace {

using namespace conelearn;

constexpr int kExitOk = 0;
constexpr int kExitVerification = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumerical = 4;

PolicyKind parse_policy(const std::string& s) {
  if (s == "greedy") return PolicyKind::Greedy;
  if (s == "ellipsoidal") return PolicyKind::Ellipsoidal;
  if (s == "projected") return PolicyKind::Projected;
  fail(ErrorKind::ConfigError, "unknown policy '" + s + "'");
}

void parse_env(const std::string& s, EnvSpec& env) {
  if (s == "killer") {
    env.kind = EnvKind::Killer;
  } else if (s == "offline") {
    env.kind = EnvKind::Offline;
  } else if (s == "random") {
    env.kind = EnvKind::Random;
  } else if (s.rfind("replay:", 0) == 0) {
    env.kind = EnvKind::Replay;
    env.replay_path = s.substr(7);
  } else {
    fail(ErrorKind::ConfigError, "unknown environment '" + s + "'");
  }
}

void apply_config_file(const std::string& path, RunConfig& config) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigError, "cannot open config file " + path);
  nlohmann::json j;
  try {
    in >> j;
  } catch (const nlohmann::json::exception& e) {
    fail(ErrorKind::ConfigError, std::string("bad config JSON: ") + e.what());
  }
  if (j.contains("policy")) config.policy = parse_policy(j["policy"].get<std::string>());
  if (j.contains("env")) parse_env(j["env"].get<std::string>(), config.env);
  if (j.contains("d")) config.d = j["d"].get<std::size_t>();
  if (j.contains("T")) config.T = j["T"].get<std::size_t>();
  if (j.contains("alpha")) config.env.alpha = j["alpha"].get<double>();
  if (j.contains("epsilon")) config.epsilon = j["epsilon"].get<double>();
  if (j.contains("eta")) config.eta = j["eta"].get<double>();
  if (j.contains("seed")) config.seed = j["seed"].get<std::uint64_t>();
  if (j.contains("tiebreak"))
    config.tiebreak = j["tiebreak"].get<std::string>() == "first" ? TieMode::First : TieMode::Adversarial;
  if (j.contains("assert_bounds")) config.assert_bounds = j["assert_bounds"].get<bool>();
  if (j.contains("verify")) config.verify_inline = j["verify"].get<bool>();
  if (j.contains("out")) config.out_path = j["out"].get<std::string>();
  if (j.contains("k")) config.env.k_actions = j["k"].get<std::size_t>();
  if (j.contains("cstar_mode"))
    config.env.cstar_mode =
        j["cstar_mode"].get<std::string>() == "boundary" ? CStarMode::Boundary : CStarMode::Uniform;
  if (j.contains("cap_start")) config.env.full_sphere_start = !j["cap_start"].get<bool>();
  if (j.contains("c_star")) config.env.c_star = j["c_star"].get<Vec>();
}

std::vector<std::size_t> parse_t_list(const std::string& list) {
  std::vector<std::size_t> out;
  std::size_t pos = 0;
  while (pos < list.size()) {
    std::size_t next = list.find(',', pos);
    if (next == std::string::npos) next = list.size();
    const std::string token = list.substr(pos, next - pos);
    if (!token.empty()) out.push_back(static_cast<std::size_t>(std::stoull(token)));
    pos = next + 1;
  }
  return out;
}

int dispatch(int argc, char** argv) {
  CLI::App app{"conelearn: contextual inverse optimization simulations"};
  app.require_subcommand(1);

  // run ----------------------------------------------------------------------
  auto* run_cmd = app.add_subcommand("run", "simulate one policy against one environment");
  std::string policy = "ellipsoidal", env = "random", tiebreak = "adversarial", config_path, out_path;
  std::string cstar_mode = "uniform";
  std::size_t d = 3, T = 100, k_actions = 2;
  double alpha = M_PI / 4.0;
  std::uint64_t seed = 0;
  double epsilon = -1.0, eta = -1.0;
  bool assert_bounds = false, verify_inline = false, cap_start = false;
  run_cmd->add_option("--policy", policy, "greedy | ellipsoidal | projected");
  run_cmd->add_option("--env", env, "killer | offline | random | replay:<path>");
  run_cmd->add_option("--d", d, "cost dimension");
  run_cmd->add_option("--T", T, "horizon");
  run_cmd->add_option("--alpha", alpha, "aperture for killer/offline/cap starts");
  run_cmd->add_option("--epsilon", epsilon, "low-regret threshold (default d/T)");
  run_cmd->add_option("--eta", eta, "subspace margin (default epsilon/2d)");
  run_cmd->add_option("--seed", seed, "random seed");
  run_cmd->add_option("--tiebreak", tiebreak, "first | adversarial");
  run_cmd->add_flag("--assert-bounds", assert_bounds, "fail when the theorem bound is exceeded");
  run_cmd->add_flag("--verify", verify_inline, "assert per-period invariants");
  run_cmd->add_flag("--cap-start", cap_start, "random env: cap initial region instead of the full sphere");
  run_cmd->add_option("--k", k_actions, "random env: actions per period");
  run_cmd->add_option("--cstar-mode", cstar_mode, "random env: uniform | boundary");
  run_cmd->add_option("--config", config_path, "JSON config (flags override)");
  run_cmd->add_option("--out", out_path, "JSONL output path");

  // verify -------------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand("verify", "run a property-check suite");
  std::string suite = "all";
  verify_cmd->add_option("--suite", suite, "geometry | cones | policies | adversary | all");

  // sweep --------------------------------------------------------------------
  auto* sweep_cmd = app.add_subcommand("sweep", "run over a grid of horizons, emit CSV");
  std::string t_list;
  std::string sweep_out;
  sweep_cmd->add_option("--T", t_list, "comma-separated horizons, increasing")->required();
  sweep_cmd->add_option("--policy", policy, "greedy | ellipsoidal | projected");
  sweep_cmd->add_option("--env", env, "killer | offline | random | replay:<path>");
  sweep_cmd->add_option("--d", d, "cost dimension");
  sweep_cmd->add_option("--alpha", alpha, "aperture");
  sweep_cmd->add_option("--epsilon", epsilon, "low-regret threshold override");
  sweep_cmd->add_option("--eta", eta, "margin override");
  sweep_cmd->add_option("--seed", seed, "random seed");
  sweep_cmd->add_option("--tiebreak", tiebreak, "first | adversarial");
  sweep_cmd->add_option("--k", k_actions, "random env: actions per period");
  sweep_cmd->add_option("--config", config_path, "JSON config (flags override)");
  sweep_cmd->add_option("--out", sweep_out, "CSV output path (default stdout)");

  CLI11_PARSE(app, argc, argv);

  if (verify_cmd->parsed()) {
    const auto results = verify_suite(suite);
    std::cout << format_report(results);
    const std::size_t passed =
        static_cast<std::size_t>(std::count_if(results.begin(), results.end(),
                                               [](const CheckResult& r) { return r.pass; }));
    std::printf("%zu/%zu checks passed\n", passed, results.size());
    return all_pass(results) ? kExitOk : kExitVerification;
  }

  CLI::App* active = run_cmd->parsed() ? static_cast<CLI::App*>(run_cmd) : sweep_cmd;
  RunConfig config;
  if (!config_path.empty()) apply_config_file(config_path, config);
  const bool fresh = config_path.empty();  // no file: flags (or their defaults) fully specify the run
  auto flag_set = [&](const char* name) {
    const CLI::Option* opt = active->get_option_no_throw(name);
    return opt != nullptr && opt->count() > 0;
  };
  if (fresh || flag_set("--policy")) config.policy = parse_policy(policy);
  if (fresh || flag_set("--env")) parse_env(env, config.env);
  if (fresh || flag_set("--d")) config.d = d;
  if (run_cmd->parsed() && (fresh || flag_set("--T"))) config.T = T;
  if (fresh || flag_set("--alpha")) config.env.alpha = alpha;
  if (flag_set("--epsilon") && epsilon > 0.0) config.epsilon = epsilon;
  if (flag_set("--eta") && eta > 0.0) config.eta = eta;
  if (fresh || flag_set("--seed")) config.seed = seed;
  if (fresh || flag_set("--tiebreak"))
    config.tiebreak = tiebreak == "first" ? TieMode::First : TieMode::Adversarial;
  if (fresh || flag_set("--k")) config.env.k_actions = k_actions;
  if (flag_set("--assert-bounds")) config.assert_bounds = true;
  if (flag_set("--verify")) config.verify_inline = true;
  if (flag_set("--cap-start")) config.env.full_sphere_start = false;
  if (fresh || flag_set("--cstar-mode"))
    config.env.cstar_mode = cstar_mode == "boundary" ? CStarMode::Boundary : CStarMode::Uniform;
  if (flag_set("--out")) config.out_path = out_path;

  if (run_cmd->parsed()) {
    const RunResult result = run(config);
    std::printf("cum_regret=%.9g bound=%.9g subspace_updates=%zu", result.cum_regret,
                result.bound.value_or(0.0), result.subspace_updates);
    std::size_t total_updates = 0;
    for (const auto& [p, c] : result.cone_updates_per_dim) total_updates += c;
    std::printf(" cone_updates=%zu\n", total_updates);
    if (config.out_path.empty()) std::fputs(run_result_jsonl(result).c_str(), stdout);
    if (!result.bound_ok) {
      std::fprintf(stderr, "bound assertion failed: cum_regret %.9g > bound %.9g\n",
                   result.cum_regret, result.bound.value_or(0.0));
      return kExitVerification;
    }
    return kExitOk;
  }

  // sweep
  const auto T_values = parse_t_list(t_list);
  const auto rows = sweep(config, T_values);
  const std::string csv = sweep_csv(rows);
  if (sweep_out.empty()) {
    std::fputs(csv.c_str(), stdout);
  } else {
    std::ofstream outfile(sweep_out);
    if (!outfile) fail(ErrorKind::ConfigError, "cannot open output path " + sweep_out);
    outfile << csv;
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return dispatch(argc, argv);
  } catch (const Error& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return e.kind() == ErrorKind::ConfigError ? kExitConfig : kExitNumerical;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumerical;
  }
}
