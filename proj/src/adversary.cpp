#include "conelearn/adversary.hpp"

#include <cmath>
#include <fstream>
#include <map>

#include <json.hpp>

#include "conelearn/errors.hpp"
#include "conelearn/rng.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

std::vector<Vec> killer_generators(double alpha_bar, double eps) {
  const double t = std::tan(alpha_bar);
  std::vector<Vec> gens{
      {1.0, eps, eps - t},
      {1.0, eps, t - eps},
      {std::cos(alpha_bar), std::sin(alpha_bar), 0.0},
  };
  for (Vec& g : gens) g = normalized(g);
  return gens;
}

Environment greedy_killer(double alpha_bar, std::size_t T, std::size_t d) {
  if (d != 3) fail(ErrorKind::UnsupportedDimension, "greedy_killer is a three-dimensional construction");
  if (!(alpha_bar > 0.0) || alpha_bar >= M_PI / 2.0)
    fail(ErrorKind::ConfigError, "greedy_killer: alpha must lie in (0, pi/2)");
  if (T == 0) fail(ErrorKind::ConfigError, "greedy_killer: T must be positive");

  const double eps1 = std::tan(alpha_bar) / (2.0 * static_cast<double>(T));
  Environment env;
  env.name = "killer";
  env.c_star = {std::cos(alpha_bar), std::sin(alpha_bar), 0.0};
  env.initial_region = Generators{killer_generators(alpha_bar, 0.0), /*pointed=*/true};
  env.next_instance = [eps1](std::size_t t, const History&) {
    const double eps_t = static_cast<double>(t) * eps1;
    const Vec probe = normalized({-eps_t, 1.0, 0.0});
    return Instance({probe, Vec{0.0, 0.0, 0.0}});
  };
  return env;
}

Environment offline_tight(const Cap& region) {
  const Vec& axis = region.cone.axis.coords();
  const double aperture = region.cone.aperture;
  const std::size_t d = axis.size();
  if (d < 2) fail(ErrorKind::UnsupportedDimension, "offline_tight needs dimension at least 2");

  // Deterministic unit direction orthogonal to the axis.
  std::size_t k = 0;
  for (std::size_t i = 1; i < d; ++i)
    if (std::fabs(axis[i]) < std::fabs(axis[k])) k = i;
  Vec delta = basis_vector(d, k);
  axpy(-dot(delta, axis), axis, delta);
  delta = normalized(delta);

  Vec c_star = scaled(delta, std::sin(aperture));
  axpy(std::cos(aperture), axis, c_star);

  Environment env;
  env.name = "offline";
  env.c_star = c_star;
  env.initial_region = region;
  env.next_instance = [delta](std::size_t, const History&) {
    return Instance({scaled(delta, -0.5), scaled(delta, 0.5)});
  };
  return env;
}

Environment random_pairs(std::size_t d, std::size_t k_actions, std::uint64_t seed, CStarMode mode,
                         const KnowledgeRegion& initial_region) {
  if (d < 2) fail(ErrorKind::ConfigError, "random_pairs: d must be at least 2");
  if (k_actions < 2) fail(ErrorKind::ConfigError, "random_pairs: need at least two actions");
  if (region_dim(initial_region) != d) fail(ErrorKind::ConfigError, "random_pairs: region dimension mismatch");

  Environment env;
  env.name = "random";
  env.initial_region = initial_region;

  Rng cstar_rng = Rng::substream(seed, 0);
  if (mode == CStarMode::Boundary && std::holds_alternative<Cap>(initial_region)) {
    const auto& cap = std::get<Cap>(initial_region);
    const Vec& axis = cap.cone.axis.coords();
    // A direction orthogonal to the axis, drawn uniformly.
    Vec u = cstar_rng.unit_vector(d);
    axpy(-dot(u, axis), axis, u);
    while (norm(u) < 1e-9) {
      u = cstar_rng.unit_vector(d);
      axpy(-dot(u, axis), axis, u);
    }
    u = normalized(u);
    env.c_star = scaled(axis, std::cos(cap.cone.aperture));
    axpy(std::sin(cap.cone.aperture), u, env.c_star);
  } else {
    env.c_star = sample_region(initial_region, 1, cstar_rng.next_u64()).front();
  }

  env.next_instance = [d, k_actions, seed](std::size_t t, const History&) {
    Rng rng = Rng::substream(seed, t);
    std::vector<Vec> features;
    features.reserve(k_actions);
    for (std::size_t i = 0; i < k_actions; ++i) {
      // Uniform in the ball of radius 1/2: unit direction times U^(1/d)/2.
      Vec x = rng.unit_vector(d);
      const double r = 0.5 * std::pow(rng.next_double(), 1.0 / static_cast<double>(d));
      features.push_back(scaled(x, r));
    }
    return Instance(std::move(features));
  };
  return env;
}

Environment replay_environment(const std::string& path, std::optional<Vec> c_star_override) {
  std::ifstream in(path);
  if (!in) fail(ErrorKind::ConfigError, "replay: cannot open " + path);

  auto periods = std::make_shared<std::map<std::size_t, Instance>>();
  auto experts = std::make_shared<std::map<std::size_t, std::size_t>>();
  std::string line;
  std::size_t line_no = 0;
  std::size_t dim = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r\n") == std::string::npos) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      fail(ErrorKind::ConfigError, "replay: bad JSON on line " + std::to_string(line_no) + ": " + e.what());
    }
    if (!j.contains("t") || !j.contains("features"))
      fail(ErrorKind::ConfigError, "replay: each line needs \"t\" and \"features\"");
    const auto t = j.at("t").get<std::size_t>();
    std::vector<Vec> features = j.at("features").get<std::vector<Vec>>();
    if (features.empty()) fail(ErrorKind::ConfigError, "replay: empty feature list");
    if (dim == 0) dim = features.front().size();
    periods->emplace(t, Instance(std::move(features)));
    if (j.contains("expert")) (*experts)[t] = j.at("expert").get<std::size_t>();
  }
  if (periods->empty()) fail(ErrorKind::ConfigError, "replay: no periods in " + path);

  Environment env;
  env.name = "replay";
  env.c_star = c_star_override ? *c_star_override : basis_vector(dim, 0);
  if (std::fabs(norm(env.c_star) - 1.0) > tol().unit_norm)
    fail(ErrorKind::ConfigError, "replay: c_star must be unit norm");
  env.initial_region = FullSphere{dim};
  env.next_instance = [periods, path](std::size_t t, const History&) {
    const auto it = periods->find(t);
    if (it == periods->end())
      fail(ErrorKind::ConfigError, "replay: period " + std::to_string(t) + " missing from " + path);
    return it->second;
  };
  env.expert_override = [experts](std::size_t t) -> std::optional<std::size_t> {
    const auto it = experts->find(t);
    if (it == experts->end()) return std::nullopt;
    return it->second;
  };
  return env;
}

}  // namespace conelearn
