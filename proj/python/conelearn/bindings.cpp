#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "conelearn/adversary.hpp"
#include "conelearn/cones.hpp"
#include "conelearn/errors.hpp"
#include "conelearn/forward.hpp"
#include "conelearn/geometry.hpp"
#include "conelearn/harness.hpp"
#include "conelearn/numerics.hpp"
#include "conelearn/verify.hpp"

namespace py = pybind11;
using namespace conelearn;

namespace {

Mat to_mat(const std::vector<Vec>& rows) {
  if (rows.empty()) throw Error(ErrorKind::ConfigError, "empty matrix");
  Mat m(rows.size(), rows.front().size());
  for (std::size_t i = 0; i < rows.size(); ++i)
    for (std::size_t j = 0; j < rows[i].size(); ++j) m(i, j) = rows[i][j];
  return m;
}

std::vector<Vec> to_rows(const Mat& m) {
  std::vector<Vec> rows;
  for (std::size_t i = 0; i < m.rows; ++i) rows.push_back(m.row(i));
  return rows;
}

RunConfig config_from_dict(const py::dict& d) {
  RunConfig config;
  auto get_str = [&](const char* key, const std::string& fallback) {
    return d.contains(key) ? d[key].cast<std::string>() : fallback;
  };
  const std::string policy = get_str("policy", "ellipsoidal");
  if (policy == "greedy") config.policy = PolicyKind::Greedy;
  else if (policy == "projected") config.policy = PolicyKind::Projected;
  else config.policy = PolicyKind::Ellipsoidal;
  const std::string env = get_str("env", "random");
  if (env == "killer") config.env.kind = EnvKind::Killer;
  else if (env == "offline") config.env.kind = EnvKind::Offline;
  else if (env.rfind("replay:", 0) == 0) {
    config.env.kind = EnvKind::Replay;
    config.env.replay_path = env.substr(7);
  } else {
    config.env.kind = EnvKind::Random;
  }
  if (d.contains("d")) config.d = d["d"].cast<std::size_t>();
  if (d.contains("T")) config.T = d["T"].cast<std::size_t>();
  if (d.contains("alpha")) config.env.alpha = d["alpha"].cast<double>();
  if (d.contains("epsilon")) config.epsilon = d["epsilon"].cast<double>();
  if (d.contains("eta")) config.eta = d["eta"].cast<double>();
  if (d.contains("seed")) config.seed = d["seed"].cast<std::uint64_t>();
  if (d.contains("k")) config.env.k_actions = d["k"].cast<std::size_t>();
  if (d.contains("tiebreak"))
    config.tiebreak = d["tiebreak"].cast<std::string>() == "first" ? TieMode::First : TieMode::Adversarial;
  if (d.contains("verify")) config.verify_inline = d["verify"].cast<bool>();
  if (d.contains("assert_bounds")) config.assert_bounds = d["assert_bounds"].cast<bool>();
  if (d.contains("cap_start")) config.env.full_sphere_start = !d["cap_start"].cast<bool>();
  if (d.contains("cstar_mode"))
    config.env.cstar_mode =
        d["cstar_mode"].cast<std::string>() == "boundary" ? CStarMode::Boundary : CStarMode::Uniform;
  if (d.contains("out")) config.out_path = d["out"].cast<std::string>();
  return config;
}

}  // namespace

PYBIND11_MODULE(_conelearn, m) {
  m.doc() = "Contextual inverse optimization: cones, policies and simulations";

  py::register_exception<Error>(m, "ConelearnError");

  m.def("sym_eig", [](const std::vector<Vec>& rows) {
    const auto e = sym_eig(SymmetricMatrix(to_mat(rows)));
    return py::make_tuple(e.eigenvalues, to_rows(e.eigenvectors));
  }, py::arg("matrix"), "Eigenvalues (ascending) and eigenvector rows of a symmetric matrix");

  m.def("gram_schmidt", [](const std::vector<Vec>& vs) { return gram_schmidt(vs); }, py::arg("vectors"));

  m.def("solve_linear", [](const std::vector<Vec>& rows, const Vec& b) {
    return solve_linear(to_mat(rows), b);
  }, py::arg("matrix"), py::arg("rhs"));

  m.def("min_norm_point", [](const std::vector<Vec>& pts) {
    const auto r = min_norm_point(pts);
    return py::make_tuple(r.point, r.weights);
  }, py::arg("points"), "Minimum-norm point of a convex hull and its convex weights");

  m.def("angle", [](const Vec& a, const Vec& b) { return angle(a, b); }, py::arg("a"), py::arg("b"));

  m.def("circumcenter_of_generators", [](const std::vector<Vec>& gens) {
    const auto cc = circumcenter(Generators{gens, true});
    return py::make_tuple(cc.center, cc.uncertainty_angle);
  }, py::arg("generators"), "Circumcenter and uncertainty angle of a pointed generator region");

  m.def("worst_case_loss", &worst_case_loss, py::arg("theta"));

  m.def("cone_angle", [](const Vec& w) {
    EllipsoidalCone cone;
    cone.p = w.size() + 1;
    cone.w = w;
    cone.u = Mat::identity(cone.p);
    return cone_angle(cone);
  }, py::arg("w"), "Uncertainty angle of a standard-position cone with diagonal w");

  m.def("cone_update", [](const Vec& w, const std::vector<Vec>& u_rows, const Vec& delta, double eta,
                          const std::vector<Vec>& basis, std::size_t p) {
    const auto cone = cone_update(w, to_mat(u_rows), delta, eta, to_mat(basis), p);
    return py::make_tuple(cone.w, to_rows(cone.u));
  }, py::arg("w"), py::arg("u_rows"), py::arg("delta"), py::arg("eta"), py::arg("basis_rows"),
     py::arg("p"), "Shallow-cut knowledge-cone update; returns (w, U rows)");

  m.def("cone_contains", [](const Vec& w, const std::vector<Vec>& u_rows, const Vec& c) {
    EllipsoidalCone cone;
    cone.p = w.size() + 1;
    cone.w = w;
    cone.u = to_mat(u_rows);
    return cone_contains(cone, c);
  }, py::arg("w"), py::arg("u_rows"), py::arg("c"));

  m.def("poly_center", [](const std::vector<Vec>& deltas, const std::vector<Vec>& basis, std::size_t p) {
    return poly_center(deltas, to_mat(basis), p);
  }, py::arg("deltas"), py::arg("basis_rows"), py::arg("p"));

  m.def("polyhedral_angle_bound", &polyhedral_angle_bound, py::arg("eta"), py::arg("d"));

  m.def("inradius_diagnostics", [](const std::vector<Vec>& rows, std::size_t p) {
    const auto di = inradius_diagnostics(to_mat(rows), p);
    return py::make_tuple(di.rho_lower, di.cond_upper, di.phi);
  }, py::arg("unit_column_rows"), py::arg("p"),
     "(rho_lower, cond_upper, phi) for a simplicial generator matrix given as rows");

  m.def("effective_difference", [](const std::vector<Vec>& features, std::size_t expert, std::size_t chosen) {
    return effective_difference(Feedback{Instance(features), expert, chosen});
  }, py::arg("features"), py::arg("expert"), py::arg("chosen"));

  m.def("run", [](const py::dict& d) {
    const RunResult r = run(config_from_dict(d));
    py::dict out;
    out["cum_regret"] = r.cum_regret;
    out["bound"] = r.bound ? py::object(py::float_(*r.bound)) : py::object(py::none());
    out["bound_ok"] = r.bound_ok;
    out["subspace_updates"] = r.subspace_updates;
    py::dict per_dim;
    for (const auto& [p, c] : r.cone_updates_per_dim) per_dim[py::int_(p)] = c;
    out["cone_updates_per_dim"] = per_dim;
    py::list regrets;
    for (const auto& rec : r.records) regrets.append(rec.regret);
    out["regrets"] = regrets;
    out["jsonl"] = run_result_jsonl(r);
    return out;
  }, py::arg("config"), "Simulate one policy/environment pair from a config dict");

  m.def("verify", [](const std::string& suite) {
    py::list out;
    for (const auto& r : verify_suite(suite)) {
      py::dict d;
      d["name"] = r.name;
      d["tolerance"] = r.tolerance;
      d["observed"] = r.observed;
      d["pass"] = r.pass;
      out.append(d);
    }
    return out;
  }, py::arg("suite"), "Run a named property suite; returns one dict per check");
}
