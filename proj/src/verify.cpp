#include "conelearn/verify.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>

#include "conelearn/adversary.hpp"
#include "conelearn/errors.hpp"
#include "conelearn/forward.hpp"
#include "conelearn/geometry.hpp"
#include "conelearn/harness.hpp"
#include "conelearn/policies.hpp"
#include "conelearn/rng.hpp"
#include "conelearn/tolerances.hpp"

namespace conelearn {

std::string format_report(const std::vector<CheckResult>& results) {
  std::string out;
  char buf[256];
  for (const auto& r : results) {
    std::snprintf(buf, sizeof(buf), "[%s] %-44s tol=%-10.3g observed=%-12.6g\n",
                  r.pass ? "PASS" : "FAIL", r.name.c_str(), r.tolerance, r.observed);
    out += buf;
  }
  return out;
}

bool all_pass(const std::vector<CheckResult>& results) {
  return std::all_of(results.begin(), results.end(), [](const CheckResult& r) { return r.pass; });
}

// --- oracles -----------------------------------------------------------------

SphereSearchResult sphere_search_max(std::size_t d, const std::function<double(const Vec&)>& fn,
                                     std::size_t coarse_samples, std::size_t refine_rounds,
                                     std::uint64_t seed) {
  Rng rng(seed);
  SphereSearchResult best;
  best.value = -std::numeric_limits<double>::infinity();
  for (std::size_t i = 0; i < coarse_samples; ++i) {
    Vec c = rng.unit_vector(d);
    const double v = fn(c);
    if (v > best.value) {
      best.value = v;
      best.argmax = std::move(c);
    }
  }
  double radius = 0.1;
  const std::size_t refine_samples = std::max<std::size_t>(2000, coarse_samples / 10);
  for (std::size_t round = 0; round < refine_rounds; ++round) {
    for (std::size_t i = 0; i < refine_samples; ++i) {
      Vec c = best.argmax;
      Vec step = rng.unit_vector(d);
      axpy(radius * rng.next_double(), step, c);
      c = normalized(c);
      const double v = fn(c);
      if (v > best.value) {
        best.value = v;
        best.argmax = std::move(c);
      }
    }
    radius *= 0.15;
  }
  return best;
}

Vec sample_cone_point(const EllipsoidalCone& cone, Rng& rng) {
  const std::size_t p = cone.p;
  Vec z(p, 0.0);
  z[0] = 1.0;
  if (p > 1) {
    Vec u = rng.unit_vector(p - 1);
    const double r = std::pow(rng.next_double(), 1.0 / static_cast<double>(p - 1));
    for (std::size_t i = 0; i + 1 < p; ++i) z[i + 1] = std::sqrt(cone.w[i]) * r * u[i];
  }
  return matvec(cone.u, z);
}

EllipsoidalCone random_cone(std::size_t p, double lo, double hi, Rng& rng) {
  EllipsoidalCone cone;
  cone.p = p;
  cone.w.resize(p - 1);
  for (auto& v : cone.w) v = lo + (hi - lo) * rng.next_double();
  std::vector<Vec> seed;
  for (std::size_t i = 0; i < p; ++i) seed.push_back(rng.unit_vector(p));
  for (std::size_t i = 0; i < p; ++i) seed.push_back(basis_vector(p, i));
  const auto basis = orthonormalize_dropping(seed);
  cone.u = Mat(p, p);
  for (std::size_t j = 0; j < p; ++j) cone.u.set_col(j, basis[j]);
  return checked_cone(cone);
}

std::vector<Vec> residual_filtered_sequence(std::size_t p, double eta, Rng& rng) {
  std::vector<Vec> gens;
  std::vector<Vec> ortho;
  for (std::size_t i = 0; i < p; ++i) {
    if (i == 0) {
      gens.push_back(rng.unit_vector(p));
    } else {
      // In-span part plus an orthogonal part of size at least eta.
      const double s = eta + (1.0 - eta) * rng.next_double();
      Vec inspan(p, 0.0);
      for (const Vec& u : ortho) axpy(rng.next_gaussian(), u, inspan);
      Vec offspan = rng.unit_vector(p);
      for (const Vec& u : ortho) axpy(-dot(u, offspan), u, offspan);
      for (const Vec& u : ortho) axpy(-dot(u, offspan), u, offspan);
      offspan = normalized(offspan);
      Vec g = norm(inspan) > 0 ? scaled(normalized(inspan), std::sqrt(1.0 - s * s)) : Vec(p, 0.0);
      axpy(s, offspan, g);
      gens.push_back(normalized(g));
    }
    Vec w = gens.back();
    for (const Vec& u : ortho) axpy(-dot(u, w), u, w);
    for (const Vec& u : ortho) axpy(-dot(u, w), u, w);
    ortho.push_back(normalized(w));
  }
  return gens;
}

// --- suite helpers ------------------------------------------------------------

namespace {

CheckResult upper(const std::string& name, double observed, double tolerance) {
  return {name, tolerance, observed, observed <= tolerance};
}

CheckResult lower(const std::string& name, double observed, double bound) {
  return {name, bound, observed, observed >= bound};
}

double max_reconstruction_error(const SymmetricMatrix& s, const EigenDecomposition& e) {
  const std::size_t n = s.dim();
  double worst = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) {
      double v = 0.0;
      for (std::size_t k = 0; k < n; ++k)
        v += e.eigenvectors(i, k) * e.eigenvalues[k] * e.eigenvectors(j, k);
      worst = std::max(worst, std::fabs(v - s(i, j)));
    }
  return worst / std::max(1.0, max_abs(s.full()));
}

double orthonormality_error(const Mat& v) {
  const Mat g = matmul(v.transposed(), v);
  double worst = 0.0;
  for (std::size_t i = 0; i < g.rows; ++i)
    for (std::size_t j = 0; j < g.cols; ++j)
      worst = std::max(worst, std::fabs(g(i, j) - (i == j ? 1.0 : 0.0)));
  return worst;
}

std::vector<Vec> random_pointed_generators(std::size_t d, std::size_t count, Rng& rng) {
  // Directions within a cap of aperture ~0.9 around a random axis, kept
  // mutually separated so the region is comfortably pointed and non-trivial.
  while (true) {
    const Vec axis = rng.unit_vector(d);
    std::vector<Vec> gens;
    for (std::size_t i = 0; i < count && gens.size() < count; ++i) {
      for (int attempt = 0; attempt < 200; ++attempt) {
        Vec g = rng.unit_vector(d);
        axpy(2.0, axis, g);
        g = normalized(g);
        bool separated = true;
        for (const Vec& other : gens)
          if (angle_between(g, other) < 0.15) separated = false;
        if (separated) {
          gens.push_back(g);
          break;
        }
      }
    }
    if (gens.size() == count && orthonormalize_dropping(gens).size() == count) return gens;
  }
}

// --- geometry suite -----------------------------------------------------------

void geometry_checks(std::vector<CheckResult>& out) {
  {
    Rng rng(101);
    double recon = 0.0, orth = 0.0;
    for (int i = 0; i < 1000; ++i) {
      const std::size_t n = 1 + rng.next_below(8);
      Mat m(n, n);
      for (std::size_t r = 0; r < n; ++r)
        for (std::size_t c = r; c < n; ++c) {
          const double v = 2.0 * rng.next_double() - 1.0;
          m(r, c) = v;
          m(c, r) = v;
        }
      SymmetricMatrix s(m);
      const auto e = sym_eig(s);
      recon = std::max(recon, max_reconstruction_error(s, e));
      orth = std::max(orth, orthonormality_error(e.eigenvectors));
    }
    out.push_back(upper("sym_eig.reconstruction(1000,dim<=8)", recon, tol().eig_reconstruct));
    out.push_back(upper("sym_eig.orthonormality(1000,dim<=8)", orth, tol().eig_orthonormal));
  }
  {
    Rng rng(102);
    double worst_dot = 0.0, worst_idem = 0.0;
    for (int i = 0; i < 200; ++i) {
      std::vector<Vec> vs;
      for (int k = 0; k < 3; ++k) vs.push_back(rng.unit_vector(5));
      const auto b = gram_schmidt(vs);
      for (std::size_t a = 0; a < b.size(); ++a)
        for (std::size_t c = a + 1; c < b.size(); ++c)
          worst_dot = std::max(worst_dot, std::fabs(dot(b[a], b[c])));
      const auto twice = gram_schmidt(b);
      for (std::size_t a = 0; a < b.size(); ++a)
        worst_idem = std::max(worst_idem, norm(sub(twice[a], b[a])));
    }
    out.push_back(upper("gram_schmidt.orthogonality", worst_dot, tol().gs_orthogonal));
    out.push_back(upper("gram_schmidt.idempotence", worst_idem, 1e-12));
  }
  {
    Rng rng(103);
    double worst = -1.0;
    for (int i = 0; i < 200; ++i) {
      const std::size_t d = 2 + rng.next_below(4);
      std::vector<Vec> pts;
      const std::size_t m = 1 + rng.next_below(6);
      for (std::size_t k = 0; k < m; ++k) {
        Vec p(d);
        for (auto& x : p) x = 2.0 * rng.next_double() - 1.0;
        pts.push_back(p);
      }
      const auto r = min_norm_point(pts);
      const double xx = dot(r.point, r.point);
      for (const Vec& q : pts) worst = std::max(worst, xx - dot(q, r.point));
    }
    out.push_back(upper("min_norm_point.wolfe_certificate", worst, tol().wolfe));
  }
  {
    Rng rng(104);
    double sym = 0.0, tri = 0.0;
    for (int i = 0; i < 2000; ++i) {
      const Vec a = rng.unit_vector(4), b = rng.unit_vector(4), c = rng.unit_vector(4);
      sym = std::max(sym, std::fabs(angle(a, b) - angle(b, a)));
      tri = std::max(tri, angle(a, c) - (angle(a, b) + angle(b, c)));
    }
    out.push_back(upper("angle.symmetry", sym, 1e-9));
    out.push_back(upper("angle.triangle_inequality", tri, 1e-9));
  }
  {
    const KnowledgeRegion orthant = Generators{
        {basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 2)}, true};
    const auto cc = circumcenter(orthant);
    const Vec expected = scaled({1.0, 1.0, 1.0}, 1.0 / std::sqrt(3.0));
    const double err = std::max(norm(sub(cc.center, expected)),
                                std::fabs(cc.uncertainty_angle - std::acos(1.0 / std::sqrt(3.0))));
    out.push_back(upper("circumcenter.orthant", err, 1e-9));
  }
  {
    // Brute-force oracle example region.
    std::vector<Vec> gens{{1.0, 0.3, 0.0}, {1.0, -0.3, 0.0}, {1.0, 0.0, 0.4}};
    for (Vec& g : gens) g = normalized(g);
    const auto cc = circumcenter(Generators{gens, true});
    const auto bf = sphere_search_max(
        3,
        [&](const Vec& c) {
          double worst = 0.0;
          for (const Vec& g : gens) worst = std::max(worst, angle_between(g, c));
          return -worst;
        },
        1'000'000, 3, 105);
    const double ang_diff = angle_between(cc.center, bf.argmax);
    const double val_diff = std::fabs(cc.uncertainty_angle - (-bf.value));
    out.push_back(upper("circumcenter.bruteforce_center", ang_diff, 1e-3));
    out.push_back(upper("circumcenter.bruteforce_angle", val_diff, 1e-3));
  }
  {
    Rng rng(106);
    double margin = 1e9;
    double perm = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const std::size_t d = 3 + rng.next_below(2);
      auto gens = random_pointed_generators(d, d, rng);
      const auto cc = circumcenter(Generators{gens, true});
      double center_val = 0.0;
      for (const Vec& g : gens) center_val = std::max(center_val, angle_between(g, cc.center));
      for (int i = 0; i < 1000; ++i) {
        const Vec cand = rng.unit_vector(d);
        double v = 0.0;
        for (const Vec& g : gens) v = std::max(v, angle_between(g, cand));
        margin = std::min(margin, v - center_val);
      }
      std::vector<Vec> shuffled(gens.rbegin(), gens.rend());
      const auto cc2 = circumcenter(Generators{shuffled, true});
      perm = std::max(perm, norm(sub(cc.center, cc2.center)));
    }
    out.push_back(lower("circumcenter.minimality_margin", margin, -1e-6));
    out.push_back(upper("circumcenter.permutation_stability", perm, 1e-8));
  }
  {
    const KnowledgeRegion cap = Cap{RevolutionCone(UnitVector(basis_vector(3, 0)), M_PI / 4.0)};
    const auto samples = sample_region(cap, 100, 107);
    double worst = 0.0;
    for (const Vec& s : samples)
      worst = std::max(worst, angle(s, basis_vector(3, 0)) - M_PI / 4.0);
    out.push_back(upper("sample_region.cap_membership", worst, tol().membership));

    const KnowledgeRegion half = Halfspaces{{basis_vector(3, 0), basis_vector(3, 1)}};
    const auto hs = sample_region(half, 100, 108);
    double worst_h = 0.0;
    for (const Vec& s : hs) worst_h = std::max(worst_h, std::max(-s[0], -s[1]));
    out.push_back(upper("sample_region.halfspace_membership", worst_h, tol().membership));

    const auto fs = sample_region(FullSphere{4}, 3, 109);
    out.push_back(upper("sample_region.sphere_count", std::fabs(static_cast<double>(fs.size()) - 3.0), 0.5));
  }
}

// --- cones suite ----------------------------------------------------------------

struct UpdateSample {
  EllipsoidalCone before;
  EllipsoidalCone after;
  Vec delta;
  double eta = 0.0;
};

UpdateSample random_update(Rng& rng, bool with_eta) {
  while (true) {
    const std::size_t p = 2 + rng.next_below(5);  // p in 2..6
    EllipsoidalCone cone = random_cone(p, 0.05, 2.5, rng);
    Vec delta = rng.unit_vector(p);
    if (dot(delta, cone.axis()) > 0.0) delta = scaled(delta, -1.0);
    const Vec dbar = matvec_t(cone.u, delta);
    Vec s(dbar.begin() + 1, dbar.end());
    if (norm(s) < 1e-6) continue;
    double q = 0.0;
    for (std::size_t i = 0; i + 1 < p; ++i) q += s[i] * s[i] * cone.w[i];
    double eta = 0.0;
    if (with_eta) {
      eta = rng.next_double() * std::sqrt(q) / (2.0 * static_cast<double>(p - 1));
      if (eta <= 0.0) continue;
    }
    UpdateSample sample;
    sample.before = cone;
    sample.delta = delta;
    sample.eta = eta;
    sample.after = cone_update(cone.w, cone.u, delta, eta, Mat::identity(p), p);
    return sample;
  }
}

double containment_violation(const UpdateSample& s, Rng& rng, std::size_t n_points) {
  double worst = 0.0;
  std::size_t kept = 0;
  std::size_t draws = 0;
  while (kept < n_points && draws < 50 * n_points) {
    ++draws;
    const Vec c = sample_cone_point(s.before, rng);
    if (dot(s.delta, c) < 0.0) continue;  // only the kept side must survive
    ++kept;
    const Vec z = matvec_t(s.after.u, c);
    double q = -z[0] * z[0];
    for (std::size_t i = 1; i < s.after.p; ++i) q += z[i] * z[i] / s.after.w[i - 1];
    worst = std::max(worst, std::max(q, -z[0]));
  }
  return worst;
}

double product_ratio(const UpdateSample& s) {
  double before = 1.0, after = 1.0;
  for (double v : s.before.w) before *= v;
  for (double v : s.after.w) after *= v;
  return after / before;
}

void cones_checks(std::vector<CheckResult>& out) {
  {
    const Vec w{1.0, 1.0};
    const auto up = cone_update(w, Mat::identity(3), {0.0, 1.0, 0.0}, 0.0, Mat::identity(3), 3);
    const double err = std::max(std::fabs(up.w[0] - 4.0 / 9.0), std::fabs(up.w[1] - 4.0 / 3.0));
    out.push_back(upper("cone_update.example_eigenvalues", err, 1e-12));
    out.push_back(upper("cone_update.example_product", product_ratio({{3, w, Mat::identity(3)}, up, {}, 0.0}),
                        std::exp(-0.5)));
    const auto up2 = cone_update(w, Mat::identity(3), {0.0, -1.0, 0.0}, 0.0, Mat::identity(3), 3);
    const double err2 = std::max(std::fabs(up2.w[0] - 4.0 / 9.0), std::fabs(up2.w[1] - 4.0 / 3.0));
    out.push_back(upper("cone_update.reflected_cut", err2, 1e-12));
  }
  {
    Rng rng(201);
    double worst_violation = 0.0, worst_ratio = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto s = random_update(rng, false);
      worst_violation = std::max(worst_violation, containment_violation(s, rng, 200));
      const double limit = std::exp(-1.0 / static_cast<double>(s.before.p - 1));
      worst_ratio = std::max(worst_ratio, product_ratio(s) - limit);
    }
    out.push_back(upper("cone_update.containment_central(200x200)", worst_violation, 1e-7));
    out.push_back(upper("cone_update.product_reduction_central", worst_ratio, 1e-9));
  }
  {
    Rng rng(202);
    double worst_violation = 0.0, worst_ratio = 0.0;
    for (int i = 0; i < 200; ++i) {
      const auto s = random_update(rng, true);
      worst_violation = std::max(worst_violation, containment_violation(s, rng, 200));
      const double limit = std::exp(-1.0 / (20.0 * static_cast<double>(s.before.p - 1)));
      worst_ratio = std::max(worst_ratio, product_ratio(s) - limit);
    }
    out.push_back(upper("cone_update.containment_shallow(200x200)", worst_violation, 1e-7));
    out.push_back(upper("cone_update.product_reduction_shallow", worst_ratio, 1e-9));
  }
  {
    // Interval rule at p = 2: central cut quarters the single eigenvalue.
    const auto up = cone_update({1.0}, Mat::identity(2), {0.0, 1.0}, 0.0, Mat::identity(2), 2);
    const double err = std::fabs(up.w[0] - 0.25);
    out.push_back(upper("cone_update.p2_central_quarter", err, 1e-12));
    // Kept endpoints of the interval stay inside.
    double worst = 0.0;
    for (const double x : {0.0, 0.5, 1.0}) {
      const Vec c{1.0, x};
      worst = std::max(worst, cone_contains(up, c) ? 0.0 : 1.0);
    }
    out.push_back(upper("cone_update.p2_containment", worst, 0.5));
  }
  {
    Rng rng(203);
    double low = 0.0, high = 0.0;
    for (int i = 0; i < 50; ++i) {
      const std::size_t p = 2 + rng.next_below(3);  // up to d = 4
      const auto cone = random_cone(p, 0.1, 2.5, rng);
      const double stated = cone_angle(cone);
      double sampled = 0.0;
      for (int k = 0; k < 100000; ++k)
        sampled = std::max(sampled, angle_between(sample_cone_point(cone, rng), cone.axis()));
      high = std::max(high, sampled - stated);
      low = std::max(low, stated - sampled);
    }
    out.push_back(upper("cone_angle.samples_below", high, 1e-12));
    out.push_back(upper("cone_angle.samples_reach", low, 1e-3));
  }
  {
    const auto cone = revolution_to_cone(M_PI / 3.0, basis_vector(3, 1));
    const double err = std::fabs(cone_angle(cone) - M_PI / 3.0);
    const bool member = cone_contains(cone, basis_vector(3, 1));
    out.push_back(upper("revolution_to_cone.roundtrip", err + (member ? 0.0 : 1.0), 1e-10));
  }
  {
    const auto center = poly_center(
        {basis_vector(3, 0), basis_vector(3, 1), basis_vector(3, 2)}, Mat::identity(3), 3);
    const double err = norm(sub(center, scaled({1.0, 1.0, 1.0}, 1.0 / std::sqrt(3.0))));
    out.push_back(upper("poly_center.orthant", err, 1e-9));

    Mat b(2, 3);
    b(0, 0) = 1.0;
    b(1, 1) = 1.0;
    const auto c2 = poly_center({basis_vector(3, 0), basis_vector(3, 1)}, b, 2);
    const double err2 = norm(sub(c2, scaled({1.0, 1.0}, 1.0 / std::sqrt(2.0))));
    out.push_back(upper("poly_center.two_dimensional", err2, 1e-9));
  }
  {
    Rng rng(204);
    double center_diff = 0.0, value_diff = 0.0;
    for (int trial = 0; trial < 20; ++trial) {
      const auto deltas = random_pointed_generators(3, 3, rng);
      const auto pc = poly_center_full(deltas, Mat::identity(3), 3);
      const auto bf = sphere_search_max(
          3,
          [&](const Vec& c) {
            double worst = 0.0;
            for (const Vec& q : pc.rays) worst = std::max(worst, angle_between(q, c));
            return -worst;
          },
          200000, 3, 205 + static_cast<std::uint64_t>(trial));
      center_diff = std::max(center_diff, angle_between(pc.center, bf.argmax));
      value_diff = std::max(value_diff, std::fabs(pc.max_ray_angle - (-bf.value)));
    }
    out.push_back(upper("poly_center.bruteforce_center", center_diff, 1e-3));
    out.push_back(upper("poly_center.bruteforce_angle", value_diff, 1e-3));
  }
  {
    const double v1 = polyhedral_angle_bound(1.0, 2);
    const double v2 = polyhedral_angle_bound(0.5, 3);
    const double err = std::max(std::fabs(v1 - std::acos(1.0 / std::pow(2.0, 1.5))),
                                std::fabs(v2 - std::acos(0.25 / std::pow(3.0, 1.5))));
    out.push_back(upper("polyhedral_angle_bound.values", err, 1e-12));
    out.push_back(upper("polyhedral_angle_bound.spot1", std::fabs(v1 - 1.209429), 1e-5));
    out.push_back(upper("polyhedral_angle_bound.spot2", std::fabs(v2 - 1.522665), 1e-5));
  }
  {
    Rng rng(206);
    double worst = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
      const std::size_t p = 2 + rng.next_below(2);
      const double eta = 0.2 + 0.6 * rng.next_double();
      const auto deltas = residual_filtered_sequence(p, eta, rng);
      const auto pc = poly_center_full(deltas, Mat::identity(p), p);
      worst = std::max(worst, pc.max_ray_angle - polyhedral_angle_bound(eta, p));
    }
    out.push_back(upper("poly_center.residual_filtered_angle", worst, 1e-9));
  }
  {
    const auto di = inradius_diagnostics(Mat::identity(3), 3);
    const double err = std::max({std::fabs(di.rho_lower - 1.0 / std::sqrt(3.0)),
                                 std::fabs(di.cond_upper - 9.0), std::fabs(di.phi - 1.0)});
    out.push_back(upper("inradius_diagnostics.identity", err, 1e-9));

    Mat g(2, 2);
    g(0, 0) = 1.0;
    g(0, 1) = 1.0 / std::sqrt(2.0);
    g(1, 1) = 1.0 / std::sqrt(2.0);
    const auto d2 = inradius_diagnostics(g, 2);
    const Mat gram = matmul(g.transposed(), g);
    const auto eg = sym_eig(SymmetricMatrix(gram));
    const double ratio = eg.eigenvalues.back() / eg.eigenvalues.front();
    const double err2 = std::max(std::fabs(d2.phi - 1.0 / std::sqrt(2.0)), std::fabs(d2.cond_upper - 8.0));
    out.push_back(upper("inradius_diagnostics.pair_example", err2, 1e-9));
    out.push_back(upper("inradius_diagnostics.pair_ratio_bound", ratio - d2.cond_upper, 0.0));
  }
  {
    Rng rng(207);
    double worst_inradius = 0.0, worst_cond = 0.0, worst_residual = 0.0;
    for (int trial = 0; trial < 60; ++trial) {
      const std::size_t p = 2 + rng.next_below(4);  // p in 2..5
      const double eta = 0.25 + 0.5 * rng.next_double();
      const auto gens = residual_filtered_sequence(p, eta, rng);
      Mat g(p, p);
      for (std::size_t j = 0; j < p; ++j) g.set_col(j, gens[j]);
      const auto di = inradius_diagnostics(g, p);

      const Mat gram = matmul(g.transposed(), g);
      const auto eg = sym_eig(SymmetricMatrix(gram));
      worst_cond = std::max(worst_cond, eg.eigenvalues.back() / eg.eigenvalues.front() - di.cond_upper);

      // Sampled inradius of the simplicial cone spanned by the columns:
      // distance to the nearest facet, maximized over the spherical patch.
      std::vector<Vec> inward;  // unit inward facet normals (rows of G^-1)
      for (std::size_t i = 0; i < p; ++i) {
        Mat sys = g.transposed();
        const Vec nrm = solve_linear(sys, basis_vector(p, i));
        inward.push_back(normalized(nrm));
      }
      const auto bf = sphere_search_max(
          p,
          [&](const Vec& c) {
            double m = std::numeric_limits<double>::infinity();
            for (const Vec& nu : inward) m = std::min(m, dot(nu, c));
            return m;
          },
          30000, 3, 208 + static_cast<std::uint64_t>(trial));
      worst_inradius = std::max(worst_inradius, di.rho_lower - bf.value);

      for (std::size_t i = 0; i < p; ++i) {
        std::vector<Vec> others;
        for (std::size_t j = 0; j < p; ++j)
          if (j != i) others.push_back(gens[j]);
        const double res2 = std::pow(norm(sub(gens[i], project_onto_span(others, gens[i]))), 2.0);
        const double bound = std::pow(eta, 2.0 * static_cast<double>(p - 1 - i)) *
                             (i > 0 ? eta * eta : 1.0);
        worst_residual = std::max(worst_residual, bound - res2);
      }
    }
    out.push_back(upper("inradius.sampled_vs_bound", worst_inradius, 1e-3));
    out.push_back(upper("gram_condition.bound", worst_cond, 1e-9));
    out.push_back(upper("residual_recursion.bound", worst_residual, 1e-9));
  }
  {
    Rng rng(209);
    double worst = 0.0;
    for (int trial = 0; trial < 25; ++trial) {
      const auto deltas = random_pointed_generators(3, 3, rng);
      const auto pc = poly_center_full(deltas, Mat::identity(3), 3);
      const double mu = std::sin(pc.max_ray_angle);
      // Dual cone is spanned by the deltas; its facet normals are the rays.
      std::vector<Vec> rays_unit;
      for (const Vec& q : pc.rays) rays_unit.push_back(normalized(q));
      const auto bf = sphere_search_max(
          3,
          [&](const Vec& c) {
            double m = std::numeric_limits<double>::infinity();
            for (const Vec& q : rays_unit) m = std::min(m, dot(q, c));
            return m;
          },
          60000, 3, 210 + static_cast<std::uint64_t>(trial));
      const double rho = bf.value;
      worst = std::max(worst, std::fabs(mu * mu + rho * rho - 1.0));
    }
    out.push_back(upper("duality.mu2_plus_rho2", worst, 1e-3));
  }
}

// --- policies suite -------------------------------------------------------------

void policies_checks(std::vector<CheckResult>& out) {
  {
    RunConfig config;
    config.policy = PolicyKind::Ellipsoidal;
    config.env.kind = EnvKind::Killer;
    config.env.alpha = M_PI / 4.0;
    config.d = 3;
    config.T = 1000;
    config.verify_inline = true;
    config.assert_bounds = true;
    const auto result = run(config);
    out.push_back(upper("ellipsoidal.killer_regret_vs_bound", result.cum_regret, *result.bound));
    double floor_gap = std::numeric_limits<double>::infinity();
    const double floor = std::pow(config.resolved_params().epsilon / 30.0, 2.0) - 1e-12;
    for (const auto& rec : result.records)
      if (rec.lambda_max) floor_gap = std::min(floor_gap, *rec.lambda_max - floor);
    out.push_back(lower("ellipsoidal.lambda_floor_gap", floor_gap, 0.0));
  }
  {
    PolicyParams params{0.1, 0.01};
    auto cone = revolution_to_cone(M_PI / 4.0, basis_vector(3, 0));
    EllipsoidalConesPolicy policy(cone, params);
    const Instance inst({Vec{0.0, 0.0, 0.0}, Vec{0.0, 0.0, 0.0}});
    const PeriodKind k0 = policy.observe(Feedback{inst, 0, 1});
    out.push_back(upper("ellipsoidal.zero_difference",
                        k0 == PeriodKind::ZeroDifference ? 0.0 : 1.0, 0.5));
    // A difference with a small quadratic form: low-regret, no state change.
    const Instance small({Vec{0.0, 0.0, 0.0}, scaled({0.0, 0.04, 0.0}, 1.0)});
    const PeriodKind k1 = policy.observe(Feedback{small, 0, 1});
    out.push_back(upper("ellipsoidal.low_regret_class", k1 == PeriodKind::LowRegret ? 0.0 : 1.0, 0.5));
    // A full-size difference triggers an update with the known eigenvalues.
    const Instance big({Vec{0.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}});
    const PeriodKind k2 = policy.observe(Feedback{big, 0, 1});
    const double err = std::max(std::fabs(policy.cone().w[0] - 4.0 / 9.0),
                                std::fabs(policy.cone().w[1] - 4.0 / 3.0));
    out.push_back(upper("ellipsoidal.cone_update_class",
                        (k2 == PeriodKind::ConeUpdate ? 0.0 : 1.0) + err, 1e-9));
  }
  {
    RunConfig config;
    config.policy = PolicyKind::Projected;
    config.env.kind = EnvKind::Random;
    config.env.k_actions = 2;
    config.d = 3;
    config.T = 2000;
    config.seed = 11;
    config.verify_inline = true;
    config.assert_bounds = true;
    const auto result = run(config);
    out.push_back(upper("projected.random_regret_vs_bound", result.cum_regret, *result.bound));
    out.push_back(upper("projected.subspace_updates",
                        static_cast<double>(result.subspace_updates), static_cast<double>(config.d)));
    const PolicyParams params = config.resolved_params();
    const double tan_alpha = std::pow(static_cast<double>(config.d), 1.5) /
                             std::pow(params.eta, static_cast<double>(config.d) - 1.0);
    double worst = 0.0;
    for (const auto& [p, count] : result.cone_updates_per_dim) {
      const double limit = 20.0 * std::pow(static_cast<double>(p - 1), 2.0) *
                               std::log(10.0 * static_cast<double>(p) * tan_alpha / params.epsilon) +
                           1.0;
      worst = std::max(worst, static_cast<double>(count) - limit);
    }
    out.push_back(upper("projected.cone_updates_per_dim", worst, 0.0));
  }
  {
    // Scripted transitions: ray, then two-dimensional restart.
    PolicyParams params{0.1, 0.05};
    ProjectedConesPolicy policy(3, params);
    const Instance first({Vec{0.0, 0.0, 0.0}, Vec{0.0, 1.0, 0.0}});
    const PeriodKind k1 = policy.observe(Feedback{first, 0, 1});
    const bool ray_ok = k1 == PeriodKind::SubspaceUpdate && policy.subspace_dim() == 1;
    const Instance second({Vec{0.0, 0.0, 0.0}, Vec{1.0, 0.0, 0.0}});
    const PeriodKind k2 = policy.observe(Feedback{second, 0, 1});
    const bool cone_ok = k2 == PeriodKind::SubspaceUpdate && policy.subspace_dim() == 2 && policy.cone();
    double w_err = 1.0;
    if (cone_ok) {
      const double expected = 27.0 / std::pow(params.eta, 4.0);
      w_err = std::fabs(policy.cone()->w[0] - expected) / expected;
    }
    out.push_back(upper("projected.transitions",
                        (ray_ok ? 0.0 : 1.0) + (cone_ok ? 0.0 : 1.0) + w_err, 1e-12));
    const double fresh_angle_gap = cone_angle(*policy.cone()) -
                                   std::atan(std::sqrt(27.0 / std::pow(params.eta, 4.0)));
    out.push_back(upper("projected.fresh_cone_angle", std::fabs(fresh_angle_gap), 1e-9));
    if (policy.last_restart_max_angle()) {
      out.push_back(upper("projected.restart_angle_bound",
                          *policy.last_restart_max_angle() - polyhedral_angle_bound(params.eta, 3),
                          1e-9));
    }
  }
  {
    // Greedy action on a cap picks the action minimizing the axis cost.
    GreedyPolicy greedy(Cap{RevolutionCone(UnitVector(basis_vector(3, 0)), M_PI / 4.0)});
    const Instance inst({Vec{0.0, 0.0, 0.0}, normalized({-0.1, 1.0, 0.0})});
    const std::size_t pick = greedy.act(inst, TieBreak::first());
    out.push_back(upper("greedy.cap_action", pick == 1 ? 0.0 : 1.0, 0.5));
    const Instance single({Vec{0.1, 0.1, 0.0}});
    out.push_back(upper("greedy.single_action", greedy.act(single, TieBreak::first()) == 0 ? 0.0 : 1.0, 0.5));
  }
  {
    // Low-regret certificate across a killer run with the ellipsoidal policy.
    RunConfig config;
    config.policy = PolicyKind::Ellipsoidal;
    config.env.kind = EnvKind::Killer;
    config.d = 3;
    config.T = 500;
    const auto result = run(config);
    const double eps = config.resolved_params().epsilon;
    double worst = 0.0;
    for (const auto& rec : result.records)
      if (rec.kind == PeriodKind::LowRegret) worst = std::max(worst, rec.regret - eps);
    out.push_back(upper("ellipsoidal.low_regret_certificate", worst, 1e-9));
  }
}

// --- adversary suite --------------------------------------------------------------

void adversary_checks(std::vector<CheckResult>& out) {
  {
    const double alpha = M_PI / 4.0;
    const std::size_t T = 200;
    Environment env = greedy_killer(alpha, T);
    GreedyPolicy greedy(env.initial_region);
    const double eps1 = std::tan(alpha) / (2.0 * static_cast<double>(T));
    double gen_err = 0.0, regret_err = 0.0, regret_floor = 1e9;
    History history;
    for (std::size_t t = 1; t <= T; ++t) {
      const Instance inst = env.next_instance(t, history);
      const std::size_t expert = forward_solve(env.c_star, inst, TieBreak::first());
      const std::size_t chosen = greedy.act(inst, TieBreak::adversarial(env.c_star));
      const double r = regret(inst, chosen, expert, env.c_star);
      const double eps_t = static_cast<double>(t) * eps1;
      const double predicted = (std::sin(alpha) - eps_t * std::cos(alpha)) / std::sqrt(1.0 + eps_t * eps_t);
      regret_err = std::max(regret_err, std::fabs(r - predicted));
      regret_floor = std::min(regret_floor, r - std::sin(alpha) / 4.0);
      greedy.observe(Feedback{inst, expert, chosen});
      const auto expected = killer_generators(alpha, eps_t);
      const auto& track = std::get<Generators>(greedy.region()).dirs;
      double match = track.size() == expected.size() ? 0.0 : 1.0;
      for (const Vec& e : expected) {
        double best = 1e9;
        for (const Vec& g : track) best = std::min(best, norm(sub(e, g)));
        match = std::max(match, best);
      }
      gen_err = std::max(gen_err, match);
      history.push_back({inst, chosen, expert});
    }
    out.push_back(upper("killer.generator_track", gen_err, 1e-9));
    out.push_back(upper("killer.per_period_regret_formula", regret_err, 1e-12));
    out.push_back(lower("killer.regret_floor", regret_floor, 0.0));
  }
  {
    double worst = 0.0;
    for (const double alpha : {M_PI / 12.0, M_PI / 6.0, M_PI / 4.0, M_PI / 3.0}) {
      Environment env = offline_tight(Cap{RevolutionCone(UnitVector(basis_vector(3, 0)), alpha)});
      GreedyPolicy greedy(env.initial_region);
      const Instance inst = env.next_instance(1, {});
      const std::size_t expert = forward_solve(env.c_star, inst, TieBreak::first());
      const std::size_t chosen = greedy.act(inst, TieBreak::adversarial(env.c_star));
      const double r = regret(inst, chosen, expert, env.c_star);
      worst = std::max(worst, std::fabs(r - std::sin(alpha)));
    }
    out.push_back(upper("offline_tight.realized_regret", worst, 1e-9));
  }
  {
    Environment a = random_pairs(4, 3, 99, CStarMode::Uniform, FullSphere{4});
    Environment b = random_pairs(4, 3, 99, CStarMode::Uniform, FullSphere{4});
    double mismatch = norm(sub(a.c_star, b.c_star));
    double diameter = 0.0, expert_gap = 0.0;
    for (std::size_t t = 1; t <= 50; ++t) {
      const Instance ia = a.next_instance(t, {});
      const Instance ib = b.next_instance(t, {});
      for (std::size_t j = 0; j < ia.size(); ++j) mismatch = std::max(mismatch, norm(sub(ia.features[j], ib.features[j])));
      for (std::size_t i = 0; i < ia.size(); ++i)
        for (std::size_t j = 0; j < ia.size(); ++j)
          diameter = std::max(diameter, norm(sub(ia.features[i], ia.features[j])) - 1.0);
      const std::size_t expert = forward_solve(a.c_star, ia, TieBreak::first());
      for (const Vec& f : ia.features)
        expert_gap = std::max(expert_gap, dot(ia.features[expert], a.c_star) - dot(f, a.c_star));
    }
    out.push_back(upper("random_pairs.determinism", mismatch, 0.0));
    out.push_back(upper("random_pairs.diameter", diameter, tol().unit_norm));
    out.push_back(upper("random_pairs.expert_optimality", expert_gap, 1e-12));
  }
  {
    double worst = 1.0;
    const Environment killer = greedy_killer(M_PI / 4.0, 10);
    const Environment offline = offline_tight(Cap{RevolutionCone(UnitVector(basis_vector(3, 0)), M_PI / 6.0)});
    const Environment rnd = random_pairs(3, 2, 5, CStarMode::Boundary,
                                         Cap{RevolutionCone(UnitVector(basis_vector(3, 0)), M_PI / 4.0)});
    worst = region_contains(killer.initial_region, killer.c_star) &&
                    region_contains(offline.initial_region, offline.c_star) &&
                    region_contains(rnd.initial_region, rnd.c_star)
                ? 0.0
                : 1.0;
    out.push_back(upper("environments.c_star_membership", worst, 0.5));
  }
}

}  // namespace

std::vector<CheckResult> verify_suite(const std::string& suite) {
  std::vector<CheckResult> out;
  if (suite == "geometry" || suite == "all") geometry_checks(out);
  if (suite == "cones" || suite == "all") cones_checks(out);
  if (suite == "policies" || suite == "all") policies_checks(out);
  if (suite == "adversary" || suite == "all") adversary_checks(out);
  if (out.empty())
    fail(ErrorKind::ConfigError, "unknown suite '" + suite + "' (expected geometry|cones|policies|adversary|all)");
  return out;
}

}  // namespace conelearn
