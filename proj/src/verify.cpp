#include "verify.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <string>

#include "hyperthick/analysis.hpp"
#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/properties.hpp"
#include "hyperthick/shape_spec.hpp"

namespace hyperthick::cli::verify {
namespace {

using nlohmann::json;

json check(std::string name, double value, double tolerance, bool pass) {
  return {{"name", std::move(name)}, {"value", value}, {"tolerance", tolerance}, {"pass", pass}};
}

json finish(std::string suite, json checks, json extra = json::object()) {
  bool pass = true;
  for (const auto& c : checks) pass = pass && c["pass"].get<bool>();
  json out = {{"suite", std::move(suite)}, {"pass", pass}, {"checks", std::move(checks)}};
  out.update(extra);
  return out;
}

double rel(double a, double b) { return std::abs(a - b) / std::max(std::abs(b), 1e-300); }

}  // namespace

json sphere_optimality(const SphereOptions& o) {
  const auto full = analysis::sphere_optimality_test(o.n, o.m, o.trials, o.amplitude, o.seed, o.resolution);
  const auto half = analysis::sphere_optimality_test(o.n, o.m, o.trials, 0.5 * o.amplitude, o.seed, o.resolution);
  double worst = -INFINITY, lo = INFINITY, hi = -INFINITY;
  std::vector<double> deltas;
  for (std::size_t i = 0; i < full.size(); ++i) {
    worst = std::max(worst, full[i].delta_t);
    deltas.push_back(full[i].delta_t);
    if (half[i].delta_t != 0.0) {
      const double ratio = full[i].delta_t / half[i].delta_t;
      lo = std::min(lo, ratio);
      hi = std::max(hi, ratio);
    }
  }
  json checks = json::array();
  checks.push_back(check("max_delta_t", worst, 1e-12, worst <= 1e-12));
  if (o.amplitude > 0.0 && !full.empty()) {
    checks.push_back(check("min_amplitude_ratio", lo, 3.5, lo >= 3.5));
    checks.push_back(check("max_amplitude_ratio", hi, 4.5, hi <= 4.5));
  }
  std::sort(deltas.begin(), deltas.end());
  const double median = deltas.empty() ? 0.0 : deltas[deltas.size() / 2];
  return finish("sphere-optimality", std::move(checks), {{"median_delta_t", median}, {"trials", o.trials}});
}

std::vector<IdentityCase> default_identity_cases() {
  return {{2, 1, 1.0, 0.5},  {2, 1, 2.0, 1.0},  {3, 1, 1.0, 0.3},  {3, 1, 0.5, 1.0},
          {3, 2, 1.0, 0.75}, {4, 2, 1.5, 0.9},  {4, 1, 1.0, 0.6},  {5, 2, 0.7, 1.0},
          {5, 1, 1.0, 1.0},  {6, 1, 2.0, 0.4},  {7, 2, 1.0, 0.95}, {6, 5, 3.0, 0.2}};
}

json identity(const std::vector<IdentityCase>& cases, int resolution) {
  // Sign patterns (s_V, s_M) of (S/V_m) T + s_V lambda n V + s_M mu (n+1) M.
  const int patterns[4][2] = {{-1, -1}, {-1, +1}, {+1, -1}, {+1, +1}};
  double worst[4] = {0, 0, 0, 0};
  json rows = json::array();
  for (const auto& c : cases) {
    const auto p = stationary::StationaryParams::make(c.n, c.m, c.lambda, c.ecc);
    const auto b = properties::body_properties(p, resolution);
    const double lead = nsphere::unit_sphere_area(c.n - 1) / nsphere::unit_ball_volume(c.m) * b.thickness;
    const double vterm = p.lambda() * c.n * b.volume, mterm = p.mu() * (c.n + 1) * b.moment;
    json row = {{"n", c.n}, {"m", c.m}, {"lambda", c.lambda}, {"ecc", c.ecc}};
    for (int k = 0; k < 4; ++k) {
      const double r = std::abs(lead + patterns[k][0] * vterm + patterns[k][1] * mterm) / std::abs(lead);
      worst[k] = std::max(worst[k], r);
    }
    row["residual"] = properties::linear_identity_residual(b, p) / lead;
    rows.push_back(row);
  }
  json checks = json::array();
  int passing = 0;
  const char* names[4] = {"pattern_minus_minus", "pattern_minus_plus", "pattern_plus_minus", "pattern_plus_plus"};
  for (int k = 0; k < 4; ++k) {
    if (worst[k] <= 1e-7) ++passing;
    checks.push_back(check(names[k], worst[k], 1e-7, k == 0 ? worst[k] <= 1e-7 : worst[k] > 1e-7));
  }
  checks.push_back(check("patterns_passing", passing, 1, passing == 1));
  return finish("identity", std::move(checks), {{"cases", rows}});
}

json nullvector(const NullvectorOptions& o) {
  const auto p = stationary::StationaryParams::make(o.n, o.m, o.lambda, o.ecc);
  const auto shape = analysis::stationary_star_shape(p);
  double worst_cond = 0.0, err_lambda = 0.0, err_mu = 0.0;
  for (int i = 0; i < o.resamplings; ++i) {
    const auto pts = analysis::random_boundary_points(shape, o.n + 2, o.seed + static_cast<std::uint64_t>(i));
    const auto nv = analysis::nullvector_recover(analysis::make_deformation_sample(o.m, pts));
    worst_cond = std::max(worst_cond, nv.condition);
    err_lambda = std::max(err_lambda, rel(nv.lambda, p.lambda()));
    if (p.mu() != 0.0) err_mu = std::max(err_mu, rel(nv.mu_norm, std::abs(p.mu())));
    else err_mu = std::max(err_mu, nv.mu_norm);
  }
  // Non-stationary comparison: unit ball with a 0.2 second-harmonic wobble.
  const auto blob = parse_shape_spec("harmonic:n=" + std::to_string(o.n) + ";c0=1;c2=0.2");
  double blob_cond = 0.0;
  bool blob_rejected = false;
  try {
    const auto pts = analysis::random_boundary_points(blob.shape, o.n + 2, o.seed);
    blob_cond = analysis::nullvector_recover(analysis::make_deformation_sample(o.m, pts)).condition;
  } catch (const RankError& e) {
    blob_rejected = true;
    const auto& s = e.singular_values();
    blob_cond = s.back() / s[s.size() - 2];
  }
  json checks = json::array();
  checks.push_back(check("max_condition", worst_cond, analysis::kRankThreshold, worst_cond < analysis::kRankThreshold));
  checks.push_back(check("lambda_rel_error", err_lambda, 1e-5, err_lambda <= 1e-5));
  checks.push_back(check("mu_rel_error", err_mu, 1e-5, err_mu <= 1e-5));
  checks.push_back(check("blob_condition", blob_cond, analysis::kRankThreshold, blob_rejected));
  return finish("nullvector", std::move(checks), {{"resamplings", o.resamplings}});
}

json factorization(std::optional<int> gap, int points, std::uint64_t seed) {
  if (points < 1) throw DomainError("factorization: points must be positive");
  std::vector<int> gaps;
  if (gap) {
    if (*gap < 1) throw DomainError("factorization: n - m must be >= 1");
    gaps.push_back(*gap);
  } else {
    for (int d = 1; d <= 8; ++d) gaps.push_back(d);
  }
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> uniform(-2.0, 2.0);
  json checks = json::array();
  for (int d : gaps) {
    double worst = 0.0;
    for (int i = 0; i < points; ++i) {
      const double w = uniform(rng);
      const double lhs = stationary::critical_polynomial(d, w);
      const double rhs = (w - 1.0) * (w - 1.0) * stationary::critical_cofactor(d, w);
      // Scale: magnitude of the terms of the expanded polynomial.
      const double scale = 1.0 + (d + 1) * std::pow(std::abs(w), d) + d * std::pow(std::abs(w), d + 1);
      worst = std::max(worst, std::abs(lhs - rhs) / scale);
    }
    checks.push_back(check("gap_" + std::to_string(d), worst, 1e-12, worst <= 1e-12));
  }
  return finish("factorization", std::move(checks), {{"points", points}});
}

}  // namespace hyperthick::cli::verify
