#include "hyperthick/analysis.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/parallel.hpp"

namespace hyperthick::analysis {
namespace {

double dot(std::span<const double> a, std::span<const double> b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

std::vector<double> axis_or_default(int n, std::span<const double> axis) {
  if (axis.empty()) {
    std::vector<double> e(n, 0.0);
    e[0] = 1.0;
    return e;
  }
  if (static_cast<int>(axis.size()) != n) throw DomainError("axis dimension does not match shape");
  if (std::abs(dot(axis, axis) - 1.0) > 1e-12) throw DomainError("axis must be a unit vector");
  return {axis.begin(), axis.end()};
}

std::mt19937_64 trial_rng(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return std::mt19937_64(seq);
}

// Random polynomial of degree <= 3 (no constant) in the unit direction.
struct CubicField {
  int n;
  std::vector<double> c1, c2, c3;

  CubicField(int dim, std::mt19937_64& rng) : n(dim), c1(dim), c2(dim * dim), c3(dim * dim * dim) {
    std::normal_distribution<double> normal;
    for (auto& c : c1) c = normal(rng);
    for (auto& c : c2) c = normal(rng);
    for (auto& c : c3) c = normal(rng);
  }

  double operator()(std::span<const double> u) const {
    double s = 0.0;
    for (int i = 0; i < n; ++i) {
      s += c1[i] * u[i];
      for (int j = 0; j < n; ++j) {
        s += c2[i * n + j] * u[i] * u[j];
        for (int k = 0; k < n; ++k) s += c3[(i * n + j) * n + k] * u[i] * u[j] * u[k];
      }
    }
    return s;
  }
};

}  // namespace

double stationarity_residual(const thickness::StarShape& shape, int m, double lambda, double mu,
                             std::span<const double> axis, const geometry::DirectionGrid& grid) {
  const int n = shape.n;
  nsphere::require_section_dims(m, n);
  if (grid.dimension() != n) throw DomainError("grid dimension does not match shape");
  const std::vector<double> e = axis_or_default(n, axis);
  const std::vector<double> radii = thickness::sample_radii(shape, grid);
  double worst = 0.0;
  grid.visit(0, grid.size(), [&](std::size_t i, const geometry::Direction& d, double) {
    const double r = radii[i];
    const double lead = std::pow(r, m - 1);
    const double res = lead - lambda * std::pow(r, n - 1) - mu * std::pow(r, n) * dot(d.unit(), e);
    worst = std::max(worst, std::abs(res) / lead);
  });
  return worst;
}

thickness::StarShape stationary_star_shape(const stationary::StationaryParams& p, std::span<const double> axis) {
  if (p.shape_class() == stationary::ShapeClass::Open)
    throw UnboundedRegionError("open stationary shapes are not star bodies");
  std::vector<double> e = axis_or_default(p.n(), axis);
  return {p.n(), [p, e = std::move(e)](const geometry::Direction& d) {
            const double c = std::clamp(dot(d.unit(), e), -1.0, 1.0);
            return stationary::radial_profile(p, std::acos(c));
          }};
}

DeformationSample make_deformation_sample(int m, std::vector<BoundaryPoint> points) {
  if (points.empty()) throw DomainError("deformation sample needs points");
  const int n = points.front().direction.dimension();
  nsphere::require_section_dims(m, n);
  if (static_cast<int>(points.size()) != n + 2)
    throw DomainError("deformation sample needs exactly n+2 points");
  Eigen::MatrixXd mat(n + 2, n + 2);
  for (int row = 0; row < n + 2; ++row) {
    const BoundaryPoint& pt = points[row];
    if (pt.direction.dimension() != n) throw DomainError("mixed dimensions in deformation sample");
    if (!(pt.r > 0.0) || !std::isfinite(pt.r)) throw DomainError("boundary radius must be positive");
    const double rn = std::pow(pt.r, n);
    mat(row, 0) = std::pow(pt.r, m - 1);
    mat(row, 1) = std::pow(pt.r, n - 1);
    const auto u = pt.direction.unit();
    for (int k = 0; k < n; ++k) mat(row, 2 + k) = rn * u[k];
  }
  return {n, m, std::move(points), std::move(mat)};
}

std::vector<BoundaryPoint> random_boundary_points(const thickness::StarShape& shape, int count,
                                                  std::uint64_t seed) {
  if (count < 1) throw DomainError("point count must be positive");
  std::mt19937_64 rng = trial_rng(seed, 0);
  std::normal_distribution<double> normal;
  std::vector<BoundaryPoint> out;
  out.reserve(count);
  std::vector<double> x(shape.n);
  while (static_cast<int>(out.size()) < count) {
    for (auto& v : x) v = normal(rng);
    if (dot(x, x) < 1e-20) continue;
    geometry::Direction d = geometry::Direction::from_cartesian(x);
    const double r = shape.radial(d);
    out.push_back({r, std::move(d)});
  }
  return out;
}

std::vector<double> singular_values(const DeformationSample& sample) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sample.matrix);
  const Eigen::VectorXd s = svd.singularValues();
  return {s.data(), s.data() + s.size()};
}

NullVector nullvector_recover(const DeformationSample& sample) {
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(sample.matrix, Eigen::ComputeFullV);
  const Eigen::VectorXd s = svd.singularValues();
  std::vector<double> spectrum(s.data(), s.data() + s.size());
  const Eigen::Index k = s.size();
  const double condition = s(k - 1) / s(k - 2);
  if (!(condition <= kRankThreshold)) throw RankError("deformation matrix has full rank", spectrum);
  if (s(k - 2) / s(0) < kRankThreshold) throw RankError("deformation matrix null space is not one-dimensional", spectrum);

  const Eigen::VectorXd v = svd.matrixV().col(k - 1);
  if (std::abs(v(0)) < kRankThreshold) throw RankError("null vector has no r^{m-1} component", spectrum);
  NullVector out;
  out.lambda = -v(1) / v(0);
  out.mu_vector.resize(sample.n);
  for (int i = 0; i < sample.n; ++i) out.mu_vector[i] = -v(2 + i) / v(0);
  out.mu_norm = std::sqrt(dot(out.mu_vector, out.mu_vector));
  out.condition = condition;
  out.singular_values = std::move(spectrum);
  return out;
}

void project_constraints(std::vector<double>& radii, const geometry::DirectionGrid& grid, double target_volume,
                         std::span<const double> target_moment, double tol, int max_iter) {
  const int n = grid.dimension();
  if (radii.size() != grid.size()) throw DomainError("radius count does not match grid size");
  if (!(target_volume > 0.0)) throw DomainError("target volume must be positive");
  std::vector<double> goal(n, 0.0);
  if (!target_moment.empty()) {
    if (static_cast<int>(target_moment.size()) != n) throw DomainError("target moment dimension mismatch");
    goal.assign(target_moment.begin(), target_moment.end());
  }
  const std::vector<double> units = grid.unit_vectors();
  const std::vector<double> weights = grid.weights();
  auto unit = [&](std::size_t a) { return std::span<const double>(units).subspan(a * n, n); };
  for (int iter = 0; iter < max_iter; ++iter) {
    const double vol = thickness::volume(radii, grid);
    std::vector<double> mom = thickness::moment(radii, grid);
    for (int i = 0; i < n; ++i) mom[i] -= goal[i];
    const double shift = std::sqrt(dot(mom, mom)) / target_volume;
    if (std::abs(vol / target_volume - 1.0) <= tol && shift <= tol) return;

    const double scale = std::pow(target_volume / vol, 1.0 / n);
    for (auto& r : radii) r *= scale;

    // dM_i = -sum w r^n u_i u_j c_j for r -> r - c.u.
    Eigen::MatrixXd jac = Eigen::MatrixXd::Zero(n, n);
    std::vector<double> mom_scaled = thickness::moment(radii, grid);
    for (int i = 0; i < n; ++i) mom_scaled[i] -= goal[i];
    for (std::size_t a = 0; a < radii.size(); ++a) {
      const auto u = unit(a);
      const double wr = weights[a] * std::pow(radii[a], n);
      for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) jac(i, j) += wr * u[i] * u[j];
    }
    const Eigen::VectorXd c = jac.ldlt().solve(Eigen::Map<const Eigen::VectorXd>(mom_scaled.data(), n));
    for (std::size_t a = 0; a < radii.size(); ++a) {
      const auto u = unit(a);
      double cu = 0.0;
      for (int i = 0; i < n; ++i) cu += c(i) * u[i];
      radii[a] -= cu;
      if (!(radii[a] > 0.0)) throw ProjectionError("constraint projection produced a non-positive radius");
    }
  }
  throw ProjectionError("constraint projection did not converge");
}

std::vector<SphereTrial> sphere_optimality_test(int n, int m, int trials, double amplitude, std::uint64_t seed,
                                                int resolution) {
  nsphere::require_section_dims(m, n);
  if (trials < 0) throw DomainError("trial count must be non-negative");
  if (!(amplitude >= 0.0 && amplitude <= 0.1)) throw DomainError("amplitude must lie in [0, 0.1]");
  const geometry::DirectionGrid grid = geometry::build_grid(n, resolution);
  const std::vector<double> unit(grid.size(), 1.0);
  const double v0 = thickness::volume(unit, grid);
  const double t0 = thickness::average_thickness(unit, m, grid);
  const std::vector<double> units = grid.unit_vectors();

  std::vector<SphereTrial> out(trials);
  parallel::for_each_index(static_cast<std::size_t>(trials), [&](std::size_t t) {
    std::mt19937_64 rng = trial_rng(seed, t);
    const CubicField field(n, rng);
    std::vector<double> h(grid.size());
    double peak = 0.0;
    for (std::size_t a = 0; a < h.size(); ++a) {
      h[a] = field(std::span<const double>(units).subspan(a * n, n));
      peak = std::max(peak, std::abs(h[a]));
    }
    std::vector<double> radii(grid.size());
    for (std::size_t a = 0; a < h.size(); ++a) radii[a] = 1.0 + amplitude * h[a] / peak;
    project_constraints(radii, grid, v0);
    out[t] = {static_cast<int>(t), amplitude, thickness::average_thickness(radii, m, grid) - t0};
  });
  return out;
}

DumbbellConfig::DumbbellConfig(double area, double centroid, double gamma)
    : area_(area), centroid_(centroid), gamma_(gamma) {
  if (!(area > 0.0) || !std::isfinite(area)) throw DomainError("dumbbell area must be positive");
  if (!(centroid > 0.0) || !std::isfinite(centroid)) throw DomainError("dumbbell centroid must be positive");
  if (!(gamma > 0.0 && gamma < 1.0)) throw DomainError("dumbbell gamma must lie in (0, 1)");
}

double DumbbellConfig::radius_near() const { return std::sqrt(area_near() / std::numbers::pi); }
double DumbbellConfig::radius_far() const { return std::sqrt(area_far() / std::numbers::pi); }

double dumbbell_asymptotic(const DumbbellConfig& config) {
  return 2.0 * config.radius_near() + config.area_far() / (std::numbers::pi * config.far_center());
}

thickness::McEstimate dumbbell_exact(const DumbbellConfig& config, std::uint64_t samples_per_disc,
                                     std::uint64_t seed) {
  if (!config.disjoint()) throw GeometryError("dumbbell discs overlap");
  auto disc = [](double cx, double radius) {
    thickness::IndicatorBody body;
    body.n = 2;
    body.bounding_radius = radius;
    body.bounding_center = {cx, 0.0};
    const double r2 = radius * radius;
    body.contains = [cx, r2](std::span<const double> x) {
      const double dx = x[0] - cx;
      return dx * dx + x[1] * x[1] <= r2;
    };
    return body;
  };
  const std::vector<thickness::IndicatorBody> parts{disc(0.0, config.radius_near()),
                                                    disc(config.far_center(), config.radius_far())};
  return thickness::thickness_montecarlo(parts, 1, samples_per_disc, seed);
}

double dumbbell_thickness(const DumbbellConfig& config, bool exact, std::uint64_t samples_per_disc,
                          std::uint64_t seed) {
  if (!config.disjoint()) throw GeometryError("dumbbell discs overlap");
  return exact ? dumbbell_exact(config, samples_per_disc, seed).estimate : dumbbell_asymptotic(config);
}

double dumbbell_bound(double area) { return 2.0 * std::sqrt(area / std::numbers::pi); }

}  // namespace hyperthick::analysis
