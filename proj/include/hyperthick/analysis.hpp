#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include <Eigen/Dense>

#include "hyperthick/geometry.hpp"
#include "hyperthick/stationary.hpp"
#include "hyperthick/thickness.hpp"

// Checks on the variational problem: the pointwise boundary equation, the
// deformation-matrix null vector, perturbations of the ball, and the
// two-disc construction that approaches but never reaches the planar bound.

namespace hyperthick::analysis {

/// max over grid nodes of |r^{m-1} - lambda r^{n-1} - mu r^n cos(theta)| / r^{m-1},
/// theta measured from `axis` (unit vector of length n).
double stationarity_residual(const thickness::StarShape& shape, int m, double lambda, double mu,
                             std::span<const double> axis, const geometry::DirectionGrid& grid);

/// Star-shape view of a closed stationary shape with its symmetry axis along
/// `axis` (x_1 when empty).
thickness::StarShape stationary_star_shape(const stationary::StationaryParams& p,
                                           std::span<const double> axis = {});

struct BoundaryPoint {
  double r = 0.0;
  geometry::Direction direction;
};

/// n+2 boundary points and the matrix with rows
/// (r^{m-1}, r^{n-1}, r^n u_1, ..., r^n u_n), u the unit direction.
struct DeformationSample {
  int n = 0;
  int m = 0;
  std::vector<BoundaryPoint> points;
  Eigen::MatrixXd matrix;
};

/// Throws DomainError unless there are exactly n+2 points of one dimension.
DeformationSample make_deformation_sample(int m, std::vector<BoundaryPoint> points);

/// `count` boundary points along uniformly random directions.
std::vector<BoundaryPoint> random_boundary_points(const thickness::StarShape& shape, int count,
                                                  std::uint64_t seed);

struct NullVector {
  double lambda = 0.0;
  std::vector<double> mu_vector;
  double mu_norm = 0.0;
  /// sigma_min / sigma_second.
  double condition = 0.0;
  std::vector<double> singular_values;
};

/// Singular values of the sample matrix, descending.
std::vector<double> singular_values(const DeformationSample& sample);

/// Null vector (1, -lambda, -mu_1, ..., -mu_n) of the sample matrix. Throws
/// RankError when sigma_min / sigma_second > 1e-8 (no null space) or when
/// sigma_second / sigma_max < 1e-8 (more than one null direction).
NullVector nullvector_recover(const DeformationSample& sample);

inline constexpr double kRankThreshold = 1e-8;

struct SphereTrial {
  int trial = 0;
  double amplitude = 0.0;
  double delta_t = 0.0;
};

/// Volume rescale alternated with a first-harmonic shift r -> r - c.u until
/// |V/V0 - 1| and |M - M0|/V0 are below `tol` (M0 = 0 when empty). Throws
/// ProjectionError otherwise.
void project_constraints(std::vector<double>& radii, const geometry::DirectionGrid& grid,
                         double target_volume, std::span<const double> target_moment = {},
                         double tol = 1e-12, int max_iter = 200);

/// ΔT = T - T_ball for `trials` random perturbations of the unit ball, each
/// 1 + amplitude * h with h a cubic polynomial in the unit direction scaled
/// to max|h| = 1 on the grid, then projected onto the volume and centroid
/// constraints. T_ball is the same quadrature applied to r = 1. Trial i
/// draws from seed_seq(seed, i), so results are independent of threading.
std::vector<SphereTrial> sphere_optimality_test(int n, int m, int trials, double amplitude,
                                                std::uint64_t seed, int resolution = 32);

/// Planar two-disc body: a disc of area A(1 - gamma) centred on the section
/// point and a disc of area gamma A centred at x_2 = G / gamma on the axis,
/// so the total area is A and the centroid sits at G.
class DumbbellConfig {
 public:
  /// Throws DomainError unless A > 0, G > 0 and 0 < gamma < 1.
  DumbbellConfig(double area, double centroid, double gamma);

  double area() const noexcept { return area_; }
  double centroid() const noexcept { return centroid_; }
  double gamma() const noexcept { return gamma_; }
  double area_near() const noexcept { return area_ * (1.0 - gamma_); }
  double area_far() const noexcept { return area_ * gamma_; }
  double far_center() const noexcept { return centroid_ * area_ / area_far(); }
  double radius_near() const;
  double radius_far() const;
  bool disjoint() const { return far_center() > radius_near() + radius_far(); }

 private:
  double area_, centroid_, gamma_;
};

/// 2 sqrt(A_1/pi) + A_2/(pi x_2).
double dumbbell_asymptotic(const DumbbellConfig& config);

/// Monte Carlo mean chord through the origin, each disc sampled in its own
/// bounding disc. Throws GeometryError for overlapping discs.
thickness::McEstimate dumbbell_exact(const DumbbellConfig& config, std::uint64_t samples_per_disc,
                                     std::uint64_t seed);

double dumbbell_thickness(const DumbbellConfig& config, bool exact,
                          std::uint64_t samples_per_disc = std::uint64_t{1} << 22, std::uint64_t seed = 1);

/// Supremum of T for planar bodies of area A: 2 sqrt(A/pi).
double dumbbell_bound(double area);

}  // namespace hyperthick::analysis
