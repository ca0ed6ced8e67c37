#pragma once

#include <cstdint>
#include <functional>
#include <span>
#include <vector>

#include "hyperthick/geometry.hpp"

// Average m-dimensional thickness of n-dimensional bodies.
//
// For a star shape r = f(n) the average over all m-planes through the
// origin is T(m,n) = (V_m / S_{n-1}) \int f^m dOmega. Splitting f^m into
// radial shells gives the volume-element form
//   dT = (m V_m / S_{n-1}) dV / r^{n-m},
// which applies to any body and is what the Monte Carlo estimator samples.

namespace hyperthick::thickness {

/// Star-shaped body: boundary radius as a function of direction. The
/// radial function must be positive, finite, and safe to call concurrently.
struct StarShape {
  int n = 0;
  std::function<double(const geometry::Direction&)> radial;
};

/// Ball of radius R centred on the origin.
StarShape ball(int n, double radius);

/// Arbitrary body given by membership. `contains` must be false outside the
/// bounding ball (centre `bounding_center`, origin when empty).
struct IndicatorBody {
  int n = 0;
  std::function<bool(std::span<const double>)> contains;
  double bounding_radius = 0.0;
  std::vector<double> bounding_center;
};

/// Indicator view of a star shape; bounding_radius must cover max f.
IndicatorBody indicator_from_star(const StarShape& shape, double bounding_radius);

struct McEstimate {
  double estimate = 0.0;
  double standard_error = 0.0;
  std::uint64_t samples = 0;
  std::uint64_t accepted = 0;
};

/// Radii of the shape at every grid node (evaluated in parallel).
/// Throws DomainError for non-positive or non-finite radii.
std::vector<double> sample_radii(const StarShape& shape, const geometry::DirectionGrid& grid);

double average_thickness(const StarShape& shape, int m, const geometry::DirectionGrid& grid);
double average_thickness(std::span<const double> radii, int m, const geometry::DirectionGrid& grid);

double volume(const StarShape& shape, const geometry::DirectionGrid& grid);
double volume(std::span<const double> radii, const geometry::DirectionGrid& grid);

/// First moment of volume, \int x dV, as an n-vector.
std::vector<double> moment(std::span<const double> radii, const geometry::DirectionGrid& grid);

/// Centroid G = moment / V. Throws DegenerateBodyError when V <= 0.
std::vector<double> centroid(const StarShape& shape, const geometry::DirectionGrid& grid);
std::vector<double> centroid(std::span<const double> radii, const geometry::DirectionGrid& grid);

/// Monte Carlo estimate of T(m,n) by uniform sampling in the bounding ball.
/// Deterministic for a fixed seed regardless of worker count. Points within
/// 1e-12 of the origin are redrawn. Throws InsufficientSamplingError when no
/// sample lands in the body.
McEstimate thickness_montecarlo(const IndicatorBody& body, int m, std::uint64_t samples,
                                std::uint64_t seed);

/// Sum of independent per-part estimates for a body made of disjoint parts.
/// Each part is sampled in its own bounding ball with `samples_per_part`.
McEstimate thickness_montecarlo(std::span<const IndicatorBody> parts, int m,
                                std::uint64_t samples_per_part, std::uint64_t seed);

/// Monte Carlo volume estimate with the same sampler.
McEstimate volume_montecarlo(const IndicatorBody& body, std::uint64_t samples, std::uint64_t seed);

/// Mean area of the planar sections of a 3-body that contain the line
/// through the origin along `axis`:
///   T_e = (1/2pi) \int f^2 / sqrt(1 - (n.e)^2) dOmega.
/// Integrated in the axis-aligned frame, where the kernel cancels against
/// the sin of the polar angle; `grid` supplies the resolution.
double axis_section_average(const StarShape& shape, std::span<const double> axis,
                            const geometry::DirectionGrid& grid);

}  // namespace hyperthick::thickness
