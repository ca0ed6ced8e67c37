#pragma once

#include <optional>
#include <string_view>
#include <vector>

#include "hyperthick/geometry.hpp"

// Stationary shapes of the average-thickness functional under fixed volume
// and fixed centroid. With d = n - m and the polar axis through the
// centroid, the boundary satisfies
//     1 - lambda r^d - mu r^{d+1} cos(theta) = 0,
// or, in the hyper-cylindrical chart (z along the axis, R transverse),
//     R^2 = (lambda + mu z)^{-2/d} - z^2.
// mu is parametrised by an eccentricity e >= 0:
//     mu = -d lambda^{(d+1)/d} / (d+1)^{(d+1)/d} * e,
// so mu <= 0 and the centroid lies on the positive axis.

namespace hyperthick::stationary {

enum class ShapeClass { Sphere, Egg, Critical, Open };

std::string_view to_string(ShapeClass c);

/// Sphere for e = 0, Egg for 0 < e < 1, Critical for e = 1, Open for e > 1.
/// Exact comparison; throws DomainError for negative or non-finite e.
ShapeClass classify(double ecc);

/// mu for gap d = n - m >= 1, lambda > 0, e >= 0.
double mu_from_ecc(int gap, double lambda, double ecc);

/// Inverse of mu_from_ecc: e = |mu| / |mu at e=1|. The sign of mu only
/// fixes the orientation of the axis.
double ecc_from_mu(int gap, double lambda, double mu);

class StationaryParams {
 public:
  /// Validates 1 <= m < n, lambda > 0, e >= 0; derives mu.
  static StationaryParams make(int n, int m, double lambda, double ecc);
  /// The profile depends on d = n - m only; this uses (n, m) = (d + 1, 1).
  static StationaryParams from_gap(int gap, double lambda, double ecc);

  int n() const noexcept { return n_; }
  int m() const noexcept { return m_; }
  int gap() const noexcept { return n_ - m_; }
  double lambda() const noexcept { return lambda_; }
  double ecc() const noexcept { return ecc_; }
  double mu() const noexcept { return mu_; }
  ShapeClass shape_class() const { return classify(ecc_); }
  /// lambda^{-1/d}: radius of the e = 0 sphere.
  double sphere_radius() const;

 private:
  StationaryParams(int n, int m, double lambda, double ecc, double mu)
      : n_(n), m_(m), lambda_(lambda), ecc_(ecc), mu_(mu) {}
  int n_, m_;
  double lambda_, ecc_, mu_;
};

/// 1 - lambda r^d - mu r^{d+1} cos(theta).
double boundary_residual(const StationaryParams& p, double r, double theta);

/// Smallest positive root in r of 1 - lambda r^d - c r^{d+1} by bracketed
/// Newton from the sphere radius. Throws NoRootError if none exists.
double smallest_positive_root(int gap, double lambda, double c);

/// Boundary radius r(theta), theta in [0, pi] measured from the axis.
/// d = 1: closed form of the quadratic; d = 2: first Cardano branch
/// (sqrt3 / (2 sqrt lambda)) sec((pi - arccos(e cos theta)) / 3);
/// otherwise smallest_positive_root. Residual is verified <= 1e-10.
/// Throws NoRootError in directions where an open shape has no boundary.
double radial_profile(const StationaryParams& p, double theta);

/// sqrt(R^2(z)). Throws PoleError when lambda + mu z <= 0 and
/// OutsideSupportError when R^2 < 0 beyond rounding.
double cylindrical_radius(const StationaryParams& p, double z);

struct Support {
  double z_minus = 0.0;
  double z_plus = 0.0;
};

/// Axis crossings of the closed region. Critical shapes use the double
/// root z_+ = ((d+1)/lambda)^{1/d} and closed forms for z_- where
/// available (d = 1, 2, 4). Throws UnboundedRegionError for Open.
Support support_interval(const StationaryParams& p);

/// Closed-form z_- of the critical shape for d in {1, 2, 4}.
std::optional<double> critical_lower_limit(int gap, double lambda);

/// 1 - (d+1) w^d + d w^{d+1}: the critical axis equation in w = z / z_+.
double critical_polynomial(int gap, double w);
/// sum_{k=1}^{d} k w^{k-1}: cofactor of (w - 1)^2 in critical_polynomial.
double critical_cofactor(int gap, double w);

struct ProfileCurve {
  StationaryParams params;
  double z_minus = 0.0;
  double z_plus = 0.0;
  std::vector<geometry::CylPoint> samples;
};

/// Meridian sampled at Chebyshev-Lobatto points of [z_-, z_+]; the
/// endpoints are exact and carry R = 0.
ProfileCurve profile_curve(const StationaryParams& p, int count);

/// Interior angle of the cusp of the critical d = 1 shape: 2 arctan sqrt2.
double cusp_angle_2d();

}  // namespace hyperthick::stationary
