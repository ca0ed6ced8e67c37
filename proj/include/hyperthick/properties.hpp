#pragma once

#include <optional>
#include <vector>

#include "hyperthick/stationary.hpp"

namespace hyperthick::properties {

/// Volume, first moment and average thickness of a body. The scalar moment
/// is the component along the symmetry axis; moment_vector carries the full
/// \int x dV with the symmetry axis on x_1.
struct BodyProperties {
  double volume = 0.0;
  double moment = 0.0;
  double thickness = 0.0;
  std::vector<double> moment_vector;
};

/// V and M by Gauss-Legendre over [z_-, z_+] after z = z_- + (D/2)(1 - cos s),
/// which absorbs the square-root behaviour of R at both ends; T by
/// Gauss-Legendre in theta over the boundary radius. Throws
/// UnboundedRegionError for open shapes.
BodyProperties body_properties(const stationary::StationaryParams& p, int resolution = 256);

/// Exact values where elementary antiderivatives exist: spheres (any n, m),
/// (m, n) = (2, 3) for 0 < e <= 1, and the critical shapes of (1, 2),
/// (1, 3) and (1, 5). Empty otherwise.
std::optional<BodyProperties> closed_form(const stationary::StationaryParams& p);

/// (S_{n-1}/V_m) T - lambda n V - mu (n+1) M. Obtained by multiplying the
/// boundary equation by r and integrating over the sphere of directions, so
/// it vanishes for stationary shapes.
double linear_identity_residual(const BodyProperties& props, const stationary::StationaryParams& p);

/// T recovered from V and M through the same identity.
double thickness_via_identity(double volume, double moment, const stationary::StationaryParams& p);

/// Mirror image through the plane orthogonal to the axis (M -> -M).
BodyProperties reflect_axis(BodyProperties props);

}  // namespace hyperthick::properties
