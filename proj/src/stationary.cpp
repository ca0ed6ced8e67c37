#include "hyperthick/stationary.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <string>
#include <utility>

#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/roots.hpp"

namespace hyperthick::stationary {
namespace {

constexpr double kResidualLimit = 1e-10;
constexpr double kDoubleRootTol = 1e-12;

void require_gap(int gap) {
  if (gap < 1) throw DomainError("n - m must be a positive integer");
}

void require_lambda(double lambda) {
  if (!(lambda > 0.0) || !std::isfinite(lambda)) throw DomainError("lambda must be positive and finite");
}

// Magnitude of mu at e = 1.
double critical_mu_magnitude(int gap, double lambda) {
  const double d = gap;
  const double power = (d + 1.0) / d;
  return d * std::pow(lambda, power) / std::pow(d + 1.0, power);
}

// p(r) = 1 - lambda r^d - c r^{d+1} and its derivative.
std::pair<double, double> axial_equation(int d, double lambda, double c, double r) {
  const double rd1 = std::pow(r, d - 1);
  const double rd = rd1 * r;
  return {1.0 - lambda * rd - c * rd * r, -d * lambda * rd1 - (d + 1) * c * rd};
}

// Newton polish on the spherical equation for closed-form roots.
double polish(int d, double lambda, double c, double r) {
  for (int i = 0; i < 3; ++i) {
    auto [f, df] = axial_equation(d, lambda, c, r);
    if (std::abs(f) <= 1e-15 || df == 0.0) break;
    r -= f / df;
  }
  return r;
}

// h(z) = |z|^d (lambda + mu z) - 1; zero where the meridian meets the axis.
std::pair<double, double> axis_crossing(int d, double lambda, double mu, double z) {
  const double a = std::abs(z);
  const double sgn = z < 0.0 ? -1.0 : 1.0;
  const double ad1 = std::pow(a, d - 1);
  const double u = lambda + mu * z;
  return {ad1 * a * u - 1.0, d * ad1 * sgn * u + ad1 * a * mu};
}

}  // namespace

std::string_view to_string(ShapeClass c) {
  switch (c) {
    case ShapeClass::Sphere: return "Sphere";
    case ShapeClass::Egg: return "Egg";
    case ShapeClass::Critical: return "Critical";
    case ShapeClass::Open: return "Open";
  }
  return "Unknown";
}

ShapeClass classify(double ecc) {
  if (!(ecc >= 0.0) || !std::isfinite(ecc)) throw DomainError("eccentricity must be finite and >= 0");
  if (ecc == 0.0) return ShapeClass::Sphere;
  if (ecc < 1.0) return ShapeClass::Egg;
  if (ecc == 1.0) return ShapeClass::Critical;
  return ShapeClass::Open;
}

double mu_from_ecc(int gap, double lambda, double ecc) {
  require_gap(gap);
  require_lambda(lambda);
  classify(ecc);
  if (ecc == 0.0) return 0.0;
  return -critical_mu_magnitude(gap, lambda) * ecc;
}

double ecc_from_mu(int gap, double lambda, double mu) {
  require_gap(gap);
  require_lambda(lambda);
  return std::abs(mu) / critical_mu_magnitude(gap, lambda);
}

StationaryParams StationaryParams::make(int n, int m, double lambda, double ecc) {
  nsphere::require_section_dims(m, n);
  const double mu = mu_from_ecc(n - m, lambda, ecc);
  return StationaryParams(n, m, lambda, ecc, mu);
}

StationaryParams StationaryParams::from_gap(int gap, double lambda, double ecc) {
  require_gap(gap);
  return make(gap + 1, 1, lambda, ecc);
}

double StationaryParams::sphere_radius() const { return std::pow(lambda_, -1.0 / gap()); }

double boundary_residual(const StationaryParams& p, double r, double theta) {
  return axial_equation(p.gap(), p.lambda(), p.mu() * std::cos(theta), r).first;
}

double smallest_positive_root(int gap, double lambda, double c) {
  require_gap(gap);
  require_lambda(lambda);
  const int d = gap;
  const double sphere = std::pow(lambda, -1.0 / d);
  if (c == 0.0) return sphere;
  auto f = [&](double r) { return axial_equation(d, lambda, c, r); };
  // Tiny |c|: p(sphere) is lost in rounding and may carry either sign.
  if (std::abs(f(sphere).first) <= 8.0 * std::numeric_limits<double>::epsilon()) return sphere;
  if (c > 0.0) {
    // Strictly decreasing on r > 0; p(0) = 1, p(sphere) < 0.
    return roots::newton_bisect(f, 0.0, sphere, sphere);
  }
  // c < 0: p has a single interior minimum at r_min; the smallest root
  // lies in [sphere, r_min] when p(r_min) <= 0.
  const double r_min = d * lambda / ((d + 1) * -c);
  const double p_min = f(r_min).first;
  if (std::abs(p_min) <= kDoubleRootTol) return r_min;
  if (p_min > 0.0) throw NoRootError("no positive boundary root in this direction (open shape)");
  return roots::newton_bisect(f, sphere, r_min, sphere);
}

double radial_profile(const StationaryParams& p, double theta) {
  if (!(theta >= 0.0 && theta <= std::numbers::pi)) throw DomainError("theta must lie in [0, pi]");
  const int d = p.gap();
  const double lambda = p.lambda();
  const double cos_t = std::cos(theta);
  const double c = p.mu() * cos_t;
  double r;
  if (d == 1) {
    const double disc = 1.0 + 4.0 * p.mu() / (lambda * lambda) * cos_t;
    if (disc < 0.0) throw NoRootError("no positive boundary root in this direction (open shape)");
    r = polish(d, lambda, c, 2.0 / lambda / (1.0 + std::sqrt(disc)));
  } else if (d == 2 && std::abs(p.ecc() * cos_t) <= 1.0) {
    const double angle = (std::numbers::pi - std::acos(p.ecc() * cos_t)) / 3.0;
    r = polish(d, lambda, c, std::sqrt(3.0) / (2.0 * std::sqrt(lambda)) / std::cos(angle));
  } else {
    r = smallest_positive_root(d, lambda, c);
  }
  const double residual = std::abs(axial_equation(d, lambda, c, r).first);
  if (!(residual <= kResidualLimit)) {
    throw NoRootError("boundary root failed residual check: " + std::to_string(residual));
  }
  return r;
}

double cylindrical_radius(const StationaryParams& p, double z) {
  const double u = p.lambda() + p.mu() * z;
  if (!(u > 0.0)) throw PoleError("lambda + mu z <= 0 at z = " + std::to_string(z));
  const double r_sq = std::pow(u, -2.0 / p.gap()) - z * z;
  if (r_sq >= 0.0) return std::sqrt(r_sq);
  if (r_sq >= -1e-12 * std::max(1.0, z * z)) return 0.0;
  throw OutsideSupportError("R^2 < 0 at z = " + std::to_string(z));
}

double critical_polynomial(int gap, double w) {
  require_gap(gap);
  const double wd = std::pow(w, gap);
  return 1.0 - (gap + 1) * wd + gap * wd * w;
}

double critical_cofactor(int gap, double w) {
  require_gap(gap);
  // Horner on d w^{d-1} + (d-1) w^{d-2} + ... + 1.
  double acc = 0.0;
  for (int k = gap; k >= 1; --k) acc = acc * w + k;
  return acc;
}

std::optional<double> critical_lower_limit(int gap, double lambda) {
  require_gap(gap);
  require_lambda(lambda);
  const double scale = std::pow((gap + 1) / lambda, 1.0 / gap);
  double w;
  switch (gap) {
    case 1:
      // Negative branch: 1 + 2w - w^2 = 0.
      w = 1.0 - std::sqrt(2.0);
      break;
    case 2:
      // Cofactor 2w + 1.
      w = -0.5;
      break;
    case 4: {
      // Real root of the cofactor 4w^3 + 3w^2 + 2w + 1 (Cardano).
      const double s6 = std::sqrt(6.0);
      w = (std::cbrt(15.0 * (4.0 * s6 - 9.0)) - std::cbrt(15.0 * (4.0 * s6 + 9.0)) - 3.0) / 12.0;
      break;
    }
    default:
      return std::nullopt;
  }
  return w * scale;
}

Support support_interval(const StationaryParams& p) {
  const ShapeClass cls = p.shape_class();
  if (cls == ShapeClass::Open) throw UnboundedRegionError("open stationary region has no finite support");
  const int d = p.gap();
  const double lambda = p.lambda(), mu = p.mu();
  const double sphere = p.sphere_radius();
  if (cls == ShapeClass::Sphere) return {-sphere, sphere};

  auto h = [&](double z) { return axis_crossing(d, lambda, mu, z); };
  Support s;
  // h rises on (0, z_peak] and peaks at z_peak; for e = 1 the peak is the
  // double root.
  const double z_peak = d * lambda / ((d + 1) * -mu);
  if (cls == ShapeClass::Critical) {
    s.z_plus = std::pow((d + 1) / lambda, 1.0 / d);
  } else {
    s.z_plus = roots::newton_bisect(h, sphere, z_peak, sphere);
  }
  if (auto closed = cls == ShapeClass::Critical ? critical_lower_limit(d, lambda) : std::nullopt) {
    s.z_minus = *closed;
  } else {
    s.z_minus = roots::newton_bisect(h, -sphere, 0.0, -sphere);
  }
  return s;
}

ProfileCurve profile_curve(const StationaryParams& p, int count) {
  if (count < 2) throw DomainError("profile_curve needs at least two points");
  const Support s = support_interval(p);
  ProfileCurve curve{p, s.z_minus, s.z_plus, {}};
  curve.samples.reserve(count);
  const double half = 0.5 * (s.z_plus - s.z_minus);
  for (int k = 0; k < count; ++k) {
    geometry::CylPoint pt;
    if (k == 0) {
      pt.z = s.z_minus;
    } else if (k == count - 1) {
      pt.z = s.z_plus;
    } else {
      pt.z = s.z_minus + half * (1.0 - std::cos(std::numbers::pi * k / (count - 1)));
      pt.R = cylindrical_radius(p, pt.z);
    }
    curve.samples.push_back(pt);
  }
  return curve;
}

double cusp_angle_2d() { return 2.0 * std::atan(std::sqrt(2.0)); }

}  // namespace hyperthick::stationary
