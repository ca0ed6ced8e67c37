#include "hyperthick/properties.hpp"

#include <cmath>
#include <numbers>

#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/quadrature.hpp"

namespace hyperthick::properties {
namespace {

using stationary::ShapeClass;
using stationary::StationaryParams;

constexpr double kPi = std::numbers::pi;

BodyProperties make(int n, double volume, double moment, double thickness) {
  BodyProperties out{volume, moment, thickness, std::vector<double>(n, 0.0)};
  out.moment_vector[0] = moment;
  return out;
}

BodyProperties sphere_closed_form(const StationaryParams& p) {
  const double r = p.sphere_radius();
  return make(p.n(), nsphere::unit_ball_volume(p.n()) * std::pow(r, p.n()), 0.0,
              nsphere::unit_ball_volume(p.m()) * std::pow(r, p.m()));
}

// (m, n) = (2, 3): r = a / (1 + sqrt(1 - e cos theta)), a = 2 / lambda.
BodyProperties egg_2_3(const StationaryParams& p) {
  const double e = p.ecc();
  const double a = 2.0 / p.lambda();
  const double sp = std::sqrt(1.0 + e), sm = std::sqrt(1.0 - e);
  const double volume = 4.0 * kPi * a * a * a / (3.0 * e) *
                        ((2.0 * sm + 1.0) / (2.0 * (sm + 1.0) * (sm + 1.0)) -
                         (2.0 * sp + 1.0) / (2.0 * (sp + 1.0) * (sp + 1.0)));
  const double moment = -kPi * std::pow(a, 4) / (e * e) *
                        (std::log((sp + 1.0) / (sm + 1.0)) + (3.0 * sp + 2.0) / ((sp + 1.0) * (sp + 1.0)) -
                         (3.0 * sm + 2.0) / ((sm + 1.0) * (sm + 1.0)));
  const double thickness = kPi * a * a / e *
                           (std::log((1.0 + sp) / (1.0 + sm)) + 1.0 / (1.0 + sp) - 1.0 / (1.0 + sm));
  return make(3, volume, moment, thickness);
}

BodyProperties critical_1_2(double lambda) {
  const double s2 = std::sqrt(2.0);
  const double log_term = std::log(3.0 + 2.0 * s2);
  return make(2, (8.0 * s2 - 8.0 * std::log(1.0 + s2)) / (lambda * lambda),
              (64.0 * s2 - 48.0 * log_term) / (3.0 * lambda * lambda * lambda),
              4.0 * log_term / (kPi * lambda));
}

BodyProperties critical_1_3(double lambda) {
  const double s3 = std::sqrt(3.0), ln2 = std::log(2.0);
  return make(3, 3.0 * s3 * kPi * std::pow(lambda, -1.5) * (ln2 - 3.0 / 8.0),
              27.0 / 32.0 * kPi / (lambda * lambda) * (16.0 * ln2 - 21.0 / 2.0),
              3.0 * s3 / (4.0 * std::sqrt(lambda)) * (3.0 - 2.0 * ln2));
}

// (m, n) = (1, 5): R^4 = 1/u - 2 z^2 u^{-1/2} + z^4 with u = lambda + mu z.
BodyProperties critical_1_5(const StationaryParams& p) {
  const double lambda = p.lambda(), mu = p.mu();
  const double v4 = nsphere::unit_ball_volume(4);
  auto volume_antiderivative = [&](double z) {
    const double u = lambda + mu * z;
    return v4 * (std::log(u) / mu + std::pow(z, 5) / 5.0 -
                 std::sqrt(u) * (12.0 * mu * mu * z * z - 16.0 * lambda * mu * z + 32.0 * lambda * lambda) /
                     (15.0 * mu * mu * mu));
  };
  auto moment_antiderivative = [&](double z) {
    const double u = lambda + mu * z;
    const double poly = 120.0 * mu * mu * mu * z * z * z - 144.0 * lambda * mu * mu * z * z +
                        192.0 * lambda * lambda * mu * z - 384.0 * lambda * lambda * lambda;
    return v4 * (z / mu - lambda * std::log(u) / (mu * mu) + std::pow(z, 6) / 6.0 -
                 std::sqrt(u) * poly / (210.0 * std::pow(mu, 4)));
  };
  const double z_plus = std::pow(5.0 / lambda, 0.25);
  const double z_minus = *stationary::critical_lower_limit(4, lambda);
  const double volume = volume_antiderivative(z_plus) - volume_antiderivative(z_minus);
  const double moment = moment_antiderivative(z_plus) - moment_antiderivative(z_minus);
  return make(5, volume, moment, thickness_via_identity(volume, moment, p));
}

}  // namespace

BodyProperties body_properties(const StationaryParams& p, int resolution) {
  if (resolution < 2) throw DomainError("body_properties: resolution must be >= 2");
  const stationary::Support support = stationary::support_interval(p);
  const int n = p.n(), m = p.m();

  const double half = 0.5 * (support.z_plus - support.z_minus);
  const auto rule_s = quadrature::gauss_legendre(resolution, 0.0, kPi);
  std::vector<double> vol_terms(resolution), mom_terms(resolution);
  const double section = nsphere::unit_ball_volume(n - 1);
  for (int i = 0; i < resolution; ++i) {
    const double s = rule_s.nodes[i];
    const double z = support.z_minus + half * (1.0 - std::cos(s));
    const double jac = half * std::sin(s) * rule_s.weights[i];
    const double slab = section * std::pow(stationary::cylindrical_radius(p, z), n - 1) * jac;
    vol_terms[i] = slab;
    mom_terms[i] = slab * z;
  }

  // Axisymmetric reduction: dOmega = S_{n-2} sin^{n-2}(theta) dtheta.
  const auto rule_t = quadrature::gauss_legendre(resolution, 0.0, kPi);
  std::vector<double> thick_terms(resolution);
  for (int i = 0; i < resolution; ++i) {
    const double theta = rule_t.nodes[i];
    thick_terms[i] = std::pow(stationary::radial_profile(p, theta), m) * std::pow(std::sin(theta), n - 2) *
                     rule_t.weights[i];
  }
  const double thickness = nsphere::unit_ball_volume(m) / nsphere::unit_sphere_area(n - 1) *
                           nsphere::unit_sphere_area(n - 2) * quadrature::pairwise_sum(thick_terms);
  return make(n, quadrature::pairwise_sum(vol_terms), quadrature::pairwise_sum(mom_terms), thickness);
}

std::optional<BodyProperties> closed_form(const StationaryParams& p) {
  const ShapeClass cls = p.shape_class();
  if (cls == ShapeClass::Open) return std::nullopt;
  if (cls == ShapeClass::Sphere) return sphere_closed_form(p);
  if (p.n() == 3 && p.m() == 2) return egg_2_3(p);
  if (cls != ShapeClass::Critical || p.m() != 1) return std::nullopt;
  switch (p.n()) {
    case 2: return critical_1_2(p.lambda());
    case 3: return critical_1_3(p.lambda());
    case 5: return critical_1_5(p);
    default: return std::nullopt;
  }
}

double linear_identity_residual(const BodyProperties& props, const StationaryParams& p) {
  const int n = p.n();
  return nsphere::unit_sphere_area(n - 1) / nsphere::unit_ball_volume(p.m()) * props.thickness -
         p.lambda() * n * props.volume - p.mu() * (n + 1) * props.moment;
}

double thickness_via_identity(double volume, double moment, const StationaryParams& p) {
  const int n = p.n();
  return nsphere::unit_ball_volume(p.m()) / nsphere::unit_sphere_area(n - 1) *
         (p.lambda() * n * volume + p.mu() * (n + 1) * moment);
}

BodyProperties reflect_axis(BodyProperties props) {
  props.moment = -props.moment;
  if (!props.moment_vector.empty()) props.moment_vector[0] = -props.moment_vector[0];
  return props;
}

}  // namespace hyperthick::properties
