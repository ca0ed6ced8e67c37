#include <doctest.h>

#include <cmath>
#include <numbers>
#include <optional>
#include <random>

#include <boost/math/tools/roots.hpp>
#include <boost/multiprecision/cpp_bin_float.hpp>

#include "hyperthick/error.hpp"
#include "hyperthick/stationary.hpp"

using namespace hyperthick;
using stationary::ShapeClass;
using stationary::StationaryParams;

namespace {

constexpr double kPi = std::numbers::pi;

// First sign change of f on (lo, hi] found by scanning, refined by TOMS 748.
std::optional<double> first_root(const std::function<double(double)>& f, double lo, double hi, int steps = 4000) {
  double a = lo, fa = f(lo);
  for (int i = 1; i <= steps; ++i) {
    const double b = lo + (hi - lo) * i / steps;
    const double fb = f(b);
    if (fb == 0.0) return b;
    if ((fa < 0) != (fb < 0)) {
      std::uintmax_t iters = 200;
      const auto r = boost::math::tools::toms748_solve(f, a, b, fa, fb, boost::math::tools::eps_tolerance<double>(52),
                                                      iters);
      return 0.5 * (r.first + r.second);
    }
    a = b;
    fa = fb;
  }
  return std::nullopt;
}

double oracle_radius(const StationaryParams& p, double theta) {
  const int d = p.gap();
  const double lam = p.lambda(), c = p.mu() * std::cos(theta);
  auto f = [&](double r) { return 1.0 - lam * std::pow(r, d) - c * std::pow(r, d + 1); };
  if (auto r = first_root(f, 0.0, 20.0 * p.sphere_radius())) return *r;
  // Tangential double root: take the stationary point of f instead.
  auto df = [&](double r) { return -d * lam * std::pow(r, d - 1) - (d + 1) * c * std::pow(r, d); };
  const double r = first_root(df, 1e-3 * p.sphere_radius(), 20.0 * p.sphere_radius()).value();
  REQUIRE(std::abs(f(r)) < 1e-12);
  return r;
}

// Axis crossing h(z) = |z|^d (lambda + mu z) - 1 = 0 on one side.
double oracle_axis(const StationaryParams& p, bool positive) {
  const int d = p.gap();
  auto h = [&](double z) { return std::pow(std::abs(z), d) * (p.lambda() + p.mu() * z) - 1.0; };
  if (positive) return first_root(h, 0.0, 20.0 * p.sphere_radius()).value();
  return -first_root([&](double s) { return h(-s); }, 0.0, 20.0 * p.sphere_radius()).value();
}

}  // namespace

TEST_CASE("classification by eccentricity") {
  CHECK(stationary::classify(0.0) == ShapeClass::Sphere);
  CHECK(stationary::classify(0.5) == ShapeClass::Egg);
  CHECK(stationary::classify(1.0) == ShapeClass::Critical);
  CHECK(stationary::classify(1.0 + 1e-12) == ShapeClass::Open);
  CHECK_THROWS_AS(stationary::classify(-0.1), DomainError);
  CHECK_THROWS_AS(stationary::classify(INFINITY), DomainError);
  CHECK(stationary::to_string(ShapeClass::Critical) == "Critical");
}

TEST_CASE("mu from eccentricity in low gaps") {
  CHECK(stationary::mu_from_ecc(1, 2.0, 1.0) == doctest::Approx(-1.0));  // -lambda^2 e / 4
  CHECK(stationary::mu_from_ecc(2, 1.5, 0.7) ==
        doctest::Approx(-2 * std::sqrt(3.0) / 9 * std::pow(1.5, 1.5) * 0.7).epsilon(1e-14));
  CHECK(stationary::mu_from_ecc(3, 1.0, 0.0) == 0.0);
  for (int d = 1; d <= 8; ++d)
    for (double e : {0.0, 0.3, 1.0, 1.7}) {
      const double mu = stationary::mu_from_ecc(d, 0.8, e);
      CHECK(mu <= 0.0);
      CHECK(stationary::ecc_from_mu(d, 0.8, mu) == doctest::Approx(e).epsilon(1e-14));
      CHECK(stationary::ecc_from_mu(d, 0.8, -mu) == doctest::Approx(e).epsilon(1e-14));
    }
}

TEST_CASE("parameter validation") {
  CHECK_THROWS_AS(StationaryParams::make(3, 3, 1.0, 0.5), DomainError);
  CHECK_THROWS_AS(StationaryParams::make(3, 1, 0.0, 0.5), DomainError);
  CHECK_THROWS_AS(StationaryParams::make(3, 1, 1.0, -1.0), DomainError);
  const auto p = StationaryParams::from_gap(4, 2.0, 0.5);
  CHECK(p.n() == 5);
  CHECK(p.m() == 1);
  CHECK(p.gap() == 4);
  CHECK(p.sphere_radius() == doctest::Approx(std::pow(2.0, -0.25)));
}

TEST_CASE("boundary radius against a scanning root oracle") {
  for (int d = 1; d <= 7; ++d)
    for (double e : {0.0, 0.2, 0.6, 0.95, 1.0})
      for (double lam : {0.5, 1.0, 3.0}) {
        const auto p = StationaryParams::from_gap(d, lam, e);
        for (int i = 0; i <= 24; ++i) {
          const double theta = kPi * i / 24;
          const double r = stationary::radial_profile(p, theta);
          CHECK(r == doctest::Approx(oracle_radius(p, theta)).epsilon(1e-12));
          CHECK(std::abs(stationary::boundary_residual(p, r, theta)) < 1e-12);
        }
      }
}

TEST_CASE("gap-2 boundary is the first Cardano branch") {
  const double lam = 1.3;
  for (double e : {0.3, 1.0})
    for (int i = 0; i <= 10; ++i) {
      const double theta = kPi * i / 10;
      const auto p = StationaryParams::from_gap(2, lam, e);
      const double r = std::sqrt(3.0) / (2.0 * std::sqrt(lam)) / std::cos((kPi - std::acos(e * std::cos(theta))) / 3.0);
      CHECK(stationary::radial_profile(p, theta) == doctest::Approx(r).epsilon(1e-13));
    }
}

TEST_CASE("gap-1 boundary in closed form") {
  for (double e : {0.5, 1.0}) {
    const auto p = StationaryParams::from_gap(1, 2.0, e);
    for (int i = 0; i <= 10; ++i) {
      const double theta = kPi * i / 10;
      const double r = (2.0 / 2.0) / (1.0 + std::sqrt(1.0 - e * std::cos(theta)));
      CHECK(stationary::radial_profile(p, theta) == doctest::Approx(r).epsilon(1e-14));
    }
  }
}

TEST_CASE("open shapes have no boundary along the axis") {
  for (int d = 1; d <= 4; ++d) {
    const auto p = StationaryParams::from_gap(d, 1.0, 1.2);
    CHECK(p.shape_class() == ShapeClass::Open);
    CHECK_THROWS_AS(stationary::radial_profile(p, 0.0), NoRootError);
    CHECK_NOTHROW(stationary::radial_profile(p, kPi));
    CHECK_THROWS_AS(stationary::support_interval(p), UnboundedRegionError);
  }
}

TEST_CASE("cylindrical chart agrees with the spherical boundary") {
  for (int d = 1; d <= 5; ++d) {
    const auto p = StationaryParams::from_gap(d, 1.1, 0.6);
    for (int i = 1; i < 20; ++i) {
      const double theta = kPi * i / 20;
      const double r = stationary::radial_profile(p, theta);
      const double z = r * std::cos(theta), big_r = r * std::sin(theta);
      CHECK(stationary::cylindrical_radius(p, z) == doctest::Approx(big_r).epsilon(1e-10));
    }
  }
}

TEST_CASE("cylindrical chart errors") {
  const auto p = StationaryParams::from_gap(2, 1.0, 0.5);
  const double pole = -p.lambda() / p.mu();
  CHECK_THROWS_AS(stationary::cylindrical_radius(p, pole), PoleError);
  CHECK_THROWS_AS(stationary::cylindrical_radius(p, pole + 1.0), PoleError);
  const auto s = stationary::support_interval(p);
  CHECK_THROWS_AS(stationary::cylindrical_radius(p, s.z_plus + 0.01), OutsideSupportError);
  CHECK(stationary::cylindrical_radius(p, s.z_plus) < 1e-6);
}

TEST_CASE("support interval against the oracle") {
  for (int d = 1; d <= 7; ++d)
    for (double e : {0.0, 0.4, 0.9, 1.0})
      for (double lam : {0.5, 2.0}) {
        const auto p = StationaryParams::from_gap(d, lam, e);
        const auto s = stationary::support_interval(p);
        CHECK(s.z_minus == doctest::Approx(oracle_axis(p, false)).epsilon(1e-11));
        if (e < 1.0) CHECK(s.z_plus == doctest::Approx(oracle_axis(p, true)).epsilon(1e-11));
        CHECK(s.z_minus < 0.0);
        CHECK(s.z_plus > 0.0);
      }
}

TEST_CASE("critical limits") {
  for (double lam : {0.5, 1.0, 2.0}) {
    const auto p13 = StationaryParams::make(3, 1, lam, 1.0);
    const auto s = stationary::support_interval(p13);
    CHECK(s.z_plus == doctest::Approx(std::sqrt(3.0 / lam)).epsilon(1e-14));
    CHECK(s.z_minus == doctest::Approx(-std::sqrt(3.0) / (2 * std::sqrt(lam))).epsilon(1e-14));
    const auto p12 = StationaryParams::make(2, 1, lam, 1.0);
    CHECK(stationary::support_interval(p12).z_plus == doctest::Approx(2.0 / lam).epsilon(1e-14));
    CHECK(stationary::support_interval(p12).z_minus == doctest::Approx(2.0 / lam * (1 - std::sqrt(2.0))).epsilon(1e-14));
  }
  for (int d = 1; d <= 8; ++d) {
    const auto lower = stationary::critical_lower_limit(d, 1.7);
    if (d == 1 || d == 2 || d == 4) {
      REQUIRE(lower.has_value());
      CHECK(*lower == doctest::Approx(oracle_axis(StationaryParams::from_gap(d, 1.7, 1.0), false)).epsilon(1e-12));
    } else {
      CHECK_FALSE(lower.has_value());
    }
  }
}

TEST_CASE("critical axis polynomial factors as (w - 1)^2 q(w)") {
  using Big = boost::multiprecision::cpp_bin_float_50;
  std::mt19937_64 rng(12);
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  for (int d = 1; d <= 8; ++d)
    for (int i = 0; i < 200; ++i) {
      const double w = uni(rng);
      const Big bw = w;
      const Big exact = 1 - (d + 1) * pow(bw, d) + d * pow(bw, d + 1);
      const double rhs = (w - 1) * (w - 1) * stationary::critical_cofactor(d, w);
      CHECK(std::abs(rhs - exact.convert_to<double>()) <= 1e-12 * std::abs(exact.convert_to<double>()));
      const double scale = 1 + (d + 1) * std::pow(std::abs(w), d) + d * std::pow(std::abs(w), d + 1);
      CHECK(std::abs(stationary::critical_polynomial(d, w) - exact.convert_to<double>()) <= 1e-15 * scale);
    }
}

TEST_CASE("profile curve") {
  const auto p = StationaryParams::from_gap(3, 1.0, 0.7);
  const auto curve = stationary::profile_curve(p, 101);
  REQUIRE(curve.samples.size() == 101);
  CHECK(curve.samples.front().z == curve.z_minus);
  CHECK(curve.samples.back().z == curve.z_plus);
  CHECK(curve.samples.front().R == 0.0);
  CHECK(curve.samples.back().R == 0.0);
  for (std::size_t i = 1; i < curve.samples.size(); ++i) {
    CHECK(curve.samples[i].z > curve.samples[i - 1].z);
    CHECK(curve.samples[i].R >= 0.0);
  }
  CHECK_THROWS_AS(stationary::profile_curve(p, 1), DomainError);
  CHECK_THROWS_AS(stationary::profile_curve(StationaryParams::from_gap(3, 1.0, 1.5), 10), UnboundedRegionError);
}

TEST_CASE("cusp of the critical gap-1 shape") {
  CHECK(stationary::cusp_angle_2d() == doctest::Approx(2 * std::atan(std::sqrt(2.0))));
  for (int d = 1; d <= 5; ++d) {
    // Slope of R(z) at the double root tends to sqrt(d + 1).
    const auto p = StationaryParams::from_gap(d, 1.0, 1.0);
    const double zp = stationary::support_interval(p).z_plus;
    // R^2 cancels near the double root, so h stays moderate and two
    // Richardson levels remove the O(h) and O(h^2) terms.
    const double h = 3e-4 * zp;
    auto s = [&](double k) { return stationary::cylindrical_radius(p, zp - k * h) / (k * h); };
    const double a1 = 2 * s(1) - s(2), a2 = 2 * s(2) - s(4);
    CHECK((4 * a1 - a2) / 3 == doctest::Approx(std::sqrt(d + 1.0)).epsilon(1e-7));
  }
}

TEST_CASE("small eccentricity approaches the sphere") {
  const auto p = StationaryParams::from_gap(3, 2.0, 1e-9);
  for (int i = 0; i <= 6; ++i)
    CHECK(stationary::radial_profile(p, kPi * i / 6) == doctest::Approx(p.sphere_radius()).epsilon(1e-8));
}
