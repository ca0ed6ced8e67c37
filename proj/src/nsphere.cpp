#include "hyperthick/nsphere.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "hyperthick/error.hpp"

namespace hyperthick::nsphere {
namespace {

constexpr double kPi = std::numbers::pi;

}  // namespace

double gamma(double x) {
  if (!std::isfinite(x) || x <= 0.0) {
    throw DomainError("gamma: argument must be positive and finite, got " +
                      std::to_string(x));
  }
  const double twice = 2.0 * x;
  if (twice == std::floor(twice) && x <= 170.0) {
    if (x == std::floor(x)) {
      double result = 1.0;
      for (double k = 2.0; k < x; k += 1.0) result *= k;
      return result;
    }
    // Gamma(k + 1/2) = sqrt(pi) * prod_{j<k} (j + 1/2)
    double result = std::sqrt(kPi);
    for (double k = 0.5; k < x; k += 1.0) result *= k;
    return result;
  }
  return std::tgamma(x);
}

double unit_ball_volume(int n) {
  if (n < 0) throw DomainError("unit_ball_volume: negative dimension");
  if (n == 0) return 1.0;
  return std::pow(kPi, 0.5 * n) / gamma(0.5 * n + 1.0);
}

double unit_sphere_area(int k) {
  if (k < 0) throw DomainError("unit_sphere_area: negative dimension");
  const double half = 0.5 * (k + 1);
  return 2.0 * std::pow(kPi, half) / gamma(half);
}

void require_section_dims(int m, int n) {
  if (m < 1 || m >= n) {
    throw DomainError("dimension pair requires 1 <= m < n, got m=" +
                      std::to_string(m) + ", n=" + std::to_string(n));
  }
}

}  // namespace hyperthick::nsphere
