#pragma once

// Gamma function and the unit n-ball / unit sphere measures.
//
// Conventions: V_n is the volume of the unit ball in R^n, and S_k is the
// k-dimensional area of the unit sphere bounding the (k+1)-ball, so S_{n-1}
// is the total solid angle in R^n.

namespace hyperthick::nsphere {

/// Gamma function for x > 0. Integer and half-integer arguments are
/// evaluated as exact products; other arguments go to std::tgamma.
/// Throws DomainError for x <= 0 or non-finite x.
double gamma(double x);

/// V_n = pi^{n/2} / Gamma(n/2 + 1). V_0 = 1.
double unit_ball_volume(int n);

/// S_k = 2 pi^{(k+1)/2} / Gamma((k+1)/2). S_0 = 2.
double unit_sphere_area(int k);

/// Validates a (section, ambient) dimension pair: 1 <= m < n.
void require_section_dims(int m, int n);

}  // namespace hyperthick::nsphere
