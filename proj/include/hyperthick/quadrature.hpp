#pragma once

#include <span>
#include <vector>

namespace hyperthick::quadrature {

/// Nodes and weights of a one-dimensional rule, nodes ascending.
struct Rule {
  std::vector<double> nodes;
  std::vector<double> weights;
};

/// Gauss rule on [-1, 1] for the weight (1 - t^2)^alpha, alpha > -1.
/// alpha = 0 is Gauss-Legendre. Nodes are seeded from the Jacobi matrix
/// eigenvalues and polished by Newton on the orthonormal recurrence.
Rule gauss_gegenbauer(int count, double alpha);

/// Gauss-Legendre on [-1, 1].
Rule gauss_legendre(int count);

/// Gauss-Legendre mapped onto [a, b].
Rule gauss_legendre(int count, double a, double b);

/// Pairwise (cascade) summation; reduction order depends only on the
/// length of the input, so results are reproducible.
double pairwise_sum(std::span<const double> values);

}  // namespace hyperthick::quadrature
