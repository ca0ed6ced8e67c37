#include "hyperthick/quadrature.hpp"

#include <Eigen/Eigenvalues>
#include <algorithm>
#include <cmath>
#include <numbers>

#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"

namespace hyperthick::quadrature {
namespace {

// Off-diagonal of the symmetric Jacobi matrix for (1 - t^2)^alpha.
double recurrence_b(int j, double alpha) {
  // j = 1 cancels to 1/(2 alpha + 3); the general form is 0/0 at alpha = -1/2.
  if (j == 1) return std::sqrt(1.0 / (2.0 * alpha + 3.0));
  const double jd = j;
  return std::sqrt(jd * (jd + 2.0 * alpha) /
                   (4.0 * (jd + alpha) * (jd + alpha) - 1.0));
}

struct Evaluation {
  double value;       // p_N(t)
  double derivative;  // p_N'(t)
  double christoffel; // sum_{k<N} p_k(t)^2
};

Evaluation evaluate(int count, double alpha, double mu0, double t) {
  double p_prev = 0.0, p = 1.0 / std::sqrt(mu0);
  double d_prev = 0.0, d = 0.0;
  double sum_sq = p * p;
  double b_prev = 0.0;
  for (int k = 0; k < count; ++k) {
    const double b_next = recurrence_b(k + 1, alpha);
    const double p_next = (t * p - b_prev * p_prev) / b_next;
    const double d_next = (p + t * d - b_prev * d_prev) / b_next;
    p_prev = p;
    p = p_next;
    d_prev = d;
    d = d_next;
    b_prev = b_next;
    if (k + 1 < count) sum_sq += p * p;
  }
  return {p, d, sum_sq};
}

}  // namespace

Rule gauss_gegenbauer(int count, double alpha) {
  if (count < 1) throw DomainError("gauss rule needs at least one node");
  if (!(alpha > -1.0)) throw DomainError("gauss_gegenbauer: alpha must exceed -1");

  const double mu0 = std::sqrt(std::numbers::pi) * nsphere::gamma(alpha + 1.0) /
                     nsphere::gamma(alpha + 1.5);
  Rule rule;
  rule.nodes.resize(count);
  rule.weights.resize(count);
  if (count == 1) {
    rule.nodes[0] = 0.0;
    rule.weights[0] = mu0;
    return rule;
  }

  Eigen::VectorXd diag = Eigen::VectorXd::Zero(count);
  Eigen::VectorXd sub(count - 1);
  for (int j = 1; j < count; ++j) sub[j - 1] = recurrence_b(j, alpha);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver;
  solver.computeFromTridiagonal(diag, sub, Eigen::EigenvaluesOnly);
  const Eigen::VectorXd& seeds = solver.eigenvalues();

  for (int i = 0; i < count; ++i) {
    double t = seeds[i];
    for (int iter = 0; iter < 8; ++iter) {
      const Evaluation e = evaluate(count, alpha, mu0, t);
      const double step = e.value / e.derivative;
      t -= step;
      if (std::abs(step) < 1e-16) break;
    }
    rule.nodes[i] = t;
  }
  // Enforce exact symmetry about the origin.
  for (int i = 0; i < count / 2; ++i) {
    const double t = 0.5 * (rule.nodes[count - 1 - i] - rule.nodes[i]);
    rule.nodes[i] = -t;
    rule.nodes[count - 1 - i] = t;
  }
  if (count % 2 == 1) rule.nodes[count / 2] = 0.0;
  for (int i = 0; i < count; ++i) {
    rule.weights[i] = 1.0 / evaluate(count, alpha, mu0, rule.nodes[i]).christoffel;
  }
  for (int i = 0; i < count / 2; ++i) {
    const double w = 0.5 * (rule.weights[i] + rule.weights[count - 1 - i]);
    rule.weights[i] = rule.weights[count - 1 - i] = w;
  }
  return rule;
}

Rule gauss_legendre(int count) { return gauss_gegenbauer(count, 0.0); }

Rule gauss_legendre(int count, double a, double b) {
  Rule rule = gauss_legendre(count);
  const double half = 0.5 * (b - a), mid = 0.5 * (a + b);
  for (std::size_t i = 0; i < rule.nodes.size(); ++i) {
    rule.nodes[i] = mid + half * rule.nodes[i];
    rule.weights[i] *= half;
  }
  return rule;
}

double pairwise_sum(std::span<const double> values) {
  constexpr std::size_t kBlock = 32;
  if (values.size() <= kBlock) {
    double s = 0.0;
    for (double v : values) s += v;
    return s;
  }
  const std::size_t half = values.size() / 2;
  return pairwise_sum(values.first(half)) + pairwise_sum(values.subspan(half));
}

}  // namespace hyperthick::quadrature
