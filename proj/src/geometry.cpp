#include "hyperthick/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <string>

#include "hyperthick/error.hpp"
#include "hyperthick/parallel.hpp"
#include "hyperthick/quadrature.hpp"

namespace hyperthick::geometry {
namespace {

constexpr double kPi = std::numbers::pi;

std::vector<double> unit_from_angles(const std::vector<double>& angles) {
  const std::size_t n = angles.size() + 1;
  std::vector<double> x(n);
  double sin_prod = 1.0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    x[i] = sin_prod * std::cos(angles[i]);
    sin_prod *= std::sin(angles[i]);
  }
  x[n - 1] = sin_prod;
  return x;
}

}  // namespace

Direction::Direction(std::vector<double> angles) : angles_(std::move(angles)) {
  if (angles_.empty()) throw DomainError("Direction needs at least one angle (n >= 2)");
  for (std::size_t i = 0; i + 1 < angles_.size(); ++i) {
    if (!(angles_[i] >= 0.0 && angles_[i] <= kPi)) {
      throw DomainError("polar angle " + std::to_string(i + 1) + " outside [0, pi]");
    }
  }
  const double az = angles_.back();
  if (!(az >= 0.0 && az < 2.0 * kPi)) {
    throw DomainError("azimuthal angle outside [0, 2 pi)");
  }
  unit_ = unit_from_angles(angles_);
}

Direction Direction::from_cartesian(std::span<const double> x) {
  const std::size_t n = x.size();
  if (n < 2) throw DomainError("from_cartesian: dimension must be >= 2");
  double norm_sq = 0.0;
  for (double v : x) norm_sq += v * v;
  if (!(norm_sq > 0.0)) throw DomainError("from_cartesian: zero vector");

  std::vector<double> angles(n - 1);
  // tail[k] = sqrt(x_k^2 + ... + x_{n-1}^2), accumulated from the back.
  std::vector<double> tail(n + 1, 0.0);
  for (std::size_t k = n; k-- > 0;) tail[k] = std::hypot(tail[k + 1], x[k]);
  for (std::size_t k = 0; k + 2 < n; ++k) angles[k] = std::atan2(tail[k + 1], x[k]);
  double az = std::atan2(x[n - 1], x[n - 2]);
  if (az < 0.0) az += 2.0 * kPi;
  if (az >= 2.0 * kPi) az = 0.0;
  angles[n - 2] = az;

  std::vector<double> unit(x.begin(), x.end());
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& v : unit) v *= inv;
  return Direction(std::move(angles), std::move(unit));
}

std::vector<double> spherical_to_cartesian(double r, const Direction& d) {
  if (!(r >= 0.0)) throw DomainError("spherical_to_cartesian: r must be >= 0");
  std::vector<double> x(d.unit().begin(), d.unit().end());
  for (double& v : x) v *= r;
  return x;
}

double solid_angle_density(const Direction& d) {
  const auto& a = d.angles();
  const int n = d.dimension();
  double density = 1.0;
  for (int i = 0; i + 2 < n; ++i) density *= std::pow(std::sin(a[i]), n - 2 - i);
  return density;
}

double axis_polar_angle(const Direction& d, std::span<const double> axis) {
  if (static_cast<int>(axis.size()) != d.dimension()) {
    throw DomainError("axis_polar_angle: axis dimension mismatch");
  }
  double norm_sq = 0.0, dot = 0.0;
  for (std::size_t i = 0; i < axis.size(); ++i) {
    norm_sq += axis[i] * axis[i];
    dot += axis[i] * d.unit()[i];
  }
  if (std::abs(norm_sq - 1.0) > 1e-12) throw DomainError("axis_polar_angle: axis is not unit length");
  return std::acos(std::clamp(dot, -1.0, 1.0));
}

std::vector<double> normalized(std::span<const double> v) {
  double norm_sq = 0.0;
  for (double x : v) norm_sq += x * x;
  if (!(norm_sq > 0.0)) throw DomainError("normalized: zero vector");
  std::vector<double> out(v.begin(), v.end());
  const double inv = 1.0 / std::sqrt(norm_sq);
  for (double& x : out) x *= inv;
  return out;
}

std::vector<std::vector<double>> orthonormal_frame(std::span<const double> axis) {
  const std::size_t n = axis.size();
  std::vector<std::vector<double>> frame;
  frame.push_back(normalized(axis));
  // Gram-Schmidt over the coordinate vectors, most orthogonal first.
  std::vector<std::size_t> order(n);
  for (std::size_t i = 0; i < n; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) {
    return std::abs(frame[0][a]) < std::abs(frame[0][b]);
  });
  for (std::size_t idx : order) {
    if (frame.size() == n) break;
    std::vector<double> v(n, 0.0);
    v[idx] = 1.0;
    for (int pass = 0; pass < 2; ++pass) {
      for (const auto& f : frame) {
        double dot = 0.0;
        for (std::size_t k = 0; k < n; ++k) dot += f[k] * v[k];
        for (std::size_t k = 0; k < n; ++k) v[k] -= dot * f[k];
      }
    }
    double norm_sq = 0.0;
    for (double x : v) norm_sq += x * x;
    if (norm_sq < 1e-12) continue;
    frame.push_back(normalized(v));
  }
  return frame;
}

GridCursor::GridCursor(const DirectionGrid& grid, std::size_t index)
    : grid_(&grid),
      digits_(grid.n_ - 1, 0),
      sin_prefix_(grid.n_, 1.0),
      weight_prefix_(grid.n_, 1.0),
      direction_(std::vector<double>(grid.n_ - 1, 0.0), std::vector<double>(grid.n_, 0.0)) {
  if (index >= grid.size_) throw DomainError("grid index out of range");
  const auto res = static_cast<std::size_t>(grid.resolution_);
  for (int level = grid.n_ - 2; level >= 0; --level) {
    digits_[level] = static_cast<int>(index % res);
    index /= res;
  }
  refresh(0);
}

void GridCursor::refresh(int from_level) {
  const int levels = grid_->n_ - 1;
  auto& angles = direction_.angles_;
  auto& unit = direction_.unit_;
  for (int level = from_level; level < levels; ++level) {
    const auto& f = grid_->factors_[level];
    const int j = digits_[level];
    angles[level] = f.angle[j];
    unit[level] = sin_prefix_[level] * f.cos[j];
    sin_prefix_[level + 1] = sin_prefix_[level] * f.sin[j];
    weight_prefix_[level + 1] = weight_prefix_[level] * f.weight[j];
  }
  unit[levels] = sin_prefix_[levels];
  weight_ = weight_prefix_[levels];
}

void GridCursor::advance() {
  int level = grid_->n_ - 2;
  while (level >= 0 && ++digits_[level] == grid_->resolution_) digits_[level--] = 0;
  refresh(level < 0 ? 0 : level);
}

Direction DirectionGrid::node(std::size_t index) const { return GridCursor(*this, index).direction(); }

double DirectionGrid::weight(std::size_t index) const { return GridCursor(*this, index).weight(); }

double DirectionGrid::integrate(std::span<const double> node_values) const {
  if (node_values.size() != size_) {
    throw DomainError("DirectionGrid::integrate: value count mismatch");
  }
  std::vector<double> terms(size_);
  visit(0, size_, [&](std::size_t i, const Direction&, double w) { terms[i] = w * node_values[i]; });
  return quadrature::pairwise_sum(terms);
}

double DirectionGrid::integrate(const std::function<double(const Direction&)>& g) const {
  std::vector<double> partial(chunk_count(), 0.0);
  parallel::for_each_index(partial.size(), [&](std::size_t c) {
    // Neumaier-compensated sum within the chunk.
    double sum = 0.0, carry = 0.0;
    visit(c * kChunk, std::min(size_, (c + 1) * kChunk), [&](std::size_t, const Direction& d, double w) {
      const double term = w * g(d);
      const double t = sum + term;
      carry += std::abs(sum) >= std::abs(term) ? (sum - t) + term : (term - t) + sum;
      sum = t;
    });
    partial[c] = sum + carry;
  });
  return quadrature::pairwise_sum(partial);
}

std::vector<double> DirectionGrid::weights() const {
  std::vector<double> out(size_);
  visit(0, size_, [&](std::size_t i, const Direction&, double w) { out[i] = w; });
  return out;
}

std::vector<double> DirectionGrid::unit_vectors() const {
  std::vector<double> out(size_ * static_cast<std::size_t>(n_));
  visit(0, size_, [&](std::size_t i, const Direction& d, double) {
    std::copy(d.unit().begin(), d.unit().end(), out.begin() + static_cast<std::ptrdiff_t>(i * n_));
  });
  return out;
}

DirectionGrid build_grid(int n, int resolution, const GridOptions& options) {
  if (n < 2) throw DomainError("build_grid: n must be >= 2");
  if (resolution < 2) throw DomainError("build_grid: resolution must be >= 2");
  std::size_t count = 1;
  for (int i = 0; i < n - 1; ++i) {
    if (count > options.node_budget / static_cast<std::size_t>(resolution)) {
      throw BudgetError("build_grid: resolution^(n-1) exceeds node budget of " +
                        std::to_string(options.node_budget));
    }
    count *= static_cast<std::size_t>(resolution);
  }

  DirectionGrid grid;
  grid.n_ = n;
  grid.resolution_ = resolution;
  grid.size_ = count;
  // Polar angle i (0-based) carries sin^{k} with k = n - 2 - i; in t = cos p
  // that is (1 - t^2)^{(k-1)/2} dt.
  for (int i = 0; i + 2 < n; ++i) {
    const int k = n - 2 - i;
    const auto rule = quadrature::gauss_gegenbauer(resolution, 0.5 * (k - 1));
    DirectionGrid::Factor f;
    // Nodes are ascending in t; reverse so p_i runs from 0 towards pi.
    for (int j = resolution - 1; j >= 0; --j) {
      const double a = std::acos(rule.nodes[j]);
      f.angle.push_back(a);
      f.cos.push_back(std::cos(a));
      f.sin.push_back(std::sin(a));
      f.weight.push_back(rule.weights[j]);
    }
    grid.factors_.push_back(std::move(f));
  }
  DirectionGrid::Factor az;
  for (int j = 0; j < resolution; ++j) {
    const double a = 2.0 * kPi * j / resolution;
    az.angle.push_back(a);
    az.cos.push_back(std::cos(a));
    az.sin.push_back(std::sin(a));
    az.weight.push_back(2.0 * kPi / resolution);
  }
  grid.factors_.push_back(std::move(az));
  return grid;
}

}  // namespace hyperthick::geometry
