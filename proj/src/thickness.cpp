#include "hyperthick/thickness.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>
#include <string>

#include "hyperthick/error.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/parallel.hpp"
#include "hyperthick/quadrature.hpp"

namespace hyperthick::thickness {
namespace {

using geometry::Direction;
using geometry::DirectionGrid;

constexpr std::uint64_t kBatch = std::uint64_t{1} << 16;
constexpr double kOriginExclusion = 1e-12;
constexpr std::size_t kParallelThreshold = 4096;

void require_grid(int n, const DirectionGrid& grid, std::size_t value_count) {
  if (grid.dimension() != n) {
    throw DomainError("grid dimension " + std::to_string(grid.dimension()) +
                      " does not match shape dimension " + std::to_string(n));
  }
  if (value_count != grid.size()) throw DomainError("radius count does not match grid size");
}

// Running (count, mean, M2) accumulator combined with Chan's update.
struct Moments {
  std::uint64_t count = 0;
  std::uint64_t hits = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double y) {
    ++count;
    const double delta = y - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (y - mean);
  }
  void merge(const Moments& o) {
    if (o.count == 0) return;
    const double total = static_cast<double>(count + o.count);
    const double delta = o.mean - mean;
    m2 += o.m2 + delta * delta * static_cast<double>(count) * static_cast<double>(o.count) / total;
    mean += delta * static_cast<double>(o.count) / total;
    count += o.count;
    hits += o.hits;
  }
};

// Samples uniformly in the body's bounding ball and accumulates
// weight(x) for points inside the body.
Moments sample_ball(const IndicatorBody& body, std::uint64_t samples, std::uint64_t seed,
                    const std::function<double(double)>& weight_of_radius) {
  if (body.n < 1) throw DomainError("IndicatorBody dimension must be positive");
  if (!(body.bounding_radius > 0.0) || !std::isfinite(body.bounding_radius)) {
    throw DomainError("IndicatorBody bounding radius must be positive and finite");
  }
  if (!body.bounding_center.empty() && static_cast<int>(body.bounding_center.size()) != body.n) {
    throw DomainError("IndicatorBody bounding centre has wrong dimension");
  }
  if (samples == 0) throw InsufficientSamplingError("Monte Carlo needs at least one sample");

  const std::uint64_t batches = (samples + kBatch - 1) / kBatch;
  std::vector<Moments> partial(batches);
  const int n = body.n;
  parallel::for_each_index(batches, [&](std::size_t b) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(b), static_cast<std::uint32_t>(b >> 32)};
    std::mt19937_64 rng(seq);
    std::normal_distribution<double> normal;
    std::uniform_real_distribution<double> uniform;
    const std::uint64_t begin = b * kBatch;
    const std::uint64_t end = std::min(samples, begin + kBatch);
    std::vector<double> x(n);
    Moments acc;
    for (std::uint64_t s = begin; s < end; ++s) {
      double r = 0.0;
      for (;;) {
        double norm_sq = 0.0;
        for (int i = 0; i < n; ++i) {
          x[i] = normal(rng);
          norm_sq += x[i] * x[i];
        }
        if (norm_sq == 0.0) continue;
        const double rho = body.bounding_radius * std::pow(uniform(rng), 1.0 / n) / std::sqrt(norm_sq);
        double r_sq = 0.0;
        for (int i = 0; i < n; ++i) {
          x[i] *= rho;
          if (!body.bounding_center.empty()) x[i] += body.bounding_center[i];
          r_sq += x[i] * x[i];
        }
        r = std::sqrt(r_sq);
        if (r >= kOriginExclusion) break;
      }
      if (body.contains(x)) {
        acc.add(weight_of_radius(r));
        ++acc.hits;
      } else {
        acc.add(0.0);
      }
    }
    partial[b] = acc;
  });

  Moments total;
  for (const auto& p : partial) total.merge(p);
  if (total.hits == 0) {
    throw InsufficientSamplingError("no Monte Carlo sample landed inside the body");
  }
  return total;
}

McEstimate finish(const Moments& mom, double scale) {
  McEstimate out;
  out.samples = mom.count;
  out.accepted = mom.hits;
  out.estimate = scale * mom.mean;
  const double var = mom.count > 1 ? mom.m2 / static_cast<double>(mom.count - 1) : 0.0;
  out.standard_error = scale * std::sqrt(var / static_cast<double>(mom.count));
  return out;
}

double ipow(double x, int k) {
  double r = 1.0;
  for (; k > 0; k >>= 1, x *= x)
    if (k & 1) r *= x;
  return r;
}

double checked_radius(const StarShape& shape, const Direction& d) {
  const double r = shape.radial(d);
  if (!(r > 0.0) || !std::isfinite(r)) throw DomainError("star shape radius must be positive and finite");
  return r;
}

}  // namespace

StarShape ball(int n, double radius) {
  if (!(radius > 0.0)) throw DomainError("ball radius must be positive");
  return {n, [radius](const Direction&) { return radius; }};
}

IndicatorBody indicator_from_star(const StarShape& shape, double bounding_radius) {
  auto radial = shape.radial;
  return {shape.n,
          [radial](std::span<const double> x) {
            double r_sq = 0.0;
            for (double v : x) r_sq += v * v;
            if (r_sq == 0.0) return true;
            return std::sqrt(r_sq) <= radial(Direction::from_cartesian(x));
          },
          bounding_radius,
          {}};
}

std::vector<double> sample_radii(const StarShape& shape, const DirectionGrid& grid) {
  require_grid(shape.n, grid, grid.size());
  std::vector<double> radii(grid.size());
  auto eval_chunk = [&](std::size_t c) {
    grid.visit(c * DirectionGrid::kChunk, std::min(grid.size(), (c + 1) * DirectionGrid::kChunk),
               [&](std::size_t i, const Direction& d, double) { radii[i] = checked_radius(shape, d); });
  };
  if (grid.size() >= kParallelThreshold) {
    parallel::for_each_index(grid.chunk_count(), eval_chunk);
  } else {
    for (std::size_t c = 0; c < grid.chunk_count(); ++c) eval_chunk(c);
  }
  return radii;
}

double average_thickness(std::span<const double> radii, int m, const DirectionGrid& grid) {
  const int n = grid.dimension();
  nsphere::require_section_dims(m, n);
  require_grid(n, grid, radii.size());
  std::vector<double> powered(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) powered[i] = ipow(radii[i], m);
  return nsphere::unit_ball_volume(m) / nsphere::unit_sphere_area(n - 1) * grid.integrate(powered);
}

double average_thickness(const StarShape& shape, int m, const DirectionGrid& grid) {
  nsphere::require_section_dims(m, shape.n);
  require_grid(shape.n, grid, grid.size());
  const double integral = grid.integrate([&](const Direction& d) { return ipow(checked_radius(shape, d), m); });
  return nsphere::unit_ball_volume(m) / nsphere::unit_sphere_area(shape.n - 1) * integral;
}

double volume(std::span<const double> radii, const DirectionGrid& grid) {
  const int n = grid.dimension();
  require_grid(n, grid, radii.size());
  std::vector<double> powered(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) powered[i] = ipow(radii[i], n) / n;
  return grid.integrate(powered);
}

double volume(const StarShape& shape, const DirectionGrid& grid) {
  const int n = shape.n;
  require_grid(n, grid, grid.size());
  return grid.integrate([&](const Direction& d) { return ipow(checked_radius(shape, d), n) / n; });
}

std::vector<double> moment(std::span<const double> radii, const DirectionGrid& grid) {
  const int n = grid.dimension();
  require_grid(n, grid, radii.size());
  std::vector<std::vector<double>> terms(n, std::vector<double>(radii.size()));
  grid.visit(0, grid.size(), [&](std::size_t i, const Direction& d, double w) {
    const double base = w * ipow(radii[i], n + 1) / (n + 1);
    for (int axis = 0; axis < n; ++axis) terms[axis][i] = base * d.unit()[axis];
  });
  std::vector<double> out(n);
  for (int axis = 0; axis < n; ++axis) out[axis] = quadrature::pairwise_sum(terms[axis]);
  return out;
}

std::vector<double> centroid(std::span<const double> radii, const DirectionGrid& grid) {
  const double v = volume(radii, grid);
  if (!(v > 0.0)) throw DegenerateBodyError("centroid undefined for zero volume");
  std::vector<double> g = moment(radii, grid);
  for (double& x : g) x /= v;
  return g;
}

std::vector<double> centroid(const StarShape& shape, const DirectionGrid& grid) {
  return centroid(sample_radii(shape, grid), grid);
}

McEstimate thickness_montecarlo(const IndicatorBody& body, int m, std::uint64_t samples,
                                std::uint64_t seed) {
  const int n = body.n;
  nsphere::require_section_dims(m, n);
  const double exponent = static_cast<double>(m - n);
  const Moments mom = sample_ball(body, samples, seed, [exponent](double r) { return std::pow(r, exponent); });
  const double ball_volume = nsphere::unit_ball_volume(n) * std::pow(body.bounding_radius, n);
  const double scale = m * nsphere::unit_ball_volume(m) / nsphere::unit_sphere_area(n - 1) * ball_volume;
  return finish(mom, scale);
}

McEstimate thickness_montecarlo(std::span<const IndicatorBody> parts, int m,
                                std::uint64_t samples_per_part, std::uint64_t seed) {
  if (parts.empty()) throw DomainError("thickness_montecarlo: no parts");
  McEstimate total;
  double var = 0.0;
  for (std::size_t p = 0; p < parts.size(); ++p) {
    // Distinct, reproducible stream per part.
    const McEstimate e = thickness_montecarlo(parts[p], m, samples_per_part,
                                              seed ^ (0x9E3779B97F4A7C15ULL * (p + 1)));
    total.estimate += e.estimate;
    var += e.standard_error * e.standard_error;
    total.samples += e.samples;
    total.accepted += e.accepted;
  }
  total.standard_error = std::sqrt(var);
  return total;
}

McEstimate volume_montecarlo(const IndicatorBody& body, std::uint64_t samples, std::uint64_t seed) {
  const Moments mom = sample_ball(body, samples, seed, [](double) { return 1.0; });
  return finish(mom, nsphere::unit_ball_volume(body.n) * std::pow(body.bounding_radius, body.n));
}

double axis_section_average(const StarShape& shape, std::span<const double> axis,
                            const DirectionGrid& grid) {
  if (shape.n != 3 || grid.dimension() != 3) {
    throw DomainError("axis_section_average is defined for n = 3 only");
  }
  if (axis.size() != 3) throw DomainError("axis_section_average: axis must have 3 components");
  double norm_sq = 0.0;
  for (double a : axis) norm_sq += a * a;
  if (std::abs(norm_sq - 1.0) > 1e-12) throw DomainError("axis_section_average: axis is not unit length");

  const auto frame = geometry::orthonormal_frame(axis);
  const int count = grid.resolution();
  const auto polar = quadrature::gauss_legendre(count, 0.0, std::numbers::pi);
  const int azimuth_count = 2 * count;
  const double azimuth_weight = 2.0 * std::numbers::pi / azimuth_count;

  std::vector<double> terms;
  terms.reserve(static_cast<std::size_t>(count) * azimuth_count);
  double x[3];
  for (int i = 0; i < count; ++i) {
    const double ct = std::cos(polar.nodes[i]), st = std::sin(polar.nodes[i]);
    for (int j = 0; j < azimuth_count; ++j) {
      const double phi = azimuth_weight * j;
      const double cp = std::cos(phi), sp = std::sin(phi);
      for (int k = 0; k < 3; ++k) x[k] = ct * frame[0][k] + st * (cp * frame[1][k] + sp * frame[2][k]);
      const double f = shape.radial(Direction::from_cartesian(x));
      terms.push_back(f * f * polar.weights[i] * azimuth_weight);
    }
  }
  return quadrature::pairwise_sum(terms) / (2.0 * std::numbers::pi);
}

}  // namespace hyperthick::thickness
