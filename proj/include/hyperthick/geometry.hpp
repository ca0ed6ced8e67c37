#pragma once

#include <cstddef>
#include <functional>
#include <span>
#include <vector>

// n-dimensional spherical coordinates, the solid-angle measure, and
// product quadrature grids over the unit sphere S^{n-1}.
//
// Chart: x_1 = r cos p_1, x_2 = r sin p_1 cos p_2, ...,
//        x_n = r sin p_1 ... sin p_{n-1},
// with p_1..p_{n-2} in [0, pi] and p_{n-1} in [0, 2 pi).

namespace hyperthick::geometry {

/// A direction on S^{n-1} stored by its angles. The Cartesian unit vector
/// is derived once at construction.
class Direction {
 public:
  /// Validates angle ranges; throws DomainError on violation.
  explicit Direction(std::vector<double> angles);

  /// Direction of a nonzero Cartesian vector (n >= 2).
  static Direction from_cartesian(std::span<const double> x);

  int dimension() const noexcept { return static_cast<int>(angles_.size()) + 1; }
  const std::vector<double>& angles() const noexcept { return angles_; }
  std::span<const double> unit() const noexcept { return unit_; }

 private:
  Direction(std::vector<double> angles, std::vector<double> unit)
      : angles_(std::move(angles)), unit_(std::move(unit)) {}
  friend class GridCursor;
  std::vector<double> angles_;
  std::vector<double> unit_;
};

/// (z, R) point of the hyper-cylindrical chart: z along the axis, R >= 0
/// the transverse radius.
struct CylPoint {
  double z = 0.0;
  double R = 0.0;
};

std::vector<double> spherical_to_cartesian(double r, const Direction& d);

/// sin^{n-2} p_1 sin^{n-3} p_2 ... sin p_{n-2}.
double solid_angle_density(const Direction& d);

/// Polar angle of d measured from a unit axis. Throws DomainError if the
/// axis is not unit length (tolerance 1e-12) or dimensions differ.
double axis_polar_angle(const Direction& d, std::span<const double> axis);

/// Normalised copy of a nonzero vector.
std::vector<double> normalized(std::span<const double> v);

/// Completes a unit vector to an orthonormal basis; column 0 is the axis.
std::vector<std::vector<double>> orthonormal_frame(std::span<const double> axis);

struct GridOptions {
  /// Nodes are generated on the fly, so the budget bounds work, not memory.
  std::size_t node_budget = std::size_t{1} << 28;
};

class DirectionGrid;

/// Walks grid nodes in index order, updating one Direction in place.
class GridCursor {
 public:
  GridCursor(const DirectionGrid& grid, std::size_t index);

  const Direction& direction() const noexcept { return direction_; }
  double weight() const noexcept { return weight_; }
  /// Moves to the next node; the last angle varies fastest.
  void advance();

 private:
  void refresh(int from_level);

  const DirectionGrid* grid_;
  std::vector<int> digits_;
  std::vector<double> sin_prefix_;
  std::vector<double> weight_prefix_;
  Direction direction_;
  double weight_ = 0.0;
};

/// Tensor-product quadrature over S^{n-1}: Gauss rules in cos p_i for the
/// polar angles (the sin-power density carried by the weights) and the
/// uniform trapezoid rule in the azimuth. Only the one-dimensional factor
/// rules are stored.
class DirectionGrid {
 public:
  int dimension() const noexcept { return n_; }
  int resolution() const noexcept { return resolution_; }
  std::size_t size() const noexcept { return size_; }

  Direction node(std::size_t index) const;
  double weight(std::size_t index) const;

  /// Calls f(index, direction, weight) for nodes [begin, end). The
  /// Direction is reused between calls.
  template <class F>
  void visit(std::size_t begin, std::size_t end, F&& f) const {
    if (begin >= end) return;
    GridCursor cursor(*this, begin);
    for (std::size_t i = begin;; cursor.advance()) {
      f(i, cursor.direction(), cursor.weight());
      if (++i == end) break;
    }
  }

  /// Fixed partition of the nodes used by parallel traversals, so that
  /// reductions do not depend on the worker count.
  static constexpr std::size_t kChunk = std::size_t{1} << 15;
  std::size_t chunk_count() const noexcept { return (size_ + kChunk - 1) / kChunk; }

  /// Sum over nodes of weight * value, pairwise-reduced.
  double integrate(std::span<const double> node_values) const;
  /// Sum over nodes of weight * g(node), evaluated in parallel chunks.
  double integrate(const std::function<double(const Direction&)>& g) const;

  std::vector<double> weights() const;
  /// Unit vectors of all nodes, row-major (size() x dimension()).
  std::vector<double> unit_vectors() const;

  friend DirectionGrid build_grid(int n, int resolution, const GridOptions& options);
  friend class GridCursor;

 private:
  struct Factor {
    std::vector<double> angle, cos, sin, weight;
  };
  int n_ = 0;
  int resolution_ = 0;
  std::size_t size_ = 0;
  std::vector<Factor> factors_;  // n - 1 levels; the last is the azimuth
};

/// Throws DomainError for n < 2 or resolution < 2, BudgetError when
/// resolution^{n-1} exceeds the node budget.
DirectionGrid build_grid(int n, int resolution, const GridOptions& options = {});

}  // namespace hyperthick::geometry
