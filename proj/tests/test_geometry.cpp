#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include <Eigen/Dense>

#include "hyperthick/error.hpp"
#include "hyperthick/geometry.hpp"
#include "hyperthick/nsphere.hpp"
#include "hyperthick/parallel.hpp"

using namespace hyperthick;
using geometry::Direction;

namespace {

constexpr double kPi = std::numbers::pi;

Direction random_direction(int n, std::mt19937_64& rng) {
  std::normal_distribution<double> normal;
  std::vector<double> x(n);
  for (auto& v : x) v = normal(rng);
  return Direction::from_cartesian(x);
}

double grid_sum(const geometry::DirectionGrid& g) {
  return g.integrate([](const Direction&) { return 1.0; });
}

}  // namespace

TEST_CASE("spherical_to_cartesian on the axes") {
  const auto a = geometry::spherical_to_cartesian(1.0, Direction({0.0}));
  CHECK(a[0] == doctest::Approx(1.0));
  CHECK(a[1] == doctest::Approx(0.0));
  const auto b = geometry::spherical_to_cartesian(2.0, Direction({kPi / 2, kPi / 2}));
  CHECK(b[0] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b[1] == doctest::Approx(0.0).epsilon(1e-15));
  CHECK(b[2] == doctest::Approx(2.0));
  CHECK_THROWS_AS(geometry::spherical_to_cartesian(-1.0, Direction({0.0})), DomainError);
}

TEST_CASE("cartesian norm equals r and angles round-trip, n <= 7") {
  std::mt19937_64 rng(3);
  std::uniform_real_distribution<double> uni(0.0, 5.0);
  for (int n = 2; n <= 7; ++n) {
    for (int i = 0; i < 100; ++i) {
      const Direction d = random_direction(n, rng);
      const double r = uni(rng);
      const auto x = geometry::spherical_to_cartesian(r, d);
      double norm = 0.0;
      for (double v : x) norm += v * v;
      CHECK(std::sqrt(norm) == doctest::Approx(r).epsilon(1e-13));
      const Direction again(d.angles());
      for (int k = 0; k < n; ++k) CHECK(again.unit()[k] == doctest::Approx(d.unit()[k]).epsilon(1e-13));
    }
  }
}

TEST_CASE("Direction validates angle ranges") {
  CHECK_THROWS_AS(Direction(std::vector<double>{}), DomainError);
  CHECK_THROWS_AS(Direction({-0.1, 0.0}), DomainError);
  CHECK_THROWS_AS(Direction({0.5, 2.0 * kPi}), DomainError);
  CHECK_THROWS_AS(Direction({4.0, 1.0}), DomainError);
  CHECK_THROWS_AS(Direction::from_cartesian(std::vector<double>{0.0, 0.0}), DomainError);
}

TEST_CASE("solid-angle density") {
  CHECK(geometry::solid_angle_density(Direction({1.234})) == 1.0);
  CHECK(geometry::solid_angle_density(Direction({kPi / 2, 0.3})) == doctest::Approx(1.0));
  CHECK(geometry::solid_angle_density(Direction({kPi / 3, kPi / 4, 1.0})) ==
        doctest::Approx(0.5303300859).epsilon(1e-9));
}

TEST_CASE("solid-angle density equals the chart Jacobian (finite differences)") {
  std::mt19937_64 rng(17);
  std::uniform_real_distribution<double> polar(0.2, kPi - 0.2), az(0.1, 2 * kPi - 0.1);
  for (int n = 2; n <= 6; ++n) {
    for (int t = 0; t < 10; ++t) {
      std::vector<double> angles(n - 1);
      for (int i = 0; i + 1 < n - 1; ++i) angles[i] = polar(rng);
      angles.back() = az(rng);
      // Columns: d/dr and d/dangle_i of x(r, angles) at r = 1.
      Eigen::MatrixXd jac(n, n);
      const Direction d(angles);
      for (int k = 0; k < n; ++k) jac(k, 0) = d.unit()[k];
      const double h = 1e-6;
      for (int i = 0; i < n - 1; ++i) {
        auto plus = angles, minus = angles;
        plus[i] += h;
        minus[i] -= h;
        const Direction dp(plus), dm(minus);
        for (int k = 0; k < n; ++k) jac(k, i + 1) = (dp.unit()[k] - dm.unit()[k]) / (2 * h);
      }
      CHECK(std::abs(jac.determinant()) == doctest::Approx(geometry::solid_angle_density(d)).epsilon(1e-8));
    }
  }
}

TEST_CASE("axis_polar_angle") {
  const std::vector<double> pole{1.0, 0.0, 0.0};
  CHECK(geometry::axis_polar_angle(Direction({0.0, 0.0}), pole) == doctest::Approx(0.0));
  CHECK(geometry::axis_polar_angle(Direction({kPi / 2, 1.0}), pole) == doctest::Approx(kPi / 2));
  CHECK_THROWS_AS(geometry::axis_polar_angle(Direction({0.0, 0.0}), std::vector<double>{1.0, 1.0, 0.0}),
                  DomainError);
  CHECK_THROWS_AS(geometry::axis_polar_angle(Direction({0.0, 0.0}), std::vector<double>{1.0, 0.0}), DomainError);
  std::mt19937_64 rng(8);
  for (int i = 0; i < 100; ++i) {
    const Direction d = random_direction(4, rng);
    const Direction axis = random_direction(4, rng);
    const auto x = geometry::spherical_to_cartesian(1.0, d);
    double dot = 0.0;
    for (int k = 0; k < 4; ++k) dot += x[k] * axis.unit()[k];
    CHECK(std::cos(geometry::axis_polar_angle(d, axis.unit())) == doctest::Approx(dot).epsilon(1e-14));
  }
}

TEST_CASE("orthonormal frame") {
  std::mt19937_64 rng(1);
  for (int n = 2; n <= 6; ++n) {
    const Direction a = random_direction(n, rng);
    const auto frame = geometry::orthonormal_frame(a.unit());
    REQUIRE(frame.size() == std::size_t(n));
    for (int k = 0; k < n; ++k) CHECK(frame[0][k] == doctest::Approx(a.unit()[k]));
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        double dot = 0.0;
        for (int k = 0; k < n; ++k) dot += frame[i][k] * frame[j][k];
        CHECK(dot == doctest::Approx(i == j ? 1.0 : 0.0).epsilon(1e-14));
      }
  }
}

TEST_CASE("grid sizes and weight sums") {
  const auto g2 = geometry::build_grid(2, 64);
  CHECK(g2.size() == 64);
  CHECK(std::abs(grid_sum(g2) - 2 * kPi) < 1e-12);
  const auto g3 = geometry::build_grid(3, 32);
  CHECK(g3.size() == 1024);
  CHECK(std::abs(grid_sum(g3) - 4 * kPi) < 1e-10);
  const auto g5 = geometry::build_grid(5, 16);
  CHECK(std::abs(grid_sum(g5) - nsphere::unit_sphere_area(4)) < 1e-8);
  for (int n = 2; n <= 6; ++n) {
    const auto g = geometry::build_grid(n, 6);
    CHECK(grid_sum(g) == doctest::Approx(nsphere::unit_sphere_area(n - 1)).epsilon(1e-13));
    for (double w : g.weights()) CHECK(w > 0.0);
  }
}

TEST_CASE("grid integrates low-order polynomials in the direction exactly") {
  for (int n = 2; n <= 5; ++n) {
    const auto g = geometry::build_grid(n, 8);
    const double s = nsphere::unit_sphere_area(n - 1);
    for (int axis = 0; axis < n; ++axis) {
      CHECK(g.integrate([&](const Direction& d) { return d.unit()[axis] * d.unit()[axis]; }) ==
            doctest::Approx(s / n).epsilon(1e-13));
      CHECK(std::abs(g.integrate([&](const Direction& d) { return d.unit()[axis]; })) < 1e-13);
    }
    // <x_1^4> = 3 / (n (n + 2)).
    CHECK(g.integrate([](const Direction& d) { return std::pow(d.unit()[0], 4); }) ==
          doctest::Approx(3.0 * s / (n * (n + 2))).epsilon(1e-13));
  }
}

TEST_CASE("lazy nodes agree with streamed nodes and with Direction(angles)") {
  const auto g = geometry::build_grid(4, 5);
  std::size_t seen = 0;
  g.visit(0, g.size(), [&](std::size_t i, const Direction& d, double w) {
    const Direction fresh(d.angles());
    const Direction indexed = g.node(i);
    for (int k = 0; k < 4; ++k) {
      CHECK(fresh.unit()[k] == d.unit()[k]);
      CHECK(indexed.unit()[k] == d.unit()[k]);
    }
    CHECK(g.weight(i) == w);
    ++seen;
  });
  CHECK(seen == g.size());
  // Polar angles run from near 0 towards pi; the azimuth varies fastest.
  CHECK(g.node(0).angles()[0] < g.node(g.size() - 1).angles()[0]);
  CHECK(g.node(1).angles()[2] > g.node(0).angles()[2]);
  CHECK_THROWS_AS(g.node(g.size()), DomainError);
}

TEST_CASE("grid budget and argument checks") {
  CHECK_THROWS_AS(geometry::build_grid(1, 8), DomainError);
  CHECK_THROWS_AS(geometry::build_grid(3, 1), DomainError);
  geometry::GridOptions tight;
  tight.node_budget = 1000;
  CHECK_THROWS_AS(geometry::build_grid(3, 32, tight), BudgetError);
  CHECK_NOTHROW(geometry::build_grid(3, 31, tight));
  CHECK_THROWS_AS(geometry::build_grid(12, 48), BudgetError);
}

TEST_CASE("grid reductions do not depend on the worker count") {
  const auto g = geometry::build_grid(4, 40);
  auto f = [](const Direction& d) { return std::exp(d.unit()[0] + 0.3 * d.unit()[3]); };
  parallel::set_max_threads(1);
  const double one = g.integrate(f);
  parallel::set_max_threads(5);
  const double five = g.integrate(f);
  parallel::set_max_threads(0);
  CHECK(one == five);
}
