#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include <json.hpp>

// Invariant suites behind `hyperthick verify`. Each returns a report
// {suite, pass, checks: [{name, value, tolerance, pass}, ...], ...}.

namespace hyperthick::cli::verify {

struct SphereOptions {
  int n = 2;
  int m = 1;
  int trials = 200;
  double amplitude = 0.05;
  std::uint64_t seed = 1;
  int resolution = 32;
};
nlohmann::json sphere_optimality(const SphereOptions& o);

struct IdentityCase {
  int n, m;
  double lambda, ecc;
};
/// Twelve (n - m, e, lambda) cases spanning eggs and critical shapes.
std::vector<IdentityCase> default_identity_cases();
nlohmann::json identity(const std::vector<IdentityCase>& cases, int resolution);

struct NullvectorOptions {
  int n = 3;
  int m = 2;
  double lambda = 1.0;
  double ecc = 0.5;
  int resamplings = 20;
  std::uint64_t seed = 1;
};
nlohmann::json nullvector(const NullvectorOptions& o);

/// Gaps 1..8 when `gap` is empty.
nlohmann::json factorization(std::optional<int> gap, int points, std::uint64_t seed);

}  // namespace hyperthick::cli::verify
