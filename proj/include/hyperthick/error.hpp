#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace hyperthick {

/// Base class for every error raised by the library. `kind()` is a stable,
/// machine-readable tag used by the CLI's JSON error payloads.
class Error : public std::runtime_error {
 public:
  Error(std::string kind, const std::string& what)
      : std::runtime_error(what), kind_(std::move(kind)) {}
  const std::string& kind() const noexcept { return kind_; }

 private:
  std::string kind_;
};

#define HYPERTHICK_DEFINE_ERROR(Name, tag)                                  \
  class Name : public Error {                                               \
   public:                                                                  \
    explicit Name(const std::string& what) : Error(tag, what) {}            \
  };

HYPERTHICK_DEFINE_ERROR(DomainError, "domain")
HYPERTHICK_DEFINE_ERROR(BudgetError, "budget")
HYPERTHICK_DEFINE_ERROR(DegenerateBodyError, "degenerate-body")
HYPERTHICK_DEFINE_ERROR(InsufficientSamplingError, "insufficient-sampling")
HYPERTHICK_DEFINE_ERROR(NoRootError, "no-root")
HYPERTHICK_DEFINE_ERROR(OutsideSupportError, "outside-support")
HYPERTHICK_DEFINE_ERROR(PoleError, "pole")
HYPERTHICK_DEFINE_ERROR(UnboundedRegionError, "unbounded-region")
HYPERTHICK_DEFINE_ERROR(ProjectionError, "projection")
HYPERTHICK_DEFINE_ERROR(GeometryError, "geometry")

#undef HYPERTHICK_DEFINE_ERROR

/// Raised when a deformation matrix does not have a one-dimensional null
/// space. Carries the singular values (descending) for diagnosis.
class RankError : public Error {
 public:
  RankError(const std::string& what, std::vector<double> singular_values)
      : Error("rank", what), singular_values_(std::move(singular_values)) {}
  const std::vector<double>& singular_values() const noexcept {
    return singular_values_;
  }

 private:
  std::vector<double> singular_values_;
};

}  // namespace hyperthick
