#pragma once

#include <stdexcept>
#include <string>

namespace rv {

struct GeometryError : std::runtime_error {
  using std::runtime_error::runtime_error;
  virtual const char* kind() const noexcept { return "GeometryError"; }
};

#define RV_ERROR(NAME)                                          \
  struct NAME : GeometryError {                                 \
    using GeometryError::GeometryError;                         \
    const char* kind() const noexcept override { return #NAME; } \
  };

RV_ERROR(SingularMetric)
RV_ERROR(OutOfDomain)
RV_ERROR(DifferentiationFailure)
RV_ERROR(UnsupportedDimension)
RV_ERROR(DegenerateImmersion)
RV_ERROR(TangentialFaces)
RV_ERROR(FitFailure)
RV_ERROR(CausticReached)
RV_ERROR(ODESolveFailure)
RV_ERROR(QuadratureDivergence)
RV_ERROR(ExtrapolationDivergence)
RV_ERROR(SolveFailure)
RV_ERROR(HypothesisViolated)
RV_ERROR(ConfigError)

#undef RV_ERROR

}  // namespace rv
