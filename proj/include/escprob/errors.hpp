#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>

namespace escprob {

/// Base of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

/// Wrong vertex count, non-finite coordinates or inconsistent implied vertices.
class InvalidElement : public Error {
 public:
  using Error::Error;
};

class DegenerateElement : public Error {
 public:
  using Error::Error;
};

class EmptyInterval : public Error {
 public:
  using Error::Error;
};

class InvalidConfig : public Error {
 public:
  using Error::Error;
};

class DensityUnavailable : public Error {
 public:
  using Error::Error;
};

class SamplerUnavailable : public Error {
 public:
  using Error::Error;
};

/// Density requested at (numerically) zero displacement for a law that
/// diverges there.
class OriginSingularity : public Error {
 public:
  using Error::Error;
};

class QuadratureFailure : public Error {
 public:
  using Error::Error;
};

class NonFiniteIntegrand : public QuadratureFailure {
 public:
  using QuadratureFailure::QuadratureFailure;
};

/// Adaptive subdivision budget exhausted; carries the best value reached.
class ToleranceNotMet : public QuadratureFailure {
 public:
  ToleranceNotMet(const std::string& what, double value, double error, std::uint64_t evaluations)
      : QuadratureFailure(what), value_(value), error_(error), evaluations_(evaluations) {}

  double value() const { return value_; }
  double error() const { return error_; }
  std::uint64_t evaluations() const { return evaluations_; }

 private:
  double value_;
  double error_;
  std::uint64_t evaluations_;
};

class TooFewRuns : public Error {
 public:
  using Error::Error;
};

}  // namespace escprob
