#pragma once

#include <stdexcept>
#include <string>

namespace dmcalc {

/// Base class for all errors thrown by this library.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

/// Malformed input: wrong dimensions, non-finite entries, broken invariants.
class InvalidInput : public Error {
public:
  explicit InvalidInput(const std::string& what) : Error(what) {}
};

/// Matrix logarithm requested for a matrix with a zero or negative eigenvalue.
class SingularLog : public Error {
public:
  explicit SingularLog(const std::string& what) : Error(what) {}
};

/// Conditioning on an event/marginal of (numerically) zero probability.
class ConditioningOnNull : public Error {
public:
  explicit ConditioningOnNull(const std::string& what) : Error(what) {}
};

/// Bayes update whose normalizer vanished (empty range intersection).
class ZeroEvidence : public Error {
public:
  explicit ZeroEvidence(const std::string& what) : Error(what) {}
};

/// Fixed-point iteration exhausted its iteration budget.
class NotConverged : public Error {
public:
  NotConverged(const std::string& what, int iterations, double residual)
      : Error(what), iterations(iterations), residual(residual) {}
  int iterations;
  double residual;
};

} // namespace dmcalc
