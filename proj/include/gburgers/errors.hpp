#pragma once

#include <stdexcept>
#include <string>
#include <vector>

namespace gb {

/// Input outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
public:
  using std::domain_error::domain_error;
};

/// A run configuration that cannot be executed as given.
class ConfigError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Picard iteration failed to reach tolerance within the iteration budget.
class ConvergenceError : public std::runtime_error {
public:
  ConvergenceError(std::string msg, std::vector<double> residuals)
      : std::runtime_error(std::move(msg)), residual_history(std::move(residuals)) {}
  std::vector<double> residual_history;
};

/// The runtime contraction certificate was violated beyond the allowed slack.
class CertificationError : public std::runtime_error {
public:
  CertificationError(std::string msg, std::vector<double> residuals)
      : std::runtime_error(std::move(msg)), residual_history(std::move(residuals)) {}
  std::vector<double> residual_history;
};

} // namespace gb
