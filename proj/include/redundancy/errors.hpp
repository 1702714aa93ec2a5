#pragma once

#include <stdexcept>
#include <string>

namespace redundancy {

// Bad user-supplied parameters. `key` names the offending parameter when known.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what, std::string key = {})
      : std::invalid_argument(key.empty() ? what : key + ": " + what), key_(std::move(key)) {}

  const std::string& key() const noexcept { return key_; }

 private:
  std::string key_;
};

// An argument outside the mathematical domain of a formula (e.g. a probability > 1).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// Numerical integration produced a non-finite value.
class IntegrationError : public std::runtime_error {
 public:
  IntegrationError(double step, double t, double q)
      : std::runtime_error("integration failure: non-finite value (step=" + std::to_string(step) +
                           ", t=" + std::to_string(t) + ", q=" + std::to_string(q) + ")"),
        step_(step), t_(t), q_(q) {}

  double step() const noexcept { return step_; }
  double time() const noexcept { return t_; }
  double value() const noexcept { return q_; }

 private:
  double step_, t_, q_;
};

}  // namespace redundancy
