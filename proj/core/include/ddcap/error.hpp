#pragma once

#include <stdexcept>
#include <string>

namespace ddcap {

// Malformed caller input: dimension mismatch, non-finite samples, invalid pmf.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Well-formed input outside what an operation supports (enumeration cap,
// reflecting an on-circle zero, an unrealizable intensity).
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

// An iterative routine did not reach its residual target.
class NumericalError : public std::runtime_error {
 public:
  NumericalError(const std::string& what, double residual)
      : std::runtime_error(what), residual_(residual) {}

  double residual() const noexcept { return residual_; }

 private:
  double residual_;
};

}  // namespace ddcap
