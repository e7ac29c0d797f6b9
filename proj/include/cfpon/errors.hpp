// SPDX-License-Identifier: Apache-2.0
#ifndef CFPON_ERRORS_HPP
#define CFPON_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace cfpon {

/// Invalid or inconsistent configuration value. The message names the field.
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Argument outside the mathematical domain of an operation.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A Deployment (or other decision object) that breaks its structural
/// invariants, e.g. an active RU without a wavelength.
class StructuralError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// Instance exceeds the hard size limits of an exact solver.
class LimitError : public std::length_error {
 public:
  using std::length_error::length_error;
};

/// File could not be read or written.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace cfpon

#endif  // CFPON_ERRORS_HPP
