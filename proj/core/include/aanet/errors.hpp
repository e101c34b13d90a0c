#pragma once

#include <stdexcept>
#include <string>

namespace aanet {

/// Input outside the mathematical domain of a model formula.
class DomainError : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// A link whose rate is zero cannot carry a file.
class InfeasibleLinkError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class LookupError : public std::out_of_range {
 public:
  using std::out_of_range::out_of_range;
};

class ConstructionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Malformed or inconsistent configuration; message carries the key path.
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input data (flight CSV, scenario files); message carries line numbers.
class DataError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace aanet
