#pragma once

#include <stdexcept>
#include <string>

namespace coord {

/// Malformed or unreadable input data (records, annotations, graphs).
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class IoError : public InputError {
 public:
  using InputError::InputError;
};

class FormatError : public InputError {
 public:
  using InputError::InputError;
};

/// Invalid parameters (bad fraction, alpha outside (0,1), ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

}  // namespace coord
