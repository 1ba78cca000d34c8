#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace bucketeer {

// Malformed experiment or scenario configuration (bad bucket split, missing
// placeholder, duplicate experiment IDs, ...).
class ConfigError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A caller-supplied value outside the operation's domain.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// Too few observations for the chi-square approximation to hold.
class SampleSizeError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An iterative numeric routine failed to converge.
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Per-item failure inside a batch call; carries the position of the offending item.
class BatchError : public InputError {
 public:
  BatchError(std::size_t index, const std::string& what)
      : InputError("item " + std::to_string(index) + ": " + what), index_(index) {}

  std::size_t index() const noexcept { return index_; }

 private:
  std::size_t index_;
};

}  // namespace bucketeer
