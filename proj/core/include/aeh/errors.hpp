#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace aeh {

/// Invalid configuration, contract violation or unknown key.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

/// Non-finite value encountered during evaluation or optimization.
/// Carries the pooled index of the offending sample when known.
class NumericError : public std::runtime_error {
 public:
  explicit NumericError(const std::string& what, std::ptrdiff_t sample_index = -1)
      : std::runtime_error(what), sample_index_(sample_index) {}
  std::ptrdiff_t sample_index() const { return sample_index_; }

 private:
  std::ptrdiff_t sample_index_;
};

/// File read/write failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace aeh
