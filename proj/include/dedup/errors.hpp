#pragma once

#include <stdexcept>
#include <string>

namespace dedup {

// Thrown for bad configuration values; the CLI maps this to exit code 2.
struct ConfigError : std::runtime_error {
  explicit ConfigError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown for malformed or inconsistent input data; exit code 3.
struct DataError : std::runtime_error {
  explicit DataError(const std::string& msg) : std::runtime_error(msg) {}
};

// Thrown when an index file does not match the corpus it claims to cover;
// exit code 4.
struct IndexMismatchError : std::runtime_error {
  explicit IndexMismatchError(const std::string& msg) : std::runtime_error(msg) {}
};

}  // namespace dedup
