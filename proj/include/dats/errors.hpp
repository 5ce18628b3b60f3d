#ifndef DATS_ERRORS_HPP
#define DATS_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace dats {

/// Base class for all errors raised by the library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// File read/write failures and unsupported on-disk formats.
struct IoError : Error {
  explicit IoError(const std::string& msg) : Error(msg) {}
};

/// Shape, range or precondition violations on in-memory data.
struct ValueError : Error {
  explicit ValueError(const std::string& msg) : Error(msg) {}
};

/// Non-finite values, degenerate statistics, diverged optimization.
struct NumericError : Error {
  explicit NumericError(const std::string& msg) : Error(msg) {}
};

/// Malformed run configuration (unknown keys, bad values, missing paths).
struct ConfigError : Error {
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

}  // namespace dats

#endif
