#pragma once

#include <stdexcept>
#include <string>

namespace rispath {

/// Invalid parameter or configuration value.
class ValidationError : public std::invalid_argument {
 public:
  explicit ValidationError(const std::string& what) : std::invalid_argument(what) {}
};

/// Filesystem or stream failure.
class IoError : public std::runtime_error {
 public:
  explicit IoError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace rispath
