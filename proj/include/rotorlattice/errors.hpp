#pragma once

#include <stdexcept>
#include <string>

namespace rotor {

// Problems with user-supplied configuration (bad keys, invalid geometry,
// scheme constraints). The CLI maps this to exit code 2.
class ConfigError : public std::runtime_error {
 public:
  explicit ConfigError(const std::string& what) : std::runtime_error(what) {}
};

// Gaussian moment engine is implemented through degree 8 only.
class UnsupportedDegree : public std::domain_error {
 public:
  explicit UnsupportedDegree(const std::string& what) : std::domain_error(what) {}
};

}  // namespace rotor
