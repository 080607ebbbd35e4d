#pragma once

#include <stdexcept>
#include <string>

namespace fracwave {

/// Raised when a numerical scheme cannot deliver its documented accuracy
/// (regime failure, non-convergence, singular leading weight, ...).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Raised for malformed run configurations (unknown keys, bad types).
class ConfigError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool cond, const std::string& what) {
  if (!cond) throw std::invalid_argument(what);
}

}  // namespace detail
}  // namespace fracwave
