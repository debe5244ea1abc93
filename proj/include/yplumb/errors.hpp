#pragma once

#include <stdexcept>
#include <string>

namespace yplumb {

/// Error categories, mapped onto CLI exit codes.
struct UsageError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TruncationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct UnsupportedError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IntegrityError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ResourceError : UnsupportedError {
  using UnsupportedError::UnsupportedError;
};

inline int exit_code_for(const std::exception& e) {
  if (dynamic_cast<const UsageError*>(&e)) return 2;
  if (dynamic_cast<const TruncationError*>(&e)) return 3;
  if (dynamic_cast<const UnsupportedError*>(&e)) return 4;
  if (dynamic_cast<const IntegrityError*>(&e)) return 5;
  return 1;
}

}  // namespace yplumb
