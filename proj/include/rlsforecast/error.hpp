#pragma once

#include <stdexcept>
#include <string>

namespace rlsforecast {

// Broad failure classes. The CLI maps each one to its own exit status.
enum class ErrorKind {
  InvalidArgument,  // out-of-range parameter, dimension mismatch
  Io,               // unreadable or unwritable file
  Data,             // malformed or invalid input data
  Precondition,     // series too short, index outside the series
  Numerical,        // undefined correlation, singular system, non-finite value
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

}  // namespace rlsforecast
