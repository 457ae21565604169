#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace lvlab {

enum class ErrorKind {
  InvalidArgument,
  CapExceeded,
  DegenerateSize,
  Unsupported,
  NoSquares,
  IntervalOutOfRange,
  GridTooSmall,
  BudgetExceeded,
  NonIntegerFrequencies,
  NotAnAP,
  Parse,
  Io,
};

std::string_view to_string(ErrorKind kind);

/// Every failure raised by the library carries one of the kinds above.
class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& message)
      : std::runtime_error(message), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

inline void require(bool condition, ErrorKind kind, const std::string& message) {
  if (!condition) throw Error(kind, message);
}

}  // namespace lvlab
