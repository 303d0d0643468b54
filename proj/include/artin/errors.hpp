#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace artin {

// Raised when a certified precision horizon is too shallow to determine a
// requested quantity. Callers that own a SeriesSource retry at a higher
// precision; everyone else propagates.
class PrecisionExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// The doubling policy hit its precision cap.
class PrecisionCapReached : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An enumeration was refused because it exceeds the configured budget.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class ParseError : public std::runtime_error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : std::runtime_error(what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace artin
