#pragma once

#include <stdexcept>
#include <string>

namespace knorm {

// Invalid caller input: bad parameters, violated preconditions.
class InputError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A configured time, size or enumeration budget was exhausted before an
// answer could be certified. Never accompanied by a partial result.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// An internal consistency check failed. Always indicates a bug.
class InternalError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

namespace detail {
[[noreturn]] inline void internal_failure(const std::string& what) { throw InternalError(what); }

inline void check_input(bool ok, const std::string& what) {
  if (!ok) throw InputError(what);
}
}  // namespace detail

}  // namespace knorm
