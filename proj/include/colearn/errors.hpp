#pragma once

#include <stdexcept>
#include <string>

namespace colearn {

// A caller broke an operation's documented precondition (bad parameter range,
// empty input, mismatched dimensions).
class PreconditionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

// A value object was asked to hold a state its invariants forbid.
class InvariantError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

// File and format problems: unreadable paths, malformed rows, bad headers.
class IoError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

namespace detail {

inline void require(bool ok, const std::string& what) {
  if (!ok) throw PreconditionError(what);
}

}  // namespace detail
}  // namespace colearn
