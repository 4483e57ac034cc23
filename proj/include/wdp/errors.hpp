#pragma once

#include <stdexcept>
#include <string>

namespace wdp {

// Malformed or out-of-contract input. CLI exit code 2.
struct InputError : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A mathematical invariant failed; always a bug or corrupted data. Exit 3.
struct InvariantError : std::logic_error {
  using std::logic_error::logic_error;
};

// Memory budget, I/O or similar resource limits. Exit 3.
struct ResourceError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

[[noreturn]] inline void fail_input(const std::string& msg) { throw InputError(msg); }
[[noreturn]] inline void fail_invariant(const std::string& msg) { throw InvariantError(msg); }

}  // namespace wdp
