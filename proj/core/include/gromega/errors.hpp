#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace gromega {

struct Error : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Malformed textual input (omega specs, words, rationals).
struct ParseError : Error {
    ParseError(const std::string& what, std::size_t position)
        : Error(what + " (at position " + std::to_string(position) + ")"),
          position(position) {}
    std::size_t position;
};

// Out-of-range access into an explicit finite sequence.
struct RangeError : Error {
    using Error::Error;
};

// An exhaustive search passed its caller-supplied budget.
struct BudgetExceeded : Error {
    using Error::Error;
};

// A recursion or evaluation exceeded its resource guard.
struct ResourceLimit : Error {
    using Error::Error;
};

// The greedy sequence construction cannot make progress.
struct StallError : Error {
    using Error::Error;
};

} // namespace gromega
