#pragma once

#include <stdexcept>
#include <string>

namespace gtree {

// Bad input: malformed permutations, subgroup relations violated, bad configs.
struct ArgumentError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A configured budget (index bound, node budget, word length) was exceeded.
struct BudgetError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A computed identity that must hold failed; indicates a bug.
struct InvariantError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace gtree
