#ifndef POLYRANK_ERRORS_HPP
#define POLYRANK_ERRORS_HPP

#include <stdexcept>
#include <string>

namespace polyrank {

// An input violates a structural precondition of the requested operation
// (not a malformed file: those raise parse errors).
struct HypothesisViolation : std::runtime_error {
  explicit HypothesisViolation(const std::string& what)
      : std::runtime_error(what) {}
};

// A randomized or iterative search ran out of its deterministic budget
// without producing a certified result.
struct BudgetExhausted : std::runtime_error {
  explicit BudgetExhausted(const std::string& what)
      : std::runtime_error(what) {}
};

}  // namespace polyrank

#endif
