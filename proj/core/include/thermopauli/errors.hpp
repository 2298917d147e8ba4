#pragma once

#include <stdexcept>
#include <string>

namespace thermopauli {

// Base class for everything this library throws on purpose.
struct error : std::runtime_error {
  explicit error(const std::string& what) : std::runtime_error(what) {}
};

// Structural misuse of series: degree or variable-label mismatch, index out of range.
struct truncation_error : error {
  using error::error;
};

// Division by a series with vanishing constant term, singular linear solve, etc.
struct singular_error : error {
  using error::error;
};

// The exact-rational backend cannot represent the requested value
// (square root of a non-square, exp/log of a nontrivial constant).
struct exactness_error : error {
  using error::error;
};

// Input data violates a solvability condition.
struct inconsistent_input_error : error {
  using error::error;
};

// A discriminant is negative: no real solution branch exists.
struct no_real_solution_error : error {
  using error::error;
};

// A recursion coefficient vanishes; the solution at this order is not unique.
struct degenerate_error : error {
  using error::error;
};

// A scenario has no admissible state (empty feasible set, invalid moles, ...).
struct infeasible_error : error {
  using error::error;
};

// An iterative solver failed to reach its tolerance.
struct convergence_error : error {
  using error::error;
};

// A JSON document does not match the expected schema.
struct schema_error : error {
  using error::error;
};

}  // namespace thermopauli
