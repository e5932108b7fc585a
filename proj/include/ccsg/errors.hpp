#pragma once

#include <stdexcept>
#include <string>

namespace ccsg {

// Invalid user-supplied parameters (CLI exit code 1).
struct BadParameter : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// The power chain stabilised above the zero set/subspace.
struct NotNilpotent : std::domain_error {
  using std::domain_error::domain_error;
};

// A subset/subspace handed to a quotient is not closed under multiplication.
struct NotAnIdeal : std::domain_error {
  using std::domain_error::domain_error;
};

// Algebras of unequal dimension handed to the isomorphism test.
struct DimensionMismatch : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// A backtracking search hit its node cap before deciding.
struct Exhausted : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A coclass tree has no unique alive path at the requested horizon.
struct NoAlivePath : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// No weak period within the configured defect/period bounds.
struct NoPeriodFound : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// A graph build matched no semigroups at all.
struct EmptyGraph : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace ccsg
