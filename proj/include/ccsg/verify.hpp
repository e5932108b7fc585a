#pragma once

#include <iosfwd>

namespace ccsg {

/// Runs the full acceptance suite, printing one PASS/FAIL line per
/// criterion. Returns true iff every criterion passed.
bool run_acceptance(std::ostream& out, unsigned workers = 0);

}  // namespace ccsg
