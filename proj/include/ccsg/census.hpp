#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccsg/semigroup.hpp"

namespace ccsg {

/// All tables T with |T| = |t|+1, class(t)+1, the same coclass, and
/// T/T^{c+1} isomorphic to t, reduced up to isomorphism. Every such T adds
/// one annihilator element and redirects some zero products onto it.
std::vector<SemigroupTable> descendants(const SemigroupTable& t, int r);

/// Exhaustive search over all associative zero-absorbing tables of order n
/// with the requested coclass (and generator count, when given), reduced by
/// canonical-form rejection. Intended for n <= 6.
std::vector<SemigroupTable> brute_force_census(int n, int r,
                                               std::optional<int> d);

struct CensusRecord {
  SemigroupTable table;
  std::string id;      // sha-256 of the canonical encoding
  std::string origin;  // "brute_force", a constructor name, or the parent id
};

struct Census {
  int coclass = 0;
  int generators = 0;
  int max_order = 0;
  /// by_order[n] lists the order-n records; entries below the minimal order
  /// are empty.
  std::vector<std::vector<CensusRecord>> by_order;

  std::vector<const CensusRecord*> all() const;
  std::size_t count(int order) const {
    return order < static_cast<int>(by_order.size())
               ? by_order[order].size()
               : 0;
  }
};

/// Seeds small orders by brute force, extends order by order through
/// descendants, and deduplicates up to isomorphism. Deterministic for any
/// worker count.
Census build_census(int r, int d, int max_order, unsigned workers = 0);

/// Reduces a list of nilpotent tables up to isomorphism; order of first
/// representatives is preserved.
std::vector<SemigroupTable> dedup_up_to_iso(std::vector<SemigroupTable> tables);

}  // namespace ccsg
