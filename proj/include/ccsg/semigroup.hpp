#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccsg/errors.hpp"

namespace ccsg {

/// Finite semigroup with zero as a full multiplication table. The zero
/// element is always index 0; constructors and quotients preserve this.
struct SemigroupTable {
  int order = 0;
  std::vector<std::uint8_t> table;  // row-major, order*order entries

  SemigroupTable() = default;
  SemigroupTable(int n, std::vector<std::uint8_t> t);

  static SemigroupTable zeros(int n);

  int at(int i, int j) const { return table[i * order + j]; }
  void set(int i, int j, int v) {
    table[i * order + j] = static_cast<std::uint8_t>(v);
  }

  SemigroupTable transposed() const;

  bool operator==(const SemigroupTable&) const = default;
};

/// Descending chain S >= S^2 >= ... >= S^{c+1} = {0}, each entry the set of
/// all k-fold products (as sorted element lists, zero included).
struct PowerChain {
  std::vector<std::vector<int>> sets;

  int nil_class() const { return static_cast<int>(sets.size()) - 1; }
  /// Largest k with x in S^k; the zero sits in every layer.
  int layer_of(int x) const;
};

/// Witness bijection for (anti-)isomorphism; index i maps to perm[i].
struct SemigroupIso {
  std::vector<int> perm;
};

bool check_associative(const SemigroupTable& t);

/// Throws NotNilpotent when the chain stabilises above {0}.
PowerChain power_chain(const SemigroupTable& t);

int nilpotency_class(const SemigroupTable& t);
int coclass(const SemigroupTable& t);

/// Collapses an ideal (given as element indices, must contain 0) to zero.
SemigroupTable rees_quotient(const SemigroupTable& t,
                             const std::vector<int>& ideal);

/// The unique minimal generating set S \ S^2, as sorted indices.
std::vector<int> minimal_generators(const SemigroupTable& t);

std::optional<SemigroupIso> iso_semigroups(const SemigroupTable& s,
                                           const SemigroupTable& t);
std::optional<SemigroupIso> anti_isomorphic(const SemigroupTable& s,
                                            const SemigroupTable& t);

bool apply_iso_matches(const SemigroupTable& s, const SemigroupTable& t,
                       const std::vector<int>& perm);

/// Invariant bucket key used to prune isomorphism tests; equal for
/// isomorphic tables.
std::vector<int> semigroup_fingerprint(const SemigroupTable& t);

/// Lexicographically least row-major table over zero-fixing relabelings,
/// prefixed with the order. Minimised only for order <= 9; beyond that the
/// given labeling is encoded as-is.
std::vector<std::uint8_t> canonical_encoding(const SemigroupTable& t);
SemigroupTable canonical_form(const SemigroupTable& t);
std::string table_id(const SemigroupTable& t);

// ---- explicit families ----------------------------------------------------

SemigroupTable zero_semigroup(int n);
SemigroupTable monogenic(int n);

namespace families {
// Two-generator coclass-1 semigroups of order n: powers of u plus one extra
// generator v, with u^{n-1} = 0 and v-products given by exponents.
SemigroupTable h(int n, int k);
SemigroupTable j(int n, int k);
SemigroupTable x(int n);
SemigroupTable n1(int n);
SemigroupTable n2(int n);
SemigroupTable n3(int n);
SemigroupTable n4(int n);
}  // namespace families

/// Disjoint union identifying the two zeros; mixed products are zero.
SemigroupTable zero_union(const SemigroupTable& a, const SemigroupTable& b);

/// Class-c member of the chain whose algebras are a free one-generator
/// line plus r square-zero lines: zero_union(monogenic(c+1), Z_{r+1}).
SemigroupTable mkr_truncation(int r, int c);

/// Class-c truncations of the five two-generator coclass-2 main lines,
/// family index 1..5. Nonzero elements: a, a^2, ..., a^c, b, and one extra
/// product element (ab, ba or b^2 depending on the family).
SemigroupTable cc2_mainline(int family, int c);

}  // namespace ccsg
