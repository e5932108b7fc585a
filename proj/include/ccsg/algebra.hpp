#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "ccsg/linalg.hpp"
#include "ccsg/semigroup.hpp"

namespace ccsg {

/// Nilpotent structure-constant algebra over GF(p). sc(i,j) is the
/// coordinate vector of e_i * e_j. Associativity and nilpotency are
/// checked at construction.
class Algebra {
 public:
  Algebra(PrimeField f, std::size_t dim, std::vector<std::uint8_t> sc,
          std::vector<std::string> basis_names = {});

  const PrimeField& field() const { return f_; }
  std::size_t dim() const { return n_; }
  const std::vector<std::string>& basis_names() const { return names_; }
  const std::vector<std::uint8_t>& sc() const { return sc_; }

  std::uint8_t sc_at(std::size_t i, std::size_t j, std::size_t k) const {
    return sc_[(i * n_ + j) * n_ + k];
  }

  /// Product of two coordinate vectors.
  Vec mul(const Vec& u, const Vec& v) const;

  /// Byte encoding used for deterministic ordering of representatives.
  std::vector<std::uint8_t> encoding() const;

 private:
  PrimeField f_;
  std::size_t n_;
  std::vector<std::uint8_t> sc_;
  std::vector<std::string> names_;
};

using Fingerprint = std::vector<int>;

struct AlgebraIso {
  Matrix matrix;  // row i = image of e_i
};

Algebra contracted_algebra(const SemigroupTable& s, const PrimeField& f);

/// A^i as a subspace; A^1 is the full space.
Subspace power_ideal(const Algebra& a, int i);

int algebra_class(const Algebra& a);
int algebra_coclass(const Algebra& a);

/// Throws NotAnIdeal unless the subspace is a two-sided ideal.
Algebra quotient_algebra(const Algebra& a, const Subspace& ideal);

Subspace left_annihilator(const Algebra& a);   // { x : xA = 0 }
Subspace right_annihilator(const Algebra& a);  // { x : Ax = 0 }
Subspace annihilator(const Algebra& a);

bool is_commutative(const Algebra& a);

/// (dim, class, coclass, dims of A^i, dim Ann, dim lAnn, dim rAnn,
///  commutative flag, dims of Ann intersected with each A^i).
Fingerprint fingerprint(const Algebra& a);

bool validate_algebra_iso(const Algebra& a, const Algebra& b, const Matrix& m);

struct IsoOptions {
  std::uint64_t node_cap = 50'000'000;
};

/// Backtracking isomorphism search: fingerprints first, then images of a
/// minimal generating set built layer by layer along the power filtration.
/// Returned witnesses are always validated on all basis pairs. Throws
/// Exhausted if the node cap is hit before a decision.
std::optional<AlgebraIso> iso_algebras(const Algebra& a, const Algebra& b,
                                       const IsoOptions& opt = {});

struct IsoClass {
  std::size_t representative = 0;   // index into the input list
  std::vector<std::size_t> members;
};

/// Partition of the input into isomorphism classes, refining fingerprint
/// buckets by pairwise tests. Class order and representatives follow the
/// least algebra encoding, independent of the worker count.
std::vector<IsoClass> group_by_isomorphism(const std::vector<Algebra>& algs,
                                           unsigned workers = 0,
                                           const IsoOptions& opt = {});

}  // namespace ccsg
