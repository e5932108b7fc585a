#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "ccsg/errors.hpp"

namespace ccsg {

/// The prime field GF(p). Primes up to 23 are the tested envelope; larger
/// primes below 256 work but are not exercised by the test suite.
class PrimeField {
 public:
  explicit PrimeField(unsigned p);

  unsigned p() const { return p_; }

  unsigned add(unsigned a, unsigned b) const { return (a + b) % p_; }
  unsigned sub(unsigned a, unsigned b) const { return (a + p_ - b % p_) % p_; }
  unsigned mul(unsigned a, unsigned b) const { return (a * b) % p_; }
  unsigned neg(unsigned a) const { return (p_ - a % p_) % p_; }
  unsigned inv(unsigned a) const;
  unsigned pow(unsigned a, unsigned e) const;

  /// Least x with x*x == -1 mod p, if one exists.
  std::optional<unsigned> sqrt_minus_one() const;

  bool operator==(const PrimeField&) const = default;

 private:
  unsigned p_;
};

bool has_sqrt_minus_one(const PrimeField& f);

using Vec = std::vector<std::uint8_t>;

/// Dense row-major matrix with entries reduced mod p.
class Matrix {
 public:
  Matrix(PrimeField f, std::size_t rows, std::size_t cols);
  Matrix(PrimeField f, std::size_t rows, std::size_t cols,
         std::vector<std::uint8_t> entries);

  const PrimeField& field() const { return f_; }
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }

  std::uint8_t at(std::size_t i, std::size_t j) const {
    return d_[i * cols_ + j];
  }
  std::uint8_t& at(std::size_t i, std::size_t j) { return d_[i * cols_ + j]; }

  Vec row(std::size_t i) const;
  void set_row(std::size_t i, const Vec& v);

  Matrix transposed() const;
  Matrix mul(const Matrix& other) const;

  const std::vector<std::uint8_t>& data() const { return d_; }

  bool operator==(const Matrix& o) const = default;

 private:
  PrimeField f_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<std::uint8_t> d_;
};

/// A subspace of GF(p)^n held as a reduced-row-echelon basis. The RREF
/// basis is a canonical form: two subspaces are equal iff their bases are.
class Subspace {
 public:
  Subspace(PrimeField f, std::size_t ambient_dim);

  static Subspace from_rows(const Matrix& m);

  const PrimeField& field() const { return f_; }
  std::size_t ambient_dim() const { return ambient_; }
  std::size_t dim() const { return basis_.size(); }

  const std::vector<Vec>& basis() const { return basis_; }
  const std::vector<int>& pivots() const { return pivots_; }

  /// Remainder of v after elimination by the basis; zero iff v is a member.
  Vec reduce(const Vec& v) const;
  bool contains(const Vec& v) const;
  bool contains(const Subspace& other) const;

  /// Inserts v if independent; returns true when the dimension grew.
  bool grow(const Vec& v);

  bool operator==(const Subspace& o) const {
    return ambient_ == o.ambient_ && basis_ == o.basis_;
  }

 private:
  PrimeField f_;
  std::size_t ambient_;
  std::vector<Vec> basis_;   // RREF rows, pivots strictly increasing
  std::vector<int> pivots_;
};

/// Canonical RREF basis of the row space of m.
Subspace rref(const Matrix& m);

/// { x : x * m = 0 } as a subspace of GF(p)^rows(m).
Subspace solve_left_kernel(const Matrix& m);

Subspace intersect(const Subspace& a, const Subspace& b);

std::optional<Matrix> inverse(const Matrix& m);

}  // namespace ccsg
