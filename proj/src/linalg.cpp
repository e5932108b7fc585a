#include "ccsg/linalg.hpp"

#include <algorithm>

namespace ccsg {

namespace {

bool is_prime(unsigned p) {
  if (p < 2) return false;
  for (unsigned d = 2; d * d <= p; ++d) {
    if (p % d == 0) return false;
  }
  return true;
}

}  // namespace

PrimeField::PrimeField(unsigned p) : p_(p) {
  if (!is_prime(p)) throw BadParameter("modulus is not prime: " + std::to_string(p));
  if (p > 251) throw BadParameter("modulus too large for byte storage");
}

unsigned PrimeField::inv(unsigned a) const {
  a %= p_;
  if (a == 0) throw BadParameter("inverse of zero");
  // p is tiny, so a linear scan is fine.
  for (unsigned x = 1; x < p_; ++x) {
    if ((a * x) % p_ == 1) return x;
  }
  return 1;  // unreachable for prime p
}

unsigned PrimeField::pow(unsigned a, unsigned e) const {
  unsigned acc = 1 % p_;
  a %= p_;
  while (e) {
    if (e & 1) acc = (acc * a) % p_;
    a = (a * a) % p_;
    e >>= 1;
  }
  return acc;
}

std::optional<unsigned> PrimeField::sqrt_minus_one() const {
  unsigned target = neg(1);
  for (unsigned x = 0; x < p_; ++x) {
    if (mul(x, x) == target) return x;
  }
  return std::nullopt;
}

bool has_sqrt_minus_one(const PrimeField& f) {
  return f.sqrt_minus_one().has_value();
}

Matrix::Matrix(PrimeField f, std::size_t rows, std::size_t cols)
    : f_(f), rows_(rows), cols_(cols), d_(rows * cols, 0) {}

Matrix::Matrix(PrimeField f, std::size_t rows, std::size_t cols,
               std::vector<std::uint8_t> entries)
    : f_(f), rows_(rows), cols_(cols), d_(std::move(entries)) {
  if (d_.size() != rows * cols) throw BadParameter("entry count mismatch");
  for (auto& e : d_) e = static_cast<std::uint8_t>(e % f_.p());
}

Vec Matrix::row(std::size_t i) const {
  return Vec(d_.begin() + i * cols_, d_.begin() + (i + 1) * cols_);
}

void Matrix::set_row(std::size_t i, const Vec& v) {
  std::copy(v.begin(), v.end(), d_.begin() + i * cols_);
}

Matrix Matrix::transposed() const {
  Matrix t(f_, cols_, rows_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t j = 0; j < cols_; ++j) t.at(j, i) = at(i, j);
  }
  return t;
}

Matrix Matrix::mul(const Matrix& other) const {
  if (cols_ != other.rows_) throw BadParameter("shape mismatch in mul");
  Matrix out(f_, rows_, other.cols_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      unsigned a = at(i, k);
      if (a == 0) continue;
      for (std::size_t j = 0; j < other.cols_; ++j) {
        out.at(i, j) = static_cast<std::uint8_t>(
            (out.at(i, j) + a * other.at(k, j)) % f_.p());
      }
    }
  }
  return out;
}

Subspace::Subspace(PrimeField f, std::size_t ambient_dim)
    : f_(f), ambient_(ambient_dim) {}

Vec Subspace::reduce(const Vec& v) const {
  Vec r = v;
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    unsigned c = r[pivots_[b]];
    if (c == 0) continue;
    unsigned mc = f_.neg(c);
    const Vec& row = basis_[b];
    for (std::size_t j = 0; j < ambient_; ++j) {
      r[j] = static_cast<std::uint8_t>((r[j] + mc * row[j]) % f_.p());
    }
  }
  return r;
}

bool Subspace::contains(const Vec& v) const {
  Vec r = reduce(v);
  return std::all_of(r.begin(), r.end(), [](std::uint8_t x) { return x == 0; });
}

bool Subspace::contains(const Subspace& other) const {
  for (const auto& row : other.basis_) {
    if (!contains(row)) return false;
  }
  return true;
}

bool Subspace::grow(const Vec& v) {
  Vec r = reduce(v);
  std::size_t piv = ambient_;
  for (std::size_t j = 0; j < ambient_; ++j) {
    if (r[j] != 0) {
      piv = j;
      break;
    }
  }
  if (piv == ambient_) return false;
  unsigned ic = f_.inv(r[piv]);
  for (auto& x : r) x = static_cast<std::uint8_t>((x * ic) % f_.p());
  // Eliminate the new pivot from existing rows, then insert keeping pivot
  // columns strictly increasing so the basis stays in RREF.
  for (std::size_t b = 0; b < basis_.size(); ++b) {
    unsigned c = basis_[b][piv];
    if (c == 0) continue;
    unsigned mc = f_.neg(c);
    for (std::size_t j = 0; j < ambient_; ++j) {
      basis_[b][j] =
          static_cast<std::uint8_t>((basis_[b][j] + mc * r[j]) % f_.p());
    }
  }
  auto pos = std::lower_bound(pivots_.begin(), pivots_.end(),
                              static_cast<int>(piv));
  std::size_t idx = static_cast<std::size_t>(pos - pivots_.begin());
  pivots_.insert(pos, static_cast<int>(piv));
  basis_.insert(basis_.begin() + idx, std::move(r));
  return true;
}

Subspace Subspace::from_rows(const Matrix& m) {
  Subspace s(m.field(), m.cols());
  for (std::size_t i = 0; i < m.rows(); ++i) s.grow(m.row(i));
  return s;
}

Subspace rref(const Matrix& m) { return Subspace::from_rows(m); }

Subspace solve_left_kernel(const Matrix& m) {
  const PrimeField& f = m.field();
  std::size_t n = m.rows();
  // Row-reduce [m | I]; rows whose m-part vanished carry the kernel basis.
  Matrix aug(f, n, m.cols() + n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < m.cols(); ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, m.cols() + i) = 1;
  }
  std::size_t pivot_row = 0;
  for (std::size_t col = 0; col < m.cols() && pivot_row < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = pivot_row; i < n; ++i) {
      if (aug.at(i, col) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == n) continue;
    for (std::size_t j = 0; j < aug.cols(); ++j) {
      std::swap(aug.at(pivot_row, j), aug.at(sel, j));
    }
    unsigned ic = f.inv(aug.at(pivot_row, col));
    for (std::size_t j = 0; j < aug.cols(); ++j) {
      aug.at(pivot_row, j) =
          static_cast<std::uint8_t>((aug.at(pivot_row, j) * ic) % f.p());
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == pivot_row) continue;
      unsigned c = aug.at(i, col);
      if (c == 0) continue;
      unsigned mc = f.neg(c);
      for (std::size_t j = 0; j < aug.cols(); ++j) {
        aug.at(i, j) = static_cast<std::uint8_t>(
            (aug.at(i, j) + mc * aug.at(pivot_row, j)) % f.p());
      }
    }
    ++pivot_row;
  }
  Subspace kernel(f, n);
  for (std::size_t i = pivot_row; i < n; ++i) {
    Vec v(n);
    for (std::size_t j = 0; j < n; ++j) v[j] = aug.at(i, m.cols() + j);
    kernel.grow(v);
  }
  return kernel;
}

Subspace intersect(const Subspace& a, const Subspace& b) {
  const PrimeField& f = a.field();
  std::size_t n = a.ambient_dim();
  // Zassenhaus: reduce [[A A],[B 0]]; rows with zero left half span the
  // intersection on the right half.
  std::size_t rows = a.dim() + b.dim();
  Matrix block(f, rows, 2 * n);
  for (std::size_t i = 0; i < a.dim(); ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      block.at(i, j) = a.basis()[i][j];
      block.at(i, n + j) = a.basis()[i][j];
    }
  }
  for (std::size_t i = 0; i < b.dim(); ++i) {
    for (std::size_t j = 0; j < n; ++j) block.at(a.dim() + i, j) = b.basis()[i][j];
  }
  Subspace reduced = rref(block);
  Subspace out(f, n);
  for (const auto& row : reduced.basis()) {
    bool left_zero = true;
    for (std::size_t j = 0; j < n; ++j) {
      if (row[j] != 0) {
        left_zero = false;
        break;
      }
    }
    if (left_zero) out.grow(Vec(row.begin() + n, row.end()));
  }
  return out;
}

std::optional<Matrix> inverse(const Matrix& m) {
  if (m.rows() != m.cols()) return std::nullopt;
  const PrimeField& f = m.field();
  std::size_t n = m.rows();
  Matrix aug(f, n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug.at(i, j) = m.at(i, j);
    aug.at(i, n + i) = 1;
  }
  for (std::size_t col = 0; col < n; ++col) {
    std::size_t sel = n;
    for (std::size_t i = col; i < n; ++i) {
      if (aug.at(i, col) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == n) return std::nullopt;
    for (std::size_t j = 0; j < 2 * n; ++j) std::swap(aug.at(col, j), aug.at(sel, j));
    unsigned ic = f.inv(aug.at(col, col));
    for (std::size_t j = 0; j < 2 * n; ++j) {
      aug.at(col, j) = static_cast<std::uint8_t>((aug.at(col, j) * ic) % f.p());
    }
    for (std::size_t i = 0; i < n; ++i) {
      if (i == col) continue;
      unsigned c = aug.at(i, col);
      if (c == 0) continue;
      unsigned mc = f.neg(c);
      for (std::size_t j = 0; j < 2 * n; ++j) {
        aug.at(i, j) = static_cast<std::uint8_t>(
            (aug.at(i, j) + mc * aug.at(col, j)) % f.p());
      }
    }
  }
  Matrix out(f, n, n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) out.at(i, j) = aug.at(i, n + j);
  }
  return out;
}

}  // namespace ccsg
