#pragma once

#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <utility>
#include <vector>

namespace ccsg {

std::string sha256_hex(const std::vector<std::uint8_t>& bytes);

/// Exact rational with 64-bit numerator/denominator, always reduced,
/// denominator > 0.
struct Frac {
  long long num = 0;
  long long den = 1;

  Frac() = default;
  Frac(long long n, long long d = 1);

  Frac operator+(const Frac& o) const;
  Frac operator-(const Frac& o) const;
  Frac operator*(const Frac& o) const;
  Frac operator/(const Frac& o) const;
  bool operator==(const Frac& o) const { return num == o.num && den == o.den; }
};

/// Exact interpolation of integer samples (i, y_i) by a polynomial of degree
/// <= degree_bound. Coefficients returned lowest degree first. Returns
/// nullopt when no such polynomial matches all samples.
std::optional<std::vector<Frac>> fit_polynomial(
    const std::vector<std::pair<long long, long long>>& samples,
    int degree_bound);

Frac eval_polynomial(const std::vector<Frac>& coeffs, long long x);

/// Applies fn to every index in [0, count) on a small thread pool and
/// collects results by index, so the output order never depends on the
/// worker count. workers == 0 means hardware concurrency.
void parallel_for_index(std::size_t count, unsigned workers,
                        const std::function<void(std::size_t)>& fn);

unsigned resolve_workers(unsigned workers);

}  // namespace ccsg
