#include "ccsg/util.hpp"

#include <openssl/evp.h>

#include <atomic>
#include <stdexcept>
#include <thread>

namespace ccsg {

std::string sha256_hex(const std::vector<std::uint8_t>& bytes) {
  unsigned char digest[EVP_MAX_MD_SIZE];
  unsigned int len = 0;
  if (EVP_Digest(bytes.data(), bytes.size(), digest, &len, EVP_sha256(),
                 nullptr) != 1) {
    throw std::runtime_error("sha256 failed");
  }
  static const char* hexdig = "0123456789abcdef";
  std::string out;
  out.reserve(2 * len);
  for (unsigned int i = 0; i < len; ++i) {
    out.push_back(hexdig[digest[i] >> 4]);
    out.push_back(hexdig[digest[i] & 0xf]);
  }
  return out;
}

Frac::Frac(long long n, long long d) : num(n), den(d) {
  if (den == 0) throw std::invalid_argument("zero denominator");
  if (den < 0) {
    num = -num;
    den = -den;
  }
  long long g = std::gcd(num < 0 ? -num : num, den);
  if (g > 1) {
    num /= g;
    den /= g;
  }
}

Frac Frac::operator+(const Frac& o) const {
  return Frac(num * o.den + o.num * den, den * o.den);
}
Frac Frac::operator-(const Frac& o) const {
  return Frac(num * o.den - o.num * den, den * o.den);
}
Frac Frac::operator*(const Frac& o) const {
  return Frac(num * o.num, den * o.den);
}
Frac Frac::operator/(const Frac& o) const {
  if (o.num == 0) throw std::invalid_argument("division by zero");
  return Frac(num * o.den, den * o.num);
}

Frac eval_polynomial(const std::vector<Frac>& coeffs, long long x) {
  Frac acc(0);
  for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
    acc = acc * Frac(x) + *it;
  }
  return acc;
}

std::optional<std::vector<Frac>> fit_polynomial(
    const std::vector<std::pair<long long, long long>>& samples,
    int degree_bound) {
  if (samples.empty()) return std::vector<Frac>{};
  std::size_t use = std::min<std::size_t>(samples.size(),
                                          static_cast<std::size_t>(degree_bound) + 1);
  // Newton divided differences on the first `use` points.
  std::vector<Frac> xs, diffs;
  for (std::size_t i = 0; i < use; ++i) {
    xs.emplace_back(samples[i].first);
    diffs.emplace_back(samples[i].second);
  }
  for (std::size_t level = 1; level < use; ++level) {
    for (std::size_t i = use - 1; i >= level; --i) {
      diffs[i] = (diffs[i] - diffs[i - 1]) / (xs[i] - xs[i - level]);
      if (i == level) break;
    }
  }
  // Expand the Newton form into monomial coefficients.
  std::vector<Frac> coeffs{Frac(0)};
  std::vector<Frac> base{Frac(1)};  // prod_{j<level} (x - x_j)
  for (std::size_t level = 0; level < use; ++level) {
    if (coeffs.size() < base.size()) coeffs.resize(base.size(), Frac(0));
    for (std::size_t i = 0; i < base.size(); ++i) {
      coeffs[i] = coeffs[i] + diffs[level] * base[i];
    }
    // base *= (x - xs[level])
    base.insert(base.begin(), Frac(0));
    for (std::size_t i = 0; i + 1 < base.size(); ++i) {
      base[i] = base[i] - xs[level] * base[i + 1];
    }
  }
  while (coeffs.size() > 1 && coeffs.back() == Frac(0)) coeffs.pop_back();
  for (const auto& s : samples) {
    if (!(eval_polynomial(coeffs, s.first) == Frac(s.second))) {
      return std::nullopt;
    }
  }
  return coeffs;
}

unsigned resolve_workers(unsigned workers) {
  if (workers != 0) return workers;
  unsigned hw = std::thread::hardware_concurrency();
  return hw == 0 ? 1 : hw;
}

void parallel_for_index(std::size_t count, unsigned workers,
                        const std::function<void(std::size_t)>& fn) {
  unsigned n = resolve_workers(workers);
  if (n <= 1 || count <= 1) {
    for (std::size_t i = 0; i < count; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  std::vector<std::thread> pool;
  std::exception_ptr error;
  std::atomic<bool> failed{false};
  auto body = [&] {
    for (;;) {
      std::size_t i = next.fetch_add(1);
      if (i >= count || failed.load()) return;
      try {
        fn(i);
      } catch (...) {
        if (!failed.exchange(true)) error = std::current_exception();
        return;
      }
    }
  };
  unsigned spawn = static_cast<unsigned>(std::min<std::size_t>(n, count));
  pool.reserve(spawn);
  for (unsigned i = 0; i < spawn; ++i) pool.emplace_back(body);
  for (auto& t : pool) t.join();
  if (failed.load() && error) std::rethrow_exception(error);
}

}  // namespace ccsg
