#include "ccsg/semigroup.hpp"

#include <algorithm>
#include <numeric>
#include <set>

#include "ccsg/util.hpp"

namespace ccsg {

SemigroupTable::SemigroupTable(int n, std::vector<std::uint8_t> t)
    : order(n), table(std::move(t)) {
  if (static_cast<int>(table.size()) != n * n) {
    throw BadParameter("table size does not match order");
  }
}

SemigroupTable SemigroupTable::zeros(int n) {
  return SemigroupTable(n, std::vector<std::uint8_t>(n * n, 0));
}

SemigroupTable SemigroupTable::transposed() const {
  SemigroupTable t = *this;
  for (int i = 0; i < order; ++i) {
    for (int j = 0; j < i; ++j) {
      std::swap(t.table[i * order + j], t.table[j * order + i]);
    }
  }
  return t;
}

int PowerChain::layer_of(int x) const {
  int layer = 0;
  for (const auto& s : sets) {
    if (!std::binary_search(s.begin(), s.end(), x)) break;
    ++layer;
  }
  return layer;
}

bool check_associative(const SemigroupTable& t) {
  int n = t.order;
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) {
      int ab = t.at(a, b);
      for (int c = 0; c < n; ++c) {
        if (t.at(ab, c) != t.at(a, t.at(b, c))) return false;
      }
    }
  }
  return true;
}

PowerChain power_chain(const SemigroupTable& t) {
  int n = t.order;
  PowerChain chain;
  std::vector<int> current(n);
  std::iota(current.begin(), current.end(), 0);
  chain.sets.push_back(current);
  while (current.size() > 1) {
    std::set<int> next;
    for (int a = 0; a < n; ++a) {
      for (int b : current) next.insert(t.at(a, b));
    }
    std::vector<int> nv(next.begin(), next.end());
    if (nv == current) {
      throw NotNilpotent("power chain stabilised with " +
                         std::to_string(nv.size()) + " elements");
    }
    current = std::move(nv);
    chain.sets.push_back(current);
  }
  return chain;
}

int nilpotency_class(const SemigroupTable& t) {
  return power_chain(t).nil_class();
}

int coclass(const SemigroupTable& t) {
  return (t.order - 1) - nilpotency_class(t);
}

SemigroupTable rees_quotient(const SemigroupTable& t,
                             const std::vector<int>& ideal) {
  int n = t.order;
  std::vector<char> in_ideal(n, 0);
  for (int x : ideal) {
    if (x < 0 || x >= n) throw BadParameter("ideal element out of range");
    in_ideal[x] = 1;
  }
  if (!in_ideal[0]) throw NotAnIdeal("ideal does not contain the zero");
  for (int a = 0; a < n; ++a) {
    for (int x = 0; x < n; ++x) {
      if (!in_ideal[x]) continue;
      if (!in_ideal[t.at(a, x)] || !in_ideal[t.at(x, a)]) {
        throw NotAnIdeal("subset not closed under multiplication");
      }
    }
  }
  std::vector<int> relabel(n, -1);
  relabel[0] = 0;
  int next = 1;
  for (int x = 1; x < n; ++x) {
    if (!in_ideal[x]) relabel[x] = next++;
  }
  SemigroupTable q = SemigroupTable::zeros(next);
  for (int a = 0; a < n; ++a) {
    if (relabel[a] < 0) continue;
    for (int b = 0; b < n; ++b) {
      if (relabel[b] < 0) continue;
      int ab = t.at(a, b);
      q.set(relabel[a], relabel[b], in_ideal[ab] ? 0 : relabel[ab]);
    }
  }
  return q;
}

std::vector<int> minimal_generators(const SemigroupTable& t) {
  int n = t.order;
  std::vector<char> in_sq(n, 0);
  for (int a = 0; a < n; ++a) {
    for (int b = 0; b < n; ++b) in_sq[t.at(a, b)] = 1;
  }
  std::vector<int> gens;
  for (int x = 1; x < n; ++x) {
    if (!in_sq[x]) gens.push_back(x);
  }
  return gens;
}

namespace {

// Like power_chain but stops at stabilisation instead of throwing, so the
// isomorphism test also works on non-nilpotent inputs.
PowerChain chain_sets(const SemigroupTable& t) {
  int n = t.order;
  PowerChain chain;
  std::vector<int> current(n);
  std::iota(current.begin(), current.end(), 0);
  chain.sets.push_back(current);
  while (current.size() > 1) {
    std::set<int> next;
    for (int a = 0; a < n; ++a) {
      for (int b : current) next.insert(t.at(a, b));
    }
    std::vector<int> nv(next.begin(), next.end());
    if (nv == current) break;
    current = std::move(nv);
    chain.sets.push_back(current);
  }
  return chain;
}

// Per-element invariant classes, refined by product structure until stable.
// Isomorphisms must map an element to one in the same class.
std::vector<int> element_classes(const SemigroupTable& t) {
  int n = t.order;
  PowerChain chain = chain_sets(t);
  std::vector<std::vector<int>> keys(n);
  for (int x = 0; x < n; ++x) {
    int nil_index = 1;
    int y = x;
    while (y != 0 && nil_index <= n + 1) {
      y = t.at(y, x);
      ++nil_index;
    }
    std::set<int> left, right;
    for (int a = 0; a < n; ++a) {
      left.insert(t.at(x, a));
      right.insert(t.at(a, x));
    }
    int zero_left = 0, zero_right = 0;
    for (int a = 0; a < n; ++a) {
      if (t.at(x, a) == 0) ++zero_left;
      if (t.at(a, x) == 0) ++zero_right;
    }
    keys[x] = {chain.layer_of(x),
               (x == 0) ? 0 : nil_index,
               static_cast<int>(left.size()),
               static_cast<int>(right.size()),
               zero_left,
               zero_right,
               t.at(x, x) == 0 ? 0 : 1};
  }
  auto assign = [&](const std::vector<std::vector<int>>& ks) {
    std::vector<std::vector<int>> sorted(ks.begin(), ks.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::vector<int> cls(n);
    for (int x = 0; x < n; ++x) {
      cls[x] = static_cast<int>(
          std::lower_bound(sorted.begin(), sorted.end(), ks[x]) -
          sorted.begin());
    }
    return cls;
  };
  std::vector<int> cls = assign(keys);
  for (int round = 0; round < n; ++round) {
    std::vector<std::vector<int>> refined(n);
    for (int x = 0; x < n; ++x) {
      std::vector<int> key{cls[x]};
      std::vector<std::pair<int, std::pair<int, int>>> prods;
      for (int a = 0; a < n; ++a) {
        prods.push_back({cls[a], {cls[t.at(x, a)], cls[t.at(a, x)]}});
      }
      std::sort(prods.begin(), prods.end());
      for (auto& pr : prods) {
        key.push_back(pr.first);
        key.push_back(pr.second.first);
        key.push_back(pr.second.second);
      }
      refined[x] = std::move(key);
    }
    std::vector<int> next = assign(refined);
    if (next == cls) break;
    cls = next;
  }
  return cls;
}

struct IsoSearch {
  const SemigroupTable& s;
  const SemigroupTable& t;
  std::vector<int> cls_s, cls_t;
  std::vector<int> gens;
  std::vector<int> map;   // s -> t, -1 unset
  std::vector<int> used;  // t-element -> s-element or -1

  bool propagate(std::vector<int>& trail) {
    // Close the partial map under products until a fixpoint; record every
    // forced assignment on the trail so it can be undone.
    bool changed = true;
    while (changed) {
      changed = false;
      int n = s.order;
      for (int a = 0; a < n; ++a) {
        if (map[a] < 0) continue;
        for (int b = 0; b < n; ++b) {
          if (map[b] < 0) continue;
          int c = s.at(a, b);
          int ct = t.at(map[a], map[b]);
          if (map[c] >= 0) {
            if (map[c] != ct) return false;
            continue;
          }
          if (used[ct] >= 0) return false;
          if (cls_s[c] != cls_t[ct]) return false;
          map[c] = ct;
          used[ct] = c;
          trail.push_back(c);
          changed = true;
        }
      }
    }
    return true;
  }

  bool extend(std::size_t gi) {
    if (gi == gens.size()) {
      int n = s.order;
      for (int x = 0; x < n; ++x) {
        if (map[x] < 0) return false;
      }
      for (int a = 0; a < n; ++a) {
        for (int b = 0; b < n; ++b) {
          if (map[s.at(a, b)] != t.at(map[a], map[b])) return false;
        }
      }
      return true;
    }
    int g = gens[gi];
    if (map[g] >= 0) return extend(gi + 1);
    for (int img = 1; img < t.order; ++img) {
      if (used[img] >= 0 || cls_t[img] != cls_s[g]) continue;
      std::vector<int> trail;
      map[g] = img;
      used[img] = g;
      trail.push_back(g);
      if (propagate(trail) && extend(gi + 1)) return true;
      for (int x : trail) {
        used[map[x]] = -1;
        map[x] = -1;
      }
    }
    return false;
  }
};

}  // namespace

std::vector<int> semigroup_fingerprint(const SemigroupTable& t) {
  PowerChain chain = power_chain(t);
  std::vector<int> fp{t.order};
  for (const auto& s : chain.sets) fp.push_back(static_cast<int>(s.size()));
  fp.push_back(-1);
  std::vector<int> cls = element_classes(t);
  std::vector<int> sorted = cls;
  std::sort(sorted.begin(), sorted.end());
  fp.insert(fp.end(), sorted.begin(), sorted.end());
  return fp;
}

bool apply_iso_matches(const SemigroupTable& s, const SemigroupTable& t,
                       const std::vector<int>& perm) {
  if (s.order != t.order) return false;
  if (perm[0] != 0) return false;
  for (int a = 0; a < s.order; ++a) {
    for (int b = 0; b < s.order; ++b) {
      if (perm[s.at(a, b)] != t.at(perm[a], perm[b])) return false;
    }
  }
  return true;
}

std::optional<SemigroupIso> iso_semigroups(const SemigroupTable& s,
                                           const SemigroupTable& t) {
  if (s.order != t.order) return std::nullopt;
  if (s.order == 0) return SemigroupIso{{}};
  std::vector<int> cls_s = element_classes(s);
  std::vector<int> cls_t = element_classes(t);
  {
    std::vector<int> a = cls_s, b = cls_t;
    std::sort(a.begin(), a.end());
    std::sort(b.begin(), b.end());
    if (a != b) return std::nullopt;
  }
  IsoSearch search{s, t, cls_s, cls_t, minimal_generators(s),
                   std::vector<int>(s.order, -1),
                   std::vector<int>(s.order, -1)};
  search.map[0] = 0;
  search.used[0] = 0;
  if (search.extend(0)) return SemigroupIso{search.map};
  return std::nullopt;
}

std::optional<SemigroupIso> anti_isomorphic(const SemigroupTable& s,
                                            const SemigroupTable& t) {
  return iso_semigroups(s, t.transposed());
}

std::vector<std::uint8_t> canonical_encoding(const SemigroupTable& t) {
  int n = t.order;
  std::vector<std::uint8_t> best;
  auto encode = [&](const std::vector<int>& perm) {
    std::vector<std::uint8_t> enc(1 + n * n);
    enc[0] = static_cast<std::uint8_t>(n);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) {
        enc[1 + perm[i] * n + perm[j]] =
            static_cast<std::uint8_t>(perm[t.at(i, j)]);
      }
    }
    return enc;
  };
  std::vector<int> perm(n);
  std::iota(perm.begin(), perm.end(), 0);
  if (n > 9) return encode(perm);
  best = encode(perm);
  while (std::next_permutation(perm.begin() + 1, perm.end())) {
    std::vector<std::uint8_t> enc = encode(perm);
    if (enc < best) best = enc;
  }
  return best;
}

SemigroupTable canonical_form(const SemigroupTable& t) {
  std::vector<std::uint8_t> enc = canonical_encoding(t);
  int n = enc[0];
  return SemigroupTable(n,
                        std::vector<std::uint8_t>(enc.begin() + 1, enc.end()));
}

std::string table_id(const SemigroupTable& t) {
  return sha256_hex(canonical_encoding(t));
}

// ---- explicit families ----------------------------------------------------

SemigroupTable zero_semigroup(int n) {
  if (n < 1) throw BadParameter("order must be positive");
  return SemigroupTable::zeros(n);
}

SemigroupTable monogenic(int n) {
  if (n < 1) throw BadParameter("order must be positive");
  SemigroupTable t = SemigroupTable::zeros(n);
  for (int i = 1; i < n; ++i) {
    for (int j = 1; j < n; ++j) t.set(i, j, i + j <= n - 1 ? i + j : 0);
  }
  return t;
}

namespace families {
namespace {

// Elements: 0 = zero, 1..n-2 = u^i, n-1 = v. Exponents >= n-1 collapse to
// zero since u^{n-1} = u^n is the zero element.
SemigroupTable two_generator(int n, int e_uv, int e_vu, int e_vv) {
  SemigroupTable t = SemigroupTable::zeros(n);
  int top = n - 2;  // largest surviving power of u
  auto pow_idx = [&](int e) { return (e >= 1 && e <= top) ? e : 0; };
  for (int i = 1; i <= top; ++i) {
    for (int j = 1; j <= top; ++j) t.set(i, j, pow_idx(i + j));
  }
  int v = n - 1;
  for (int i = 1; i <= top; ++i) {
    t.set(i, v, e_uv == 0 ? 0 : pow_idx(e_uv + i - 1));
    t.set(v, i, e_vu == 0 ? 0 : pow_idx(e_vu + i - 1));
  }
  t.set(v, v, e_vv == 0 ? 0 : pow_idx(e_vv));
  return t;
}

}  // namespace

SemigroupTable h(int n, int k) {
  if (n < 4 || k < 2 || k > n - 1) throw BadParameter("H(n,k) needs n >= 4, 2 <= k <= n-1");
  return two_generator(n, k, k, 2 * k - 2);
}

SemigroupTable j(int n, int k) {
  if (n < 5 || 2 * k <= n || k > n - 1) {
    throw BadParameter("J(n,k) needs n >= 5, n/2 < k <= n-1");
  }
  return two_generator(n, k, k, n - 2);
}

SemigroupTable x(int n) {
  if (n < 6 || n % 2 != 0) throw BadParameter("X(n) needs even n >= 6");
  return two_generator(n, n / 2, n / 2, n - 1);
}

SemigroupTable n1(int n) {
  if (n < 5) throw BadParameter("N1(n) needs n >= 5");
  return two_generator(n, n - 1, n - 2, n - 2);
}

SemigroupTable n2(int n) {
  if (n < 5) throw BadParameter("N2(n) needs n >= 5");
  return two_generator(n, n - 2, n - 1, n - 2);
}

SemigroupTable n3(int n) {
  if (n < 5) throw BadParameter("N3(n) needs n >= 5");
  return two_generator(n, n - 1, n - 2, n - 1);
}

SemigroupTable n4(int n) {
  if (n < 5) throw BadParameter("N4(n) needs n >= 5");
  return two_generator(n, n - 2, n - 1, n - 1);
}

}  // namespace families

SemigroupTable zero_union(const SemigroupTable& a, const SemigroupTable& b) {
  int na = a.order, nb = b.order;
  int n = na + nb - 1;
  SemigroupTable t = SemigroupTable::zeros(n);
  for (int i = 1; i < na; ++i) {
    for (int j = 1; j < na; ++j) t.set(i, j, a.at(i, j));
  }
  int off = na - 1;
  for (int i = 1; i < nb; ++i) {
    for (int j = 1; j < nb; ++j) {
      int v = b.at(i, j);
      t.set(off + i, off + j, v == 0 ? 0 : off + v);
    }
  }
  return t;
}

SemigroupTable mkr_truncation(int r, int c) {
  if (r < 0 || c < 1) throw BadParameter("mkr_truncation needs r >= 0, c >= 1");
  return zero_union(monogenic(c + 1), zero_semigroup(r + 1));
}

SemigroupTable cc2_mainline(int family, int c) {
  if (family < 1 || family > 5) throw BadParameter("family index must be 1..5");
  if (c < 2) throw BadParameter("mainline truncation needs class >= 2");
  // Elements: 0 = zero, 1..c = a^i, c+1 = b, c+2 = the extra degree-2
  // product (ab, ba or b^2 depending on the family).
  int n = c + 3;
  int b = c + 1, z = c + 2;
  SemigroupTable t = SemigroupTable::zeros(n);
  for (int i = 1; i <= c; ++i) {
    for (int j = 1; j <= c; ++j) t.set(i, j, i + j <= c ? i + j : 0);
  }
  switch (family) {
    case 1: t.set(1, b, z); break;                    // ab = z
    case 2: t.set(b, 1, z); break;                    // ba = z
    case 3: t.set(b, b, z); break;                    // b^2 = z
    case 4: t.set(1, b, z); t.set(b, 1, z); break;    // ab = ba = z
    case 5: t.set(b, 1, z); t.set(b, b, z); break;    // ba = b^2 = z
    default: break;
  }
  return t;
}

}  // namespace ccsg
