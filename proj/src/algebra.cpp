#include "ccsg/algebra.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ccsg/util.hpp"

namespace ccsg {

Algebra::Algebra(PrimeField f, std::size_t dim, std::vector<std::uint8_t> sc,
                 std::vector<std::string> basis_names)
    : f_(f), n_(dim), sc_(std::move(sc)), names_(std::move(basis_names)) {
  if (sc_.size() != n_ * n_ * n_) throw BadParameter("structure constant count");
  for (auto& e : sc_) e = static_cast<std::uint8_t>(e % f_.p());
  // Associativity on basis triples.
  for (std::size_t i = 0; i < n_; ++i) {
    for (std::size_t j = 0; j < n_; ++j) {
      for (std::size_t k = 0; k < n_; ++k) {
        for (std::size_t m = 0; m < n_; ++m) {
          unsigned lhs = 0, rhs = 0;
          for (std::size_t x = 0; x < n_; ++x) {
            lhs += sc_at(i, j, x) * sc_at(x, k, m);
            rhs += sc_at(j, k, x) * sc_at(i, x, m);
          }
          if (lhs % f_.p() != rhs % f_.p()) {
            throw BadParameter("structure constants are not associative");
          }
        }
      }
    }
  }
  algebra_class(*this);  // throws NotNilpotent when the chain stalls
}

Vec Algebra::mul(const Vec& u, const Vec& v) const {
  Vec out(n_, 0);
  for (std::size_t i = 0; i < n_; ++i) {
    if (u[i] == 0) continue;
    for (std::size_t j = 0; j < n_; ++j) {
      if (v[j] == 0) continue;
      unsigned c = (u[i] * v[j]) % f_.p();
      const std::uint8_t* row = &sc_[(i * n_ + j) * n_];
      for (std::size_t k = 0; k < n_; ++k) {
        out[k] = static_cast<std::uint8_t>((out[k] + c * row[k]) % f_.p());
      }
    }
  }
  return out;
}

std::vector<std::uint8_t> Algebra::encoding() const {
  std::vector<std::uint8_t> enc;
  enc.reserve(2 + sc_.size());
  enc.push_back(static_cast<std::uint8_t>(f_.p()));
  enc.push_back(static_cast<std::uint8_t>(n_));
  enc.insert(enc.end(), sc_.begin(), sc_.end());
  return enc;
}

Algebra contracted_algebra(const SemigroupTable& s, const PrimeField& f) {
  int n = s.order - 1;
  std::vector<std::uint8_t> sc(static_cast<std::size_t>(n) * n * n, 0);
  for (int a = 1; a < s.order; ++a) {
    for (int b = 1; b < s.order; ++b) {
      int ab = s.at(a, b);
      if (ab != 0) {
        sc[((static_cast<std::size_t>(a - 1) * n) + (b - 1)) * n + (ab - 1)] = 1;
      }
    }
  }
  std::vector<std::string> names;
  names.reserve(n);
  for (int i = 1; i <= n; ++i) names.push_back("s" + std::to_string(i));
  return Algebra(f, static_cast<std::size_t>(n), std::move(sc),
                 std::move(names));
}

namespace {

// Power ideal chain A^1 >= A^2 >= ... down to (and including) the zero
// subspace. Throws NotNilpotent if it stabilises above zero.
std::vector<Subspace> power_chain_subspaces(const Algebra& a) {
  std::size_t n = a.dim();
  const PrimeField& f = a.field();
  std::vector<Subspace> chain;
  Subspace full(f, n);
  for (std::size_t i = 0; i < n; ++i) {
    Vec e(n, 0);
    e[i] = 1;
    full.grow(e);
  }
  chain.push_back(full);
  while (chain.back().dim() > 0) {
    const Subspace& prev = chain.back();
    Subspace next(f, n);
    for (const Vec& u : prev.basis()) {
      for (std::size_t j = 0; j < n; ++j) {
        Vec e(n, 0);
        e[j] = 1;
        next.grow(a.mul(u, e));
      }
    }
    if (next.dim() == prev.dim()) {
      throw NotNilpotent("power ideal chain stabilised at dimension " +
                         std::to_string(next.dim()));
    }
    chain.push_back(next);
  }
  return chain;
}

}  // namespace

Subspace power_ideal(const Algebra& a, int i) {
  if (i < 1) throw BadParameter("power ideal index must be >= 1");
  std::vector<Subspace> chain = power_chain_subspaces(a);
  if (static_cast<std::size_t>(i) <= chain.size()) return chain[i - 1];
  return Subspace(a.field(), a.dim());
}

int algebra_class(const Algebra& a) {
  return static_cast<int>(power_chain_subspaces(a).size()) - 1;
}

int algebra_coclass(const Algebra& a) {
  return static_cast<int>(a.dim()) - algebra_class(a);
}

Algebra quotient_algebra(const Algebra& a, const Subspace& ideal) {
  std::size_t n = a.dim();
  const PrimeField& f = a.field();
  for (const Vec& u : ideal.basis()) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec e(n, 0);
      e[j] = 1;
      if (!ideal.contains(a.mul(u, e)) || !ideal.contains(a.mul(e, u))) {
        throw NotAnIdeal("subspace is not a two-sided ideal");
      }
    }
  }
  std::vector<char> is_pivot(n, 0);
  for (int p : ideal.pivots()) is_pivot[p] = 1;
  std::vector<std::size_t> rep;  // complement coordinates
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) rep.push_back(j);
  }
  std::size_t m = rep.size();
  std::vector<std::uint8_t> sc(m * m * m, 0);
  std::vector<std::string> names;
  for (std::size_t i = 0; i < m; ++i) {
    if (rep[i] < a.basis_names().size()) names.push_back(a.basis_names()[rep[i]]);
  }
  if (names.size() != m) names.clear();
  for (std::size_t i = 0; i < m; ++i) {
    Vec ei(n, 0);
    ei[rep[i]] = 1;
    for (std::size_t j = 0; j < m; ++j) {
      Vec ej(n, 0);
      ej[rep[j]] = 1;
      Vec prod = ideal.reduce(a.mul(ei, ej));
      for (std::size_t k = 0; k < m; ++k) {
        sc[(i * m + j) * m + k] = prod[rep[k]];
      }
    }
  }
  return Algebra(f, m, std::move(sc), std::move(names));
}

namespace {

// Rows i, columns flattened (j,k): entry sc[i][j][k] for the left version,
// sc[j][i][k] for the right one.
Subspace annihilator_side(const Algebra& a, bool left) {
  std::size_t n = a.dim();
  Matrix m(a.field(), n, n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        m.at(i, j * n + k) = left ? a.sc_at(i, j, k) : a.sc_at(j, i, k);
      }
    }
  }
  return solve_left_kernel(m);
}

}  // namespace

Subspace left_annihilator(const Algebra& a) { return annihilator_side(a, true); }
Subspace right_annihilator(const Algebra& a) { return annihilator_side(a, false); }

Subspace annihilator(const Algebra& a) {
  return intersect(left_annihilator(a), right_annihilator(a));
}

bool is_commutative(const Algebra& a) {
  std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      for (std::size_t k = 0; k < n; ++k) {
        if (a.sc_at(i, j, k) != a.sc_at(j, i, k)) return false;
      }
    }
  }
  return true;
}

Fingerprint fingerprint(const Algebra& a) {
  std::vector<Subspace> chain = power_chain_subspaces(a);
  int cls = static_cast<int>(chain.size()) - 1;
  Fingerprint fp;
  fp.push_back(static_cast<int>(a.dim()));
  fp.push_back(cls);
  fp.push_back(static_cast<int>(a.dim()) - cls);
  for (const auto& v : chain) fp.push_back(static_cast<int>(v.dim()));
  Subspace ann = annihilator(a);
  fp.push_back(static_cast<int>(ann.dim()));
  fp.push_back(static_cast<int>(left_annihilator(a).dim()));
  fp.push_back(static_cast<int>(right_annihilator(a).dim()));
  fp.push_back(is_commutative(a) ? 1 : 0);
  for (const auto& v : chain) {
    fp.push_back(static_cast<int>(intersect(ann, v).dim()));
  }
  return fp;
}

bool validate_algebra_iso(const Algebra& a, const Algebra& b, const Matrix& m) {
  if (a.dim() != b.dim()) return false;
  if (m.rows() != a.dim() || m.cols() != a.dim()) return false;
  if (a.dim() == 0) return true;
  if (!inverse(m)) return false;
  std::size_t n = a.dim();
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec lhs = b.mul(m.row(i), m.row(j));
      Vec rhs(n, 0);
      for (std::size_t k = 0; k < n; ++k) {
        unsigned c = a.sc_at(i, j, k);
        if (c == 0) continue;
        for (std::size_t x = 0; x < n; ++x) {
          rhs[x] = static_cast<std::uint8_t>(
              (rhs[x] + c * m.at(k, x)) % a.field().p());
        }
      }
      if (lhs != rhs) return false;
    }
  }
  return true;
}

namespace {

// Filtration-adapted view: basis rows grouped by the largest i with
// row in A^i, layers ascending, plus structure constants in that basis.
// For the domain algebra every row carries a defining word: row u is either
// a generator or (parent row) * (generator).
struct Adapted {
  const Algebra* alg = nullptr;
  int cls = 0;
  std::vector<int> layer_dims;              // per layer 1..cls
  std::vector<int> cum;                     // cum[j] = #coords of layer <= j
  Matrix basis;                             // rows in original coords
  Matrix basis_inv;
  std::vector<std::uint8_t> sc;             // structure constants, adapted
  std::vector<std::pair<int, int>> words;   // (parent row, generator) or (-1,g)
  int gens = 0;

  Adapted() : basis(PrimeField(2), 0, 0), basis_inv(PrimeField(2), 0, 0) {}

  std::uint8_t sc_at(std::size_t i, std::size_t j, std::size_t k) const {
    std::size_t n = words.size();
    return sc[(i * n + j) * n + k];
  }
};

Adapted make_adapted(const Algebra& a, bool with_words) {
  std::size_t n = a.dim();
  const PrimeField& f = a.field();
  std::vector<Subspace> chain = power_chain_subspaces(a);
  Adapted ad;
  ad.alg = &a;
  ad.cls = static_cast<int>(chain.size()) - 1;
  std::vector<Vec> rows;
  std::vector<std::pair<int, int>> words;
  // Layer 1: lifts of the canonical basis of A/A^2 are the unit vectors on
  // the non-pivot coordinates of A^2.
  std::vector<char> is_pivot(n, 0);
  if (ad.cls >= 1) {
    for (int p : chain[1].pivots()) is_pivot[p] = 1;
  }
  for (std::size_t j = 0; j < n; ++j) {
    if (!is_pivot[j]) {
      Vec e(n, 0);
      e[j] = 1;
      rows.push_back(e);
      words.push_back({-1, static_cast<int>(rows.size()) - 1});
    }
  }
  ad.gens = static_cast<int>(rows.size());
  ad.layer_dims.push_back(ad.gens);
  std::vector<std::pair<int, int>> layer_span{{0, ad.gens}};
  for (int layer = 2; layer <= ad.cls; ++layer) {
    Subspace elim = chain[layer];  // A^{layer+1}
    int begin = static_cast<int>(rows.size());
    if (with_words) {
      auto [lo, hi] = layer_span[layer - 2];
      for (int w = lo; w < hi; ++w) {
        for (int g = 0; g < ad.gens; ++g) {
          Vec prod = a.mul(rows[w], rows[g]);
          if (elim.grow(prod)) {
            rows.push_back(prod);
            words.push_back({w, g});
          }
        }
      }
    } else {
      for (const Vec& v : chain[layer - 1].basis()) {
        if (elim.grow(v)) {
          rows.push_back(v);
          words.push_back({-2, -2});
        }
      }
    }
    int expect = static_cast<int>(chain[layer - 1].dim() - chain[layer].dim());
    if (static_cast<int>(rows.size()) - begin != expect) {
      throw std::logic_error("adapted basis layer has wrong dimension");
    }
    ad.layer_dims.push_back(expect);
    layer_span.push_back({begin, static_cast<int>(rows.size())});
  }
  ad.cum.assign(ad.cls + 1, 0);
  for (int j = 1; j <= ad.cls; ++j) ad.cum[j] = ad.cum[j - 1] + ad.layer_dims[j - 1];
  Matrix basis(f, n, n);
  for (std::size_t i = 0; i < n; ++i) basis.set_row(i, rows[i]);
  auto inv = inverse(basis);
  if (!inv) throw std::logic_error("adapted basis is singular");
  ad.basis = basis;
  ad.basis_inv = *inv;
  ad.words = std::move(words);
  ad.sc.assign(n * n * n, 0);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      Vec prod = a.mul(rows[i], rows[j]);
      // coords in the adapted basis: prod * basis_inv
      for (std::size_t k = 0; k < n; ++k) {
        unsigned acc = 0;
        for (std::size_t x = 0; x < n; ++x) {
          acc += prod[x] * ad.basis_inv.at(x, k);
        }
        ad.sc[(i * n + j) * n + k] = static_cast<std::uint8_t>(acc % f.p());
      }
    }
  }
  return ad;
}

struct IsoSearcher {
  const Adapted& dom;   // with words
  const Adapted& cod;   // coordinates for the image side
  const PrimeField f;
  std::size_t n;
  int d;
  std::uint64_t node_cap;
  std::uint64_t nodes = 0;
  std::vector<Vec> img;    // generator images in codomain adapted coords
  std::vector<Vec> evals;  // word evaluations, codomain adapted coords

  IsoSearcher(const Adapted& a, const Adapted& b, std::uint64_t cap)
      : dom(a),
        cod(b),
        f(a.alg->field()),
        n(a.alg->dim()),
        d(a.gens),
        node_cap(cap),
        img(a.gens, Vec(a.alg->dim(), 0)),
        evals(a.alg->dim(), Vec(a.alg->dim(), 0)) {}

  // Product in codomain adapted coordinates, truncated to coords < bound.
  Vec mul_trunc(const Vec& u, const Vec& v, std::size_t bound) const {
    Vec out(n, 0);
    for (std::size_t i = 0; i < n; ++i) {
      if (u[i] == 0) continue;
      for (std::size_t j = 0; j < n; ++j) {
        if (v[j] == 0) continue;
        unsigned c = (u[i] * v[j]) % f.p();
        const std::uint8_t* row = &cod.sc[(i * n + j) * n];
        for (std::size_t k = 0; k < bound; ++k) {
          out[k] = static_cast<std::uint8_t>((out[k] + c * row[k]) % f.p());
        }
      }
    }
    return out;
  }

  // Recomputes word evaluations and verifies every (basis word, generator)
  // product against the domain structure constants, modulo coords >= bound.
  bool check(std::size_t bound) {
    if (++nodes > node_cap) {
      throw Exhausted("isomorphism search hit the node cap");
    }
    for (std::size_t u = 0; u < n; ++u) {
      auto [parent, g] = dom.words[u];
      evals[u] = parent < 0 ? img[g] : mul_trunc(evals[parent], img[g], bound);
    }
    for (std::size_t u = 0; u < n; ++u) {
      for (int i = 0; i < d; ++i) {
        Vec lhs = mul_trunc(evals[u], img[i], bound);
        Vec rhs(n, 0);
        for (std::size_t k = 0; k < n; ++k) {
          unsigned c = dom.sc_at(u, i, k);
          if (c == 0) continue;
          for (std::size_t x = 0; x < bound; ++x) {
            rhs[x] = static_cast<std::uint8_t>((rhs[x] + c * evals[k][x]) % f.p());
          }
        }
        if (lhs != rhs) return false;
      }
    }
    return true;
  }

  std::optional<Matrix> finalize() {
    if (!check(n)) return std::nullopt;
    // Map: original domain basis -> adapted words -> evaluations -> original
    // codomain coordinates.
    Matrix evmat(f, n, n);
    for (std::size_t u = 0; u < n; ++u) evmat.set_row(u, evals[u]);
    Matrix m = dom.basis_inv.mul(evmat).mul(cod.basis);
    if (!validate_algebra_iso(*dom.alg, *cod.alg, m)) return std::nullopt;
    return m;
  }

  std::optional<Matrix> extend(int layer) {
    if (layer > dom.cls) return finalize();
    std::size_t lo = cod.cum[layer - 1], hi = cod.cum[layer];
    std::size_t digits = static_cast<std::size_t>(d) * (hi - lo);
    std::vector<std::uint8_t> counter(digits, 0);
    for (;;) {
      std::size_t pos = 0;
      for (int i = 0; i < d; ++i) {
        for (std::size_t c = lo; c < hi; ++c) img[i][c] = counter[pos++];
      }
      bool viable = layer == dom.cls || check(cod.cum[layer + 1]);
      if (viable) {
        auto res = extend(layer + 1);
        if (res) return res;
      }
      // increment base-p counter
      std::size_t k = 0;
      while (k < digits) {
        if (++counter[k] < f.p()) break;
        counter[k++] = 0;
      }
      if (k == digits) break;
    }
    for (int i = 0; i < d; ++i) {
      for (std::size_t c = lo; c < hi; ++c) img[i][c] = 0;
    }
    return std::nullopt;
  }

  std::optional<Matrix> run() {
    // Invertible layer-1 blocks, enumerated lexicographically.
    std::size_t digits = static_cast<std::size_t>(d) * d;
    std::vector<std::uint8_t> counter(digits, 0);
    for (;;) {
      Matrix block(f, d, d);
      std::size_t pos = 0;
      for (int i = 0; i < d; ++i) {
        for (int j = 0; j < d; ++j) block.at(i, j) = counter[pos++];
      }
      if (rref(block).dim() == static_cast<std::size_t>(d)) {
        for (int i = 0; i < d; ++i) {
          std::fill(img[i].begin(), img[i].end(), 0);
          for (int j = 0; j < d; ++j) img[i][j] = block.at(i, j);
        }
        bool viable = dom.cls < 2 || check(cod.cum[std::min(2, dom.cls)]);
        if (viable) {
          auto res = extend(2);
          if (res) return res;
        }
      }
      std::size_t k = 0;
      while (k < digits) {
        if (++counter[k] < f.p()) break;
        counter[k++] = 0;
      }
      if (k == digits) break;
    }
    return std::nullopt;
  }
};

}  // namespace

std::optional<AlgebraIso> iso_algebras(const Algebra& a, const Algebra& b,
                                       const IsoOptions& opt) {
  if (!(a.field() == b.field())) {
    throw BadParameter("isomorphism test needs a common field");
  }
  if (a.dim() != b.dim()) {
    throw DimensionMismatch("algebra dimensions differ: " +
                            std::to_string(a.dim()) + " vs " +
                            std::to_string(b.dim()));
  }
  if (a.dim() == 0) return AlgebraIso{Matrix(a.field(), 0, 0)};
  if (fingerprint(a) != fingerprint(b)) return std::nullopt;
  Adapted dom = make_adapted(a, true);
  Adapted cod = make_adapted(b, false);
  IsoSearcher searcher(dom, cod, opt.node_cap);
  auto m = searcher.run();
  if (!m) return std::nullopt;
  return AlgebraIso{*m};
}

std::vector<IsoClass> group_by_isomorphism(const std::vector<Algebra>& algs,
                                           unsigned workers,
                                           const IsoOptions& opt) {
  std::size_t n = algs.size();
  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::vector<std::vector<std::uint8_t>> encs(n);
  for (std::size_t i = 0; i < n; ++i) encs[i] = algs[i].encoding();
  std::stable_sort(order.begin(), order.end(),
                   [&](std::size_t a, std::size_t b) { return encs[a] < encs[b]; });
  std::map<Fingerprint, std::vector<std::size_t>> buckets;
  for (std::size_t idx : order) buckets[fingerprint(algs[idx])].push_back(idx);
  // All candidate pairs across buckets, tested in parallel; the sequential
  // union pass below keeps the outcome deterministic.
  std::vector<std::pair<std::size_t, std::size_t>> pairs;
  for (const auto& [fp, members] : buckets) {
    for (std::size_t i = 0; i < members.size(); ++i) {
      for (std::size_t j = i + 1; j < members.size(); ++j) {
        pairs.push_back({members[i], members[j]});
      }
    }
  }
  std::vector<char> same(pairs.size(), 0);
  parallel_for_index(pairs.size(), workers, [&](std::size_t k) {
    same[k] = iso_algebras(algs[pairs[k].first], algs[pairs[k].second], opt)
                  ? 1
                  : 0;
  });
  std::vector<std::size_t> root(n);
  std::iota(root.begin(), root.end(), 0);
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (root[x] != x) x = root[x] = root[root[x]];
    return x;
  };
  for (std::size_t k = 0; k < pairs.size(); ++k) {
    if (same[k]) root[find(pairs[k].first)] = find(pairs[k].second);
  }
  std::map<std::size_t, IsoClass> classes;
  for (std::size_t idx : order) {
    std::size_t r = find(idx);
    auto it = classes.find(r);
    if (it == classes.end()) {
      classes[r] = IsoClass{idx, {idx}};
    } else {
      it->second.members.push_back(idx);
    }
  }
  std::vector<IsoClass> out;
  for (auto& [r, cls] : classes) out.push_back(std::move(cls));
  std::sort(out.begin(), out.end(), [&](const IsoClass& a, const IsoClass& b) {
    return encs[a.representative] < encs[b.representative];
  });
  return out;
}

}  // namespace ccsg
