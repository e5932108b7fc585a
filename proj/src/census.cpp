#include "ccsg/census.hpp"

#include <algorithm>
#include <map>
#include <numeric>

#include "ccsg/util.hpp"

namespace ccsg {

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) {
    std::iota(parent.begin(), parent.end(), 0);
  }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

}  // namespace

std::vector<SemigroupTable> dedup_up_to_iso(std::vector<SemigroupTable> tables) {
  std::vector<SemigroupTable> out;
  std::map<std::vector<int>, std::vector<std::size_t>> buckets;
  for (const auto& t : tables) {
    auto key = semigroup_fingerprint(t);
    auto& bucket = buckets[key];
    bool fresh = true;
    for (std::size_t idx : bucket) {
      if (iso_semigroups(out[idx], t)) {
        fresh = false;
        break;
      }
    }
    if (fresh) {
      bucket.push_back(out.size());
      out.push_back(t);
    }
  }
  return out;
}

std::vector<SemigroupTable> descendants(const SemigroupTable& t, int r) {
  int c = nilpotency_class(t);
  if ((t.order - 1) - c != r) {
    throw BadParameter("table coclass does not match the requested coclass");
  }
  int n = t.order;
  // Cells (a,b) with ab = 0 may be redirected to the new element x.
  // Associativity forces equalities between cells and zeroes on some,
  // leaving a small number of free classes.
  std::vector<int> cell_var(n * n, -1);
  std::vector<std::pair<int, int>> cells;
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) {
      if (t.at(a, b) == 0) {
        cell_var[a * n + b] = static_cast<int>(cells.size());
        cells.push_back({a, b});
      }
    }
  }
  UnionFind uf(static_cast<int>(cells.size()));
  std::vector<char> forced_zero(cells.size(), 0);
  for (int a = 1; a < n; ++a) {
    for (int b = 1; b < n; ++b) {
      int ab = t.at(a, b);
      for (int e = 1; e < n; ++e) {
        int be = t.at(b, e);
        int abe = ab != 0 ? t.at(ab, e) : (be != 0 ? t.at(a, be) : 0);
        if (abe != 0) continue;
        if (ab != 0 && be != 0) {
          uf.unite(cell_var[ab * n + e], cell_var[a * n + be]);
        } else if (ab != 0) {
          forced_zero[cell_var[ab * n + e]] = 1;
        } else if (be != 0) {
          forced_zero[cell_var[a * n + be]] = 1;
        }
      }
    }
  }
  // Propagate forced zeroes through the equality classes.
  std::vector<char> class_zero(cells.size(), 0);
  for (std::size_t v = 0; v < cells.size(); ++v) {
    if (forced_zero[v]) class_zero[uf.find(static_cast<int>(v))] = 1;
  }
  std::vector<int> free_classes;
  for (std::size_t v = 0; v < cells.size(); ++v) {
    if (uf.find(static_cast<int>(v)) == static_cast<int>(v) && !class_zero[v]) {
      free_classes.push_back(static_cast<int>(v));
    }
  }
  if (free_classes.size() > 30) {
    throw Exhausted("too many free annihilator-extension classes");
  }
  std::vector<SemigroupTable> found;
  int nn = n + 1;
  for (std::uint64_t mask = 0; mask < (1ull << free_classes.size()); ++mask) {
    SemigroupTable cand = SemigroupTable::zeros(nn);
    for (int i = 0; i < n; ++i) {
      for (int j = 0; j < n; ++j) cand.set(i, j, t.at(i, j));
    }
    for (std::size_t v = 0; v < cells.size(); ++v) {
      int root = uf.find(static_cast<int>(v));
      if (class_zero[root]) continue;
      std::size_t bit =
          std::lower_bound(free_classes.begin(), free_classes.end(), root) -
          free_classes.begin();
      if (mask & (1ull << bit)) cand.set(cells[v].first, cells[v].second, n);
    }
    try {
      if (power_chain(cand).nil_class() != c + 1) continue;
    } catch (const NotNilpotent&) {
      continue;
    }
    found.push_back(std::move(cand));
  }
  found = dedup_up_to_iso(std::move(found));
  std::vector<std::pair<std::vector<std::uint8_t>, std::size_t>> keyed;
  keyed.reserve(found.size());
  for (std::size_t i = 0; i < found.size(); ++i) {
    keyed.emplace_back(canonical_encoding(found[i]), i);
  }
  std::sort(keyed.begin(), keyed.end());
  std::vector<SemigroupTable> ordered;
  ordered.reserve(found.size());
  for (auto& [key, i] : keyed) ordered.push_back(std::move(found[i]));
  return ordered;
}

namespace {

struct BruteSearch {
  int n;
  int r;
  std::optional<int> d;
  SemigroupTable table;
  std::vector<std::pair<int, int>> cells;  // fill order
  std::vector<char> assigned;              // per cell index in row-major
  std::vector<SemigroupTable> hits;

  bool triple_ok(int a, int b, int e) const {
    int ab = table.at(a, b);
    if (ab != 0 && !assigned[ab * n + e]) return true;
    int be = table.at(b, e);
    if (be != 0 && !assigned[a * n + be]) return true;
    int lhs = ab == 0 ? 0 : table.at(ab, e);
    int rhs = be == 0 ? 0 : table.at(a, be);
    return lhs == rhs;
  }

  bool consistent() const {
    for (int a = 1; a < n; ++a) {
      for (int b = 1; b < n; ++b) {
        if (!assigned[a * n + b]) continue;
        for (int e = 1; e < n; ++e) {
          if (!assigned[b * n + e]) continue;
          if (!triple_ok(a, b, e)) return false;
        }
      }
    }
    return true;
  }

  void leaf() {
    int cls;
    try {
      cls = power_chain(table).nil_class();
    } catch (const NotNilpotent&) {
      return;  // cannot happen with the increasing-label constraint
    }
    if ((n - 1) - cls != r) return;
    if (d && static_cast<int>(minimal_generators(table).size()) != *d) return;
    hits.push_back(canonical_form(table));
  }

  void fill(std::size_t k) {
    if (k == cells.size()) {
      leaf();
      return;
    }
    auto [i, j] = cells[k];
    int lo = std::max(i, j);
    assigned[i * n + j] = 1;
    for (int v = 0; v <= n - 1; v = (v == 0 ? lo + 1 : v + 1)) {
      // products are zero or land strictly above both factors; every
      // nilpotent table admits such a labeling
      table.set(i, j, v);
      if (consistent()) fill(k + 1);
    }
    table.set(i, j, 0);
    assigned[i * n + j] = 0;
  }
};

}  // namespace

std::vector<SemigroupTable> brute_force_census(int n, int r,
                                               std::optional<int> d) {
  if (n < 1) throw BadParameter("order must be positive");
  if (n == 1) {
    if (r == 0 && (!d || *d == 0)) return {SemigroupTable::zeros(1)};
    return {};
  }
  if (n > 7) throw BadParameter("brute-force census limited to order <= 7");
  BruteSearch search;
  search.n = n;
  search.r = r;
  search.d = d;
  search.table = SemigroupTable::zeros(n);
  search.assigned.assign(n * n, 0);
  for (int i = 0; i < n; ++i) {
    search.assigned[i] = 1;
    search.assigned[i * n] = 1;
  }
  // Fill the leading principal blocks one element at a time, so triples over
  // already-covered elements prune early.
  for (int m = 1; m < n; ++m) {
    for (int i = 1; i < m; ++i) search.cells.push_back({i, m});
    for (int j = 1; j <= m; ++j) search.cells.push_back({m, j});
  }
  search.fill(0);
  // Canonical-form rejection: identical canonical tables collapse to one.
  std::sort(search.hits.begin(), search.hits.end(),
            [](const SemigroupTable& a, const SemigroupTable& b) {
              return a.table < b.table;
            });
  search.hits.erase(std::unique(search.hits.begin(), search.hits.end()),
                    search.hits.end());
  return search.hits;
}

std::vector<const CensusRecord*> Census::all() const {
  std::vector<const CensusRecord*> out;
  for (const auto& bucket : by_order) {
    for (const auto& rec : bucket) out.push_back(&rec);
  }
  return out;
}

Census build_census(int r, int d, int max_order, unsigned workers) {
  if (r < 0) throw BadParameter("coclass must be nonnegative");
  if (d < 1) throw BadParameter("generator count must be positive");
  if (max_order < 1) throw BadParameter("max order must be positive");
  int seed_max = std::min(2 * r + 2, 6);
  if (d != r + 1 && 2 * r + 1 > 6) {
    throw BadParameter(
        "coclass > 2 needs seed orders beyond the brute-force range");
  }
  Census census;
  census.coclass = r;
  census.generators = d;
  census.max_order = max_order;
  census.by_order.resize(max_order + 1);

  auto install = [&](int order, std::vector<SemigroupTable> batch,
                     const std::vector<std::string>& origins) {
    std::vector<std::vector<std::uint8_t>> keys(batch.size());
    parallel_for_index(batch.size(), workers, [&](std::size_t i) {
      keys[i] = canonical_encoding(batch[i]);
    });
    // Canonical encodings are iso-invariant, so dedup at order <= 9 is a
    // plain key comparison; larger orders use the pairwise test.
    std::vector<std::size_t> keep;
    if (order <= 9) {
      std::map<std::vector<std::uint8_t>, std::size_t> seen;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        if (seen.emplace(keys[i], i).second) keep.push_back(i);
      }
    } else {
      std::map<std::vector<int>, std::vector<std::size_t>> buckets;
      for (std::size_t i = 0; i < batch.size(); ++i) {
        auto& bucket = buckets[semigroup_fingerprint(batch[i])];
        bool fresh = true;
        for (std::size_t j : bucket) {
          if (iso_semigroups(batch[j], batch[i])) {
            fresh = false;
            break;
          }
        }
        if (fresh) {
          bucket.push_back(i);
          keep.push_back(i);
        }
      }
    }
    std::sort(keep.begin(), keep.end(), [&](std::size_t a, std::size_t b) {
      return keys[a] < keys[b];
    });
    for (std::size_t i : keep) {
      census.by_order[order].push_back(
          {batch[i], sha256_hex(keys[i]), origins[i]});
    }
  };

  if (r == 0 && max_order >= 1) {
    install(1, {SemigroupTable::zeros(1)}, {"brute_force"});
  }
  int min_order = r + 2;
  for (int n = min_order; n <= max_order; ++n) {
    std::vector<SemigroupTable> batch;
    std::vector<std::string> origins;
    const std::vector<CensusRecord>& parents = census.by_order[n - 1];
    if (!parents.empty()) {
      std::vector<std::vector<SemigroupTable>> per_parent(parents.size());
      parallel_for_index(parents.size(), workers, [&](std::size_t i) {
        per_parent[i] = descendants(parents[i].table, r);
      });
      for (std::size_t i = 0; i < parents.size(); ++i) {
        for (auto& tb : per_parent[i]) {
          batch.push_back(std::move(tb));
          origins.push_back(parents[i].id);
        }
      }
    }
    if (n <= seed_max) {
      for (auto& tb : brute_force_census(n, r, d)) {
        batch.push_back(std::move(tb));
        origins.push_back("brute_force");
      }
    }
    install(n, std::move(batch), origins);
  }
  return census;
}

}  // namespace ccsg
