#include <algorithm>
#include <map>

#include "ccsg/graph.hpp"

namespace ccsg {

namespace {

struct PathInfo {
  std::vector<int> path;  // A_1, A_2, ... starting at the tree root
  int horizon = 0;
};

int subtree_reach(const CoclassGraph& g, int v, std::vector<int>& memo) {
  if (memo[v] >= 0) return memo[v];
  int best = g.vertices[v].dim;
  for (int c : g.children[v]) best = std::max(best, subtree_reach(g, c, memo));
  return memo[v] = best;
}

PathInfo alive_path(const CoclassGraph& g, int root, int horizon) {
  std::vector<int> memo(g.vertices.size(), -1);
  auto alive = [&](int v) { return subtree_reach(g, v, memo) >= horizon; };
  if (!alive(root)) {
    throw NoAlivePath("tree root does not reach the horizon");
  }
  PathInfo info;
  info.horizon = horizon;
  int cur = root;
  info.path.push_back(cur);
  while (g.vertices[cur].dim < horizon) {
    int next = -1, count = 0;
    for (int c : g.children[cur]) {
      if (alive(c)) {
        ++count;
        next = c;
      }
    }
    if (count == 0) break;
    if (count > 1) {
      // Several children sitting exactly at the horizon are boundary noise;
      // a proper branch below it means the tree has no unique alive path.
      if (g.vertices[cur].dim + 1 < horizon) {
        throw NoAlivePath("alive path branches below the horizon");
      }
      break;
    }
    info.path.push_back(next);
    cur = next;
  }
  return info;
}

// Deterministic tree isomorphism T(a)|depth -> T(b)|depth built by matching
// children on (code, fingerprint, label, id). Requires equal codes.
void match_subtrees(const CoclassGraph& g, int a, int b, int depth,
                    std::map<int, int>& mu) {
  mu[a] = b;
  if (depth == 0) return;
  auto key_sorted = [&](int v) {
    std::vector<std::tuple<std::string, Fingerprint, int, int>> keys;
    for (int c : g.children[v]) {
      keys.push_back({tree_code(g, c, depth - 1).code,
                      g.vertices[c].fingerprint, g.vertices[c].label, c});
    }
    std::sort(keys.begin(), keys.end());
    return keys;
  };
  auto ka = key_sorted(a);
  auto kb = key_sorted(b);
  for (std::size_t i = 0; i < ka.size() && i < kb.size(); ++i) {
    match_subtrees(g, std::get<3>(ka[i]), std::get<3>(kb[i]), depth - 1, mu);
  }
}

}  // namespace

PeriodicityReport detect_periodicity(const CoclassGraph& g, int tree_root,
                                     int max_defect, int max_period,
                                     int degree_bound, int horizon) {
  if (horizon < 0) horizon = g.max_dim();
  PathInfo info = alive_path(g, tree_root, horizon);
  const std::vector<int>& path = info.path;
  int maxdim = horizon;

  auto try_pair = [&](int l, int k, PeriodicityReport& report) -> bool {
    if (l + k > static_cast<int>(path.size())) return false;
    int al = path[l - 1];
    int alk = path[l + k - 1];
    int depth = maxdim - g.vertices[alk].dim;
    if (depth < 1) return false;
    for (int t = 0; t <= depth; ++t) {
      if (!(tree_code(g, al, t) == tree_code(g, alk, t))) return false;
    }
    // Weakly periodic; build the shift and collect label families.
    std::map<int, int> mu;
    match_subtrees(g, al, alk, depth, mu);
    report.tree_root = tree_root;
    report.defect = l;
    report.period = k;
    report.verified_depth = depth;
    report.horizon = horizon;
    report.families.clear();
    report.unresolved.clear();
    // Family bases: vertices of T(A_l) outside T(A_{l+k}), within the
    // matched region.
    Subtree region = coclass_tree(g, al);
    Subtree shifted = coclass_tree(g, alk);
    std::vector<char> in_shifted(g.vertices.size(), 0);
    for (int v : shifted.vertices) in_shifted[v] = 1;
    bool all_fit = true;
    for (int base : region.vertices) {
      if (in_shifted[base]) continue;
      if (g.vertices[base].dim - g.vertices[al].dim > depth) continue;
      FamilyPolynomial fam;
      fam.vertex = base;
      int cur = base;
      long long i = 0;
      while (true) {
        fam.samples.push_back({i, g.vertices[cur].label});
        auto it = mu.find(cur);
        if (it == mu.end()) break;
        cur = it->second;
        ++i;
      }
      auto fit = fit_polynomial(fam.samples, degree_bound);
      if (fit) {
        fam.coefficients = *fit;
        report.families.push_back(std::move(fam));
      } else {
        all_fit = false;
        report.unresolved.push_back(base);
        report.families.push_back(std::move(fam));
      }
    }
    report.strong = all_fit;
    return true;
  };

  std::optional<PeriodicityReport> weak_only;
  for (int l = 1; l <= max_defect; ++l) {
    for (int k = 1; k <= max_period; ++k) {
      PeriodicityReport report;
      if (!try_pair(l, k, report)) continue;
      if (report.strong) return report;
      if (!weak_only) weak_only = report;
    }
  }
  if (weak_only) return *weak_only;
  throw NoPeriodFound("no weak period within the configured bounds");
}

}  // namespace ccsg
