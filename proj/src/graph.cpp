#include "ccsg/graph.hpp"

#include <algorithm>
#include <map>

namespace ccsg {

int CoclassGraph::max_dim() const {
  int m = -1;
  for (const auto& v : vertices) m = std::max(m, v.dim);
  return m;
}

std::vector<int> CoclassGraph::vertices_of_dim(int dim) const {
  std::vector<int> out;
  for (const auto& v : vertices) {
    if (v.dim == dim) out.push_back(v.id);
  }
  return out;
}

void CoclassGraph::rebuild_children() {
  children.assign(vertices.size(), {});
  for (const auto& v : vertices) {
    if (v.parent >= 0) children[v.parent].push_back(v.id);
  }
}

CoclassGraph build_graph(int r, int p, int d, int max_order,
                         unsigned workers) {
  if (r < 0) throw BadParameter("coclass must be nonnegative");
  if (d < 1 || d > r + 1) {
    throw EmptyGraph("no nilpotent semigroup of coclass " + std::to_string(r) +
                     " has " + std::to_string(d) + " generators");
  }
  if (max_order < 2 * r + 1) {
    throw BadParameter("max order below the root bound 2r+1");
  }
  return build_graph(build_census(r, d, max_order, workers), p, workers);
}

CoclassGraph build_graph(const Census& census, int p, unsigned workers) {
  int r = census.coclass;
  int max_order = census.max_order;
  PrimeField field(static_cast<unsigned>(p));

  CoclassGraph g;
  g.params = {r, p, census.generators, max_order};
  for (int order = 1; order <= max_order; ++order) {
    const auto& recs = census.by_order[order];
    if (recs.empty()) continue;
    std::vector<Algebra> algebras;
    algebras.reserve(recs.size());
    for (const auto& rec : recs) {
      algebras.push_back(contracted_algebra(rec.table, field));
    }
    std::vector<IsoClass> classes = group_by_isomorphism(algebras, workers);
    for (const auto& cls : classes) {
      Vertex v;
      v.id = static_cast<int>(g.vertices.size());
      v.dim = order - 1;
      v.label = static_cast<int>(cls.members.size());
      v.commutative = is_commutative(algebras[cls.representative]);
      v.fingerprint = fingerprint(algebras[cls.representative]);
      for (std::size_t m : cls.members) v.members.push_back(recs[m].id);
      g.vertices.push_back(std::move(v));
      g.reps.push_back(algebras[cls.representative]);
    }
  }
  if (g.vertices.empty()) {
    throw EmptyGraph("census matched no semigroups");
  }
  // Parent of a class-c vertex: the iso class of its quotient by A^c,
  // provided that quotient still has coclass r (otherwise the vertex is a
  // root; such roots have dimension at most 2r).
  std::map<int, std::vector<int>> by_dim;
  for (const auto& v : g.vertices) by_dim[v.dim].push_back(v.id);
  for (auto& v : g.vertices) {
    const Algebra& rep = g.reps[v.id];
    if (rep.dim() == 0) continue;  // the trivial algebra is always a root
    int cls = algebra_class(rep);
    Subspace top = power_ideal(rep, cls);
    Algebra quot = quotient_algebra(rep, top);
    if (algebra_coclass(quot) != r) continue;
    auto it = by_dim.find(static_cast<int>(quot.dim()));
    if (it == by_dim.end()) continue;
    for (int pid : it->second) {
      if (iso_algebras(quot, g.reps[pid])) {
        v.parent = pid;
        break;
      }
    }
    if (v.parent < 0) {
      throw std::logic_error("quotient class missing from the previous level");
    }
  }
  g.rebuild_children();
  // Edge sanity: every edge drops the dimension by exactly one.
  for (const auto& v : g.vertices) {
    if (v.parent >= 0 && g.vertices[v.parent].dim != v.dim - 1) {
      throw std::logic_error("edge does not drop dimension by one");
    }
  }
  return g;
}

std::vector<int> roots(const CoclassGraph& g) {
  std::vector<int> out;
  for (const auto& v : g.vertices) {
    if (v.parent < 0) out.push_back(v.id);
  }
  return out;
}

namespace {

int subtree_max_dim(const CoclassGraph& g, int v, std::vector<int>& memo) {
  if (memo[v] >= 0) return memo[v];
  int best = g.vertices[v].dim;
  for (int c : g.children[v]) best = std::max(best, subtree_max_dim(g, c, memo));
  return memo[v] = best;
}

}  // namespace

std::vector<int> alive_vertices(const CoclassGraph& g, int horizon) {
  std::vector<int> memo(g.vertices.size(), -1);
  std::vector<int> out;
  for (const auto& v : g.vertices) {
    if (subtree_max_dim(g, v.id, memo) >= horizon) out.push_back(v.id);
  }
  return out;
}

Subtree coclass_tree(const CoclassGraph& g, int vertex) {
  Subtree t;
  t.root = vertex;
  std::vector<int> stack{vertex};
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    t.vertices.push_back(v);
    auto kids = g.children[v];
    std::sort(kids.rbegin(), kids.rend());
    for (int c : kids) stack.push_back(c);
  }
  return t;
}

namespace {

std::string ahu_code(const CoclassGraph& g, int v, int depth) {
  if (depth == 0) return "()";
  std::vector<std::string> parts;
  for (int c : g.children[v]) parts.push_back(ahu_code(g, c, depth - 1));
  std::sort(parts.begin(), parts.end());
  std::string out = "(";
  for (const auto& p : parts) out += p;
  out += ")";
  return out;
}

}  // namespace

RootedTreeCode tree_code(const CoclassGraph& g, int root, int depth) {
  if (depth < 0) throw BadParameter("truncation depth must be >= 0");
  return RootedTreeCode{ahu_code(g, root, depth), depth};
}

std::vector<int> maximal_coclass_trees(const CoclassGraph& g, int horizon) {
  std::vector<int> memo(g.vertices.size(), -1);
  auto alive = [&](int v) { return subtree_max_dim(g, v, memo) >= horizon; };
  auto alive_children = [&](int v) {
    int count = 0;
    for (int c : g.children[v]) {
      if (alive(c)) ++count;
    }
    return count;
  };
  std::vector<int> out;
  for (const auto& v : g.vertices) {
    if (!alive(v.id)) continue;
    // Single alive path below v?
    bool single = true;
    int cur = v.id;
    while (true) {
      if (g.vertices[cur].dim >= horizon) break;
      int next = -1, count = 0;
      for (int c : g.children[cur]) {
        if (alive(c)) {
          ++count;
          next = c;
        }
      }
      if (count == 0) break;
      if (count > 1 && g.vertices[cur].dim + 1 < horizon) {
        single = false;
        break;
      }
      if (count > 1) break;  // ambiguity only at the horizon boundary
      cur = next;
    }
    if (!single) continue;
    if (v.parent < 0 || alive_children(v.parent) > 1) out.push_back(v.id);
  }
  return out;
}

}  // namespace ccsg
