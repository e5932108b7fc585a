#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ccsg/algebra.hpp"
#include "ccsg/census.hpp"
#include "ccsg/util.hpp"

namespace ccsg {

struct GraphParams {
  int coclass = 0;
  int prime = 2;
  int generators = 1;
  int max_order = 0;

  bool operator==(const GraphParams&) const = default;
};

struct Vertex {
  int id = 0;
  int dim = 0;
  int label = 0;
  int parent = -1;  // -1 = root
  bool commutative = false;
  Fingerprint fingerprint;
  std::vector<std::string> members;  // semigroup ids realising this algebra
};

/// Labelled rooted forest of algebra isomorphism classes. Vertices are
/// grouped by dimension; every edge raises the dimension by exactly one.
struct CoclassGraph {
  GraphParams params;
  std::vector<Vertex> vertices;
  std::vector<std::vector<int>> children;

  // In-memory only; empty when the graph was parsed from JSON.
  std::vector<Algebra> reps;

  int max_dim() const;
  std::vector<int> vertices_of_dim(int dim) const;
  void rebuild_children();
};

struct Subtree {
  int root = -1;
  std::vector<int> vertices;  // preorder
};

struct RootedTreeCode {
  std::string code;
  int depth = 0;

  bool operator==(const RootedTreeCode&) const = default;
};

struct FamilyPolynomial {
  int vertex = -1;  // family base inside T(A_l) \ T(A_{l+k})
  std::vector<Frac> coefficients;
  std::vector<std::pair<long long, long long>> samples;  // (i, label)
};

struct PeriodicityReport {
  int tree_root = -1;
  int defect = 0;   // l
  int period = 0;   // k
  int verified_depth = 0;
  int horizon = 0;
  bool strong = false;
  std::vector<FamilyPolynomial> families;
  std::vector<int> unresolved;  // family bases without a polynomial fit
};

CoclassGraph build_graph(int r, int p, int d, int max_order,
                         unsigned workers = 0);

/// Same as above, but reusing an already-built census (the census is
/// field-independent, so one census serves every prime).
CoclassGraph build_graph(const Census& census, int p, unsigned workers = 0);

std::vector<int> roots(const CoclassGraph& g);

/// Vertices whose subtree reaches dimension >= horizon.
std::vector<int> alive_vertices(const CoclassGraph& g, int horizon);

Subtree coclass_tree(const CoclassGraph& g, int vertex);

/// AHU canonical code of the unlabeled subtree truncated at the given depth.
RootedTreeCode tree_code(const CoclassGraph& g, int root, int depth);

/// Roots of the maximal coclass trees: alive vertices whose subtree carries
/// a single alive path and whose parent (if any) branches.
std::vector<int> maximal_coclass_trees(const CoclassGraph& g, int horizon);

/// Searches (l, k) in lexicographic order for the smallest pair whose
/// truncated subtree codes agree at every jointly available depth and whose
/// label families all admit polynomials of degree <= degree_bound; when no
/// pair is strongly periodic the smallest weakly periodic pair is reported
/// with strong = false. horizon < 0 means the maximal built dimension.
PeriodicityReport detect_periodicity(const CoclassGraph& g, int tree_root,
                                     int max_defect, int max_period,
                                     int degree_bound = 2, int horizon = -1);

std::string export_dot(const CoclassGraph& g);
std::string export_json(const CoclassGraph& g,
                        const std::vector<PeriodicityReport>& reports = {});
CoclassGraph parse_graph_json(const std::string& text);

std::string export_reports_json(const GraphParams& params,
                                const std::vector<PeriodicityReport>& reports);
std::vector<PeriodicityReport> parse_reports_json(const std::string& text,
                                                  GraphParams* params = nullptr);

std::string census_to_jsonl(const Census& census);
Census census_from_jsonl(const std::string& text);

std::string algebra_to_json(const Algebra& a);
Algebra algebra_from_json(const std::string& text);

}  // namespace ccsg
