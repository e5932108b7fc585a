#include <json.hpp>

#include <algorithm>
#include <sstream>

#include "ccsg/graph.hpp"

namespace ccsg {

using nlohmann::json;

std::string export_dot(const CoclassGraph& g) {
  std::ostringstream out;
  out << "digraph coclass_graph {\n";
  out << "  rankdir=TB;\n";
  out << "  node [shape=ellipse];\n";
  int maxd = g.max_dim();
  for (int dim = 0; dim <= maxd; ++dim) {
    auto level = g.vertices_of_dim(dim);
    if (level.empty()) continue;
    out << "  { rank=same;";
    for (int v : level) out << " v" << v << ";";
    out << " }\n";
  }
  for (const auto& v : g.vertices) {
    out << "  v" << v.id << " [label=\"d=" << v.dim << " | " << v.label
        << "\"";
    if (!v.commutative) out << ", shape=box";
    out << "];\n";
  }
  for (const auto& v : g.vertices) {
    if (v.parent >= 0) out << "  v" << v.parent << " -> v" << v.id << ";\n";
  }
  out << "}\n";
  return out.str();
}

namespace {

json frac_to_json(const Frac& f) { return json::array({f.num, f.den}); }

json report_to_json(const PeriodicityReport& r) {
  json families = json::array();
  for (const auto& fam : r.families) {
    json coeffs = json::array();
    for (const auto& c : fam.coefficients) coeffs.push_back(frac_to_json(c));
    json samples = json::array();
    for (const auto& [i, y] : fam.samples) samples.push_back(json::array({i, y}));
    families.push_back({{"vertex", fam.vertex},
                        {"coefficients", coeffs},
                        {"samples", samples}});
  }
  return json{{"tree_root", r.tree_root},
              {"defect", r.defect},
              {"period", r.period},
              {"verified_depth", r.verified_depth},
              {"horizon", r.horizon},
              {"strong", r.strong},
              {"families", families},
              {"unresolved", r.unresolved}};
}

PeriodicityReport report_from_json(const json& j) {
  PeriodicityReport r;
  r.tree_root = j.at("tree_root").get<int>();
  r.defect = j.at("defect").get<int>();
  r.period = j.at("period").get<int>();
  r.verified_depth = j.at("verified_depth").get<int>();
  r.horizon = j.at("horizon").get<int>();
  r.strong = j.at("strong").get<bool>();
  for (const auto& fj : j.at("families")) {
    FamilyPolynomial fam;
    fam.vertex = fj.at("vertex").get<int>();
    for (const auto& cj : fj.at("coefficients")) {
      fam.coefficients.push_back(
          Frac(cj.at(0).get<long long>(), cj.at(1).get<long long>()));
    }
    for (const auto& sj : fj.at("samples")) {
      fam.samples.push_back({sj.at(0).get<long long>(), sj.at(1).get<long long>()});
    }
    r.families.push_back(std::move(fam));
  }
  for (const auto& u : j.at("unresolved")) r.unresolved.push_back(u.get<int>());
  return r;
}

json params_to_json(const GraphParams& p) {
  return json{{"coclass", p.coclass},
              {"prime", p.prime},
              {"generators", p.generators},
              {"max_order", p.max_order}};
}

GraphParams params_from_json(const json& j) {
  GraphParams p;
  p.coclass = j.at("coclass").get<int>();
  p.prime = j.at("prime").get<int>();
  p.generators = j.at("generators").get<int>();
  p.max_order = j.at("max_order").get<int>();
  return p;
}

}  // namespace

std::string export_json(const CoclassGraph& g,
                        const std::vector<PeriodicityReport>& reports) {
  json vertices = json::array();
  for (const auto& v : g.vertices) {
    json vj{{"id", v.id},
            {"dim", v.dim},
            {"label", v.label},
            {"commutative", v.commutative},
            {"fingerprint", v.fingerprint},
            {"members", v.members}};
    if (v.parent >= 0) {
      vj["parent"] = v.parent;
    } else {
      vj["parent"] = nullptr;
    }
    vertices.push_back(std::move(vj));
  }
  json reports_j = json::array();
  for (const auto& r : reports) reports_j.push_back(report_to_json(r));
  json out{{"params", params_to_json(g.params)},
           {"vertices", vertices},
           {"reports", reports_j}};
  return out.dump(2) + "\n";
}

CoclassGraph parse_graph_json(const std::string& text) {
  json j = json::parse(text);
  CoclassGraph g;
  g.params = params_from_json(j.at("params"));
  for (const auto& vj : j.at("vertices")) {
    Vertex v;
    v.id = vj.at("id").get<int>();
    v.dim = vj.at("dim").get<int>();
    v.label = vj.at("label").get<int>();
    v.parent = vj.at("parent").is_null() ? -1 : vj.at("parent").get<int>();
    v.commutative = vj.at("commutative").get<bool>();
    v.fingerprint = vj.at("fingerprint").get<std::vector<int>>();
    v.members = vj.at("members").get<std::vector<std::string>>();
    g.vertices.push_back(std::move(v));
  }
  g.rebuild_children();
  return g;
}

std::string export_reports_json(const GraphParams& params,
                                const std::vector<PeriodicityReport>& reports) {
  json reports_j = json::array();
  for (const auto& r : reports) reports_j.push_back(report_to_json(r));
  json out{{"params", params_to_json(params)}, {"reports", reports_j}};
  return out.dump(2) + "\n";
}

std::vector<PeriodicityReport> parse_reports_json(const std::string& text,
                                                  GraphParams* params) {
  json j = json::parse(text);
  if (params) *params = params_from_json(j.at("params"));
  std::vector<PeriodicityReport> out;
  for (const auto& rj : j.at("reports")) out.push_back(report_from_json(rj));
  return out;
}

std::string census_to_jsonl(const Census& census) {
  std::ostringstream out;
  for (const auto& bucket : census.by_order) {
    for (const auto& rec : bucket) {
      json j{{"order", rec.table.order},
             {"zero", 0},
             {"table", std::vector<int>(rec.table.table.begin(),
                                        rec.table.table.end())},
             {"id", rec.id},
             {"origin", rec.origin}};
      out << j.dump() << "\n";
    }
  }
  return out.str();
}

Census census_from_jsonl(const std::string& text) {
  Census census;
  std::istringstream in(text);
  std::string line;
  int max_order = 0;
  std::vector<CensusRecord> records;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    json j = json::parse(line);
    CensusRecord rec;
    int order = j.at("order").get<int>();
    auto entries = j.at("table").get<std::vector<int>>();
    std::vector<std::uint8_t> bytes(entries.begin(), entries.end());
    rec.table = SemigroupTable(order, std::move(bytes));
    rec.id = j.at("id").get<std::string>();
    rec.origin = j.at("origin").get<std::string>();
    max_order = std::max(max_order, order);
    records.push_back(std::move(rec));
  }
  census.max_order = max_order;
  census.by_order.resize(max_order + 1);
  for (auto& rec : records) {
    census.by_order[rec.table.order].push_back(std::move(rec));
  }
  return census;
}

std::string algebra_to_json(const Algebra& a) {
  std::size_t n = a.dim();
  json sc = json::array();
  for (std::size_t i = 0; i < n; ++i) {
    json row = json::array();
    for (std::size_t j = 0; j < n; ++j) {
      json entry = json::array();
      for (std::size_t k = 0; k < n; ++k) entry.push_back(a.sc_at(i, j, k));
      row.push_back(std::move(entry));
    }
    sc.push_back(std::move(row));
  }
  json out{{"p", a.field().p()},
           {"dim", n},
           {"sc", sc},
           {"names", a.basis_names()},
           {"fingerprint", fingerprint(a)}};
  return out.dump(2) + "\n";
}

Algebra algebra_from_json(const std::string& text) {
  json j = json::parse(text);
  unsigned p = j.at("p").get<unsigned>();
  std::size_t n = j.at("dim").get<std::size_t>();
  std::vector<std::uint8_t> sc(n * n * n, 0);
  const auto& scj = j.at("sc");
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t jj = 0; jj < n; ++jj) {
      for (std::size_t k = 0; k < n; ++k) {
        sc[(i * n + jj) * n + k] =
            static_cast<std::uint8_t>(scj.at(i).at(jj).at(k).get<unsigned>());
      }
    }
  }
  std::vector<std::string> names;
  if (j.contains("names")) names = j.at("names").get<std::vector<std::string>>();
  return Algebra(PrimeField(p), n, std::move(sc), std::move(names));
}

}  // namespace ccsg
