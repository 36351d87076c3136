#pragma once

#include <cmath>
#include <fstream>
#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "prodstruct/decomposition.hpp"
#include "prodstruct/errors.hpp"
#include "prodstruct/expansion.hpp"
#include "prodstruct/forest.hpp"
#include "prodstruct/partition.hpp"
#include "prodstruct/separators.hpp"

namespace prodstruct {

using json = nlohmann::json;

/// On-disk form of an H-partition with its witness and the bound it claims.
struct Certificate {
  HPartition partition;
  int width = 0;
  std::optional<RootedForest> forest;
  std::optional<int> max_height;
  std::optional<TreeDecomposition> decomposition;
  std::optional<int> max_width;
  std::optional<VertexSet> clique;
  std::string formula;
  double bound = 0;
  bool meets_bound = false;
};

inline bool within(double achieved, double bound) { return achieved <= bound * (1 + 1e-12) + 1e-9; }

inline Certificate make_certificate(HPartition p, std::string formula, double bound) {
  Certificate c;
  c.width = p.width();
  c.partition = std::move(p);
  c.formula = std::move(formula);
  c.bound = bound;
  c.meets_bound = within(c.width, bound);
  return c;
}

inline json sets_json(const std::vector<VertexSet>& sets) {
  json a = json::array();
  for (const auto& s : sets) a.push_back(s.members());
  return a;
}

inline json edges_json(const std::vector<Edge>& edges) {
  json a = json::array();
  for (const auto& [u, v] : edges) a.push_back({u, v});
  return a;
}

inline json to_json(const Certificate& c) {
  json w;
  if (c.forest) {
    w = {{"kind", "forest"}, {"parent", c.forest->parents()}};
    if (c.max_height) w["max_height"] = *c.max_height;
  } else if (c.decomposition) {
    w = {{"kind", "decomposition"}, {"bags", sets_json(c.decomposition->bags)},
         {"tree_edges", edges_json(c.decomposition->tree.edges())}};
    if (c.max_width) w["max_width"] = *c.max_width;
  } else if (c.clique) {
    w = {{"kind", "clique"}, {"members", c.clique->members()}};
  } else {
    w = {{"kind", "none"}};
  }
  return {{"parts", sets_json(c.partition.parts)},
          {"host_edges", edges_json(c.partition.host.edges())},
          {"width", c.width},
          {"witness", w},
          {"bound", {{"formula", c.formula}, {"value", c.bound}}},
          {"meets_bound", c.meets_bound}};
}

namespace detail {

inline std::vector<VertexSet> sets_from(const json& a, const char* what) {
  if (!a.is_array()) throw FormatError(std::string(what) + " must be an array of arrays");
  std::vector<VertexSet> out;
  for (const auto& s : a) {
    const auto raw = s.get<std::vector<Vertex>>();
    VertexSet vs(raw);
    if (vs.size() != static_cast<int>(raw.size())) throw FormatError(std::string(what) + " repeats an id inside a set");
    out.push_back(std::move(vs));
  }
  return out;
}

inline std::vector<Edge> edges_from(const json& a, const char* what) {
  if (!a.is_array()) throw FormatError(std::string(what) + " must be an array of pairs");
  std::vector<Edge> out;
  for (const auto& e : a) {
    if (!e.is_array() || e.size() != 2) throw FormatError(std::string(what) + " entries must be pairs");
    out.emplace_back(e[0].get<Vertex>(), e[1].get<Vertex>());
  }
  return out;
}

}  // namespace detail

inline Certificate certificate_from_json(const json& j) {
  try {
    Certificate c;
    c.partition.parts = detail::sets_from(j.at("parts"), "parts");
    const int t = static_cast<int>(c.partition.parts.size());
    const auto host_edges = detail::edges_from(j.at("host_edges"), "host_edges");
    for (const auto& [a, b] : host_edges) {
      if (a < 0 || b < 0 || a >= t || b >= t) throw FormatError("host edge names an unknown part");
    }
    c.partition.host = Graph::build(t, host_edges);
    c.width = j.at("width").get<int>();
    const json& w = j.at("witness");
    const std::string kind = w.at("kind").get<std::string>();
    if (kind == "forest") {
      c.forest = RootedForest(w.at("parent").get<std::vector<Vertex>>());
      if (w.contains("max_height")) c.max_height = w["max_height"].get<int>();
    } else if (kind == "decomposition") {
      c.decomposition = TreeDecomposition::make(detail::sets_from(w.at("bags"), "bags"),
                                                detail::edges_from(w.at("tree_edges"), "tree_edges"));
      if (w.contains("max_width")) c.max_width = w["max_width"].get<int>();
    } else if (kind == "clique") {
      c.clique = VertexSet(w.at("members").get<std::vector<Vertex>>());
    } else if (kind != "none") {
      throw FormatError("unknown witness kind '" + kind + "'");
    }
    c.formula = j.at("bound").at("formula").get<std::string>();
    c.bound = j.at("bound").at("value").get<double>();
    c.meets_bound = j.at("meets_bound").get<bool>();
    return c;
  } catch (const json::exception& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  } catch (const InvalidInput& e) {
    throw FormatError(std::string("certificate: ") + e.what());
  }
}

/// Full re-verification from raw data: partition, host edges, witness,
/// claimed width and the claimed bound.
struct CertificateCheck {
  PartitionCertificate partition;
  std::vector<std::string> problems;
  [[nodiscard]] bool ok() const { return problems.empty(); }
};

inline CertificateCheck check_certificate(const Graph& g, const Certificate& c) {
  CertificateCheck out;
  out.partition = verify_hpartition(g, c.partition);
  if (c.forest) {
    attach_forest(out.partition, c.partition, *c.forest);
    const int height = c.forest->vertex_height();
    if (c.max_height && height > *c.max_height) {
      out.problems.push_back("forest height " + std::to_string(height) + " exceeds " + std::to_string(*c.max_height));
    }
  }
  if (c.decomposition) {
    attach_decomposition(out.partition, c.partition, *c.decomposition);
    if (c.max_width && c.decomposition->width() > *c.max_width) {
      out.problems.push_back("host decomposition width " + std::to_string(c.decomposition->width()) + " exceeds " +
                             std::to_string(*c.max_width));
    }
  }
  if (c.clique) attach_clique(out.partition, c.partition, *c.clique);
  for (const auto& v : out.partition.violations) out.problems.push_back(std::string(to_string(v.kind)) + ": " + v.message);
  if (c.width != out.partition.width) {
    out.problems.push_back("claimed width " + std::to_string(c.width) + " but largest part has " +
                           std::to_string(out.partition.width));
  }
  const bool meets = within(out.partition.width, c.bound);
  if (c.meets_bound != meets) out.problems.push_back("meets_bound flag disagrees with the recomputed value");
  if (!meets) {
    out.problems.push_back("width " + std::to_string(out.partition.width) + " exceeds bound " + c.formula + " = " +
                           std::to_string(c.bound));
  }
  return out;
}

inline json to_json(const ShallowModel& m) {
  return {{"kind", "shallow-model"}, {"depth", m.depth}, {"centers", m.centers}, {"branch_sets", sets_json(m.branch_sets)}};
}

inline ShallowModel shallow_model_from_json(const json& j) {
  try {
    ShallowModel m;
    m.depth = j.at("depth").get<int>();
    m.branch_sets = detail::sets_from(j.at("branch_sets"), "branch_sets");
    m.centers = j.at("centers").get<std::vector<Vertex>>();
    return m;
  } catch (const json::exception& e) {
    throw FormatError(std::string("shallow model: ") + e.what());
  }
}

inline json to_json(const SeparatorReport& r) {
  return {{"S", r.S.members()},          {"size", r.S.size()},         {"max_component", r.max_component},
          {"target_p", r.target_p},      {"target_q", r.target_q},     {"meets_contract", r.meets_contract}};
}

inline json read_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput("cannot open " + path);
  try {
    return json::parse(in);
  } catch (const json::exception& e) {
    throw FormatError(path + ": " + e.what());
  }
}

}  // namespace prodstruct
