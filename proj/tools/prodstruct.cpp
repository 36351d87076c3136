#include <CLI11.hpp>

#include <cmath>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "prodstruct/prodstruct.hpp"

using namespace prodstruct;

namespace {

constexpr int kViolation = 1;
constexpr int kUsage = 2;

struct Options {
  // gen
  std::string family;
  std::vector<long long> params;
  std::vector<std::string> inner;
  std::optional<long long> seed;
  std::string spec;
  std::string out;
  std::string meta;
  // shared
  std::string graph_path;
  std::string decomposition_path;
  std::string method;
  std::string engine = "layer";
  // sep
  std::optional<double> p, q, alpha;
  std::optional<long long> target;
  // partition
  double epsilon = 0.5;
  double c = 2;
  std::optional<double> delta;
  int depth = 2;
  double ell = 2;
  int h = 5;
  double a = 1;
  double gamma = 0.25;
  std::string meta_path;
  // verify
  std::string cert_path;
  // bench
  std::string suite;
  int scale = 0;
  int dmax = 4;
  bool no_time = false;
};

void emit(const std::string& path, const std::string& text) {
  if (path.empty() || path == "-") {
    std::cout << text;
    return;
  }
  std::ofstream f(path);
  if (!f) throw InvalidInput("cannot write " + path);
  f << text;
}

SeparatorEngine pick_engine(const std::string& name) {
  if (name == "layer") return layer_engine();
  if (name == "min-fill") return min_fill_engine();
  throw InvalidInput("unknown engine '" + name + "' (layer, min-fill)");
}

TreeDecomposition load_or_compute(const Options& o, const Graph& g) {
  if (o.decomposition_path.empty()) return heuristic_tree_decomposition(g);
  std::ifstream in(o.decomposition_path);
  if (!in) throw InvalidInput("cannot open " + o.decomposition_path);
  TreeDecomposition td = read_decomposition(in);
  if (auto check = validate_decomposition(g, td); !check.ok()) {
    throw InvalidInput("decomposition: " + check.violations.front().message);
  }
  return td;
}

json instance_meta(const Instance& inst) {
  json m = {{"spec", inst.spec.str()}, {"n", inst.graph.vertex_count()}, {"m", inst.graph.edge_count()}};
  if (inst.forest) m["forest"] = inst.forest->parents();
  if (inst.decomposition) {
    m["decomposition"] = {{"bags", sets_json(inst.decomposition->bags)},
                          {"tree_edges", edges_json(inst.decomposition->tree.edges())}};
  }
  if (inst.known_width) m["known_width"] = *inst.known_width;
  if (!inst.product_pairs.empty()) {
    json pairs = json::array();
    for (const auto& [x, y] : inst.product_pairs) pairs.push_back({x, y});
    m["product_pairs"] = pairs;
  }
  if (inst.bad_news) {
    const auto& b = *inst.bad_news;
    m["bad_news"] = {{"c", b.c}, {"ell", b.ell}, {"d", b.d}, {"h", b.h}, {"part_cap", b.part_cap()}};
  }
  return m;
}

int run_gen(const Options& o) {
  FamilySpec spec;
  if (!o.spec.empty()) {
    spec = parse_family(o.spec);
  } else {
    if (o.family.empty()) throw InvalidInput("gen needs --family or --spec");
    spec.family = o.family;
    spec.params = o.params;
    for (const auto& s : o.inner) spec.inner.push_back(parse_family(s));
    if (o.seed) {
      if (spec.family == "random_tree") {
        spec.params.insert(spec.params.begin() + std::min<std::size_t>(1, spec.params.size()), *o.seed);
      } else if (spec.family == "k_tree") {
        spec.params.push_back(*o.seed);
      } else {
        throw InvalidInput("--seed only applies to random_tree and k_tree");
      }
    }
  }
  const Instance inst = generate(spec);
  std::ostringstream g;
  write_graph(g, inst.graph);
  emit(o.out, g.str());
  const std::string meta = !o.meta.empty() ? o.meta : (o.out.empty() || o.out == "-" ? "" : o.out + ".meta.json");
  if (!meta.empty()) emit(meta, instance_meta(inst).dump(1) + "\n");
  return 0;
}

int run_sep(const Options& o) {
  const Graph g = load_graph(o.graph_path);
  const int n = g.vertex_count();
  SeparatorReport r;
  if (o.method == "balanced") {
    r = balanced_separator(g, load_or_compute(o, g));
    if (o.p || o.q) r = make_report(g, r.S, o.p.value_or(n), o.q.value_or(n / 2));
  } else if (o.method == "fragment") {
    long long target = 0;
    if (o.target) {
      target = *o.target;
    } else if (o.alpha) {
      target = std::max<long long>(1, safe_floor(std::pow(n, *o.alpha)));
    } else {
      throw InvalidInput("fragment needs --target or --alpha");
    }
    const auto fr = fragment(g, pick_engine(o.engine), target);
    r = make_report(g, fr.S, o.p.value_or(n), static_cast<double>(target));
  } else if (o.method == "tree" || o.method == "tw") {
    if (!o.p || !o.q) throw InvalidInput(o.method + " needs --p and --q");
    VertexSet s;
    if (o.method == "tree") {
      const bool integral = std::floor(*o.q) == *o.q;
      s = tree_separator(g, static_cast<int>(*o.p), *o.q, integral ? QMode::Integer : QMode::Real);
    } else {
      s = treewidth_separator(g, normalize(g, load_or_compute(o, g)), *o.p, *o.q);
    }
    r = make_report(g, s, *o.p, *o.q);
  } else {
    throw InvalidInput("unknown sep method '" + o.method + "' (balanced, fragment, tree, tw)");
  }
  emit(o.out, to_json(r).dump() + "\n");
  return r.meets_contract ? 0 : kViolation;
}

ProductEmbedding embedding_from_meta(const std::string& path, const Graph& g, SeparabilityStructure& st,
                                     std::optional<TreeDecomposition>& h_td) {
  const json meta = read_json_file(path);
  const FamilySpec spec = parse_family(meta.at("spec").get<std::string>());
  if (spec.family != "strong_product") throw InvalidInput("separable needs a strong_product instance");
  const Instance h = generate(spec.inner[0]);
  const Instance j = generate(spec.inner[1]);
  ProductEmbedding e;
  e.H = h.graph;
  e.J = j.graph;
  for (Vertex x = 0; x < h.graph.vertex_count(); ++x) {
    for (Vertex y = 0; y < j.graph.vertex_count(); ++y) e.coords.emplace_back(x, y);
  }
  if (static_cast<int>(e.coords.size()) != g.vertex_count()) throw InvalidInput("meta does not match the graph");
  h_td = h.decomposition ? *h.decomposition : heuristic_tree_decomposition(h.graph);
  e.h_decomposition = h_td;
  if (spec.inner[1].family == "path") {
    st.kind = SeparabilityStructure::Kind::PathBlowup;
    st.coords.path_lengths = {j.graph.vertex_count()};
    st.coords.clique = 1;
    for (Vertex y = 0; y < j.graph.vertex_count(); ++y) st.coords.coords.push_back({y, 0});
  } else if (j.forest) {
    st.kind = SeparabilityStructure::Kind::Tree;
    st.delta = std::max(3, j.graph.max_degree());
  } else {
    throw InvalidInput("separable supports a path or tree second factor");
  }
  return e;
}

int run_partition(const Options& o) {
  const Graph g = load_graph(o.graph_path);
  const int n = g.vertex_count();
  const ClassGuarantee cg{o.c, o.epsilon};
  std::optional<Certificate> cert;
  if (o.method == "star") {
    cert = forest_certificate(star_partition(g, pick_engine(o.engine), cg), 2);
  } else if (o.method == "td") {
    int d = o.depth;
    if (o.delta) d = choose_depth(std::max(n, 1), o.epsilon, o.c, DepthSchedule::FixedDelta, *o.delta).d;
    cert = forest_certificate(tdd_partition(g, pick_engine(o.engine), cg, d), d);
  } else if (o.method == "tw-td") {
    cert = forest_certificate(treewidth_tdd_partition(g, normalize(g, load_or_compute(o, g)), o.depth), o.depth);
  } else if (o.method == "expansion" || o.method == "polyexp") {
    ExpansionOutcome outcome;
    if (o.method == "expansion") {
      outcome = expansion_partition(g, o.ell, o.h);
    } else {
      PolyexpReport rep = polyexp_partition(g, o.a, o.c, o.gamma);
      std::cerr << "polyexp: eps=" << rep.eps << " l=" << rep.ell << " d=" << rep.d << " h=" << rep.h
                << (rep.vacuous ? " (bounds vacuous at this n)" : "") << "\n";
      outcome = std::move(*rep.outcome);
    }
    if (const auto* pv = std::get_if<PromiseViolation>(&outcome)) {
      std::cerr << "promise violation: " << pv->model.branch_sets.size() << " branch sets at depth "
                << pv->model.depth << "\n";
      emit(o.out, to_json(pv->model).dump() + "\n");
      return 0;
    }
    const auto& res = std::get<ExpansionResult>(outcome);
    const auto merged = dominate_merge(res, g);
    const double bound = std::max<double>(static_cast<double>(res.part_cap), static_cast<double>(res.Y.size()));
    cert = decomposition_certificate(merged.partition, merged.host_decomposition, res.h - 1,
                                     "max{(h-1)d+1,|Y|}=max{" + std::to_string(res.part_cap) + "," +
                                         std::to_string(res.Y.size()) + "}",
                                     bound);
  } else if (o.method == "separable") {
    if (o.meta_path.empty()) throw InvalidInput("separable needs --meta (sidecar of a strong_product instance)");
    SeparabilityStructure st;
    std::optional<TreeDecomposition> h_td;
    const ProductEmbedding e = embedding_from_meta(o.meta_path, g, st, h_td);
    std::vector<double> w(e.J.vertex_count(), 0);
    for (const auto& [x, y] : e.coords) w[y] += 1;
    const auto report = weighted_separator(WeightedGraph(e.J, w), st);
    const auto res = separable_transform(g, e, structure_provider(st));
    const double bound = std::max(report.weight_bound, report.component_bound);
    cert = decomposition_certificate(res.partition, res.host_decomposition, h_td->width() + 1,
                                     "weighted separator bound", bound);
  } else {
    throw InvalidInput("unknown partition method '" + o.method + "'");
  }
  emit(o.out, to_json(*cert).dump() + "\n");
  const auto check = check_certificate(g, *cert);
  for (const auto& p : check.problems) std::cerr << "violation: " << p << "\n";
  return check.ok() ? 0 : kViolation;
}

int run_verify(const Options& o) {
  const Graph g = load_graph(o.graph_path);
  const json j = read_json_file(o.cert_path);
  if (j.contains("kind") && j["kind"] == "shallow-model") {
    const ShallowModel m = shallow_model_from_json(j);
    const bool ok = verify_shallow_model(g, m);
    std::cout << (ok ? "ok" : "violation") << ": " << m.branch_sets.size() << "-clique model of depth " << m.depth
              << "\n";
    return ok ? 0 : kViolation;
  }
  const auto check = check_certificate(g, certificate_from_json(j));
  for (const auto& p : check.problems) std::cout << "violation: " << p << "\n";
  if (check.ok()) std::cout << "ok: width " << check.partition.width << "\n";
  return check.ok() ? 0 : kViolation;
}

int run_bench(const Options& o) {
  const auto records = bench_suite(o.suite, o.scale, o.dmax);
  std::ostringstream csv;
  write_csv(csv, records, !o.no_time);
  emit(o.out, csv.str());
  const bool all = std::all_of(records.begin(), records.end(), [](const RunRecord& r) { return r.pass; });
  return all ? 0 : kViolation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"prodstruct: product-structure partitions with checkable certificates"};
  app.require_subcommand(1);
  Options o;

  auto* gen = app.add_subcommand("gen", "generate a graph family");
  gen->add_option("--family", o.family, "family tag, e.g. grid");
  gen->add_option("--params", o.params, "integer parameters");
  gen->add_option("--inner", o.inner, "nested family specs, e.g. path(3)");
  gen->add_option("--seed", o.seed, "seed for random_tree and k_tree");
  gen->add_option("--spec", o.spec, "full spec text, e.g. strong_product(path(3),complete(2))");
  gen->add_option("--out", o.out, "graph file (stdout if omitted)");
  gen->add_option("--meta", o.meta, "metadata sidecar JSON (default <out>.meta.json)");

  auto* sep = app.add_subcommand("sep", "compute a separator");
  sep->add_option("graph", o.graph_path)->required();
  sep->add_option("--method", o.method)->required()->check(CLI::IsMember({"balanced", "fragment", "tree", "tw"}));
  sep->add_option("--p", o.p);
  sep->add_option("--q", o.q);
  sep->add_option("--target", o.target);
  sep->add_option("--alpha", o.alpha);
  sep->add_option("--decomposition", o.decomposition_path);
  sep->add_option("--engine", o.engine);
  sep->add_option("--out", o.out);

  auto* part = app.add_subcommand("partition", "compute an H-partition certificate");
  part->set_help_flag("--help", "print this help message and exit");
  part->add_option("graph", o.graph_path)->required();
  part->add_option("--method", o.method)
      ->required()
      ->check(CLI::IsMember({"star", "td", "tw-td", "expansion", "polyexp", "separable"}));
  part->add_option("--epsilon", o.epsilon);
  part->add_option("--c", o.c);
  part->add_option("--delta", o.delta);
  part->add_option("--depth", o.depth);
  part->add_option("--ell", o.ell);
  part->add_option("--h", o.h);
  part->add_option("--a", o.a);
  part->add_option("--gamma", o.gamma);
  part->add_option("--decomposition", o.decomposition_path);
  part->add_option("--engine", o.engine);
  part->add_option("--meta", o.meta_path);
  part->add_option("--out", o.out);

  auto* verify = app.add_subcommand("verify", "re-check a certificate against a graph");
  verify->add_option("graph", o.graph_path)->required();
  verify->add_option("certificate", o.cert_path)->required();

  auto* bench = app.add_subcommand("bench", "run a bound-checking suite");
  bench->add_option("--suite", o.suite)->required()->check(CLI::IsMember(bench_suites()));
  bench->add_option("--scale", o.scale);
  bench->add_option("--dmax", o.dmax);
  bench->add_flag("--no-time", o.no_time, "write 0 for timings (byte-stable output)");
  bench->add_option("--out", o.out);

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : kUsage;
  }
  try {
    if (*gen) return run_gen(o);
    if (*sep) return run_sep(o);
    if (*part) return run_partition(o);
    if (*verify) return run_verify(o);
    if (*bench) return run_bench(o);
  } catch (const InvalidInput& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const FormatError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  } catch (const Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kViolation;
  }
  return kUsage;
}
