#pragma once

#include <algorithm>
#include <chrono>
#include <functional>
#include <future>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "prodstruct/certificate.hpp"
#include "prodstruct/decomposition.hpp"
#include "prodstruct/expansion.hpp"
#include "prodstruct/instances.hpp"
#include "prodstruct/partition.hpp"
#include "prodstruct/separators.hpp"

namespace prodstruct {

struct RunRecord {
  std::string instance;
  int n = 0;
  std::string operation;
  std::string bound_formula;
  double bound_value = 0;
  double achieved = 0;
  bool pass = false;
  double ms = 0;
};

inline Certificate forest_certificate(const BoundedPartition& bp, int max_height) {
  Certificate c = make_certificate(bp.partition, bp.formula, bp.bound);
  c.forest = bp.forest;
  c.max_height = max_height;
  return c;
}

inline Certificate decomposition_certificate(HPartition p, TreeDecomposition td, std::optional<int> max_width,
                                             std::string formula, double bound) {
  Certificate c = make_certificate(std::move(p), std::move(formula), bound);
  c.decomposition = std::move(td);
  c.max_width = max_width;
  return c;
}

/// Record for a certificate: pass is decided by full re-verification.
inline RunRecord certificate_record(const std::string& instance, const Graph& g, const std::string& operation,
                                    const Certificate& c, double ms) {
  const auto check = check_certificate(g, c);
  return {instance, g.vertex_count(), operation, c.formula, c.bound, static_cast<double>(check.partition.width),
          check.ok(), ms};
}

namespace detail {

template <class F>
double time_ms(F&& f) {
  const auto t0 = std::chrono::steady_clock::now();
  f();
  return std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
}

using Task = std::function<std::vector<RunRecord>()>;

inline std::vector<Task> star_tasks(int scale) {
  std::vector<Task> tasks;
  for (int side = 8; side <= scale; side *= 2) {
    tasks.push_back([side] {
      const Instance inst = generate("grid(" + std::to_string(side) + "," + std::to_string(side) + ")");
      BoundedPartition bp;
      const double ms = time_ms([&] { bp = star_partition(inst.graph, layer_engine(), {2, 0.5}); });
      return std::vector<RunRecord>{certificate_record(inst.spec.str(), inst.graph, "star(c=2,eps=0.5)",
                                                       forest_certificate(bp, 2), ms)};
    });
  }
  return tasks;
}

inline std::vector<Task> td_tasks(int scale, int dmax) {
  std::vector<Task> tasks;
  for (int side = 8; side * side <= scale; side *= 2) {
    for (int d = 2; d <= dmax; ++d) {
      tasks.push_back([side, d] {
        const Instance inst = generate("grid(" + std::to_string(side) + "," + std::to_string(side) + ")");
        BoundedPartition bp;
        const double ms = time_ms([&] { bp = tdd_partition(inst.graph, layer_engine(), {2, 0.5}, d); });
        return std::vector<RunRecord>{certificate_record(inst.spec.str(), inst.graph,
                                                         "td(c=2,eps=0.5,d=" + std::to_string(d) + ")",
                                                         forest_certificate(bp, d), ms)};
      });
    }
  }
  for (int n = 256; n <= scale; n *= 4) {
    for (int d = 2; d <= dmax; ++d) {
      tasks.push_back([n, d] {
        const Instance inst = generate("k_tree(" + std::to_string(n) + ",2," + std::to_string(n + d) + ")");
        BoundedPartition bp;
        const double ms = time_ms([&] { bp = tdd_partition(inst.graph, min_fill_engine(), {3, 0.9}, d); });
        return std::vector<RunRecord>{certificate_record(inst.spec.str(), inst.graph,
                                                         "td(c=3,eps=0.9,d=" + std::to_string(d) + ")",
                                                         forest_certificate(bp, d), ms)};
      });
    }
  }
  return tasks;
}

inline std::vector<Task> tw_td_tasks(int scale, int dmax) {
  std::vector<Task> tasks;
  for (int k = 1; k <= 3; ++k) {
    for (int n = 125; n <= scale; n *= 4) {
      for (int d = 1; d <= dmax; ++d) {
        tasks.push_back([k, n, d] {
          const std::string spec = k == 1 ? "random_tree(" + std::to_string(n) + "," + std::to_string(7 * n + d) + ")"
                                          : "k_tree(" + std::to_string(n) + "," + std::to_string(k) + "," +
                                                std::to_string(7 * n + d) + ")";
          const Instance inst = generate(spec);
          const TreeDecomposition td =
              inst.decomposition ? *inst.decomposition : heuristic_tree_decomposition(inst.graph);
          BoundedPartition bp;
          const double ms =
              time_ms([&] { bp = treewidth_tdd_partition(inst.graph, normalize(inst.graph, td), d); });
          return std::vector<RunRecord>{certificate_record(inst.spec.str(), inst.graph,
                                                           "tw-td(k=" + std::to_string(k) + ",d=" +
                                                               std::to_string(d) + ")",
                                                           forest_certificate(bp, d), ms)};
        });
      }
    }
  }
  for (int n = 16; n * 4 <= scale && n <= 1024; n *= 4) {
    for (int d = 1; d <= dmax; ++d) {
      tasks.push_back([n, d] {
        const Instance inst = generate("path(" + std::to_string(n) + ")");
        BoundedPartition bp;
        const double ms = time_ms([&] { bp = treewidth_tdd_partition(inst.graph, normalize(inst.graph, *inst.decomposition), d); });
        RunRecord r = certificate_record(inst.spec.str(), inst.graph, "tw-td(k=1,d=" + std::to_string(d) + ")",
                                         forest_certificate(bp, d), ms);
        const long long m = bp.partition.width();
        RunRecord converse = r;
        converse.operation = "path-converse(d=" + std::to_string(d) + ")";
        converse.bound_formula = "(2*" + std::to_string(m) + ")^" + std::to_string(d);
        converse.bound_value = std::pow(2.0 * m, d);
        converse.achieved = n;
        converse.pass = path_lower_bound_check(n, d, m);
        return std::vector<RunRecord>{r, converse};
      });
    }
  }
  return tasks;
}

inline std::vector<Task> expansion_tasks(int scale) {
  std::vector<Task> tasks;
  for (int side = 4; side <= scale; side *= 2) {
    for (int ell : {2, 4}) {
      tasks.push_back([side, ell] {
        const Instance inst = generate("grid(" + std::to_string(side) + "," + std::to_string(side) + ")");
        const Graph& g = inst.graph;
        ExpansionOutcome out;
        const double ms = time_ms([&] { out = expansion_partition(g, ell, 5); });
        const std::string op = "expansion(l=" + std::to_string(ell) + ",h=5)";
        if (!std::holds_alternative<ExpansionResult>(out)) {
          return std::vector<RunRecord>{{inst.spec.str(), g.vertex_count(), op, "promise", 0, 1, false, ms}};
        }
        const auto& res = std::get<ExpansionResult>(out);
        const auto check = verify_expansion(g, res);
        const int n = g.vertex_count();
        return std::vector<RunRecord>{
            {inst.spec.str(), n, op + ":part", "(h-1)*d+1=(5-1)*" + std::to_string(res.d) + "+1",
             static_cast<double>(res.part_cap), static_cast<double>(res.partition.width()),
             check.certificate.valid && check.cap_ok, ms},
            {inst.spec.str(), n, op + ":Y", "n/l=" + std::to_string(n) + "/" + std::to_string(ell),
             static_cast<double>(n) / ell, static_cast<double>(res.Y.size()), check.certificate.valid && check.y_ok, ms},
            {inst.spec.str(), n, op + ":tw", "h-2=3", 3, static_cast<double>(res.host_tw_witness.width()),
             check.certificate.valid && check.tw_ok, ms}};
      });
    }
  }
  return tasks;
}

}  // namespace detail

inline const std::vector<std::string>& bench_suites() {
  static const std::vector<std::string> names{"star", "td", "tw-td", "expansion"};
  return names;
}

inline int default_scale(const std::string& suite) {
  if (suite == "star") return 64;
  if (suite == "expansion") return 32;
  if (suite == "td") return 4096;
  return 2000;
}

/// Runs every task of a suite concurrently; records come back sorted by
/// (n, instance, operation).
inline std::vector<RunRecord> bench_suite(const std::string& name, int scale = 0, int dmax = 4) {
  if (scale <= 0) scale = default_scale(name);
  if (dmax < 1) throw InvalidInput("bench: dmax must be >= 1");
  std::vector<detail::Task> tasks;
  if (name == "star") {
    tasks = detail::star_tasks(scale);
  } else if (name == "td") {
    tasks = detail::td_tasks(scale, dmax);
  } else if (name == "tw-td") {
    tasks = detail::tw_td_tasks(scale, dmax);
  } else if (name == "expansion") {
    tasks = detail::expansion_tasks(scale);
  } else {
    throw InvalidInput("unknown bench suite '" + name + "'");
  }
  std::vector<std::future<std::vector<RunRecord>>> futures;
  for (auto& t : tasks) futures.push_back(std::async(std::launch::async, t));
  std::vector<RunRecord> out;
  for (auto& f : futures) {
    auto recs = f.get();
    out.insert(out.end(), recs.begin(), recs.end());
  }
  std::stable_sort(out.begin(), out.end(), [](const RunRecord& a, const RunRecord& b) {
    return std::tie(a.n, a.instance, a.operation) < std::tie(b.n, b.instance, b.operation);
  });
  return out;
}

inline std::string csv_field(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string q = "\"";
  for (char ch : s) q += ch == '"' ? std::string("\"\"") : std::string(1, ch);
  return q + "\"";
}

/// ms is excluded when `with_time` is false so output can be compared byte for byte.
inline void write_csv(std::ostream& out, const std::vector<RunRecord>& records, bool with_time = true) {
  out << "instance,n,operation,bound_formula,bound_value,achieved,pass,ms\n";
  for (const auto& r : records) {
    std::ostringstream bound;
    bound.precision(6);
    bound << std::fixed << r.bound_value;
    std::ostringstream ms;
    ms.precision(3);
    ms << std::fixed << (with_time ? r.ms : 0.0);
    out << csv_field(r.instance) << ',' << r.n << ',' << csv_field(r.operation) << ',' << csv_field(r.bound_formula)
        << ',' << bound.str() << ',' << r.achieved << ',' << (r.pass ? "true" : "false") << ',' << ms.str() << '\n';
  }
}

}  // namespace prodstruct
