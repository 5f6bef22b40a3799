#include "tvnrel/pipeline.hpp"

#include <chrono>
#include <stdexcept>

#include "tvnrel/oracle.hpp"
#include "tvnrel/superset.hpp"

namespace tvnrel {

OrderPolicy parse_order_policy(std::string_view text) {
  if (text == "bfs")
    return OrderPolicy::bfs;
  if (text == "file")
    return OrderPolicy::file;
  throw std::invalid_argument("unknown order: " + std::string(text));
}

EdgeOrder make_order(const TemporalGraph &g, OrderPolicy policy) {
  return policy == OrderPolicy::bfs ? bfs_edge_order(g) : EdgeOrder::identity(g.edge_count());
}

namespace {

using clock = std::chrono::steady_clock;

double seconds_since(clock::time_point start) {
  return std::chrono::duration<double>(clock::now() - start).count();
}

std::vector<EdgeSet> to_edge_sets(const std::vector<EdgeSet> &steps, const EdgeOrder &order) {
  std::vector<EdgeSet> out;
  out.reserve(steps.size());
  for (const EdgeSet &s : steps)
    out.push_back(order.to_edges(s));
  std::sort(out.begin(), out.end());
  return out;
}

} // namespace

std::vector<EdgeSet> Compilation::journey_sets(std::size_t limit) const {
  return to_edge_sets(store.enumerate_sets(journeys, m, DiagramKind::zdd, limit), order);
}

std::vector<EdgeSet> Compilation::stres_sets(std::size_t limit) const {
  return to_edge_sets(store.enumerate_sets(stres, m, stres_kind, limit), order);
}

Compilation compile(const TemporalGraph &g, Mode mode, Method method, const EdgeOrder &order,
                    const Deadline &deadline) {
  if (method == Method::oracle)
    throw std::invalid_argument("compile: the oracle method builds no diagrams");
  Compilation c{.store = DiagramStore{}, .order = order, .m = 0, .journeys = BOT, .stres = BOT,
                .stres_kind = DiagramKind::bdd, .fbs = {}, .timings = {}};
  c.m = static_cast<Var>(g.edge_count());
  c.store.set_deadline(deadline);

  auto start = clock::now();
  FbsOptions fbs_options;
  fbs_options.deadline = deadline;
  c.journeys = build_journey_zdd(c.store, g, order, mode, &c.fbs, fbs_options);
  c.timings.journeys_s = seconds_since(start);

  start = clock::now();
  if (method == Method::b) {
    c.stres = superset_to_bdd(c.store, c.journeys, c.m, deadline);
    c.stres_kind = DiagramKind::bdd;
  } else {
    c.stres = superset_to_zdd(c.store, c.journeys, c.m, deadline);
    c.stres_kind = DiagramKind::zdd;
  }
  c.timings.superset_s = seconds_since(start);
  return c;
}

ReliabilityReport compute_reliability(const TemporalGraph &g, Mode mode, Method method,
                                      const RunOptions &options) {
  ReliabilityReport report;
  report.mode = mode;
  report.method = method;
  report.edge_count = g.edge_count();
  report.vertex_count = g.vertex_count();
  const auto start = clock::now();

  if (method == Method::oracle) {
    auto t0 = clock::now();
    report.journey_count = oracle::brute_journeys(g, mode).size();
    report.timings.journeys_s = seconds_since(t0);
    t0 = clock::now();
    report.stres_count = oracle::brute_stres(g, mode, options.oracle_max_edges).size();
    report.timings.superset_s = seconds_since(t0);
    t0 = clock::now();
    report.sigma = oracle::brute_reliability(g, mode, options.oracle_max_edges);
    report.timings.reliability_s = seconds_since(t0);
    report.timings.total_s = seconds_since(start);
    return report;
  }

  const EdgeOrder order = make_order(g, options.order);
  Compilation c = compile(g, mode, method, order, options.deadline);
  report.timings = c.timings;

  const auto t0 = clock::now();
  const std::vector<double> probs = order.step_probabilities(g);
  report.sigma = c.stres_kind == DiagramKind::bdd ? reliability_bdd(c.store, c.stres, probs, c.m)
                                                  : reliability_zdd(c.store, c.stres, probs, c.m);
  report.timings.reliability_s = seconds_since(t0);

  report.journey_count = c.store.count_sat(c.journeys, c.m, DiagramKind::zdd);
  report.stres_count = c.store.count_sat(c.stres, c.m, c.stres_kind);
  report.node_counts.journey_zdd = c.store.node_count(c.journeys);
  report.node_counts.stres_diagram = c.store.node_count(c.stres);
  report.node_counts.fbs_states = c.fbs.total_nodes();
  report.bound_violations = c.fbs.bound_violations;
  report.timings.total_s = seconds_since(start);
  return report;
}

} // namespace tvnrel
