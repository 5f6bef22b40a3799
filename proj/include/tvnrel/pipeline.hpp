/// @file pipeline.hpp
/// @brief Journey ZDD -> reachable-subset diagram -> reliability, with stage
/// timings and node counts.

#pragma once

#include <optional>
#include <string_view>

#include "tvnrel/dd.hpp"
#include "tvnrel/deadline.hpp"
#include "tvnrel/fbsje.hpp"
#include "tvnrel/reliability.hpp"
#include "tvnrel/temporal_graph.hpp"

namespace tvnrel {

enum class OrderPolicy { bfs, file };
OrderPolicy parse_order_policy(std::string_view text);
EdgeOrder make_order(const TemporalGraph &g, OrderPolicy policy);

/// Diagrams produced for one instance. Variables are processing steps of
/// `order`.
struct Compilation {
  DiagramStore store;
  EdgeOrder order;
  Var m = 0;
  NodeRef journeys = BOT;
  NodeRef stres = BOT;
  DiagramKind stres_kind = DiagramKind::bdd;
  FbsStats fbs;
  StageTimings timings;

  /// Journey family mapped back to edge ids.
  [[nodiscard]] std::vector<EdgeSet> journey_sets(std::size_t limit) const;
  [[nodiscard]] std::vector<EdgeSet> stres_sets(std::size_t limit) const;
};

struct RunOptions {
  OrderPolicy order = OrderPolicy::bfs;
  Deadline deadline{};
  /// Upper bound on m for the brute-force method.
  std::size_t oracle_max_edges = 16;
};

/// Steps 1 and 2 only. `method` must be b or z.
Compilation compile(const TemporalGraph &g, Mode mode, Method method, const EdgeOrder &order,
                    const Deadline &deadline = {});

ReliabilityReport compute_reliability(const TemporalGraph &g, Mode mode, Method method,
                                      const RunOptions &options = {});

} // namespace tvnrel
