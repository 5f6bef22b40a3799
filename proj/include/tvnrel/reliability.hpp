/// @file reliability.hpp
/// @brief Bottom-up probability evaluation over a reachable-subset diagram.

#pragma once

#include <span>
#include <string>

#include "tvnrel/dd.hpp"
#include "tvnrel/temporal_graph.hpp"

namespace tvnrel {

enum class Method { b, z, oracle };

const char *to_string(Method method);
Method parse_method(std::string_view text);

/// `probs[i]` is the survival probability of variable i+1. Skipped levels are
/// don't-cares and contribute p + q = 1.
double reliability_bdd(const DiagramStore &store, NodeRef root, std::span<const double> probs,
                       Var m);

/// As above for a ZDD: every variable skipped on a path (including those
/// above the root and below the last node) contributes its failure
/// probability 1 - p.
double reliability_zdd(const DiagramStore &store, NodeRef root, std::span<const double> probs,
                       Var m);

struct StageTimings {
  double journeys_s = 0.0;
  double superset_s = 0.0;
  double reliability_s = 0.0;
  double total_s = 0.0;
};

struct NodeCounts {
  std::size_t journey_zdd = 0;
  std::size_t stres_diagram = 0;
  std::size_t fbs_states = 0;
};

struct ReliabilityReport {
  double sigma = 0.0;
  Mode mode = Mode::multi_hop;
  Method method = Method::b;
  BigCount journey_count = 0;
  BigCount stres_count = 0;
  NodeCounts node_counts;
  /// Levels of the frontier search that exceeded the state bound.
  std::size_t bound_violations = 0;
  StageTimings timings;
  std::size_t edge_count = 0;
  std::size_t vertex_count = 0;
};

} // namespace tvnrel
