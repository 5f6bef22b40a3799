/// @file oracle.hpp
/// @brief Brute-force ground truth for small instances.
///
/// Deliberately shares no code with the decision-diagram pipeline: journeys
/// come from a DFS over simple paths, reachability from label-ordered
/// relaxation, reliability from a sweep over all 2^m edge subsets.

#pragma once

#include <cstddef>
#include <cstdint>
#include <set>
#include <stdexcept>

#include "tvnrel/temporal_graph.hpp"

namespace tvnrel::oracle {

inline constexpr std::size_t default_max_edges = 16;

class SizeGuard : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

using SetFamily = std::set<EdgeSet>;

/// Whether an s-z journey exists using only edges in `mask` (bit i-1 is edge
/// i). With no mask every edge is present.
bool is_reachable(const TemporalGraph &g, Mode mode);
bool is_reachable(const TemporalGraph &g, Mode mode, std::uint64_t mask);

/// Edge-id sets of all s-z journeys.
SetFamily brute_journeys(const TemporalGraph &g, Mode mode);

/// All edge subsets whose induced temporal subgraph has an s-z journey.
SetFamily brute_stres(const TemporalGraph &g, Mode mode, std::size_t max_edges = default_max_edges);

double brute_reliability(const TemporalGraph &g, Mode mode,
                         std::size_t max_edges = default_max_edges);

/// Two-terminal reliability of the underlying static multigraph (labels
/// ignored).
double static_reliability(const TemporalGraph &g, std::size_t max_edges = default_max_edges);

} // namespace tvnrel::oracle
