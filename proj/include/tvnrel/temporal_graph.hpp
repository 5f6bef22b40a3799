/// @file temporal_graph.hpp
/// @brief Temporal graph model, .tgr I/O, edge ordering and frontier schedules.

#pragma once

#include <cstddef>
#include <cstdint>
#include <iosfwd>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace tvnrel {

using VertexId = std::uint32_t;
/// Edge ids are 1-based; edge id i is the i-th `e` record of the input.
using EdgeId = std::uint32_t;
using TimeLabel = std::int32_t;

/// Sorted list of edge ids (or DD variables, depending on context).
using EdgeSet = std::vector<std::uint32_t>;

/// Journey semantics: multi-hop admits non-decreasing labels along a journey,
/// single-hop requires strictly increasing labels.
enum class Mode { multi_hop, single_hop };

const char *to_string(Mode mode);
Mode parse_mode(std::string_view text);

/// `earlier ⊴ later` under the given mode.
inline bool time_precedes(TimeLabel earlier, TimeLabel later, Mode mode) {
  return mode == Mode::multi_hop ? earlier <= later : earlier < later;
}

inline constexpr double default_survival = 0.9;

struct Edge {
  VertexId u = 0;
  VertexId v = 0;
  TimeLabel t = 1;
  double p = default_survival;

  [[nodiscard]] VertexId other(VertexId w) const { return w == u ? v : u; }
  [[nodiscard]] bool touches(VertexId w) const { return w == u || w == v; }
  friend bool operator==(const Edge &, const Edge &) = default;
};

class GraphError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

class ParseError : public GraphError {
public:
  ParseError(std::size_t line, const std::string &message);
  [[nodiscard]] std::size_t line() const noexcept { return line_; }

private:
  std::size_t line_;
};

/// Undirected temporal multigraph with a designated source and terminal.
/// Immutable once constructed; the constructor validates every invariant.
class TemporalGraph {
public:
  TemporalGraph(std::size_t vertex_count, std::vector<Edge> edges,
                VertexId source, VertexId terminal);

  [[nodiscard]] std::size_t vertex_count() const noexcept { return n_; }
  [[nodiscard]] std::size_t edge_count() const noexcept { return edges_.size(); }
  [[nodiscard]] VertexId source() const noexcept { return source_; }
  [[nodiscard]] VertexId terminal() const noexcept { return terminal_; }

  /// 1-based access.
  [[nodiscard]] const Edge &edge(EdgeId id) const { return edges_.at(id - 1); }
  [[nodiscard]] const std::vector<Edge> &edges() const noexcept { return edges_; }

  /// Largest time label, 0 for an edgeless graph.
  [[nodiscard]] TimeLabel max_time() const noexcept;

  /// Same graph with every label replaced by `t`.
  [[nodiscard]] TemporalGraph with_uniform_time(TimeLabel t) const;
  /// Same graph with edge `id` removed (later ids shift down by one).
  [[nodiscard]] TemporalGraph without_edge(EdgeId id) const;
  [[nodiscard]] TemporalGraph with_edge(const Edge &e) const;
  [[nodiscard]] TemporalGraph with_survival(double p) const;

  friend bool operator==(const TemporalGraph &, const TemporalGraph &) = default;

private:
  std::size_t n_;
  std::vector<Edge> edges_;
  VertexId source_;
  VertexId terminal_;
};

TemporalGraph parse_tgr(std::istream &in);
TemporalGraph parse_tgr(std::string_view text);
TemporalGraph load_tgr(const std::string &path);
std::string serialize_tgr(const TemporalGraph &g);

/// Processing order: step i (1-based) processes edge `edge_at(i)`.
class EdgeOrder {
public:
  explicit EdgeOrder(std::vector<EdgeId> perm);
  static EdgeOrder identity(std::size_t m);

  [[nodiscard]] std::size_t size() const noexcept { return perm_.size(); }
  [[nodiscard]] EdgeId edge_at(std::size_t step) const { return perm_.at(step - 1); }
  [[nodiscard]] const std::vector<EdgeId> &perm() const noexcept { return perm_; }

  /// Map a set of steps (DD variables) to the sorted set of edge ids.
  [[nodiscard]] EdgeSet to_edges(const EdgeSet &steps) const;
  /// Per-step survival probabilities, index 0 is step 1.
  [[nodiscard]] std::vector<double> step_probabilities(const TemporalGraph &g) const;

  friend bool operator==(const EdgeOrder &, const EdgeOrder &) = default;

private:
  std::vector<EdgeId> perm_;
};

EdgeOrder bfs_edge_order(const TemporalGraph &g);

/// Frontiers F_1..F_{m+1} for a fixed edge order. At step i the endpoints
/// of edge i that have no earlier edge are `entering(i)`, those with no later
/// edge are `leaving(i)`, and F_{i+1} = (F_i ∪ entering(i)) \ leaving(i).
class FrontierSchedule {
public:
  FrontierSchedule(const TemporalGraph &g, const EdgeOrder &order);

  [[nodiscard]] std::size_t steps() const noexcept { return entering_.size(); }
  /// Sorted vertex ids of F_i, 1 <= i <= m+1.
  [[nodiscard]] const std::vector<VertexId> &frontier(std::size_t i) const {
    return frontiers_.at(i - 1);
  }
  [[nodiscard]] const std::vector<VertexId> &entering(std::size_t i) const {
    return entering_.at(i - 1);
  }
  [[nodiscard]] const std::vector<VertexId> &leaving(std::size_t i) const {
    return leaving_.at(i - 1);
  }
  [[nodiscard]] std::size_t max_frontier_size() const noexcept;

private:
  std::vector<std::vector<VertexId>> frontiers_;
  std::vector<std::vector<VertexId>> entering_;
  std::vector<std::vector<VertexId>> leaving_;
};

inline FrontierSchedule frontier_schedule(const TemporalGraph &g,
                                          const EdgeOrder &order) {
  return FrontierSchedule(g, order);
}

} // namespace tvnrel
