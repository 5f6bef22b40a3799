/// @file fbsje.hpp
/// @brief Frontier-based search that compiles the s-z journeys of a temporal
/// graph into a ZDD.
///
/// The search processes edges in a fixed order and keeps, for every vertex of
/// the current frontier, a (comp, deg, time) cell:
///
///  - comp: 0 for vertices on the path segment that contains s, 1 for the
///    segment containing z, a tag >= 2 for other segments, -1 for isolated
///    vertices. s and z carry 0 and 1 from the moment they enter the frontier.
///  - deg: degree in the adopted edge set, 0..2.
///  - time: label of the adopted edge at a segment endpoint (deg == 1), else -1.
///
/// Two search nodes at the same level with equal configurations root the same
/// sub-family and are merged. A branch that joins the s-segment to the
/// z-segment completes a journey; its remaining edges are all excluded, which
/// under ZDD semantics is simply the terminal ⊤.

#pragma once

#include <array>
#include <cstddef>
#include <cstdint>
#include <span>
#include <vector>

#include "tvnrel/dd.hpp"
#include "tvnrel/deadline.hpp"
#include "tvnrel/temporal_graph.hpp"

namespace tvnrel {

inline constexpr int comp_isolated = -1;
inline constexpr int comp_source = 0;
inline constexpr int comp_terminal = 1;
inline constexpr TimeLabel no_time = -1;

struct FrontierCell {
  VertexId vertex = 0;
  int comp = comp_isolated;
  int deg = 0;
  TimeLabel time = no_time;
  friend bool operator==(const FrontierCell &, const FrontierCell &) = default;
};

struct Terminals {
  VertexId source;
  VertexId terminal;
};

/// Cells sorted by vertex id.
struct Configuration {
  std::vector<FrontierCell> cells;

  [[nodiscard]] FrontierCell *find(VertexId v);
  [[nodiscard]] const FrontierCell *find(VertexId v) const;
  /// Renumber tags >= 2 by order of first appearance.
  void normalize();

  friend bool operator==(const Configuration &, const Configuration &) = default;
};

struct ConfigurationHash {
  std::size_t operator()(const Configuration &c) const noexcept;
};

/// Column for a vertex entering the frontier.
FrontierCell fresh_cell(VertexId v, Terminals st);
/// Insert fresh columns for `entering`, keeping cells sorted.
void enter_frontier(Configuration &config, std::span<const VertexId> entering, Terminals st);

/// Whether adopting `e` keeps the segments at its endpoints joinable into one
/// label-monotone path oriented from s towards z. Both endpoints must be
/// present in `config`.
bool check_time_condition(const Configuration &config, const Edge &e, Terminals st, Mode mode);

/// Merge components, bump degrees and record endpoint labels (adopt only).
void update_info(Configuration &config, const Edge &e, bool adopt);

enum class PruneReason : std::uint8_t {
  none,
  cycle,            ///< both endpoints already on one segment
  time_order,       ///< merged segment cannot be label-monotone
  terminal_degree,  ///< s or z would get degree > 1
  inner_degree,     ///< other vertex would get degree > 2
  terminal_leaving, ///< s or z leaves the frontier with degree != 1
  inner_leaving,    ///< other vertex leaves as a dangling segment end
  dangling_on_completion,
};
inline constexpr std::size_t prune_reason_count = 8;
const char *to_string(PruneReason reason);

enum class Branch { pruned, open, completed };

struct BranchResult {
  Branch branch = Branch::open;
  PruneReason reason = PruneReason::none;
};

/// Decide the x-branch at a working configuration (F_i plus the entering
/// endpoints of `e`). `leaving` are the vertices whose last edge is `e`.
BranchResult classify_branch(const Configuration &working, const Edge &e, bool adopt,
                             std::span<const VertexId> leaving, Terminals st, Mode mode);

/// True iff the x-branch holds no journey.
inline bool prune(const Configuration &working, const Edge &e, bool adopt,
                  std::span<const VertexId> leaving, Terminals st, Mode mode) {
  return classify_branch(working, e, adopt, leaving, st, mode).branch == Branch::pruned;
}

/// Child configuration for an open branch: update, drop `leaving`, normalize.
Configuration generate_node(const Configuration &working, const Edge &e, bool adopt,
                            std::span<const VertexId> leaving);

struct FbsStats {
  /// |N_i| for i = 1..m (index 0 is level 1).
  std::vector<std::size_t> level_sizes;
  std::array<std::size_t, prune_reason_count> prune_counts{};
  std::size_t completed = 0;
  /// Levels where |N_i| exceeded (3 |F_i| T)^|F_i|.
  std::size_t bound_violations = 0;
  std::size_t max_frontier = 0;

  [[nodiscard]] std::size_t total_nodes() const;
};

struct FbsOptions {
  /// Merge equal configurations. Turning this off expands the search tree.
  bool merge = true;
  Deadline deadline{};
};

/// Unreduced ZDD over variables 1..m, variable i being edge `order.edge_at(i)`.
NodeRef build_journey_zdd_unreduced(DiagramStore &store, const TemporalGraph &g,
                                    const EdgeOrder &order, Mode mode,
                                    FbsStats *stats = nullptr, const FbsOptions &options = {});

/// Reduced journey ZDD; ⊥ when no journey exists.
NodeRef build_journey_zdd(DiagramStore &store, const TemporalGraph &g, const EdgeOrder &order,
                          Mode mode, FbsStats *stats = nullptr, const FbsOptions &options = {});

} // namespace tvnrel
