#include "tvnrel/fbsje.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <unordered_map>

namespace tvnrel {

FrontierCell *Configuration::find(VertexId v) {
  auto it = std::lower_bound(cells.begin(), cells.end(), v,
                             [](const FrontierCell &c, VertexId x) { return c.vertex < x; });
  return it != cells.end() && it->vertex == v ? &*it : nullptr;
}

const FrontierCell *Configuration::find(VertexId v) const {
  return const_cast<Configuration *>(this)->find(v);
}

void Configuration::normalize() {
  // Tags never exceed 2 + |cells|, so a small lookup vector suffices.
  std::vector<int> remap;
  int next = 2;
  for (FrontierCell &c : cells) {
    if (c.comp < 2)
      continue;
    const auto idx = static_cast<std::size_t>(c.comp);
    if (idx >= remap.size())
      remap.resize(idx + 1, -1);
    if (remap[idx] < 0)
      remap[idx] = next++;
    c.comp = remap[idx];
  }
}

std::size_t ConfigurationHash::operator()(const Configuration &c) const noexcept {
  std::uint64_t h = 0xcbf29ce484222325ULL;
  for (const FrontierCell &cell : c.cells) {
    const std::uint64_t word = (static_cast<std::uint64_t>(static_cast<std::uint32_t>(cell.comp)) << 34) ^
                               (static_cast<std::uint64_t>(cell.deg) << 32) ^
                               static_cast<std::uint32_t>(cell.time);
    h = (h ^ word) * 0x100000001b3ULL;
    h ^= h >> 29;
  }
  return static_cast<std::size_t>(h);
}

FrontierCell fresh_cell(VertexId v, Terminals st) {
  FrontierCell cell;
  cell.vertex = v;
  if (v == st.source)
    cell.comp = comp_source;
  else if (v == st.terminal)
    cell.comp = comp_terminal;
  return cell;
}

void enter_frontier(Configuration &config, std::span<const VertexId> entering, Terminals st) {
  for (VertexId v : entering) {
    auto it = std::lower_bound(config.cells.begin(), config.cells.end(), v,
                               [](const FrontierCell &c, VertexId x) { return c.vertex < x; });
    if (it != config.cells.end() && it->vertex == v)
      continue;
    config.cells.insert(it, fresh_cell(v, st));
  }
}

const char *to_string(PruneReason reason) {
  switch (reason) {
  case PruneReason::none:
    return "none";
  case PruneReason::cycle:
    return "cycle";
  case PruneReason::time_order:
    return "time_order";
  case PruneReason::terminal_degree:
    return "terminal_degree";
  case PruneReason::inner_degree:
    return "inner_degree";
  case PruneReason::terminal_leaving:
    return "terminal_leaving";
  case PruneReason::inner_leaving:
    return "inner_leaving";
  case PruneReason::dangling_on_completion:
    return "dangling_on_completion";
  }
  return "?";
}

namespace {

// How the segment ending at one endpoint of the new edge may be traversed.
enum class Side { free, start, end, middle, blocked };

struct EndInfo {
  Side side = Side::free;
  bool has_time = false;
  TimeLabel time = no_time;
  TimeLabel partner_time = no_time;
};

EndInfo describe_end(const Configuration &config, const FrontierCell &cell, Terminals st) {
  EndInfo info;
  const bool is_terminal = cell.vertex == st.source || cell.vertex == st.terminal;
  if (cell.deg >= 2 || (is_terminal && cell.deg >= 1)) {
    info.side = Side::blocked;
    return info;
  }
  if (cell.deg == 0) {
    info.side = cell.vertex == st.source     ? Side::start
                : cell.vertex == st.terminal ? Side::end
                                             : Side::free;
    return info;
  }
  info.has_time = true;
  info.time = cell.time;
  if (cell.comp == comp_source) {
    info.side = Side::start;
  } else if (cell.comp == comp_terminal) {
    info.side = Side::end;
  } else {
    info.side = Side::middle;
    const FrontierCell *partner = nullptr;
    for (const FrontierCell &other : config.cells) {
      if (other.vertex != cell.vertex && other.comp == cell.comp && other.deg == 1) {
        partner = &other;
        break;
      }
    }
    if (partner == nullptr)
      throw std::logic_error("segment endpoint without a partner on the frontier");
    info.partner_time = partner->time;
  }
  return info;
}

// The segment at `end` is walked up to the new edge with label t.
bool fits_before(const EndInfo &end, TimeLabel t, Mode mode) {
  switch (end.side) {
  case Side::free:
    return true;
  case Side::start:
    return !end.has_time || time_precedes(end.time, t, mode);
  case Side::middle:
    return end.partner_time <= end.time && time_precedes(end.time, t, mode);
  case Side::end:
  case Side::blocked:
    return false;
  }
  return false;
}

// The segment at `end` is walked away from the new edge with label t.
bool fits_after(const EndInfo &end, TimeLabel t, Mode mode) {
  switch (end.side) {
  case Side::free:
    return true;
  case Side::end:
    return !end.has_time || time_precedes(t, end.time, mode);
  case Side::middle:
    return end.time <= end.partner_time && time_precedes(t, end.time, mode);
  case Side::start:
  case Side::blocked:
    return false;
  }
  return false;
}

bool is_terminal(VertexId v, Terminals st) { return v == st.source || v == st.terminal; }

} // namespace

bool check_time_condition(const Configuration &config, const Edge &e, Terminals st, Mode mode) {
  const FrontierCell *cu = config.find(e.u);
  const FrontierCell *cv = config.find(e.v);
  if (cu == nullptr || cv == nullptr)
    throw std::invalid_argument("check_time_condition: endpoint not on the frontier");
  const EndInfo a = describe_end(config, *cu, st);
  const EndInfo b = describe_end(config, *cv, st);
  return (fits_before(a, e.t, mode) && fits_after(b, e.t, mode)) ||
         (fits_before(b, e.t, mode) && fits_after(a, e.t, mode));
}

void update_info(Configuration &config, const Edge &e, bool adopt) {
  if (!adopt)
    return;
  FrontierCell *cu = config.find(e.u);
  FrontierCell *cv = config.find(e.v);
  if (cu == nullptr || cv == nullptr)
    throw std::invalid_argument("update_info: endpoint not on the frontier");

  if (cu->comp == comp_isolated && cv->comp == comp_isolated) {
    int c = 2;
    while (std::any_of(config.cells.begin(), config.cells.end(),
                       [c](const FrontierCell &x) { return x.comp == c; }))
      ++c;
    cu->comp = cv->comp = c;
  } else if (cu->comp == comp_isolated) {
    cu->comp = cv->comp;
  } else if (cv->comp == comp_isolated) {
    cv->comp = cu->comp;
  } else {
    const int c_max = std::max(cu->comp, cv->comp);
    const int c_min = std::min(cu->comp, cv->comp);
    for (FrontierCell &x : config.cells)
      if (x.comp == c_max)
        x.comp = c_min;
  }

  for (FrontierCell *w : {cu, cv}) {
    ++w->deg;
    if (w->deg == 1)
      w->time = e.t;
    else if (w->deg == 2)
      w->time = no_time;
  }
}

BranchResult classify_branch(const Configuration &working, const Edge &e, bool adopt,
                             std::span<const VertexId> leaving, Terminals st, Mode mode) {
  const FrontierCell *cu = working.find(e.u);
  const FrontierCell *cv = working.find(e.v);
  if (cu == nullptr || cv == nullptr)
    throw std::invalid_argument("classify_branch: endpoint not on the frontier");

  bool completes = false;
  if (adopt) {
    if (cu->comp == cv->comp && cu->comp != comp_isolated)
      return {Branch::pruned, PruneReason::cycle};
    if (!check_time_condition(working, e, st, mode))
      return {Branch::pruned, PruneReason::time_order};
    completes = (cu->comp == comp_source && cv->comp == comp_terminal) ||
                (cu->comp == comp_terminal && cv->comp == comp_source);
  }

  Configuration next = working;
  update_info(next, e, adopt);
  for (VertexId w : {e.u, e.v}) {
    const FrontierCell &cell = *next.find(w);
    if (is_terminal(w, st) && cell.deg > 1)
      return {Branch::pruned, PruneReason::terminal_degree};
    if (!is_terminal(w, st) && cell.deg > 2)
      return {Branch::pruned, PruneReason::inner_degree};
  }

  if (completes) {
    // Every open segment other than the finished journey would dangle.
    for (const FrontierCell &cell : next.cells)
      if (cell.deg == 1 && !is_terminal(cell.vertex, st))
        return {Branch::pruned, PruneReason::dangling_on_completion};
    return {Branch::completed, PruneReason::none};
  }

  for (VertexId w : leaving) {
    const FrontierCell &cell = *next.find(w);
    if (is_terminal(w, st) && cell.deg != 1)
      return {Branch::pruned, PruneReason::terminal_leaving};
    if (!is_terminal(w, st) && cell.deg == 1)
      return {Branch::pruned, PruneReason::inner_leaving};
  }
  return {Branch::open, PruneReason::none};
}

Configuration generate_node(const Configuration &working, const Edge &e, bool adopt,
                            std::span<const VertexId> leaving) {
  Configuration next = working;
  update_info(next, e, adopt);
  std::erase_if(next.cells, [&](const FrontierCell &c) {
    return std::find(leaving.begin(), leaving.end(), c.vertex) != leaving.end();
  });
  next.normalize();
  return next;
}

std::size_t FbsStats::total_nodes() const {
  std::size_t total = 0;
  for (auto s : level_sizes)
    total += s;
  return total;
}

namespace {

constexpr std::uint32_t child_bot = 0xFFFFFFFFu;
constexpr std::uint32_t child_top = 0xFFFFFFFEu;

struct RawNode {
  std::uint32_t lo = child_bot;
  std::uint32_t hi = child_bot;
};

double state_bound(std::size_t frontier, TimeLabel max_time) {
  if (frontier == 0)
    return 1.0;
  const double f = static_cast<double>(frontier);
  return std::pow(3.0 * f * static_cast<double>(max_time), f);
}

} // namespace

NodeRef build_journey_zdd_unreduced(DiagramStore &store, const TemporalGraph &g,
                                    const EdgeOrder &order, Mode mode, FbsStats *stats,
                                    const FbsOptions &options) {
  const std::size_t m = g.edge_count();
  FbsStats local;
  FbsStats &st_out = stats != nullptr ? *stats : local;
  st_out = FbsStats{};
  if (m == 0)
    return BOT;

  const FrontierSchedule sched(g, order);
  const Terminals st{g.source(), g.terminal()};
  const TimeLabel max_time = g.max_time();
  st_out.max_frontier = sched.max_frontier_size();

  std::vector<std::vector<RawNode>> levels(m);
  std::vector<Configuration> current(1);

  for (std::size_t i = 1; i <= m; ++i) {
    options.deadline.check();
    const Edge &e = g.edge(order.edge_at(i));
    const auto leaving = std::span<const VertexId>(sched.leaving(i));

    st_out.level_sizes.push_back(current.size());
    if (static_cast<double>(current.size()) > state_bound(sched.frontier(i).size(), max_time))
      ++st_out.bound_violations;

    std::vector<Configuration> next;
    std::unordered_map<Configuration, std::uint32_t, ConfigurationHash> index;
    std::vector<RawNode> &level = levels[i - 1];
    level.resize(current.size());

    for (std::size_t k = 0; k < current.size(); ++k) {
      Configuration working = std::move(current[k]);
      enter_frontier(working, sched.entering(i), st);
      for (int x = 0; x <= 1; ++x) {
        const bool adopt = x == 1;
        const BranchResult r = classify_branch(working, e, adopt, leaving, st, mode);
        std::uint32_t child = child_bot;
        if (r.branch == Branch::pruned) {
          ++st_out.prune_counts[static_cast<std::size_t>(r.reason)];
        } else if (r.branch == Branch::completed) {
          ++st_out.completed;
          child = child_top;
        } else if (i < m) {
          Configuration cfg = generate_node(working, e, adopt, leaving);
          if (options.merge) {
            auto [it, inserted] =
                index.try_emplace(std::move(cfg), static_cast<std::uint32_t>(next.size()));
            if (inserted)
              next.push_back(it->first);
            child = it->second;
          } else {
            child = static_cast<std::uint32_t>(next.size());
            next.push_back(std::move(cfg));
          }
        }
        (adopt ? level[k].hi : level[k].lo) = child;
      }
    }
    current = std::move(next);
  }

  // Emit bottom-up so children exist before their parents.
  std::vector<NodeRef> below;
  for (std::size_t i = m; i >= 1; --i) {
    const auto &level = levels[i - 1];
    std::vector<NodeRef> refs(level.size());
    auto resolve = [&](std::uint32_t c) {
      return c == child_bot ? BOT : c == child_top ? TOP : below.at(c);
    };
    for (std::size_t k = 0; k < level.size(); ++k)
      refs[k] = store.make_raw_node(static_cast<Var>(i), resolve(level[k].lo),
                                    resolve(level[k].hi));
    below = std::move(refs);
    levels[i - 1].clear();
    levels[i - 1].shrink_to_fit();
  }
  return below.at(0);
}

NodeRef build_journey_zdd(DiagramStore &store, const TemporalGraph &g, const EdgeOrder &order,
                          Mode mode, FbsStats *stats, const FbsOptions &options) {
  NodeRef raw = build_journey_zdd_unreduced(store, g, order, mode, stats, options);
  return store.reduce(raw, DiagramKind::zdd);
}

} // namespace tvnrel
