#include "tvnrel/oracle.hpp"

#include <algorithm>
#include <limits>
#include <map>
#include <numeric>
#include <vector>

namespace tvnrel::oracle {

namespace {

void guard(const TemporalGraph &g, std::size_t max_edges) {
  if (g.edge_count() > max_edges || g.edge_count() >= 63)
    throw SizeGuard("oracle: " + std::to_string(g.edge_count()) + " edges exceeds the limit of " +
                    std::to_string(std::min<std::size_t>(max_edges, 62)));
}

bool in_mask(std::uint64_t mask, EdgeId id) { return (mask >> (id - 1)) & 1u; }

std::uint64_t full_mask(std::size_t m) {
  return m >= 64 ? ~std::uint64_t{0} : (std::uint64_t{1} << m) - 1;
}

} // namespace

bool is_reachable(const TemporalGraph &g, Mode mode) {
  return is_reachable(g, mode, full_mask(g.edge_count()));
}

bool is_reachable(const TemporalGraph &g, Mode mode, std::uint64_t mask) {
  // Earliest arrival label per vertex; 0 at s means "present before any edge".
  constexpr TimeLabel never = std::numeric_limits<TimeLabel>::max();
  std::vector<TimeLabel> arrival(g.vertex_count(), never);
  arrival[g.source()] = 0;

  std::vector<EdgeId> ids;
  for (EdgeId id = 1; id <= g.edge_count(); ++id)
    if (in_mask(mask, id))
      ids.push_back(id);
  std::stable_sort(ids.begin(), ids.end(),
                   [&](EdgeId a, EdgeId b) { return g.edge(a).t < g.edge(b).t; });

  std::size_t i = 0;
  while (i < ids.size()) {
    const TimeLabel t = g.edge(ids[i]).t;
    std::size_t j = i;
    while (j < ids.size() && g.edge(ids[j]).t == t)
      ++j;
    if (mode == Mode::single_hop) {
      // Arrivals made by this label cannot be extended by the same label.
      std::vector<TimeLabel> before = arrival;
      for (std::size_t k = i; k < j; ++k) {
        const Edge &e = g.edge(ids[k]);
        if (before[e.u] < t)
          arrival[e.v] = std::min(arrival[e.v], t);
        if (before[e.v] < t)
          arrival[e.u] = std::min(arrival[e.u], t);
      }
    } else {
      bool changed = true;
      while (changed) {
        changed = false;
        for (std::size_t k = i; k < j; ++k) {
          const Edge &e = g.edge(ids[k]);
          for (auto [a, b] : {std::pair{e.u, e.v}, std::pair{e.v, e.u}}) {
            if (arrival[a] <= t && arrival[b] > t) {
              arrival[b] = t;
              changed = true;
            }
          }
        }
      }
    }
    i = j;
  }
  return arrival[g.terminal()] != never;
}

SetFamily brute_journeys(const TemporalGraph &g, Mode mode) {
  std::vector<std::vector<EdgeId>> incident(g.vertex_count());
  for (EdgeId id = 1; id <= g.edge_count(); ++id) {
    incident[g.edge(id).u].push_back(id);
    incident[g.edge(id).v].push_back(id);
  }
  SetFamily out;
  std::vector<bool> visited(g.vertex_count(), false);
  EdgeSet path;

  auto dfs = [&](auto &self, VertexId at, TimeLabel last) -> void {
    if (at == g.terminal()) {
      EdgeSet sorted = path;
      std::sort(sorted.begin(), sorted.end());
      out.insert(std::move(sorted));
      return;
    }
    for (EdgeId id : incident[at]) {
      const Edge &e = g.edge(id);
      const VertexId next = e.other(at);
      if (visited[next])
        continue;
      if (!path.empty() && !time_precedes(last, e.t, mode))
        continue;
      visited[next] = true;
      path.push_back(id);
      self(self, next, e.t);
      path.pop_back();
      visited[next] = false;
    }
  };
  visited[g.source()] = true;
  dfs(dfs, g.source(), 0);
  return out;
}

SetFamily brute_stres(const TemporalGraph &g, Mode mode, std::size_t max_edges) {
  guard(g, max_edges);
  const std::size_t m = g.edge_count();
  SetFamily out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
    if (!is_reachable(g, mode, mask))
      continue;
    EdgeSet set;
    for (EdgeId id = 1; id <= m; ++id)
      if (in_mask(mask, id))
        set.push_back(id);
    out.insert(std::move(set));
  }
  return out;
}

namespace {

double subset_probability(const TemporalGraph &g, std::uint64_t mask) {
  double prob = 1.0;
  for (EdgeId id = 1; id <= g.edge_count(); ++id) {
    const double p = g.edge(id).p;
    prob *= in_mask(mask, id) ? p : 1.0 - p;
  }
  return prob;
}

bool statically_connected(const TemporalGraph &g, std::uint64_t mask) {
  std::vector<VertexId> parent(g.vertex_count());
  std::iota(parent.begin(), parent.end(), VertexId{0});
  auto find = [&](VertexId x) {
    while (parent[x] != x)
      x = parent[x] = parent[parent[x]];
    return x;
  };
  for (EdgeId id = 1; id <= g.edge_count(); ++id)
    if (in_mask(mask, id))
      parent[find(g.edge(id).u)] = find(g.edge(id).v);
  return find(g.source()) == find(g.terminal());
}

} // namespace

double brute_reliability(const TemporalGraph &g, Mode mode, std::size_t max_edges) {
  guard(g, max_edges);
  double sigma = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.edge_count()); ++mask)
    if (is_reachable(g, mode, mask))
      sigma += subset_probability(g, mask);
  return sigma;
}

double static_reliability(const TemporalGraph &g, std::size_t max_edges) {
  guard(g, max_edges);
  double sigma = 0.0;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << g.edge_count()); ++mask)
    if (statically_connected(g, mask))
      sigma += subset_probability(g, mask);
  return sigma;
}

} // namespace tvnrel::oracle
