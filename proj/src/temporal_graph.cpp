#include "tvnrel/temporal_graph.hpp"

#include <algorithm>
#include <charconv>
#include <fstream>
#include <limits>
#include <numeric>
#include <queue>
#include <sstream>
#include <tuple>

namespace tvnrel {

const char *to_string(Mode mode) {
  return mode == Mode::multi_hop ? "multi" : "single";
}

Mode parse_mode(std::string_view text) {
  if (text == "multi" || text == "multi-hop" || text == "multi_hop")
    return Mode::multi_hop;
  if (text == "single" || text == "single-hop" || text == "single_hop")
    return Mode::single_hop;
  throw std::invalid_argument("unknown mode: " + std::string(text));
}

ParseError::ParseError(std::size_t line, const std::string &message)
    : GraphError("line " + std::to_string(line) + ": " + message), line_(line) {}

TemporalGraph::TemporalGraph(std::size_t vertex_count, std::vector<Edge> edges,
                             VertexId source, VertexId terminal)
    : n_(vertex_count), edges_(std::move(edges)), source_(source),
      terminal_(terminal) {
  if (source_ >= n_ || terminal_ >= n_)
    throw GraphError("source/terminal is not a vertex");
  if (source_ == terminal_)
    throw GraphError("source and terminal must differ");
  for (std::size_t i = 0; i < edges_.size(); ++i) {
    const Edge &e = edges_[i];
    const std::string where = "edge " + std::to_string(i + 1) + ": ";
    if (e.u >= n_ || e.v >= n_)
      throw GraphError(where + "unknown vertex id");
    if (e.u == e.v)
      throw GraphError(where + "self-loop");
    if (e.t < 1)
      throw GraphError(where + "time label must be >= 1");
    if (!(e.p >= 0.0 && e.p <= 1.0))
      throw GraphError(where + "probability out of [0,1]");
  }
}

TimeLabel TemporalGraph::max_time() const noexcept {
  TimeLabel t = 0;
  for (const Edge &e : edges_)
    t = std::max(t, e.t);
  return t;
}

TemporalGraph TemporalGraph::with_uniform_time(TimeLabel t) const {
  std::vector<Edge> edges = edges_;
  for (Edge &e : edges)
    e.t = t;
  return {n_, std::move(edges), source_, terminal_};
}

TemporalGraph TemporalGraph::without_edge(EdgeId id) const {
  std::vector<Edge> edges = edges_;
  edges.erase(edges.begin() + (id - 1));
  return {n_, std::move(edges), source_, terminal_};
}

TemporalGraph TemporalGraph::with_edge(const Edge &e) const {
  std::vector<Edge> edges = edges_;
  edges.push_back(e);
  return {n_, std::move(edges), source_, terminal_};
}

TemporalGraph TemporalGraph::with_survival(double p) const {
  std::vector<Edge> edges = edges_;
  for (Edge &e : edges)
    e.p = p;
  return {n_, std::move(edges), source_, terminal_};
}

// .tgr parsing

namespace {

std::vector<std::string_view> split_fields(std::string_view line) {
  std::vector<std::string_view> out;
  std::size_t i = 0;
  while (i < line.size()) {
    while (i < line.size() && (line[i] == ' ' || line[i] == '\t' || line[i] == '\r'))
      ++i;
    std::size_t j = i;
    while (j < line.size() && line[j] != ' ' && line[j] != '\t' && line[j] != '\r')
      ++j;
    if (j > i)
      out.push_back(line.substr(i, j - i));
    i = j;
  }
  return out;
}

template <typename T>
T parse_number(std::string_view field, std::size_t line, const char *what) {
  T value{};
  auto [ptr, ec] = std::from_chars(field.data(), field.data() + field.size(), value);
  if (ec != std::errc() || ptr != field.data() + field.size())
    throw ParseError(line, std::string("bad ") + what + " '" + std::string(field) + "'");
  return value;
}

} // namespace

TemporalGraph parse_tgr(std::istream &in) {
  std::string raw;
  std::size_t line_no = 0;
  bool have_header = false;
  std::size_t n = 0, m = 0;
  std::size_t header_line = 0;
  long long source = -1, terminal = -1;
  std::vector<Edge> edges;

  auto vertex = [&](std::string_view f, std::size_t line) {
    auto id = parse_number<long long>(f, line, "vertex id");
    if (id < 0 || static_cast<std::size_t>(id) >= n)
      throw ParseError(line, "unknown vertex id " + std::string(f));
    return static_cast<VertexId>(id);
  };

  while (std::getline(in, raw)) {
    ++line_no;
    std::string_view line(raw);
    if (auto hash = line.find('#'); hash != std::string_view::npos)
      line = line.substr(0, hash);
    auto fields = split_fields(line);
    if (fields.empty())
      continue;
    const std::string_view tag = fields[0];
    if (tag == "p") {
      if (have_header)
        throw ParseError(line_no, "duplicate header");
      if (fields.size() != 4 || fields[1] != "tvn")
        throw ParseError(line_no, "expected 'p tvn <n> <m>'");
      n = parse_number<std::size_t>(fields[2], line_no, "vertex count");
      m = parse_number<std::size_t>(fields[3], line_no, "edge count");
      have_header = true;
      header_line = line_no;
      continue;
    }
    if (!have_header)
      throw ParseError(line_no, "record before 'p tvn' header");
    if (tag == "s" || tag == "z") {
      if (fields.size() != 2)
        throw ParseError(line_no, "expected '" + std::string(tag) + " <vid>'");
      long long &slot = tag == "s" ? source : terminal;
      if (slot >= 0)
        throw ParseError(line_no, "duplicate '" + std::string(tag) + "' declaration");
      slot = vertex(fields[1], line_no);
    } else if (tag == "e") {
      if (fields.size() != 4 && fields.size() != 5)
        throw ParseError(line_no, "expected 'e <u> <v> <t> [p]'");
      Edge e;
      e.u = vertex(fields[1], line_no);
      e.v = vertex(fields[2], line_no);
      if (e.u == e.v)
        throw ParseError(line_no, "self-loop");
      e.t = parse_number<TimeLabel>(fields[3], line_no, "time label");
      if (e.t < 1)
        throw ParseError(line_no, "time label must be >= 1");
      if (fields.size() == 5) {
        e.p = parse_number<double>(fields[4], line_no, "probability");
        if (!(e.p >= 0.0 && e.p <= 1.0))
          throw ParseError(line_no, "probability out of [0,1]");
      }
      edges.push_back(e);
    } else {
      throw ParseError(line_no, "unknown record '" + std::string(tag) + "'");
    }
  }
  if (!have_header)
    throw ParseError(line_no, "missing 'p tvn' header");
  if (source < 0)
    throw ParseError(line_no, "missing 's' declaration");
  if (terminal < 0)
    throw ParseError(line_no, "missing 'z' declaration");
  if (edges.size() != m)
    throw ParseError(header_line, "header declares " + std::to_string(m) +
                                      " edges, found " + std::to_string(edges.size()));
  try {
    return {n, std::move(edges), static_cast<VertexId>(source),
            static_cast<VertexId>(terminal)};
  } catch (const GraphError &err) {
    throw ParseError(line_no, err.what());
  }
}

TemporalGraph parse_tgr(std::string_view text) {
  std::istringstream in{std::string(text)};
  return parse_tgr(in);
}

TemporalGraph load_tgr(const std::string &path) {
  std::ifstream in(path);
  if (!in)
    throw GraphError("cannot open " + path);
  return parse_tgr(in);
}

std::string serialize_tgr(const TemporalGraph &g) {
  std::ostringstream out;
  out << "p tvn " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  out << "s " << g.source() << '\n';
  out << "z " << g.terminal() << '\n';
  char buf[64];
  for (const Edge &e : g.edges()) {
    auto res = std::to_chars(buf, buf + sizeof buf, e.p);
    out << "e " << e.u << ' ' << e.v << ' ' << e.t << ' '
        << std::string_view(buf, res.ptr - buf) << '\n';
  }
  return out.str();
}

// Edge orders

EdgeOrder::EdgeOrder(std::vector<EdgeId> perm) : perm_(std::move(perm)) {
  std::vector<bool> seen(perm_.size() + 1, false);
  for (EdgeId id : perm_) {
    if (id < 1 || id > perm_.size() || seen[id])
      throw std::invalid_argument("edge order is not a permutation of 1..m");
    seen[id] = true;
  }
}

EdgeOrder EdgeOrder::identity(std::size_t m) {
  std::vector<EdgeId> perm(m);
  std::iota(perm.begin(), perm.end(), EdgeId{1});
  return EdgeOrder(std::move(perm));
}

EdgeSet EdgeOrder::to_edges(const EdgeSet &steps) const {
  EdgeSet out;
  out.reserve(steps.size());
  for (auto step : steps)
    out.push_back(edge_at(step));
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<double> EdgeOrder::step_probabilities(const TemporalGraph &g) const {
  std::vector<double> probs;
  probs.reserve(perm_.size());
  for (EdgeId id : perm_)
    probs.push_back(g.edge(id).p);
  return probs;
}

EdgeOrder bfs_edge_order(const TemporalGraph &g) {
  constexpr std::size_t unreached = std::numeric_limits<std::size_t>::max();
  const std::size_t n = g.vertex_count();
  std::vector<std::vector<VertexId>> adj(n);
  for (const Edge &e : g.edges()) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  for (auto &list : adj)
    std::sort(list.begin(), list.end());

  std::vector<std::size_t> layer(n, unreached);
  std::queue<VertexId> queue;
  layer[g.source()] = 0;
  queue.push(g.source());
  while (!queue.empty()) {
    VertexId w = queue.front();
    queue.pop();
    for (VertexId x : adj[w]) {
      if (layer[x] == unreached) {
        layer[x] = layer[w] + 1;
        queue.push(x);
      }
    }
  }

  using Key = std::tuple<std::size_t, std::size_t, VertexId, VertexId, TimeLabel, EdgeId>;
  std::vector<Key> keys;
  keys.reserve(g.edge_count());
  for (EdgeId id = 1; id <= g.edge_count(); ++id) {
    const Edge &e = g.edge(id);
    if (layer[e.u] == unreached) {
      keys.emplace_back(unreached, unreached, 0, 0, 0, id);
      continue;
    }
    VertexId a = e.u, b = e.v;
    if (std::pair(layer[b], b) < std::pair(layer[a], a))
      std::swap(a, b);
    keys.emplace_back(layer[a], layer[b], a, b, e.t, id);
  }
  std::sort(keys.begin(), keys.end());
  std::vector<EdgeId> perm;
  perm.reserve(keys.size());
  for (const Key &k : keys)
    perm.push_back(std::get<5>(k));
  return EdgeOrder(std::move(perm));
}

// Frontier schedule

FrontierSchedule::FrontierSchedule(const TemporalGraph &g, const EdgeOrder &order) {
  const std::size_t m = order.size();
  if (m != g.edge_count())
    throw std::invalid_argument("edge order size does not match the graph");
  const std::size_t none = std::numeric_limits<std::size_t>::max();
  std::vector<std::size_t> first(g.vertex_count(), none), last(g.vertex_count(), 0);
  for (std::size_t step = 1; step <= m; ++step) {
    const Edge &e = g.edge(order.edge_at(step));
    for (VertexId w : {e.u, e.v}) {
      if (first[w] == none)
        first[w] = step;
      last[w] = step;
    }
  }

  entering_.resize(m);
  leaving_.resize(m);
  frontiers_.resize(m + 1);
  for (VertexId w = 0; w < g.vertex_count(); ++w) {
    if (first[w] == none)
      continue;
    entering_[first[w] - 1].push_back(w);
    leaving_[last[w] - 1].push_back(w);
    // w ∈ F_i for first[w] < i <= last[w]
    for (std::size_t i = first[w] + 1; i <= last[w]; ++i)
      frontiers_[i - 1].push_back(w);
  }
}

std::size_t FrontierSchedule::max_frontier_size() const noexcept {
  std::size_t best = 0;
  for (const auto &f : frontiers_)
    best = std::max(best, f.size());
  return best;
}

} // namespace tvnrel
