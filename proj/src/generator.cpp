#include "tvnrel/generator.hpp"

#include <stdexcept>
#include <string>

namespace tvnrel {

const char *to_string(Family family) {
  return family == Family::complete ? "complete" : "grid3";
}

Family parse_family(std::string_view text) {
  if (text == "complete")
    return Family::complete;
  if (text == "grid3")
    return Family::grid3;
  throw std::invalid_argument("unknown family: " + std::string(text));
}

RetryRule parse_retry_rule(std::string_view text) {
  if (text == "or" || text == "either")
    return RetryRule::either;
  if (text == "and" || text == "both")
    return RetryRule::both;
  throw std::invalid_argument("unknown retry rule: " + std::string(text));
}

std::vector<Edge> assign_labels(const std::vector<StaticEdge> &static_edges, TimeLabel max_time,
                                double prob, Rng &rng, double survival) {
  if (max_time < 1)
    throw std::invalid_argument("assign_labels: T must be >= 1");
  if (!(prob >= 0.0 && prob <= 1.0))
    throw std::invalid_argument("assign_labels: probability out of [0,1]");
  std::vector<Edge> edges;
  for (const auto &[u, v] : static_edges)
    for (TimeLabel t = 1; t <= max_time; ++t)
      if (rng.bernoulli(prob))
        edges.push_back(Edge{u, v, t, survival});
  return edges;
}

std::vector<StaticEdge> complete_skeleton(std::size_t n) {
  std::vector<StaticEdge> edges;
  for (VertexId i = 0; i < n; ++i)
    for (VertexId j = i + 1; j < n; ++j)
      edges.emplace_back(i, j);
  return edges;
}

std::vector<StaticEdge> grid3_skeleton(std::size_t w) {
  std::vector<StaticEdge> edges;
  const std::size_t rows = 3;
  for (std::size_t r = 0; r < rows; ++r) {
    for (std::size_t c = 0; c < w; ++c) {
      const auto v = static_cast<VertexId>(r * w + c);
      if (c + 1 < w)
        edges.emplace_back(v, v + 1);
      if (r + 1 < rows)
        edges.emplace_back(v, static_cast<VertexId>(v + w));
    }
  }
  return edges;
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

std::uint64_t instance_seed(Family family, std::size_t size, std::uint64_t seed) {
  return splitmix64(splitmix64(splitmix64(static_cast<std::uint64_t>(family)) ^ size) ^ seed);
}

bool retry_satisfied(const std::vector<Edge> &edges, VertexId s, VertexId z, RetryRule rule) {
  bool at_s = false, at_z = false;
  for (const Edge &e : edges) {
    at_s = at_s || e.touches(s);
    at_z = at_z || e.touches(z);
  }
  return rule == RetryRule::both ? at_s && at_z : at_s || at_z;
}

TemporalGraph draw(Family family, std::size_t vertices, const std::vector<StaticEdge> &skeleton,
                   TimeLabel max_time, std::size_t size, std::uint64_t seed,
                   const GeneratorOptions &opt) {
  Rng rng(instance_seed(family, size, seed));
  const VertexId s = 0;
  const auto z = static_cast<VertexId>(vertices - 1);
  for (;;) {
    auto edges = assign_labels(skeleton, max_time, opt.label_prob, rng, opt.survival);
    if (retry_satisfied(edges, s, z, opt.retry))
      return {vertices, std::move(edges), s, z};
    if (opt.label_prob <= 0.0)
      throw std::invalid_argument("generator: retry rule cannot hold with label probability 0");
  }
}

} // namespace

TemporalGraph gen_complete(std::size_t n, std::uint64_t seed, const GeneratorOptions &opt) {
  if (n < 3)
    throw std::invalid_argument("gen_complete: n must be >= 3");
  return draw(Family::complete, n, complete_skeleton(n), static_cast<TimeLabel>(n - 1), n, seed,
              opt);
}

TemporalGraph gen_grid3(std::size_t w, std::uint64_t seed, const GeneratorOptions &opt) {
  if (w < 3)
    throw std::invalid_argument("gen_grid3: w must be >= 3");
  return draw(Family::grid3, 3 * w, grid3_skeleton(w), static_cast<TimeLabel>(2 * w), w, seed,
              opt);
}

TemporalGraph generate(Family family, std::size_t size, std::uint64_t seed,
                       const GeneratorOptions &opt) {
  return family == Family::complete ? gen_complete(size, seed, opt) : gen_grid3(size, seed, opt);
}

double expected_edge_count(Family family, std::size_t size, double prob) {
  if (family == Family::complete)
    return static_cast<double>(size * (size - 1) / 2) * static_cast<double>(size - 1) * prob;
  return static_cast<double>(5 * size - 3) * static_cast<double>(2 * size) * prob;
}

} // namespace tvnrel
