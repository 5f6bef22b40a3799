/// @file generator.hpp
/// @brief Random temporal instances on complete and 3-row grid skeletons.
///
/// Randomness comes from std::mt19937_64, whose output sequence is fixed by
/// the standard, and Bernoulli draws compare the top 53 bits against the
/// probability, so instances are identical across platforms. Label draws
/// consume the stream in (static edge, label) lexicographic order.

#pragma once

#include <cstdint>
#include <random>
#include <string_view>
#include <utility>
#include <vector>

#include "tvnrel/temporal_graph.hpp"

namespace tvnrel {

using StaticEdge = std::pair<VertexId, VertexId>;

enum class Family { complete, grid3 };
const char *to_string(Family family);
Family parse_family(std::string_view text);

/// Instances are redrawn until the rule holds: `either` needs an edge at s or
/// at z, `both` needs an edge at each.
enum class RetryRule { either, both };
RetryRule parse_retry_rule(std::string_view text);

inline constexpr double label_probability = 0.5;

class Rng {
public:
  explicit Rng(std::uint64_t seed) : engine_(seed) {}
  /// Uniform in [0, 1) with 53 random bits.
  double uniform() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
  bool bernoulli(double p) { return uniform() < p; }
  std::uint64_t next() { return engine_(); }

private:
  std::mt19937_64 engine_;
};

/// For each static edge and each t in 1..T (in that nesting order) include a
/// temporal edge labelled t with probability `prob`.
std::vector<Edge> assign_labels(const std::vector<StaticEdge> &static_edges, TimeLabel max_time,
                                double prob, Rng &rng, double survival = default_survival);

std::vector<StaticEdge> complete_skeleton(std::size_t n);
/// Row-major 3 x w grid; vertex r*w + c.
std::vector<StaticEdge> grid3_skeleton(std::size_t w);

struct GeneratorOptions {
  double label_prob = label_probability;
  double survival = default_survival;
  RetryRule retry = RetryRule::either;
};

/// K_n, T = n-1, s = 0, z = n-1.
TemporalGraph gen_complete(std::size_t n, std::uint64_t seed, const GeneratorOptions &opt = {});
/// 3 x w grid, T = 2w, s = 0, z = 3w-1.
TemporalGraph gen_grid3(std::size_t w, std::uint64_t seed, const GeneratorOptions &opt = {});
TemporalGraph generate(Family family, std::size_t size, std::uint64_t seed,
                       const GeneratorOptions &opt = {});

/// Expected edge count before retries: |static edges| * T * prob.
double expected_edge_count(Family family, std::size_t size, double prob = label_probability);

} // namespace tvnrel
