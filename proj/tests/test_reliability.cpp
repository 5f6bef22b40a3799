#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "test_support.hpp"
#include "tvnrel/pipeline.hpp"
#include "tvnrel/superset.hpp"

using namespace tvnrel;
using tvnrel::testing::graph;

namespace {

constexpr auto B = DiagramKind::bdd;
constexpr auto Z = DiagramKind::zdd;
constexpr auto multi = Mode::multi_hop;
constexpr auto single = Mode::single_hop;

double sigma(const TemporalGraph &g, Mode mode, Method method) {
  return compute_reliability(g, mode, method, {}).sigma;
}

} // namespace

TEST_CASE("terminal diagrams") {
  DiagramStore s;
  const std::vector<double> probs{0.3, 0.6};
  CHECK(reliability_bdd(s, TOP, probs, 2) == 1.0);
  CHECK(reliability_bdd(s, BOT, probs, 2) == 0.0);
  CHECK(reliability_zdd(s, BOT, probs, 2) == 0.0);
  // {∅} as a ZDD: every edge fails
  CHECK(reliability_zdd(s, TOP, probs, 2) == doctest::Approx(0.7 * 0.4).epsilon(1e-15));
}

TEST_CASE("skipped ZDD levels contribute the failure probability") {
  DiagramStore s;
  const NodeRef e1 = s.make_node(1, BOT, TOP, Z);  // {{e1}}
  const std::vector<double> probs{0.9, 0.5};
  CHECK(reliability_zdd(s, e1, probs, 2) == doctest::Approx(0.45).epsilon(1e-15));
  CHECK(reliability_bdd(s, e1, probs, 2) == doctest::Approx(0.9).epsilon(1e-15));
  const NodeRef closed = superset_to_zdd(s, e1, 2);
  CHECK(reliability_zdd(s, closed, probs, 2) == doctest::Approx(0.9).epsilon(1e-15));
}

TEST_CASE("hand-computed instances") {
  for (Method method : {Method::b, Method::z, Method::oracle}) {
    CAPTURE(to_string(method));
    CHECK(sigma(graph(2, {{0, 1, 1, 0.9}}, 0, 1), multi, method) == doctest::Approx(0.9));
    CHECK(sigma(graph(2, {{0, 1, 1, 0.9}, {0, 1, 2, 0.9}}, 0, 1), multi, method) ==
          doctest::Approx(0.99));
    const TemporalGraph ordered = graph(3, {{0, 1, 1, 0.9}, {1, 2, 2, 0.9}}, 0, 2);
    CHECK(sigma(ordered, multi, method) == doctest::Approx(0.81));
    CHECK(sigma(ordered, single, method) == doctest::Approx(0.81));
    const TemporalGraph backwards = graph(3, {{0, 1, 2, 0.9}, {1, 2, 1, 0.9}}, 0, 2);
    CHECK(sigma(backwards, multi, method) == 0.0);
    const TemporalGraph level = graph(3, {{0, 1, 1, 0.9}, {1, 2, 1, 0.9}}, 0, 2);
    CHECK(sigma(level, multi, method) == doctest::Approx(0.81));
    CHECK(sigma(level, single, method) == 0.0);
  }
}

TEST_CASE("invalid probability vectors are rejected") {
  DiagramStore s;
  const NodeRef e1 = s.make_node(1, BOT, TOP, B);
  const std::vector<double> bad{1.5, 0.5};
  const std::vector<double> short_probs{0.5};
  CHECK_THROWS((void)reliability_bdd(s, e1, bad, 2));
  CHECK_THROWS((void)reliability_zdd(s, e1, bad, 2));
  CHECK_THROWS((void)reliability_bdd(s, e1, short_probs, 2));
}

TEST_CASE("methods agree with each other and with the oracle") {
  Rng rng(31);
  for (int trial = 0; trial < 250; ++trial) {
    const TemporalGraph g = testing::random_small_instance(rng, 14);
    for (Mode mode : {multi, single}) {
      const ReliabilityReport b = compute_reliability(g, mode, Method::b, {});
      const ReliabilityReport z = compute_reliability(g, mode, Method::z, {});
      const double truth = oracle::brute_reliability(g, mode);
      CHECK(std::abs(b.sigma - z.sigma) <= 1e-12);
      CHECK(std::abs(b.sigma - truth) <= 1e-9);
      CHECK(b.journey_count == z.journey_count);
      CHECK(b.stres_count == z.stres_count);
      CHECK(b.stres_count == oracle::brute_stres(g, mode).size());
      CHECK(b.sigma >= 0.0);
      CHECK(b.sigma <= 1.0);
    }
  }
}

TEST_CASE("structural properties") {
  Rng rng(37);
  for (int trial = 0; trial < 150; ++trial) {
    const TemporalGraph g = testing::random_small_instance(rng, 12);
    const double multi_sigma = sigma(g, multi, Method::b);
    const double single_sigma = sigma(g, single, Method::b);
    CHECK(single_sigma <= multi_sigma + 1e-12);

    // An extra edge never hurts.
    const Edge extra{g.source(), static_cast<VertexId>((g.source() + 1) % g.vertex_count()),
                     static_cast<TimeLabel>(1 + rng.next() % 5), 0.5};
    const TemporalGraph bigger = g.with_edge(extra);
    CHECK(sigma(bigger, multi, Method::z) >= multi_sigma - 1e-12);
    CHECK(sigma(bigger, single, Method::z) >= single_sigma - 1e-12);

    // A dead edge is the same as a missing one.
    const EdgeId victim = 1 + static_cast<EdgeId>(rng.next() % g.edge_count());
    std::vector<Edge> edges = g.edges();
    edges[victim - 1].p = 0.0;
    const TemporalGraph dead(g.vertex_count(), edges, g.source(), g.terminal());
    CHECK(sigma(dead, multi, Method::b) ==
          doctest::Approx(sigma(g.without_edge(victim), multi, Method::b)).epsilon(1e-12));

    // Perfect edges: σ is reachability.
    const TemporalGraph perfect = g.with_survival(1.0);
    for (Mode mode : {multi, single}) {
      const double s1 = sigma(perfect, mode, Method::b);
      CHECK(s1 == (oracle::is_reachable(g, mode) ? 1.0 : 0.0));
      CHECK(sigma(perfect, mode, Method::z) == doctest::Approx(s1).epsilon(1e-12));
    }

    // One label everywhere: multi-hop is static reliability.
    const TemporalGraph flat = g.with_uniform_time(1);
    CHECK(sigma(flat, multi, Method::b) ==
          doctest::Approx(oracle::static_reliability(flat)).epsilon(1e-12));
  }
}

TEST_CASE("underflow-prone ZDD evaluation stays accurate") {
  // Long chain of parallel pairs: many skipped levels with small probabilities.
  std::vector<Edge> edges;
  const std::size_t hops = 40;
  for (VertexId v = 0; v < hops; ++v) {
    edges.push_back({v, v + 1, 1, 0.01});
    edges.push_back({v, v + 1, 1, 0.99});
  }
  const TemporalGraph g = graph(hops + 1, edges, 0, static_cast<VertexId>(hops));
  const double expected = std::pow(1.0 - 0.99 * 0.01, static_cast<double>(hops));
  CHECK(sigma(g, multi, Method::b) == doctest::Approx(expected).epsilon(1e-12));
  CHECK(sigma(g, multi, Method::z) == doctest::Approx(expected).epsilon(1e-12));
}
