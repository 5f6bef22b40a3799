#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "test_support.hpp"
#include "tvnrel/fbsje.hpp"
#include "tvnrel/superset.hpp"

using namespace tvnrel;

namespace {

constexpr auto B = DiagramKind::bdd;
constexpr auto Z = DiagramKind::zdd;

NodeRef family_zdd(DiagramStore &s, const std::vector<EdgeSet> &family) {
  NodeRef acc = BOT;
  for (const EdgeSet &set : family) {
    NodeRef n = TOP;
    for (auto it = set.rbegin(); it != set.rend(); ++it)
      n = s.make_node(*it, BOT, n, Z);
    acc = s.zdd_union(acc, n);
  }
  return acc;
}

} // namespace

TEST_CASE("terminals") {
  DiagramStore s;
  CHECK(superset_to_bdd(s, BOT, 3) == BOT);
  CHECK(superset_to_zdd(s, BOT, 3) == BOT);
  CHECK(superset_to_bdd(s, TOP, 3) == TOP);
  // {∅} closes to the full power set
  const NodeRef all = superset_to_zdd(s, TOP, 3);
  CHECK(s.count_sat(all, 3, Z) == 8);
}

TEST_CASE("small families") {
  DiagramStore s;
  SUBCASE("{{e1}} over two variables") {
    const NodeRef f = family_zdd(s, {{1}});
    const NodeRef b = superset_to_bdd(s, f, 2);
    CHECK(s.enumerate_sets(b, 2, B, 10) == std::vector<EdgeSet>{{1}, {1, 2}});
    CHECK(b == s.make_node(1, BOT, TOP, B));
    const NodeRef z = superset_to_zdd(s, f, 2);
    CHECK(s.enumerate_sets(z, 2, Z, 10) == std::vector<EdgeSet>{{1}, {1, 2}});
  }
  SUBCASE("{{e1},{e2}}") {
    const NodeRef f = family_zdd(s, {{1}, {2}});
    const std::vector<EdgeSet> want{{1}, {1, 2}, {2}};
    CHECK(s.enumerate_sets(superset_to_bdd(s, f, 2), 2, B, 10) == want);
    CHECK(s.enumerate_sets(superset_to_zdd(s, f, 2), 2, Z, 10) == want);
  }
  SUBCASE("{{e2},{e1,e3}}") {
    const NodeRef f = family_zdd(s, {{2}, {1, 3}});
    const std::vector<EdgeSet> want{{1, 2}, {1, 2, 3}, {1, 3}, {2}, {2, 3}};
    CHECK(s.enumerate_sets(superset_to_bdd(s, f, 3), 3, B, 10) == want);
    CHECK(s.enumerate_sets(superset_to_zdd(s, f, 3), 3, Z, 10) == want);
    CHECK(s.count_sat(superset_to_bdd(s, f, 3), 3, B) == 5);
  }
  SUBCASE("family starting below the first variable") {
    const NodeRef f = family_zdd(s, {{3}});
    const NodeRef z = superset_to_zdd(s, f, 4);
    CHECK(s.count_sat(z, 4, Z) == 8);
    CHECK(s.count_sat(superset_to_bdd(s, f, 4), 4, B) == 8);
  }
}

TEST_CASE("closure equals brute force on random families") {
  Rng rng(17);
  for (int trial = 0; trial < 300; ++trial) {
    const Var m = 1 + static_cast<Var>(rng.next() % 7);
    std::vector<EdgeSet> family;
    for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << m); ++mask) {
      if (rng.next() % 5 != 0)
        continue;
      EdgeSet set;
      for (Var v = 1; v <= m; ++v)
        if ((mask >> (v - 1)) & 1u)
          set.push_back(v);
      family.push_back(set);
    }
    std::sort(family.begin(), family.end());
    DiagramStore s;
    const NodeRef f = family_zdd(s, family);
    const auto want = testing::upward_closure(family, m);
    const NodeRef b = superset_to_bdd(s, f, m);
    const NodeRef z = superset_to_zdd(s, f, m);
    CHECK(s.enumerate_sets(b, m, B, 1u << m) == want);
    CHECK(s.enumerate_sets(z, m, Z, 1u << m) == want);
    CHECK(s.count_sat(b, m, B) == s.count_sat(z, m, Z));
    CHECK(s.count_sat(b, m, B) >= s.count_sat(f, m, Z));
    // Closure is idempotent.
    CHECK(superset_to_zdd(s, z, m) == z);
  }
}

TEST_CASE("closure of journey families matches the oracle") {
  Rng rng(23);
  for (int trial = 0; trial < 150; ++trial) {
    const TemporalGraph g = testing::random_small_instance(rng, 12);
    const Var m = static_cast<Var>(g.edge_count());
    for (Mode mode : {Mode::multi_hop, Mode::single_hop}) {
      DiagramStore s;
      const EdgeOrder order = bfs_edge_order(g);
      const NodeRef j = build_journey_zdd(s, g, order, mode);
      const auto expected = testing::as_list(oracle::brute_stres(g, mode));
      for (auto [root, kind] : {std::pair{superset_to_bdd(s, j, m), B},
                                std::pair{superset_to_zdd(s, j, m), Z}}) {
        std::vector<EdgeSet> got;
        for (const EdgeSet &steps : s.enumerate_sets(root, m, kind, 1u << m))
          got.push_back(order.to_edges(steps));
        std::sort(got.begin(), got.end());
        CHECK(got == expected);
      }
      // Adding any edge to a member stays a member.
      const NodeRef b = superset_to_bdd(s, j, m);
      for (const EdgeSet &set : s.enumerate_sets(b, m, B, 1u << m)) {
        const Var extra = 1 + static_cast<Var>(rng.next() % m);
        EdgeSet bigger = set;
        if (!std::binary_search(bigger.begin(), bigger.end(), extra)) {
          bigger.insert(std::upper_bound(bigger.begin(), bigger.end(), extra), extra);
          CHECK(s.contains(b, bigger, B));
        }
      }
    }
  }
}

TEST_CASE("deadline") {
  const TemporalGraph g = gen_complete(6, 3);
  DiagramStore s;
  const Var m = static_cast<Var>(g.edge_count());
  const NodeRef j = build_journey_zdd(s, g, bfs_edge_order(g), Mode::multi_hop);
  const Deadline past(std::chrono::duration<double>(-1.0));
  // Small inputs may finish before the first poll; only check no wrong answer.
  try {
    const NodeRef b = superset_to_bdd(s, j, m, past);
    CHECK(b == superset_to_bdd(s, j, m));
  } catch (const TimeoutError &) {
    CHECK(true);
  }
}
