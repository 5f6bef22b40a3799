#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "test_support.hpp"
#include "tvnrel/dd.hpp"

using namespace tvnrel;

namespace {

constexpr auto B = DiagramKind::bdd;
constexpr auto Z = DiagramKind::zdd;

// ZDD of {{e2},{e1,e3}} over m=3, built from the top.
NodeRef sparse_family(DiagramStore &s) {
  const NodeRef e3 = s.make_node(3, BOT, TOP, Z);  // {{e3}}
  const NodeRef e2 = s.make_node(2, BOT, TOP, Z);  // {{e2}}
  return s.make_node(1, e2, e3, Z);
}

// ZDD of an explicit family, built by unions of single sets.
NodeRef zdd_of(DiagramStore &s, const std::vector<EdgeSet> &family) {
  NodeRef acc = BOT;
  for (const EdgeSet &set : family) {
    NodeRef n = TOP;
    for (auto it = set.rbegin(); it != set.rend(); ++it)
      n = s.make_node(*it, BOT, n, Z);
    acc = s.zdd_union(acc, n);
  }
  return acc;
}

// Unreduced binary decision tree of `family` over variables 1..m.
NodeRef raw_tree(DiagramStore &s, const std::vector<EdgeSet> &family, Var m, Var level = 1,
                 EdgeSet prefix = {}) {
  if (level > m) {
    return std::find(family.begin(), family.end(), prefix) != family.end() ? TOP : BOT;
  }
  NodeRef lo = raw_tree(s, family, m, level + 1, prefix);
  prefix.push_back(level);
  NodeRef hi = raw_tree(s, family, m, level + 1, prefix);
  return s.make_raw_node(level, lo, hi);
}

} // namespace

TEST_CASE("make_node applies the deletion rule per kind") {
  DiagramStore s;
  CHECK(s.make_node(1, TOP, TOP, B) == TOP);
  CHECK(s.make_node(1, TOP, BOT, Z) == TOP);
  const NodeRef a = s.make_node(1, BOT, TOP, B);
  CHECK(s.make_node(1, BOT, TOP, B) == a);
  CHECK(s.make_node(1, BOT, TOP, Z) == a);  // same triple, same node
  CHECK(s.make_node(2, TOP, TOP, Z) != TOP);
}

TEST_CASE("make_node rejects label ordering violations") {
  DiagramStore s;
  const NodeRef n = s.make_node(2, BOT, TOP, B);
  CHECK_THROWS_AS(s.make_node(2, n, TOP, B), OrderingError);
  CHECK_THROWS_AS(s.make_node(3, BOT, n, B), OrderingError);
  CHECK_THROWS_AS(s.make_node(0, BOT, TOP, B), OrderingError);
}

TEST_CASE("reduce") {
  DiagramStore s;
  SUBCASE("chain of redundant BDD tests collapses") {
    NodeRef n = TOP;
    for (Var v = 4; v >= 1; --v)
      n = s.make_raw_node(v, n, n);
    CHECK(s.reduce(n, B) == TOP);
  }
  SUBCASE("idempotent on reduced diagrams") {
    const NodeRef f = sparse_family(s);
    CHECK(s.reduce(f, Z) == f);
    CHECK(s.reduce(s.reduce(f, Z), Z) == f);
  }
  SUBCASE("unreduced tree of the {{e2},{e1,e3}} family") {
    const std::vector<EdgeSet> family{{1, 3}, {2}};
    const NodeRef tree = raw_tree(s, family, 3);
    CHECK(s.enumerate_sets(tree, 3, Z, 10) == family);
    const NodeRef r = s.reduce(tree, Z);
    CHECK(s.enumerate_sets(r, 3, Z, 10) == family);
    CHECK(s.node_count(r) <= 4);
    CHECK(r == sparse_family(s));
    // The sparse family needs more nodes as a BDD than as a ZDD.
    CHECK(s.node_count(s.reduce(tree, B)) == 5);
    CHECK(s.node_count(r) == 3);
  }
}

TEST_CASE("or_apply") {
  DiagramStore s;
  const NodeRef x1 = s.make_node(1, BOT, TOP, B);
  const NodeRef x2 = s.make_node(2, BOT, TOP, B);
  CHECK(s.or_apply(x1, BOT) == x1);
  CHECK(s.or_apply(BOT, x1) == x1);
  CHECK(s.or_apply(x1, TOP) == TOP);
  const NodeRef either = s.or_apply(x1, x2);
  // truth table over 4 assignments
  CHECK(s.enumerate_sets(either, 2, B, 10) == std::vector<EdgeSet>{{1}, {1, 2}, {2}});
  CHECK(s.or_apply(x2, x1) == either);
}

TEST_CASE("count_sat") {
  DiagramStore s;
  CHECK(s.count_sat(TOP, 3, B) == 8);
  CHECK(s.count_sat(TOP, 3, Z) == 1);
  CHECK(s.count_sat(BOT, 3, B) == 0);
  CHECK(s.count_sat(sparse_family(s), 3, Z) == 2);
  // large m stays exact
  CHECK(s.count_sat(TOP, 200, B) == (BigCount(1) << 200));
}

TEST_CASE("enumerate_sets") {
  DiagramStore s;
  CHECK(s.enumerate_sets(BOT, 3, Z, 10).empty());
  CHECK(s.enumerate_sets(sparse_family(s), 3, Z, 10) == std::vector<EdgeSet>{{1, 3}, {2}});
  // e1 true, e2 don't-care
  const NodeRef x1 = s.make_node(1, BOT, TOP, B);
  CHECK(s.enumerate_sets(x1, 2, B, 10) == std::vector<EdgeSet>{{1}, {1, 2}});
  CHECK_THROWS_AS((void)s.enumerate_sets(TOP, 4, B, 15), LimitExceeded);
}

TEST_CASE("export_dot") {
  DiagramStore s;
  const std::string top = s.export_dot(TOP, B);
  CHECK(top.find("⊤") != std::string::npos);
  CHECK(top.find("⊥") == std::string::npos);
  CHECK(top.find("->") == std::string::npos);

  const NodeRef f = sparse_family(s);
  const std::string dot = s.export_dot(f, Z);
  std::size_t circles = 0, arcs = 0, dashed = 0;
  for (std::size_t pos = 0; (pos = dot.find("shape=circle", pos)) != std::string::npos; ++pos)
    ++circles;
  for (std::size_t pos = 0; (pos = dot.find("->", pos)) != std::string::npos; ++pos)
    ++arcs;
  for (std::size_t pos = 0; (pos = dot.find("dashed", pos)) != std::string::npos; ++pos)
    ++dashed;
  CHECK(circles == s.node_count(f));
  CHECK(arcs == s.arc_count(f));
  CHECK(dashed == s.node_count(f));
}

TEST_CASE("canonicity and union bounds on random families") {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 200; ++trial) {
    const Var m = 1 + rng() % 5;
    auto random_family = [&] {
      std::vector<EdgeSet> fam;
      for (std::uint64_t mask = 0; mask < (1u << m); ++mask) {
        if (rng() % 3 != 0)
          continue;
        EdgeSet set;
        for (Var v = 1; v <= m; ++v)
          if ((mask >> (v - 1)) & 1u)
            set.push_back(v);
        fam.push_back(set);
      }
      std::sort(fam.begin(), fam.end());
      return fam;
    };
    DiagramStore s;
    const auto fa = random_family();
    const auto fb = random_family();
    // Same family built two different ways -> same handle.
    const NodeRef za = zdd_of(s, fa);
    CHECK(s.reduce(raw_tree(s, fa, m), Z) == za);
    const NodeRef ba = s.reduce(raw_tree(s, fa, m), B);
    CHECK(s.enumerate_sets(ba, m, B, 1u << m) == fa);
    CHECK(s.enumerate_sets(za, m, Z, 1u << m) == fa);
    CHECK((ba == s.reduce(raw_tree(s, fb, m), B)) == (fa == fb));
    // The reduced diagram is never larger than the decision tree.
    CHECK(s.node_count(ba) <= (1u << m) - 1);

    const NodeRef bb = s.reduce(raw_tree(s, fb, m), B);
    const BigCount ca = s.count_sat(ba, m, B), cb = s.count_sat(bb, m, B);
    const BigCount cu = s.count_sat(s.or_apply(ba, bb), m, B);
    CHECK(cu >= std::max(ca, cb));
    CHECK(cu <= ca + cb);
    for (const EdgeSet &set : fa) {
      CHECK(s.contains(ba, set, B));
      CHECK(s.contains(za, set, Z));
    }
  }
}

TEST_CASE("memory limit and deadline are enforced while building") {
  auto build_chain = [](DiagramStore &s) {
    NodeRef acc = BOT;
    for (Var v = 200000; v >= 1; --v)
      acc = s.make_node(v, acc, TOP, B);
    return acc;
  };
  DiagramStore small;
  small.set_memory_limit(std::size_t{1} << 20);
  CHECK_THROWS_AS(build_chain(small), MemoryLimitExceeded);

  DiagramStore late;
  late.set_deadline(Deadline(std::chrono::duration<double>(-1.0)));
  CHECK_THROWS_AS(build_chain(late), TimeoutError);

  DiagramStore roomy;
  CHECK(roomy.node_count(build_chain(roomy)) == 200000);
  CHECK(roomy.memory_bytes() < DiagramStore::default_memory_limit());
}
