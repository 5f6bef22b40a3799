#include "tvnrel/superset.hpp"

namespace tvnrel {

namespace {

// Poll the deadline every few thousand memo misses.
class Poll {
public:
  explicit Poll(const Deadline &d) : deadline_(d) {}
  void tick() {
    if ((++count_ & 0xFFF) == 0)
      deadline_.check();
  }

private:
  const Deadline &deadline_;
  std::size_t count_ = 0;
};

NodeRef superset_bdd_rec(DiagramStore &store, NodeRef n, Poll &poll) {
  if (n.is_terminal())
    return n;
  const DiagramStore::OpKey key{op_superset_bdd, n.id, 0, 0};
  if (NodeRef *hit = store.cache_find(key))
    return *hit;
  poll.tick();
  const Var label = store.label(n);
  const NodeRef lo = superset_bdd_rec(store, store.lo(n), poll);
  const NodeRef hi = superset_bdd_rec(store, store.hi(n), poll);
  const NodeRef r = store.make_node(label, lo, store.or_apply(lo, hi), DiagramKind::bdd);
  store.cache_put(key, r);
  return r;
}

// Every subset of {k..m}.
NodeRef power_set(DiagramStore &store, Var k, Var m) {
  if (k > m)
    return TOP;
  const DiagramStore::OpKey key{op_full_zdd, k, m, 0};
  if (NodeRef *hit = store.cache_find(key))
    return *hit;
  const NodeRef below = power_set(store, k + 1, m);
  const NodeRef r = store.make_node(k, below, below, DiagramKind::zdd);
  store.cache_put(key, r);
  return r;
}

// Upward closure of the family at `n`, restricted to variables k..m, where
// every variable of `n` is >= k.
NodeRef superset_zdd_rec(DiagramStore &store, NodeRef n, Var k, Var m, Poll &poll) {
  if (n == BOT)
    return BOT;
  if (n == TOP)
    return power_set(store, k, m);
  const DiagramStore::OpKey key{op_superset_zdd, n.id, k, m};
  if (NodeRef *hit = store.cache_find(key))
    return *hit;
  poll.tick();
  NodeRef r;
  const Var label = store.label(n);
  if (label > k) {
    const NodeRef below = superset_zdd_rec(store, n, k + 1, m, poll);
    r = store.make_node(k, below, below, DiagramKind::zdd);
  } else {
    const NodeRef lo = superset_zdd_rec(store, store.lo(n), k + 1, m, poll);
    const NodeRef hi = superset_zdd_rec(store, store.hi(n), k + 1, m, poll);
    r = store.make_node(k, lo, store.zdd_union(lo, hi), DiagramKind::zdd);
  }
  store.cache_put(key, r);
  return r;
}

} // namespace

NodeRef superset_to_bdd(DiagramStore &store, NodeRef journeys, Var /*m*/,
                        const Deadline &deadline) {
  Poll poll(deadline);
  return superset_bdd_rec(store, journeys, poll);
}

NodeRef superset_to_zdd(DiagramStore &store, NodeRef journeys, Var m, const Deadline &deadline) {
  Poll poll(deadline);
  return superset_zdd_rec(store, journeys, 1, m, poll);
}

} // namespace tvnrel
