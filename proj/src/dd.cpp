#include "tvnrel/dd.hpp"

#include <algorithm>
#include <functional>
#include <sstream>
#include <unistd.h>
#include <unordered_map>
#include <unordered_set>

namespace tvnrel {

namespace {

inline std::size_t mix(std::size_t h, std::uint64_t v) {
  // splitmix64 finalizer folded into a running hash
  v += 0x9e3779b97f4a7c15ULL + h;
  v = (v ^ (v >> 30)) * 0xbf58476d1ce4e5b9ULL;
  v = (v ^ (v >> 27)) * 0x94d049bb133111ebULL;
  return static_cast<std::size_t>(v ^ (v >> 31));
}

std::size_t hash_triple(Var label, NodeRef lo, NodeRef hi) {
  return mix(mix(mix(0, label), lo.id), hi.id);
}

constexpr std::size_t initial_slots = 1u << 12;

} // namespace

std::size_t DiagramStore::OpKeyHash::operator()(const OpKey &k) const noexcept {
  return mix(mix(mix(mix(0, k.op), k.a), k.b), k.c);
}

DiagramStore::DiagramStore() : memory_limit_(default_memory_limit()) {
  nodes_.push_back({terminal_label, BOT, BOT});
  nodes_.push_back({terminal_label, TOP, TOP});
  unique_.assign(initial_slots, 0);
  cache_.assign(initial_slots, CacheSlot{{0, 0, 0, 0}, BOT});
}

std::size_t DiagramStore::default_memory_limit() {
  const long pages = sysconf(_SC_PHYS_PAGES);
  const long page_size = sysconf(_SC_PAGESIZE);
  if (pages <= 0 || page_size <= 0)
    return std::size_t{4} << 30;
  return static_cast<std::size_t>(pages) * static_cast<std::size_t>(page_size) / 2;
}

std::size_t DiagramStore::memory_bytes() const {
  const std::size_t parts[] = {nodes_.capacity() * sizeof(Node), unique_.capacity() * sizeof(std::uint32_t),
                               cache_.capacity() * sizeof(CacheSlot), or_table_.bytes(),
                               union_table_.bytes()};
  std::size_t total = 0, largest = 0;
  for (std::size_t p : parts) {
    total += p;
    largest = std::max(largest, p);
  }
  return total + 2 * largest;
}

void DiagramStore::check_budget() const {
  deadline_.check();
  if (memory_bytes() > memory_limit_)
    throw MemoryLimitExceeded();
}

DiagramStore::PairTable::PairTable() : slots_(initial_slots), shift_(64 - 12) {}

const NodeRef *DiagramStore::PairTable::find(NodeRef a, NodeRef b) const {
  const std::uint64_t key = std::uint64_t{a.id} << 32 | b.id;
  const std::size_t mask = slots_.size() - 1;
  for (std::size_t i = home(key); slots_[i].key != 0; i = (i + 1) & mask)
    if (slots_[i].key == key)
      return &slots_[i].value;
  return nullptr;
}

void DiagramStore::PairTable::insert(NodeRef a, NodeRef b, NodeRef value) {
  const std::uint64_t key = std::uint64_t{a.id} << 32 | b.id;
  const std::size_t mask = slots_.size() - 1;
  std::size_t i = home(key);
  for (; slots_[i].key != 0; i = (i + 1) & mask) {
    if (slots_[i].key == key) {
      slots_[i].value = value;
      return;
    }
  }
  slots_[i] = Slot{key, value};
  if (++count_ * 4 > slots_.size() * 3)
    grow();
}

void DiagramStore::PairTable::grow() {
  std::vector<Slot> old(slots_.size() * 2);
  old.swap(slots_);
  --shift_;
  const std::size_t mask = slots_.size() - 1;
  for (const Slot &slot : old) {
    if (slot.key == 0)
      continue;
    std::size_t i = home(slot.key);
    while (slots_[i].key != 0)
      i = (i + 1) & mask;
    slots_[i] = slot;
  }
}

void DiagramStore::grow_unique() {
  std::vector<std::uint32_t> old(unique_.size() * 2, 0);
  old.swap(unique_);
  const std::size_t mask = unique_.size() - 1;
  for (std::uint32_t id : old) {
    if (id == 0)
      continue;
    const Node &n = nodes_[id];
    std::size_t i = hash_triple(n.label, n.lo, n.hi) & mask;
    while (unique_[i] != 0)
      i = (i + 1) & mask;
    unique_[i] = id;
  }
}

void DiagramStore::grow_cache() {
  std::vector<CacheSlot> old(cache_.size() * 2, CacheSlot{{0, 0, 0, 0}, BOT});
  old.swap(cache_);
  const std::size_t mask = cache_.size() - 1;
  for (const CacheSlot &slot : old) {
    if (slot.key.op == 0)
      continue;
    std::size_t i = OpKeyHash{}(slot.key) & mask;
    while (cache_[i].key.op != 0)
      i = (i + 1) & mask;
    cache_[i] = slot;
  }
}

NodeRef DiagramStore::make_node(Var label, NodeRef lo, NodeRef hi, DiagramKind kind) {
  if (label == 0 || label >= this->label(lo) || label >= this->label(hi))
    throw OrderingError("make_node: label " + std::to_string(label) +
                        " must be positive and below its children's labels");
  if (kind == DiagramKind::bdd ? lo == hi : hi == BOT)
    return lo;
  const std::size_t mask = unique_.size() - 1;
  std::size_t i = hash_triple(label, lo, hi) & mask;
  for (; unique_[i] != 0; i = (i + 1) & mask) {
    const Node &n = nodes_[unique_[i]];
    if (n.label == label && n.lo == lo && n.hi == hi)
      return NodeRef{unique_[i]};
  }
  poll();
  NodeRef ref{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back({label, lo, hi});
  unique_[i] = ref.id;
  if (++unique_count_ * 4 > unique_.size() * 3)
    grow_unique();
  return ref;
}

NodeRef DiagramStore::make_raw_node(Var label, NodeRef lo, NodeRef hi) {
  if (label == 0 || label >= this->label(lo) || label >= this->label(hi))
    throw OrderingError("make_raw_node: label ordering violated");
  poll();
  NodeRef ref{static_cast<std::uint32_t>(nodes_.size())};
  nodes_.push_back({label, lo, hi});
  return ref;
}

std::size_t DiagramStore::node_count(NodeRef root) const {
  std::unordered_set<std::uint32_t> seen;
  std::vector<NodeRef> stack{root};
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (n.is_terminal() || !seen.insert(n.id).second)
      continue;
    stack.push_back(lo(n));
    stack.push_back(hi(n));
  }
  return seen.size();
}

std::size_t DiagramStore::arc_count(NodeRef root) const {
  return 2 * node_count(root);
}

NodeRef *DiagramStore::cache_find(const OpKey &key) {
  const std::size_t mask = cache_.size() - 1;
  for (std::size_t i = OpKeyHash{}(key) & mask; cache_[i].key.op != 0; i = (i + 1) & mask)
    if (cache_[i].key == key)
      return &cache_[i].value;
  return nullptr;
}

void DiagramStore::cache_put(const OpKey &key, NodeRef value) {
  const std::size_t mask = cache_.size() - 1;
  std::size_t i = OpKeyHash{}(key) & mask;
  for (; cache_[i].key.op != 0; i = (i + 1) & mask) {
    if (cache_[i].key == key) {
      cache_[i].value = value;
      return;
    }
  }
  cache_[i] = CacheSlot{key, value};
  if (++cache_count_ * 4 > cache_.size() * 3)
    grow_cache();
}

NodeRef DiagramStore::reduce(NodeRef root, DiagramKind kind) {
  return reduce_rec(root, kind);
}

NodeRef DiagramStore::reduce_rec(NodeRef n, DiagramKind kind) {
  if (n.is_terminal())
    return n;
  const OpKey key{kind == DiagramKind::bdd ? op_reduce_bdd : op_reduce_zdd, n.id, 0, 0};
  if (NodeRef *hit = cache_find(key))
    return *hit;
  // Copy fields first: recursion may grow nodes_.
  const Node node = nodes_[n.id];
  NodeRef lo_r = reduce_rec(node.lo, kind);
  NodeRef hi_r = reduce_rec(node.hi, kind);
  NodeRef r = make_node(node.label, lo_r, hi_r, kind);
  cache_put(key, r);
  return r;
}

NodeRef DiagramStore::or_apply(NodeRef a, NodeRef b) {
  if (a == TOP || b == TOP)
    return TOP;
  if (a == BOT)
    return b;
  if (b == BOT || a == b)
    return a;
  if (b < a)
    std::swap(a, b);
  if (const NodeRef *hit = or_table_.find(a, b))
    return *hit;
  poll();
  const Node na = nodes_[a.id];
  const Node nb = nodes_[b.id];
  const Var top = std::min(na.label, nb.label);
  NodeRef a0 = na.label == top ? na.lo : a, a1 = na.label == top ? na.hi : a;
  NodeRef b0 = nb.label == top ? nb.lo : b, b1 = nb.label == top ? nb.hi : b;
  NodeRef lo_r = or_apply(a0, b0);
  NodeRef hi_r = or_apply(a1, b1);
  NodeRef r = make_node(top, lo_r, hi_r, DiagramKind::bdd);
  or_table_.insert(a, b, r);
  return r;
}

NodeRef DiagramStore::zdd_union(NodeRef a, NodeRef b) {
  if (a == BOT)
    return b;
  if (b == BOT || a == b)
    return a;
  if (b < a)
    std::swap(a, b);
  if (const NodeRef *hit = union_table_.find(a, b))
    return *hit;
  poll();
  const Node na = nodes_[a.id];
  const Node nb = nodes_[b.id];
  NodeRef r;
  if (na.label < nb.label) {
    r = make_node(na.label, zdd_union(na.lo, b), na.hi, DiagramKind::zdd);
  } else if (nb.label < na.label) {
    r = make_node(nb.label, zdd_union(a, nb.lo), nb.hi, DiagramKind::zdd);
  } else {
    NodeRef lo_r = zdd_union(na.lo, nb.lo);
    NodeRef hi_r = zdd_union(na.hi, nb.hi);
    r = make_node(na.label, lo_r, hi_r, DiagramKind::zdd);
  }
  union_table_.insert(a, b, r);
  return r;
}

BigCount DiagramStore::count_sat(NodeRef root, Var m, DiagramKind kind) const {
  std::unordered_map<std::uint32_t, BigCount> memo;
  auto level = [&](NodeRef n) -> Var { return n.is_terminal() ? m + 1 : label(n); };
  std::function<BigCount(NodeRef)> rec = [&](NodeRef n) -> BigCount {
    if (n == BOT)
      return 0;
    if (n == TOP)
      return 1;
    if (auto it = memo.find(n.id); it != memo.end())
      return it->second;
    const Node &node = nodes_[n.id];
    BigCount c;
    if (kind == DiagramKind::zdd) {
      c = rec(node.lo) + rec(node.hi);
    } else {
      c = (rec(node.lo) << (level(node.lo) - node.label - 1)) +
          (rec(node.hi) << (level(node.hi) - node.label - 1));
    }
    memo.emplace(n.id, c);
    return c;
  };
  BigCount total = rec(root);
  if (kind == DiagramKind::bdd && total != 0)
    total <<= (level(root) - 1);
  return total;
}

std::vector<EdgeSet> DiagramStore::enumerate_sets(NodeRef root, Var m, DiagramKind kind,
                                                  std::size_t limit) const {
  if (count_sat(root, m, kind) > limit)
    throw LimitExceeded("enumerate_sets: family has more than " + std::to_string(limit) +
                        " members");
  std::vector<EdgeSet> out;
  EdgeSet current;
  if (kind == DiagramKind::zdd) {
    std::function<void(NodeRef)> rec = [&](NodeRef n) {
      if (n == BOT)
        return;
      if (n == TOP) {
        out.push_back(current);
        return;
      }
      const Node &node = nodes_[n.id];
      rec(node.lo);
      current.push_back(node.label);
      rec(node.hi);
      current.pop_back();
    };
    rec(root);
  } else {
    std::function<void(NodeRef, Var)> rec = [&](NodeRef n, Var k) {
      if (n == BOT)
        return;
      if (k > m) {
        if (n == TOP)
          out.push_back(current);
        return;
      }
      const bool tests_k = !n.is_terminal() && label(n) == k;
      rec(tests_k ? lo(n) : n, k + 1);
      current.push_back(k);
      rec(tests_k ? hi(n) : n, k + 1);
      current.pop_back();
    };
    rec(root, 1);
  }
  std::sort(out.begin(), out.end());
  return out;
}

bool DiagramStore::contains(NodeRef root, const EdgeSet &vars, DiagramKind kind) const {
  NodeRef n = root;
  std::size_t next = 0;
  while (!n.is_terminal()) {
    const Node &node = nodes_[n.id];
    if (kind == DiagramKind::zdd && next < vars.size() && vars[next] < node.label)
      return false;
    while (next < vars.size() && vars[next] < node.label)
      ++next;
    if (next < vars.size() && vars[next] == node.label) {
      n = node.hi;
      ++next;
    } else {
      n = node.lo;
    }
  }
  if (kind == DiagramKind::zdd && next < vars.size())
    return false;
  return n == TOP;
}

std::string DiagramStore::export_dot(NodeRef root, DiagramKind kind) const {
  std::ostringstream out;
  out << "digraph " << (kind == DiagramKind::bdd ? "bdd" : "zdd") << " {\n";
  std::vector<std::uint32_t> order;
  std::unordered_set<std::uint32_t> seen;
  std::vector<NodeRef> stack{root};
  bool has_bot = false, has_top = false;
  while (!stack.empty()) {
    NodeRef n = stack.back();
    stack.pop_back();
    if (n == BOT) {
      has_bot = true;
      continue;
    }
    if (n == TOP) {
      has_top = true;
      continue;
    }
    if (!seen.insert(n.id).second)
      continue;
    order.push_back(n.id);
    stack.push_back(hi(n));
    stack.push_back(lo(n));
  }
  if (has_bot)
    out << "  n0 [label=\"⊥\", shape=box];\n";
  if (has_top)
    out << "  n1 [label=\"⊤\", shape=box];\n";
  for (std::uint32_t id : order)
    out << "  n" << id << " [label=\"e" << nodes_[id].label << "\", shape=circle];\n";
  for (std::uint32_t id : order) {
    out << "  n" << id << " -> n" << nodes_[id].lo.id << " [style=dashed];\n";
    out << "  n" << id << " -> n" << nodes_[id].hi.id << ";\n";
  }
  out << "}\n";
  return out.str();
}

} // namespace tvnrel
