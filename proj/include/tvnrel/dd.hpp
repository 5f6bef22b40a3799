/// @file dd.hpp
/// @brief Hash-consed decision-diagram store shared by BDDs and ZDDs.
///
/// Nodes carry a variable label in 1..m and two children. The store does not
/// know whether a node is read as a BDD or a ZDD node: the kind travels with
/// the root handle. A level skipped between a node and its child is a
/// don't-care under BDD semantics and an excluded variable under ZDD semantics.

#pragma once

#include <cstddef>
#include <cstdint>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

#include "tvnrel/deadline.hpp"
#include "tvnrel/temporal_graph.hpp"

namespace tvnrel {

using BigCount = boost::multiprecision::cpp_int;
using Var = std::uint32_t;

enum class DiagramKind { bdd, zdd };

/// Opaque handle into a DiagramStore.
struct NodeRef {
  std::uint32_t id = 0;

  [[nodiscard]] bool is_terminal() const noexcept { return id < 2; }
  friend bool operator==(NodeRef, NodeRef) = default;
  friend auto operator<=>(NodeRef, NodeRef) = default;
};

inline constexpr NodeRef BOT{0};
inline constexpr NodeRef TOP{1};

/// Label of the terminals; compares greater than every variable.
inline constexpr Var terminal_label = std::numeric_limits<Var>::max();

class OrderingError : public std::logic_error {
public:
  using std::logic_error::logic_error;
};

class LimitExceeded : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// The store's tables would outgrow its memory budget.
class MemoryLimitExceeded : public std::runtime_error {
public:
  MemoryLimitExceeded() : std::runtime_error("memory limit exceeded") {}
};

class DiagramStore {
public:
  DiagramStore();

  /// Polled while nodes and memo entries are created. The default memory
  /// limit is half of physical memory.
  void set_deadline(const Deadline &deadline) { deadline_ = deadline; }
  void set_memory_limit(std::size_t bytes) { memory_limit_ = bytes; }
  /// Bytes held by nodes and tables, plus the next doubling of the largest.
  [[nodiscard]] std::size_t memory_bytes() const;
  static std::size_t default_memory_limit();

  /// Reduced, hash-consed node. Applies the deletion rule of `kind`.
  NodeRef make_node(Var label, NodeRef lo, NodeRef hi, DiagramKind kind);
  /// Unreduced node, never shared. Used for top-down construction output.
  NodeRef make_raw_node(Var label, NodeRef lo, NodeRef hi);

  [[nodiscard]] Var label(NodeRef n) const { return nodes_[n.id].label; }
  [[nodiscard]] NodeRef lo(NodeRef n) const { return nodes_[n.id].lo; }
  [[nodiscard]] NodeRef hi(NodeRef n) const { return nodes_[n.id].hi; }

  /// Total nodes allocated, terminals included.
  [[nodiscard]] std::size_t size() const noexcept { return nodes_.size(); }

  /// Non-terminal nodes reachable from `root`.
  [[nodiscard]] std::size_t node_count(NodeRef root) const;
  /// Arcs between reachable nodes (two per non-terminal node).
  [[nodiscard]] std::size_t arc_count(NodeRef root) const;

  /// Canonical reduced diagram of the same family/function.
  NodeRef reduce(NodeRef root, DiagramKind kind);

  /// Disjunction of two BDDs.
  NodeRef or_apply(NodeRef a, NodeRef b);
  /// Union of two ZDD families.
  NodeRef zdd_union(NodeRef a, NodeRef b);

  [[nodiscard]] BigCount count_sat(NodeRef root, Var m, DiagramKind kind) const;

  /// Member sets (ZDD) or true-sets of satisfying assignments (BDD, skipped
  /// levels expanded both ways), each sorted, the list in lexicographic
  /// order. Throws LimitExceeded if there are more than `limit` of them.
  [[nodiscard]] std::vector<EdgeSet> enumerate_sets(NodeRef root, Var m, DiagramKind kind,
                                                    std::size_t limit) const;

  [[nodiscard]] std::string export_dot(NodeRef root, DiagramKind kind) const;

  /// Membership test for a single set of variables.
  [[nodiscard]] bool contains(NodeRef root, const EdgeSet &vars, DiagramKind kind) const;

  // Generic memo table for the operations built on top of the store
  // (superset etc.). Keys are caller-defined op codes plus three operands.
  struct OpKey {
    std::uint32_t op, a, b, c;
    friend bool operator==(const OpKey &, const OpKey &) = default;
  };
  struct OpKeyHash {
    std::size_t operator()(const OpKey &k) const noexcept;
  };
  NodeRef *cache_find(const OpKey &key);
  void cache_put(const OpKey &key, NodeRef value);

private:
  struct Node {
    Var label;
    NodeRef lo;
    NodeRef hi;
  };
  NodeRef reduce_rec(NodeRef n, DiagramKind kind);
  void grow_unique();
  void grow_cache();

  std::vector<Node> nodes_;
  // Open addressing with linear probing. unique_ holds node ids (0 = empty
  // slot; terminals are never hashed), cache_ slots with op 0 are empty.
  struct CacheSlot {
    OpKey key;
    NodeRef value;
  };
  std::vector<std::uint32_t> unique_;
  std::size_t unique_count_ = 0;
  std::vector<CacheSlot> cache_;
  std::size_t cache_count_ = 0;

  // Exact memo for a commutative binary operation on non-terminal operands.
  // Key 0 marks an empty slot (operands are never terminals).
  class PairTable {
  public:
    PairTable();
    [[nodiscard]] const NodeRef *find(NodeRef a, NodeRef b) const;
    void insert(NodeRef a, NodeRef b, NodeRef value);
    [[nodiscard]] std::size_t bytes() const { return slots_.capacity() * 16; }

  private:
    struct Slot {
      std::uint64_t key = 0;
      NodeRef value;
    };
    [[nodiscard]] std::size_t home(std::uint64_t key) const {
      return static_cast<std::size_t>((key * 0x9e3779b97f4a7c15ULL) >> shift_);
    }
    void grow();
    std::vector<Slot> slots_;
    unsigned shift_;
    std::size_t count_ = 0;
  };
  PairTable or_table_;
  PairTable union_table_;

  void poll() {
    if ((++work_ & 0xFFFF) == 0)
      check_budget();
  }
  void check_budget() const;
  std::size_t work_ = 0;
  Deadline deadline_;
  std::size_t memory_limit_;
};

/// Op codes used with DiagramStore's shared cache.
enum OpCode : std::uint32_t {
  op_or = 1,
  op_union,
  op_reduce_bdd,
  op_reduce_zdd,
  op_superset_bdd,
  op_superset_zdd,
  op_full_zdd,
};

} // namespace tvnrel
