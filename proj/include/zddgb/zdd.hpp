// Zero-suppressed decision diagrams over a fixed variable order.
//
// Variable index 0 is the topmost (largest) variable.  Along every path from
// the root to a terminal the indices strictly increase.  All nodes are kept
// until ZddManager::reset(); handles are plain (manager, id) pairs.
#pragma once

#include <cstddef>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

#include <absl/container/flat_hash_map.h>

namespace zddgb {

using VarIndex = std::uint32_t;
using NodeId = std::uint32_t;

inline constexpr NodeId kEmptyNode = 0;  // the empty family
inline constexpr NodeId kBaseNode = 1;   // the family {{}}
inline constexpr VarIndex kTerminalVar = 0xffffffffu;

class ZddError : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

class ZddManager;

class Zdd {
 public:
  Zdd() = default;
  Zdd(ZddManager* mgr, NodeId id) : mgr_(mgr), id_(id) {}

  NodeId id() const { return id_; }
  ZddManager& manager() const { return *mgr_; }
  bool valid() const { return mgr_ != nullptr; }

  bool is_empty() const { return id_ == kEmptyNode; }
  bool is_base() const { return id_ == kBaseNode; }
  bool is_terminal() const { return id_ <= kBaseNode; }

  VarIndex top() const;
  Zdd then_branch() const;
  Zdd else_branch() const;

  friend bool operator==(const Zdd& a, const Zdd& b) {
    return a.mgr_ == b.mgr_ && a.id_ == b.id_;
  }

 private:
  ZddManager* mgr_ = nullptr;
  NodeId id_ = kEmptyNode;
};

/// Nodes at which the then-edge is taken, from the root toward the
/// 1-terminal.  The represented set is the set of their variables.
struct Path {
  std::vector<NodeId> nodes;
  bool operator==(const Path&) const = default;
};

enum class OpTag : std::uint32_t {
  kUnion = 1,
  kIntersect,
  kDiff,
  kSymDiff,
  kSubset0,
  kSubset1,
  kChange,
  kDivisors,
  kCountPaths,
  kSupport,
  // Tags from here on belong to higher layers.
  kUserBase = 64,
};

class ZddManager {
 public:
  explicit ZddManager(std::size_t num_vars);
  ZddManager(const ZddManager&) = delete;
  ZddManager& operator=(const ZddManager&) = delete;

  std::size_t num_vars() const { return num_vars_; }

  Zdd empty() { return {this, kEmptyNode}; }
  Zdd base() { return {this, kBaseNode}; }
  Zdd wrap(NodeId id) { return {this, id}; }

  /// {{v}}
  Zdd singleton(VarIndex v);
  /// The single set `vars`; indices need not be sorted.
  Zdd single_set(std::vector<VarIndex> vars);
  /// Power set of {0, ..., num_vars-1}; n decision nodes.
  Zdd power_set();

  /// Checked node construction.  Returns `e` when `t` is empty.
  Zdd make_node(VarIndex v, Zdd t, Zdd e);
  /// Unchecked variant for recursive algorithms that already maintain the
  /// ordering invariant.
  NodeId node(VarIndex v, NodeId t, NodeId e);

  VarIndex var_of(NodeId n) const { return nodes_[n].var; }
  NodeId then_of(NodeId n) const { return nodes_[n].hi; }
  NodeId else_of(NodeId n) const { return nodes_[n].lo; }

  Zdd unite(Zdd f, Zdd g);
  Zdd intersect(Zdd f, Zdd g);
  Zdd diff(Zdd f, Zdd g);
  Zdd sym_diff(Zdd f, Zdd g);
  /// {s \ {v} : v in s in z}
  Zdd subset1(Zdd z, VarIndex v);
  /// {s in z : v not in s}
  Zdd subset0(Zdd z, VarIndex v);
  /// Toggles membership of v in every set.
  Zdd change(Zdd z, VarIndex v);
  /// {s in lead_set : s is a subset of m}; m must be a single set.
  Zdd divisors_within(Zdd lead_set, Zdd m);
  Zdd divisors_within(Zdd lead_set, const Path& m);
  /// Union of all member sets, as a single set.
  Zdd support(Zdd z);

  NodeId unite(NodeId f, NodeId g);
  NodeId intersect(NodeId f, NodeId g);
  NodeId diff(NodeId f, NodeId g);
  NodeId sym_diff(NodeId f, NodeId g);
  NodeId subset1(NodeId z, VarIndex v);
  NodeId subset0(NodeId z, VarIndex v);
  NodeId change(NodeId z, VarIndex v);
  NodeId divisors_within(NodeId s, NodeId m);

  std::uint64_t count_paths(Zdd z);
  bool contains_base(NodeId z) const;

  Path first_path(Zdd z) const;
  /// Successor in the natural path sequence, or nullopt past the last path.
  std::optional<Path> succ_path(const Path& p) const;
  /// The set spelled by a path.
  std::vector<VarIndex> path_vars(const Path& p) const;
  /// Every member of z as a sorted index vector, in natural path order.
  std::vector<std::vector<VarIndex>> enumerate(Zdd z) const;

  // Operation cache shared with higher layers.  Keys are (tag, a, b, c).
  std::optional<NodeId> cache_find(std::uint32_t tag, NodeId a, NodeId b,
                                   NodeId c = 0) const;
  void cache_put(std::uint32_t tag, NodeId a, NodeId b, NodeId c,
                 NodeId result);

  std::size_t node_count() const { return nodes_.size(); }
  std::size_t cache_size() const { return cache_used_; }

  /// Drops all decision nodes and cached results; invalidates handles.
  void reset();

  struct NodeView {
    NodeId id;
    VarIndex var;
    NodeId then_child;
    NodeId else_child;
  };
  std::vector<NodeView> node_table() const;

 private:
  struct Node {
    VarIndex var;
    NodeId hi;
    NodeId lo;
  };
  struct Key {
    std::uint32_t a, b, c, d;
    bool operator==(const Key&) const = default;
    template <typename H>
    friend H AbslHashValue(H h, const Key& k) {
      return H::combine(std::move(h), k.a, k.b, k.c, k.d);
    }
  };

  void check_var(VarIndex v) const;
  void check_same(const Zdd& z) const;

  std::size_t num_vars_;
  std::vector<Node> nodes_;
  absl::flat_hash_map<Key, NodeId> unique_;
  // Lossy direct-mapped table; a slot with tag 0 is empty.
  struct CacheEntry {
    Key key;
    NodeId value;
  };
  std::size_t cache_slot(const Key& k) const;
  void grow_cache();
  std::vector<CacheEntry> cache_;
  std::size_t cache_used_ = 0;
  absl::flat_hash_map<NodeId, std::uint64_t> counts_;
};

}  // namespace zddgb
