#include "zddgb/zdd.hpp"

#include <algorithm>
#include <string>
#include <utility>

namespace zddgb {

namespace {
constexpr std::size_t kMinCache = std::size_t{1} << 12;
constexpr std::size_t kMaxCache = std::size_t{1} << 20;
}  // namespace

VarIndex Zdd::top() const {
  if (is_terminal()) throw ZddError("top() called on a terminal");
  return mgr_->var_of(id_);
}

Zdd Zdd::then_branch() const {
  if (is_terminal()) throw ZddError("then_branch() called on a terminal");
  return {mgr_, mgr_->then_of(id_)};
}

Zdd Zdd::else_branch() const {
  if (is_terminal()) throw ZddError("else_branch() called on a terminal");
  return {mgr_, mgr_->else_of(id_)};
}

ZddManager::ZddManager(std::size_t num_vars) : num_vars_(num_vars) {
  nodes_.push_back({kTerminalVar, kEmptyNode, kEmptyNode});
  nodes_.push_back({kTerminalVar, kBaseNode, kBaseNode});
}

void ZddManager::reset() {
  nodes_.resize(2);
  unique_.clear();
  cache_.clear();
  cache_used_ = 0;
  counts_.clear();
}

void ZddManager::check_var(VarIndex v) const {
  if (v >= num_vars_)
    throw ZddError("variable index " + std::to_string(v) + " out of range");
}

void ZddManager::check_same(const Zdd& z) const {
  if (&z.manager() != this) throw ZddError("diagram belongs to another manager");
}

NodeId ZddManager::node(VarIndex v, NodeId t, NodeId e) {
  if (t == kEmptyNode) return e;
  Key key{v, t, e, 0};
  auto it = unique_.find(key);
  if (it != unique_.end()) return it->second;
  auto id = static_cast<NodeId>(nodes_.size());
  nodes_.push_back({v, t, e});
  unique_.emplace(key, id);
  return id;
}

Zdd ZddManager::make_node(VarIndex v, Zdd t, Zdd e) {
  check_same(t);
  check_same(e);
  check_var(v);
  if (var_of(t.id()) <= v || var_of(e.id()) <= v)
    throw ZddError("children must have top variables below the new node");
  return wrap(node(v, t.id(), e.id()));
}

Zdd ZddManager::singleton(VarIndex v) {
  check_var(v);
  return wrap(node(v, kBaseNode, kEmptyNode));
}

Zdd ZddManager::single_set(std::vector<VarIndex> vars) {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  NodeId r = kBaseNode;
  for (auto it = vars.rbegin(); it != vars.rend(); ++it) {
    check_var(*it);
    r = node(*it, r, kEmptyNode);
  }
  return wrap(r);
}

Zdd ZddManager::power_set() {
  NodeId r = kBaseNode;
  for (std::size_t i = num_vars_; i-- > 0;)
    r = node(static_cast<VarIndex>(i), r, r);
  return wrap(r);
}

std::optional<NodeId> ZddManager::cache_find(std::uint32_t tag, NodeId a,
                                             NodeId b, NodeId c) const {
  if (cache_.empty()) return std::nullopt;
  Key k{tag, a, b, c};
  const auto& e = cache_[cache_slot(k)];
  if (e.key == k) return e.value;
  return std::nullopt;
}

void ZddManager::cache_put(std::uint32_t tag, NodeId a, NodeId b, NodeId c,
                           NodeId result) {
  if (cache_.empty() || (cache_.size() < kMaxCache && cache_used_ * 2 > cache_.size()))
    grow_cache();
  Key k{tag, a, b, c};
  auto& e = cache_[cache_slot(k)];
  if (e.key.a == 0) ++cache_used_;
  e = {k, result};
}

std::size_t ZddManager::cache_slot(const Key& k) const {
  std::uint64_t h = k.a * 0x9e3779b97f4a7c15ULL;
  h ^= (std::uint64_t{k.b} << 32 | k.c) * 0xc2b2ae3d27d4eb4fULL;
  h ^= k.d * 0x165667b19e3779f9ULL;
  h ^= h >> 29;
  return static_cast<std::size_t>(h) & (cache_.size() - 1);
}

void ZddManager::grow_cache() {
  auto old = std::move(cache_);
  cache_.assign(old.empty() ? kMinCache : old.size() * 2, CacheEntry{});
  cache_used_ = 0;
  for (const auto& e : old) {
    if (e.key.a == 0) continue;
    auto& slot = cache_[cache_slot(e.key)];
    if (slot.key.a == 0) ++cache_used_;
    slot = e;
  }
}

namespace {
constexpr auto tag(OpTag t) { return static_cast<std::uint32_t>(t); }
}  // namespace

NodeId ZddManager::unite(NodeId f, NodeId g) {
  if (f == kEmptyNode) return g;
  if (g == kEmptyNode || f == g) return f;
  if (f > g) std::swap(f, g);
  if (auto c = cache_find(tag(OpTag::kUnion), f, g)) return *c;
  VarIndex vf = var_of(f), vg = var_of(g);
  NodeId r;
  if (vf < vg) {
    r = node(vf, then_of(f), unite(else_of(f), g));
  } else if (vf > vg) {
    r = node(vg, then_of(g), unite(f, else_of(g)));
  } else {
    NodeId hi = unite(then_of(f), then_of(g));
    r = node(vf, hi, unite(else_of(f), else_of(g)));
  }
  cache_put(tag(OpTag::kUnion), f, g, 0, r);
  return r;
}

NodeId ZddManager::intersect(NodeId f, NodeId g) {
  if (f == kEmptyNode || g == kEmptyNode) return kEmptyNode;
  if (f == g) return f;
  if (f > g) std::swap(f, g);
  if (auto c = cache_find(tag(OpTag::kIntersect), f, g)) return *c;
  VarIndex vf = var_of(f), vg = var_of(g);
  NodeId r;
  if (vf < vg) {
    r = intersect(else_of(f), g);
  } else if (vf > vg) {
    r = intersect(f, else_of(g));
  } else {
    NodeId hi = intersect(then_of(f), then_of(g));
    r = node(vf, hi, intersect(else_of(f), else_of(g)));
  }
  cache_put(tag(OpTag::kIntersect), f, g, 0, r);
  return r;
}

NodeId ZddManager::diff(NodeId f, NodeId g) {
  if (f == kEmptyNode || f == g) return kEmptyNode;
  if (g == kEmptyNode) return f;
  if (auto c = cache_find(tag(OpTag::kDiff), f, g)) return *c;
  VarIndex vf = var_of(f), vg = var_of(g);
  NodeId r;
  if (vf < vg) {
    r = node(vf, then_of(f), diff(else_of(f), g));
  } else if (vf > vg) {
    r = diff(f, else_of(g));
  } else {
    NodeId hi = diff(then_of(f), then_of(g));
    r = node(vf, hi, diff(else_of(f), else_of(g)));
  }
  cache_put(tag(OpTag::kDiff), f, g, 0, r);
  return r;
}

NodeId ZddManager::sym_diff(NodeId f, NodeId g) {
  if (f == kEmptyNode) return g;
  if (g == kEmptyNode) return f;
  if (f == g) return kEmptyNode;
  if (f > g) std::swap(f, g);
  if (auto c = cache_find(tag(OpTag::kSymDiff), f, g)) return *c;
  VarIndex vf = var_of(f), vg = var_of(g);
  NodeId r;
  if (vf < vg) {
    r = node(vf, then_of(f), sym_diff(else_of(f), g));
  } else if (vf > vg) {
    r = node(vg, then_of(g), sym_diff(f, else_of(g)));
  } else {
    NodeId hi = sym_diff(then_of(f), then_of(g));
    r = node(vf, hi, sym_diff(else_of(f), else_of(g)));
  }
  cache_put(tag(OpTag::kSymDiff), f, g, 0, r);
  return r;
}

NodeId ZddManager::subset1(NodeId z, VarIndex v) {
  VarIndex top = var_of(z);
  if (top > v) return kEmptyNode;  // includes terminals
  if (top == v) return then_of(z);
  if (auto c = cache_find(tag(OpTag::kSubset1), z, v)) return *c;
  NodeId hi = subset1(then_of(z), v);
  NodeId r = node(top, hi, subset1(else_of(z), v));
  cache_put(tag(OpTag::kSubset1), z, v, 0, r);
  return r;
}

NodeId ZddManager::subset0(NodeId z, VarIndex v) {
  VarIndex top = var_of(z);
  if (top > v) return z;
  if (top == v) return else_of(z);
  if (auto c = cache_find(tag(OpTag::kSubset0), z, v)) return *c;
  NodeId hi = subset0(then_of(z), v);
  NodeId r = node(top, hi, subset0(else_of(z), v));
  cache_put(tag(OpTag::kSubset0), z, v, 0, r);
  return r;
}

NodeId ZddManager::change(NodeId z, VarIndex v) {
  if (z == kEmptyNode) return kEmptyNode;
  VarIndex top = var_of(z);
  if (top > v) return node(v, z, kEmptyNode);
  if (top == v) return node(v, else_of(z), then_of(z));
  if (auto c = cache_find(tag(OpTag::kChange), z, v)) return *c;
  NodeId hi = change(then_of(z), v);
  NodeId r = node(top, hi, change(else_of(z), v));
  cache_put(tag(OpTag::kChange), z, v, 0, r);
  return r;
}

NodeId ZddManager::divisors_within(NodeId s, NodeId m) {
  if (s <= kBaseNode) return s;
  if (m == kBaseNode) return contains_base(s) ? kBaseNode : kEmptyNode;
  if (auto c = cache_find(tag(OpTag::kDivisors), s, m)) return *c;
  VarIndex vs = var_of(s), vm = var_of(m);
  NodeId r;
  if (vs < vm) {
    r = divisors_within(else_of(s), m);
  } else if (vs > vm) {
    r = divisors_within(s, then_of(m));
  } else {
    NodeId rest = then_of(m);
    NodeId hi = divisors_within(then_of(s), rest);
    r = node(vs, hi, divisors_within(else_of(s), rest));
  }
  cache_put(tag(OpTag::kDivisors), s, m, 0, r);
  return r;
}

bool ZddManager::contains_base(NodeId z) const {
  while (z > kBaseNode) z = else_of(z);
  return z == kBaseNode;
}

Zdd ZddManager::unite(Zdd f, Zdd g) {
  check_same(f);
  check_same(g);
  return wrap(unite(f.id(), g.id()));
}

Zdd ZddManager::intersect(Zdd f, Zdd g) {
  check_same(f);
  check_same(g);
  return wrap(intersect(f.id(), g.id()));
}

Zdd ZddManager::diff(Zdd f, Zdd g) {
  check_same(f);
  check_same(g);
  return wrap(diff(f.id(), g.id()));
}

Zdd ZddManager::sym_diff(Zdd f, Zdd g) {
  check_same(f);
  check_same(g);
  return wrap(sym_diff(f.id(), g.id()));
}

Zdd ZddManager::subset1(Zdd z, VarIndex v) {
  check_same(z);
  check_var(v);
  return wrap(subset1(z.id(), v));
}

Zdd ZddManager::subset0(Zdd z, VarIndex v) {
  check_same(z);
  check_var(v);
  return wrap(subset0(z.id(), v));
}

Zdd ZddManager::change(Zdd z, VarIndex v) {
  check_same(z);
  check_var(v);
  return wrap(change(z.id(), v));
}

Zdd ZddManager::divisors_within(Zdd lead_set, Zdd m) {
  check_same(lead_set);
  check_same(m);
  if (count_paths(m) != 1) throw ZddError("divisors_within expects a single set");
  return wrap(divisors_within(lead_set.id(), m.id()));
}

Zdd ZddManager::divisors_within(Zdd lead_set, const Path& m) {
  return divisors_within(lead_set, single_set(path_vars(m)));
}

Zdd ZddManager::support(Zdd z) {
  check_same(z);
  std::vector<VarIndex> vars;
  std::vector<NodeId> stack{z.id()};
  std::vector<bool> seen(nodes_.size(), false);
  while (!stack.empty()) {
    NodeId n = stack.back();
    stack.pop_back();
    if (n <= kBaseNode || seen[n]) continue;
    seen[n] = true;
    vars.push_back(var_of(n));
    stack.push_back(then_of(n));
    stack.push_back(else_of(n));
  }
  return single_set(std::move(vars));
}

std::uint64_t ZddManager::count_paths(Zdd z) {
  check_same(z);
  // Iterative post-order to avoid a separate recursive helper.
  std::vector<std::pair<NodeId, bool>> stack{{z.id(), false}};
  while (!stack.empty()) {
    auto [n, expanded] = stack.back();
    stack.pop_back();
    if (n <= kBaseNode || counts_.contains(n)) continue;
    if (expanded) {
      auto get = [&](NodeId c) -> std::uint64_t {
        return c <= kBaseNode ? c : counts_.at(c);
      };
      counts_.emplace(n, get(then_of(n)) + get(else_of(n)));
    } else {
      stack.push_back({n, true});
      stack.push_back({then_of(n), false});
      stack.push_back({else_of(n), false});
    }
  }
  return z.id() <= kBaseNode ? z.id() : counts_.at(z.id());
}

Path ZddManager::first_path(Zdd z) const {
  if (z.is_empty()) throw ZddError("first_path of the empty family");
  Path p;
  for (NodeId n = z.id(); n != kBaseNode; n = then_of(n)) p.nodes.push_back(n);
  return p;
}

std::optional<Path> ZddManager::succ_path(const Path& p) const {
  for (std::size_t t = p.nodes.size(); t-- > 0;) {
    NodeId alt = else_of(p.nodes[t]);
    if (alt == kEmptyNode) continue;
    Path q;
    q.nodes.assign(p.nodes.begin(), p.nodes.begin() + static_cast<long>(t));
    for (NodeId n = alt; n != kBaseNode; n = then_of(n)) q.nodes.push_back(n);
    return q;
  }
  return std::nullopt;
}

std::vector<VarIndex> ZddManager::path_vars(const Path& p) const {
  std::vector<VarIndex> vars;
  vars.reserve(p.nodes.size());
  for (NodeId n : p.nodes) vars.push_back(var_of(n));
  return vars;
}

std::vector<std::vector<VarIndex>> ZddManager::enumerate(Zdd z) const {
  std::vector<std::vector<VarIndex>> out;
  if (z.is_empty()) return out;
  std::optional<Path> p = first_path(z);
  while (p) {
    out.push_back(path_vars(*p));
    p = succ_path(*p);
  }
  return out;
}

std::vector<ZddManager::NodeView> ZddManager::node_table() const {
  std::vector<NodeView> out;
  out.reserve(nodes_.size());
  for (std::size_t i = 2; i < nodes_.size(); ++i)
    out.push_back({static_cast<NodeId>(i), nodes_[i].var, nodes_[i].hi,
                   nodes_[i].lo});
  return out;
}

}  // namespace zddgb
