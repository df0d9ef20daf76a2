#include "zddgb/boolpoly.hpp"

#include <algorithm>
#include <iterator>
#include <sstream>

#include "zddgb/tags.hpp"
#include "zddgb/text.hpp"

namespace zddgb {

// ---------------------------------------------------------------- Ordering

Ordering Ordering::block(std::vector<OrderBlock> blocks) {
  if (blocks.empty()) throw std::invalid_argument("block ordering needs at least one block");
  VarIndex prev = 0;
  for (const auto& b : blocks) {
    if (b.kind != OrderKind::kDlex && b.kind != OrderKind::kDpAsc)
      throw std::invalid_argument("only dlex and dp_asc blocks are allowed");
    if (b.end <= prev) throw std::invalid_argument("block ends must increase");
    prev = b.end;
  }
  return Ordering(OrderKind::kBlock, std::move(blocks));
}

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

std::optional<OrderKind> simple_kind(std::string_view s) {
  if (s == "lp" || s == "lex") return OrderKind::kLex;
  if (s == "dlex" || s == "Dp") return OrderKind::kDlex;
  if (s == "dp_asc") return OrderKind::kDpAsc;
  return std::nullopt;
}

const char* kind_name(OrderKind k) {
  switch (k) {
    case OrderKind::kLex: return "lp";
    case OrderKind::kDlex: return "dlex";
    case OrderKind::kDpAsc: return "dp_asc";
    case OrderKind::kBlock: return "block";
  }
  return "?";
}

}  // namespace

Ordering Ordering::parse(std::string_view text) {
  text = trim(text);
  if (auto k = simple_kind(text)) {
    switch (*k) {
      case OrderKind::kLex: return lex();
      case OrderKind::kDlex: return dlex();
      default: return dp_asc();
    }
  }
  if (text.substr(0, 6) == "block(" && text.back() == ')') {
    std::vector<OrderBlock> blocks;
    std::string_view body = text.substr(6, text.size() - 7);
    while (!body.empty()) {
      auto comma = body.find(',');
      auto item = trim(body.substr(0, comma));
      body = comma == std::string_view::npos ? std::string_view{} : body.substr(comma + 1);
      auto colon = item.find(':');
      if (colon == std::string_view::npos)
        throw std::invalid_argument("block entry needs kind:end");
      auto kind = simple_kind(trim(item.substr(0, colon)));
      if (!kind || *kind == OrderKind::kLex)
        throw std::invalid_argument("bad block kind '" + std::string(item.substr(0, colon)) + "'");
      std::string num(trim(item.substr(colon + 1)));
      if (num.empty() || !std::all_of(num.begin(), num.end(), ::isdigit))
        throw std::invalid_argument("bad block end '" + num + "'");
      blocks.push_back({*kind, static_cast<VarIndex>(std::stoul(num))});
    }
    return block(std::move(blocks));
  }
  throw std::invalid_argument("unknown ordering '" + std::string(text) + "'");
}

std::vector<OrderBlock> Ordering::segments(std::size_t n) const {
  if (kind_ == OrderKind::kBlock) return blocks_;
  return {{kind_, static_cast<VarIndex>(n)}};
}

void Ordering::validate(std::size_t n) const {
  if (kind_ == OrderKind::kBlock && blocks_.back().end != n)
    throw std::invalid_argument("block ordering covers " + std::to_string(blocks_.back().end) +
                                " variables, ring has " + std::to_string(n));
}

std::string Ordering::name() const {
  if (kind_ != OrderKind::kBlock) return kind_name(kind_);
  std::string s = "block(";
  for (std::size_t i = 0; i < blocks_.size(); ++i) {
    if (i) s += ",";
    s += kind_name(blocks_[i].kind);
    s += ":" + std::to_string(blocks_[i].end);
  }
  return s + ")";
}

// ---------------------------------------------------------------- BoolRing

namespace {
std::vector<std::string> default_names(std::size_t n) {
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  return names;
}
}  // namespace

BoolRing::BoolRing(std::vector<std::string> names, Ordering ord)
    : names_(std::move(names)), ordering_(std::move(ord)) {
  if (names_.empty()) throw std::invalid_argument("ring needs at least one variable");
  std::vector<std::string> sorted = names_;
  std::sort(sorted.begin(), sorted.end());
  if (std::adjacent_find(sorted.begin(), sorted.end()) != sorted.end())
    throw std::invalid_argument("duplicate variable name");
  ordering_.validate(names_.size());
  mgr_ = std::make_unique<ZddManager>(names_.size());
}

BoolRing::BoolRing(std::size_t n, Ordering ord) : BoolRing(default_names(n), std::move(ord)) {}

std::optional<VarIndex> BoolRing::find(std::string_view name) const {
  for (std::size_t i = 0; i < names_.size(); ++i)
    if (names_[i] == name) return static_cast<VarIndex>(i);
  return std::nullopt;
}

void BoolRing::set_ordering(Ordering ord) {
  ord.validate(names_.size());
  ordering_ = std::move(ord);
}

BoolPoly BoolRing::zero() const { return {this, kEmptyNode}; }
BoolPoly BoolRing::one() const { return {this, kBaseNode}; }
BoolPoly BoolRing::variable(VarIndex v) const { return {this, mgr_->singleton(v).id()}; }

BoolPoly BoolRing::from_diagram(Zdd z) const {
  if (&z.manager() != mgr_.get()) throw RingMismatch();
  return {this, z.id()};
}

BoolPoly BoolRing::from_terms(const std::vector<std::vector<VarIndex>>& terms) const {
  NodeId acc = kEmptyNode;
  for (const auto& t : terms) acc = mgr_->sym_diff(acc, mgr_->single_set(t).id());
  return {this, acc};
}

BoolMonomial BoolRing::monomial(std::vector<VarIndex> vars) const {
  std::sort(vars.begin(), vars.end());
  vars.erase(std::unique(vars.begin(), vars.end()), vars.end());
  return BoolMonomial(this, std::move(vars));
}

namespace {
struct BoolBuilder {
  const BoolRing& ring;
  BoolPoly constant(std::int64_t k) { return (k & 1) ? ring.one() : ring.zero(); }
  std::optional<BoolPoly> variable(std::string_view name) {
    if (auto v = ring.find(name)) return ring.variable(*v);
    return std::nullopt;
  }
  BoolPoly add(BoolPoly a, BoolPoly b) { return a + b; }
  BoolPoly sub(BoolPoly a, BoolPoly b) { return a + b; }
  BoolPoly mul(BoolPoly a, BoolPoly b) { return a * b; }
  BoolPoly neg(BoolPoly a) { return a; }
  BoolPoly power(BoolPoly a, unsigned e) { return e == 0 ? ring.one() : a; }
};
}  // namespace

BoolPoly BoolRing::parse(std::string_view text, std::size_t line) const {
  BoolBuilder b{*this};
  ExprReader<BoolBuilder> reader(text, b, line);
  return reader.read();
}

// ---------------------------------------------------------------- BoolPoly

std::uint64_t BoolPoly::length() const { return ring_->manager().count_paths(diagram()); }

BoolMonomial::BoolMonomial(const BoolRing* ring, std::vector<VarIndex> sorted_vars)
    : ring_(ring), vars_(std::move(sorted_vars)) {
  NodeId r = kBaseNode;
  for (auto it = vars_.rbegin(); it != vars_.rend(); ++it)
    r = ring_->manager().node(*it, r, kEmptyNode);
  id_ = r;
}

bool BoolMonomial::divides(const BoolMonomial& other) const {
  return std::includes(other.vars_.begin(), other.vars_.end(), vars_.begin(), vars_.end());
}

BoolMonomial BoolMonomial::lcm(const BoolMonomial& other) const {
  std::vector<VarIndex> out;
  std::set_union(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                 std::back_inserter(out));
  return BoolMonomial(ring_, std::move(out));
}

BoolMonomial BoolMonomial::operator/(const BoolMonomial& other) const {
  std::vector<VarIndex> out;
  std::set_difference(vars_.begin(), vars_.end(), other.vars_.begin(), other.vars_.end(),
                      std::back_inserter(out));
  return BoolMonomial(ring_, std::move(out));
}

bool BoolMonomial::coprime(const BoolMonomial& other) const {
  auto a = vars_.begin(), b = other.vars_.begin();
  while (a != vars_.end() && b != other.vars_.end()) {
    if (*a == *b) return false;
    if (*a < *b) ++a; else ++b;
  }
  return true;
}

// ---------------------------------------------------------------- arithmetic

namespace {

void same_ring(const BoolPoly& f, const BoolPoly& g) {
  if (&f.ring() != &g.ring()) throw RingMismatch();
}

NodeId mul_rec(ZddManager& m, NodeId f, NodeId g) {
  if (f == kEmptyNode || g == kEmptyNode) return kEmptyNode;
  if (f == kBaseNode) return g;
  if (g == kBaseNode || f == g) return f;
  if (f > g) std::swap(f, g);
  if (auto c = m.cache_find(tags::kMul, f, g)) return *c;
  VarIndex vf = m.var_of(f), vg = m.var_of(g);
  VarIndex v = std::min(vf, vg);
  NodeId f1 = vf == v ? m.then_of(f) : kEmptyNode;
  NodeId f0 = vf == v ? m.else_of(f) : f;
  NodeId g1 = vg == v ? m.then_of(g) : kEmptyNode;
  NodeId g0 = vg == v ? m.else_of(g) : g;
  // f1*g1 + f1*g0 + f0*g1 = (f1+f0)*(g1+g0) + f0*g0
  NodeId low = mul_rec(m, f0, g0);
  NodeId both = mul_rec(m, m.sym_diff(f1, f0), m.sym_diff(g1, g0));
  NodeId r = m.node(v, m.sym_diff(both, low), low);
  m.cache_put(tags::kMul, f, g, 0, r);
  return r;
}

NodeId nf_mono_rec(ZddManager& m, NodeId f, NodeId g) {
  if (f == kEmptyNode || g == kEmptyNode) return f;
  if (m.contains_base(g)) return kEmptyNode;
  if (f == kBaseNode) return f;
  VarIndex vf = m.var_of(f);
  while (m.var_of(g) < vf) g = m.else_of(g);
  if (g == kEmptyNode) return f;
  if (m.contains_base(g)) return kEmptyNode;
  if (auto c = m.cache_find(tags::kNfMono, f, g)) return *c;
  VarIndex vg = m.var_of(g);
  NodeId r;
  if (vg > vf) {
    r = m.node(vf, nf_mono_rec(m, m.then_of(f), g), nf_mono_rec(m, m.else_of(f), g));
  } else {
    NodeId t = nf_mono_rec(m, nf_mono_rec(m, m.then_of(f), m.else_of(g)), m.then_of(g));
    r = m.node(vf, t, nf_mono_rec(m, m.else_of(f), m.else_of(g)));
  }
  m.cache_put(tags::kNfMono, f, g, 0, r);
  return r;
}

}  // namespace

BoolPoly add(const BoolPoly& f, const BoolPoly& g) {
  same_ring(f, g);
  return {&f.ring(), f.ring().manager().sym_diff(f.id(), g.id())};
}

BoolPoly mul_boolean(const BoolPoly& f, const BoolPoly& g) {
  same_ring(f, g);
  return {&f.ring(), mul_rec(f.ring().manager(), f.id(), g.id())};
}

BoolPoly mul_var(const BoolPoly& f, VarIndex v) {
  ZddManager& m = f.ring().manager();
  NodeId merged = m.sym_diff(m.subset1(f.id(), v), m.subset0(f.id(), v));
  return {&f.ring(), m.change(merged, v)};
}

BoolPoly mul_monomial(const BoolPoly& f, const BoolMonomial& mono) {
  if (&f.ring() != &mono.ring()) throw RingMismatch();
  BoolPoly r = f;
  for (VarIndex v : mono.vars()) r = mul_var(r, v);
  return r;
}

BoolPoly quotient_by_monomial(const BoolPoly& f, const BoolMonomial& mono) {
  if (&f.ring() != &mono.ring()) throw RingMismatch();
  ZddManager& m = f.ring().manager();
  NodeId r = f.id();
  for (auto it = mono.vars().rbegin(); it != mono.vars().rend() && r != kEmptyNode; ++it)
    r = m.subset1(r, *it);
  return {&f.ring(), r};
}

BoolPoly nf_monomial_set(const BoolPoly& f, Zdd monomials) {
  if (&monomials.manager() != &f.ring().manager()) throw RingMismatch();
  return {&f.ring(), nf_mono_rec(f.ring().manager(), f.id(), monomials.id())};
}

NodeId nf_monomial_set(ZddManager& m, NodeId f, NodeId monomials) {
  return nf_mono_rec(m, f, monomials);
}

// ---------------------------------------------------------------- degrees

int block_deg(const BoolRing& ring, NodeId f, VarIndex end) {
  if (f == kEmptyNode) return -1;
  ZddManager& m = ring.manager();
  if (f == kBaseNode || m.var_of(f) >= end) return 0;
  if (auto c = m.cache_find(tags::kBlockDeg, f, end)) return static_cast<int>(*c);
  int r = std::max(block_deg(ring, m.then_of(f), end) + 1, block_deg(ring, m.else_of(f), end));
  m.cache_put(tags::kBlockDeg, f, end, 0, static_cast<NodeId>(r));
  return r;
}

int deg(const BoolPoly& f) {
  return std::max(0, block_deg(f.ring(), f.id(), static_cast<VarIndex>(f.ring().num_vars())));
}

namespace {
int deg_bounded_rec(ZddManager& m, NodeId f, int bound) {
  if (f <= kBaseNode || bound <= 0) return 0;
  if (auto c = m.cache_find(tags::kDegBounded, f, static_cast<NodeId>(bound)))
    return static_cast<int>(*c);
  int r = deg_bounded_rec(m, m.then_of(f), bound - 1) + 1;
  if (r < bound) r = std::max(r, deg_bounded_rec(m, m.else_of(f), bound));
  m.cache_put(tags::kDegBounded, f, static_cast<NodeId>(bound), 0, static_cast<NodeId>(r));
  return r;
}
}  // namespace

int deg_bounded(const BoolPoly& f, int bound) {
  return deg_bounded_rec(f.ring().manager(), f.id(), bound);
}

// ---------------------------------------------------------------- ordering

BoolMonomial lead(const BoolPoly& f, const Ordering& ord) {
  if (f.is_zero()) throw std::invalid_argument("lead of the zero polynomial");
  const BoolRing& ring = f.ring();
  ZddManager& m = ring.manager();
  std::vector<VarIndex> vars;
  NodeId node = f.id();
  for (const OrderBlock& seg : ord.segments(ring.num_vars())) {
    while (node > kBaseNode && m.var_of(node) < seg.end) {
      bool take_then = true;
      if (seg.kind == OrderKind::kDlex) {
        take_then = block_deg(ring, node, seg.end) == block_deg(ring, m.then_of(node), seg.end) + 1;
      } else if (seg.kind == OrderKind::kDpAsc) {
        NodeId e = m.else_of(node);
        take_then = !(e != kEmptyNode &&
                      block_deg(ring, e, seg.end) == block_deg(ring, node, seg.end));
      }
      if (take_then) {
        vars.push_back(m.var_of(node));
        node = m.then_of(node);
      } else {
        node = m.else_of(node);
      }
    }
  }
  return BoolMonomial(&ring, std::move(vars));
}

std::strong_ordering compare_terms(const std::vector<VarIndex>& a,
                                   const std::vector<VarIndex>& b, const Ordering& ord,
                                   std::size_t n) {
  auto ia = a.begin(), ib = b.begin();
  for (const OrderBlock& seg : ord.segments(n)) {
    auto ea = std::lower_bound(ia, a.end(), seg.end);
    auto eb = std::lower_bound(ib, b.end(), seg.end);
    if (seg.kind != OrderKind::kLex) {
      auto da = ea - ia, db = eb - ib;
      if (da != db) return da <=> db;
    }
    // first variable present in exactly one of the two restricted terms
    auto pa = ia, pb = ib;
    while (pa != ea && pb != eb && *pa == *pb) ++pa, ++pb;
    if (pa != ea || pb != eb) {
      bool a_has = pb == eb || (pa != ea && *pa < *pb);
      bool a_greater = seg.kind == OrderKind::kDpAsc ? !a_has : a_has;
      return a_greater ? std::strong_ordering::greater : std::strong_ordering::less;
    }
    ia = ea;
    ib = eb;
  }
  return std::strong_ordering::equal;
}

std::strong_ordering compare_monomials(const BoolMonomial& a, const BoolMonomial& b,
                                       const Ordering& ord) {
  if (a == b) return std::strong_ordering::equal;
  return compare_terms(a.vars(), b.vars(), ord, a.ring().num_vars());
}

std::vector<BoolMonomial> terms(const BoolPoly& f, const Ordering& ord) {
  const BoolRing& ring = f.ring();
  auto raw = ring.manager().enumerate(f.diagram());
  if (ord.kind() != OrderKind::kLex) {
    std::stable_sort(raw.begin(), raw.end(), [&](const auto& x, const auto& y) {
      return compare_terms(x, y, ord, ring.num_vars()) == std::strong_ordering::greater;
    });
  }
  std::vector<BoolMonomial> out;
  out.reserve(raw.size());
  for (auto& t : raw) out.emplace_back(&ring, std::move(t));
  return out;
}

// ---------------------------------------------------------------- misc

bool eval(const BoolPoly& f, const Point& p) {
  ZddManager& m = f.ring().manager();
  if (p.size() != f.ring().num_vars()) throw std::invalid_argument("point has wrong length");
  absl::flat_hash_map<NodeId, bool> memo;
  auto rec = [&](auto&& self, NodeId z) -> bool {
    if (z <= kBaseNode) return z == kBaseNode;
    if (auto it = memo.find(z); it != memo.end()) return it->second;
    bool r = self(self, m.else_of(z));
    if (p[m.var_of(z)]) r ^= self(self, m.then_of(z));
    memo.emplace(z, r);
    return r;
  };
  return rec(rec, f.id());
}

BoolPoly spoly(const BoolPoly& f, const BoolPoly& g, const Ordering& ord) {
  same_ring(f, g);
  if (f.is_zero() || g.is_zero()) throw std::invalid_argument("spoly of the zero polynomial");
  BoolMonomial lf = lead(f, ord), lg = lead(g, ord);
  BoolMonomial l = lf.lcm(lg);
  return mul_monomial(f, l / lf) + mul_monomial(g, l / lg);
}

std::vector<VarIndex> vars_of(const BoolPoly& f) {
  ZddManager& m = f.ring().manager();
  Zdd s = m.support(f.diagram());
  if (s.is_empty()) return {};
  return m.path_vars(m.first_path(s));
}

std::string to_string(const BoolMonomial& mono) {
  if (mono.vars().empty()) return "1";
  std::string s;
  for (std::size_t i = 0; i < mono.vars().size(); ++i) {
    if (i) s += "*";
    s += mono.ring().name(mono.vars()[i]);
  }
  return s;
}

std::string to_string(const BoolPoly& f, const Ordering& ord) {
  if (f.is_zero()) return "0";
  std::string s;
  bool first = true;
  for (const auto& t : terms(f, ord)) {
    if (!first) s += " + ";
    first = false;
    s += to_string(t);
  }
  return s;
}

}  // namespace zddgb
