#include "zddgb/interp.hpp"

#include <algorithm>
#include <random>
#include <sstream>
#include <stdexcept>

#include "zddgb/tags.hpp"
#include "zddgb/text.hpp"

namespace zddgb {

namespace {

VarIndex top_of(const ZddManager& m, NodeId n) { return m.var_of(n); }

NodeId zeros_rec(ZddManager& m, NodeId p, NodeId s) {
  for (;;) {
    if (p == kEmptyNode) return s;
    if (p == kBaseNode || s == kEmptyNode) return kEmptyNode;
    if (s == kBaseNode) return m.contains_base(p) ? kEmptyNode : kBaseNode;
    // variables above every point only occur as zeros there
    if (top_of(m, p) >= top_of(m, s)) break;
    p = m.else_of(p);
  }
  if (auto c = m.cache_find(tags::kZeros, p, s)) return *c;
  VarIndex i = top_of(m, s);
  NodeId p0 = m.subset0(p, i), p1 = m.subset1(p, i);
  NodeId s0 = m.subset0(s, i), s1 = m.subset1(s, i);
  NodeId z00 = zeros_rec(m, p0, s0);
  NodeId z01 = zeros_rec(m, p0, s1);
  NodeId z11 = zeros_rec(m, p1, s1);
  NodeId r = m.node(i, m.diff(s1, m.sym_diff(z01, z11)), z00);
  m.cache_put(tags::kZeros, p, s, 0, r);
  return r;
}

struct Pf {
  NodeId z, o;
};

Pf add_rec(ZddManager& m, Pf f, Pf g) {
  NodeId dom = m.intersect(m.unite(f.z, f.o), m.unite(g.z, g.o));
  NodeId z = m.unite(m.intersect(f.z, g.z), m.intersect(f.o, g.o));
  NodeId o = m.intersect(m.sym_diff(f.o, g.o), dom);
  return {z, o};
}

VarIndex split_var(const ZddManager& m, NodeId a, NodeId b) {
  return std::min(top_of(m, a), top_of(m, b));
}

NodeId simple_rec(ZddManager& m, NodeId z, NodeId o) {
  if (z == kEmptyNode) return kBaseNode;
  if (o == kEmptyNode) return kEmptyNode;
  if (auto c = m.cache_find(tags::kSimple, z, o)) return *c;
  VarIndex i = split_var(m, z, o);
  NodeId z0 = m.subset0(z, i), z1 = m.subset1(z, i);
  NodeId o0 = m.subset0(o, i), o1 = m.subset1(o, i);
  NodeId he = simple_rec(m, z0, o0);
  NodeId ht = m.sym_diff(simple_rec(m, z1, o1), he);
  NodeId r = m.node(i, ht, he);
  m.cache_put(tags::kSimple, z, o, 0, r);
  return r;
}

NodeId smallest_rec(ZddManager& m, NodeId z, NodeId o) {
  if (o == kEmptyNode) return kEmptyNode;
  if (z == kEmptyNode) return kBaseNode;
  if (auto c = m.cache_find(tags::kSmallestLex, z, o)) return *c;
  VarIndex i = split_var(m, z, o);
  NodeId z0 = m.subset0(z, i), z1 = m.subset1(z, i);
  NodeId o0 = m.subset0(o, i), o1 = m.subset1(o, i);
  NodeId d1 = m.unite(z1, o1);
  NodeId common = m.intersect(d1, m.unite(z0, o0));
  Pf sum = add_rec(m, {z1, o1}, {z0, o0});
  NodeId ht = smallest_rec(m, sum.z, sum.o);
  // on points fixed only by the x_i = 1 half, h_e has to absorb h_t
  NodeId rest = m.diff(d1, common);
  NodeId flip = m.diff(rest, zeros_rec(m, ht, rest));
  NodeId zw = m.unite(m.sym_diff(m.diff(z1, common), flip), z0);
  NodeId ow = m.unite(m.sym_diff(m.diff(o1, common), flip), o0);
  NodeId he = smallest_rec(m, zw, ow);
  NodeId r = m.node(i, ht, he);
  m.cache_put(tags::kSmallestLex, z, o, 0, r);
  return r;
}

NodeId closure_rec(ZddManager& m, NodeId s) {
  if (s <= kBaseNode) return s;
  if (auto c = m.cache_find(tags::kClosure, s, 0)) return *c;
  NodeId t = closure_rec(m, m.then_of(s));
  NodeId e = closure_rec(m, m.else_of(s));
  NodeId r = m.node(m.var_of(s), t, m.unite(t, e));
  m.cache_put(tags::kClosure, s, 0, 0, r);
  return r;
}

NodeId minimal_rec(ZddManager& m, NodeId s) {
  if (s <= kBaseNode) return s;
  if (auto c = m.cache_find(tags::kMinimal, s, 0)) return *c;
  NodeId t = minimal_rec(m, m.then_of(s));
  NodeId e = minimal_rec(m, m.else_of(s));
  NodeId r = m.node(m.var_of(s), nf_monomial_set(m, t, e), e);
  m.cache_put(tags::kMinimal, s, 0, 0, r);
  return r;
}

void check_partial(const PartialFn& b) {
  if (!b.z.valid() || !b.o.valid() || &b.z.manager() != &b.o.manager())
    throw RingMismatch();
  if (!b.z.manager().intersect(b.z, b.o).is_empty())
    throw std::invalid_argument("partial function assigns both 0 and 1 to a point");
}

}  // namespace

PointSet point_set(const BoolRing& ring, const std::vector<Point>& points) {
  ZddManager& m = ring.manager();
  NodeId acc = kEmptyNode;
  for (const auto& p : points) {
    if (p.size() != ring.num_vars())
      throw std::invalid_argument("point has " + std::to_string(p.size()) +
                                  " coordinates, ring has " + std::to_string(ring.num_vars()));
    std::vector<VarIndex> vs;
    for (std::size_t i = 0; i < p.size(); ++i)
      if (p[i]) vs.push_back(static_cast<VarIndex>(i));
    acc = m.unite(acc, m.single_set(vs).id());
  }
  return m.wrap(acc);
}

std::vector<Point> points_of(const BoolRing& ring, PointSet s) {
  std::vector<Point> out;
  for (const auto& vs : ring.manager().enumerate(s)) {
    Point p(ring.num_vars());
    for (auto v : vs) p[v] = true;
    out.push_back(std::move(p));
  }
  return out;
}

PointSet full_cube(const BoolRing& ring) { return ring.manager().power_set(); }

PointSet zeros(const BoolPoly& p, PointSet s) {
  ZddManager& m = p.ring().manager();
  if (&s.manager() != &m) throw RingMismatch();
  return m.wrap(zeros_rec(m, p.id(), s.id()));
}

PointSet ones(const BoolPoly& p, PointSet s) { return s.manager().diff(s, zeros(p, s)); }

PartialFn add_partial(const PartialFn& f, const PartialFn& g) {
  ZddManager& m = f.z.manager();
  Pf r = add_rec(m, {f.z.id(), f.o.id()}, {g.z.id(), g.o.id()});
  return {m.wrap(r.z), m.wrap(r.o)};
}

BoolPoly interpolate_simple(const BoolRing& ring, const PartialFn& b) {
  check_partial(b);
  if (&b.z.manager() != &ring.manager()) throw RingMismatch();
  return ring.from_diagram(ring.manager().wrap(simple_rec(ring.manager(), b.z.id(), b.o.id())));
}

BoolPoly interpolate_smallest_lex(const BoolRing& ring, const PartialFn& b) {
  check_partial(b);
  if (&b.z.manager() != &ring.manager()) throw RingMismatch();
  return ring.from_diagram(
      ring.manager().wrap(smallest_rec(ring.manager(), b.z.id(), b.o.id())));
}

BoolPoly nf_by_interpolate(const BoolPoly& f, PointSet points) {
  ZddManager& m = f.ring().manager();
  PointSet z = zeros(f, points);
  return interpolate_smallest_lex(f.ring(), {z, m.diff(points, z)});
}

Zdd divisor_closure(Zdd s) { return s.manager().wrap(closure_rec(s.manager(), s.id())); }

Zdd minimal_elements(Zdd s) { return s.manager().wrap(minimal_rec(s.manager(), s.id())); }

Zdd standard_monomials(const BoolRing& ring, PointSet points, std::uint64_t seed,
                       unsigned max_iterations) {
  ZddManager& m = ring.manager();
  if (&points.manager() != &m) throw RingMismatch();
  std::uint64_t target = m.count_paths(points);
  auto pts = m.enumerate(points);
  std::mt19937_64 rng(seed);
  Zdd s = m.empty();
  for (unsigned it = 0; m.count_paths(s) != target; ++it) {
    if (it == max_iterations)
      throw std::runtime_error("standard monomial search did not converge after " +
                               std::to_string(max_iterations) + " rounds (seed " +
                               std::to_string(seed) + ")");
    NodeId ones_set = kEmptyNode;
    for (const auto& p : pts)
      if (rng() & 1) ones_set = m.unite(ones_set, m.single_set(p).id());
    Zdd o = m.wrap(ones_set);
    BoolPoly p = interpolate_smallest_lex(ring, {m.diff(points, o), o});
    s = divisor_closure(m.unite(s, p.diagram()));
  }
  return s;
}

Zdd leading_monomials_variety(const BoolRing& ring, PointSet points, std::uint64_t seed) {
  ZddManager& m = ring.manager();
  Zdd std_mons = standard_monomials(ring, points, seed);
  return minimal_elements(m.diff(m.power_set(), std_mons));
}

std::vector<BoolPoly> points_gb(const BoolRing& ring, PointSet points, std::uint64_t seed) {
  ZddManager& m = ring.manager();
  Zdd leads = leading_monomials_variety(ring, points, seed);
  std::vector<BoolPoly> out;
  for (const auto& t : m.enumerate(leads)) {
    BoolPoly tp = ring.from_diagram(m.single_set(t));
    out.push_back(tp + nf_by_interpolate(tp, points));
  }
  Ordering lp = Ordering::lex();
  std::sort(out.begin(), out.end(), [&](const BoolPoly& a, const BoolPoly& b) {
    return compare_monomials(lead(a, lp), lead(b, lp), lp) > 0;
  });
  return out;
}

namespace {

std::string_view strip_comment(std::string_view line) {
  auto h = line.find('#');
  if (h != std::string_view::npos) line = line.substr(0, h);
  while (!line.empty() && std::isspace(static_cast<unsigned char>(line.back())))
    line.remove_suffix(1);
  std::size_t lead = 0;
  while (lead < line.size() && std::isspace(static_cast<unsigned char>(line[lead]))) ++lead;
  return line.substr(lead);
}

Point parse_bits(std::string_view bits, std::size_t n, std::size_t line, std::size_t col) {
  if (bits.size() != n)
    throw ParseError("expected " + std::to_string(n) + " bits, got " +
                         std::to_string(bits.size()),
                     line, col);
  Point p(n);
  for (std::size_t i = 0; i < n; ++i) {
    if (bits[i] != '0' && bits[i] != '1')
      throw ParseError("expected 0 or 1", line, col + i);
    p[i] = bits[i] == '1';
  }
  return p;
}

}  // namespace

std::vector<Point> read_points(std::istream& in, std::size_t n) {
  std::vector<Point> out;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    auto body = strip_comment(raw);
    if (body.empty()) continue;
    std::size_t col = static_cast<std::size_t>(body.data() - raw.data()) + 1;
    out.push_back(parse_bits(body, n, line, col));
  }
  return out;
}

PartialFn read_partial_fn(const BoolRing& ring, std::istream& in) {
  std::vector<Point> z, o;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    auto body = strip_comment(raw);
    if (body.empty()) continue;
    std::size_t col = static_cast<std::size_t>(body.data() - raw.data()) + 1;
    auto sp = body.find_first_of(" \t");
    if (sp == std::string_view::npos) throw ParseError("expected 'bits value'", line, col);
    Point p = parse_bits(body.substr(0, sp), ring.num_vars(), line, col);
    auto val = strip_comment(body.substr(sp));
    std::size_t vcol = static_cast<std::size_t>(val.data() - raw.data()) + 1;
    if (val == "0") z.push_back(std::move(p));
    else if (val == "1") o.push_back(std::move(p));
    else throw ParseError("value must be 0 or 1", line, vcol);
  }
  PartialFn b{point_set(ring, z), point_set(ring, o)};
  if (!ring.manager().intersect(b.z, b.o).is_empty())
    throw std::invalid_argument("a point is listed with both values");
  return b;
}

}  // namespace zddgb
