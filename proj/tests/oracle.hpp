// Independent reference implementations used as test oracles.  Polynomials
// are sets of bitmask terms (bit v set = variable v present); functions are
// truth tables indexed by the point mask.
#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <set>
#include <vector>

#include "zddgb/boolpoly.hpp"

namespace oracle {

using Mask = std::uint32_t;
using Terms = std::set<Mask>;
using Table = std::vector<std::uint8_t>;

inline Terms add(const Terms& a, const Terms& b) {
  Terms r = a;
  for (Mask t : b)
    if (!r.erase(t)) r.insert(t);
  return r;
}

/// Ordinary product followed by x^2 = x, coefficients mod 2.
inline Terms mul(const Terms& a, const Terms& b) {
  Terms r;
  for (Mask s : a)
    for (Mask t : b) {
      Mask u = s | t;
      if (!r.erase(u)) r.insert(u);
    }
  return r;
}

inline bool eval(const Terms& f, Mask point) {
  bool v = false;
  for (Mask t : f)
    if ((t & point) == t) v = !v;
  return v;
}

inline Table table(const Terms& f, unsigned n) {
  Table tt(std::size_t{1} << n);
  for (Mask p = 0; p < tt.size(); ++p) tt[p] = eval(f, p);
  return tt;
}

/// Algebraic normal form of a truth table (Moebius transform).
inline Terms anf(Table tt) {
  std::size_t size = tt.size();
  for (std::size_t step = 1; step < size; step <<= 1)
    for (std::size_t i = 0; i < size; ++i)
      if (i & step) tt[i] ^= tt[i ^ step];
  Terms r;
  for (Mask i = 0; i < size; ++i)
    if (tt[i]) r.insert(i);
  return r;
}

inline Terms random_terms(std::mt19937_64& rng, unsigned n, unsigned max_terms,
                          unsigned max_deg) {
  Terms r;
  std::uniform_int_distribution<unsigned> count(0, max_terms);
  std::uniform_int_distribution<unsigned> var(0, n - 1);
  std::uniform_int_distribution<unsigned> dg(0, max_deg);
  unsigned k = count(rng);
  for (unsigned i = 0; i < k; ++i) {
    Mask t = 0;
    unsigned d = dg(rng);
    for (unsigned j = 0; j < d; ++j) t |= Mask{1} << var(rng);
    if (!r.erase(t)) r.insert(t);
  }
  return r;
}

inline zddgb::BoolPoly to_poly(const zddgb::BoolRing& ring, const Terms& f) {
  std::vector<std::vector<zddgb::VarIndex>> ts;
  for (Mask t : f) {
    std::vector<zddgb::VarIndex> vs;
    for (unsigned v = 0; v < 32; ++v)
      if (t >> v & 1) vs.push_back(v);
    ts.push_back(vs);
  }
  return ring.from_terms(ts);
}

inline Mask mask_of(const std::vector<zddgb::VarIndex>& vs) {
  Mask m = 0;
  for (auto v : vs) m |= Mask{1} << v;
  return m;
}

inline Terms from_poly(const zddgb::BoolPoly& f) {
  Terms r;
  for (const auto& t : f.ring().manager().enumerate(f.diagram())) r.insert(mask_of(t));
  return r;
}

inline zddgb::Point point(Mask p, unsigned n) {
  zddgb::Point pt(n);
  for (unsigned v = 0; v < n; ++v) pt[v] = p >> v & 1;
  return pt;
}

/// Lex comparison with variable 0 largest: first differing variable decides.
inline int lex_cmp(Mask a, Mask b) {
  if (a == b) return 0;
  Mask d = a ^ b;
  Mask low = d & (~d + 1);
  return (a & low) ? 1 : -1;
}

inline int dlex_cmp(Mask a, Mask b) {
  int da = __builtin_popcount(a), db = __builtin_popcount(b);
  if (da != db) return da < db ? -1 : 1;
  return lex_cmp(a, b);
}

/// Degree-reverse-lex on the reversed variable list: compare degree, then the
/// exponent vectors read as (x_{n-1}, ..., x_0); the last differing entry
/// decides and the smaller one wins.
inline int dp_asc_cmp(Mask a, Mask b) {
  int da = __builtin_popcount(a), db = __builtin_popcount(b);
  if (da != db) return da < db ? -1 : 1;
  if (a == b) return 0;
  Mask d = a ^ b;
  Mask lowest = d & (~d + 1);  // last entry of the reversed vector
  return (a & lowest) ? -1 : 1;
}

/// Variety of a system as a sorted list of point masks.
inline std::vector<Mask> variety(const std::vector<Terms>& sys, unsigned n) {
  std::vector<Mask> out;
  for (Mask p = 0; p < (Mask{1} << n); ++p) {
    bool ok = true;
    for (const auto& f : sys)
      if (eval(f, p)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(p);
  }
  return out;
}

/// Reduced Groebner basis of the vanishing ideal of a point set in the
/// Boolean ring, by linear algebra over all 2^n terms: the standard terms are
/// those not expressible as a combination of smaller terms on the points.
template <typename Cmp>
std::vector<Terms> vanishing_gb(const std::vector<Mask>& points, unsigned n, Cmp cmp) {
  std::size_t N = std::size_t{1} << n;
  std::vector<Mask> order(N);
  for (Mask i = 0; i < N; ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](Mask a, Mask b) { return cmp(a, b) < 0; });
  // Gaussian elimination with evaluation vectors; row = eval vector over points.
  using Row = std::vector<std::uint8_t>;
  struct Basis {
    Row vec;
    Terms combo;
  };
  std::vector<Basis> basis;  // pivot rows
  std::vector<std::size_t> pivots;
  std::vector<Mask> standard;
  std::vector<std::pair<Mask, Terms>> relations;
  for (Mask t : order) {
    Row v(points.size());
    for (std::size_t i = 0; i < points.size(); ++i) v[i] = (t & points[i]) == t;
    Terms combo{t};
    for (std::size_t b = 0; b < basis.size(); ++b)
      if (v[pivots[b]]) {
        for (std::size_t i = 0; i < v.size(); ++i) v[i] ^= basis[b].vec[i];
        combo = add(combo, basis[b].combo);
      }
    auto it = std::find(v.begin(), v.end(), 1);
    if (it == v.end()) {
      relations.emplace_back(t, combo);
    } else {
      standard.push_back(t);
      basis.push_back({v, combo});
      pivots.push_back(static_cast<std::size_t>(it - v.begin()));
    }
  }
  // Minimal leads: relation terms with no proper divisor among relation terms.
  std::vector<Terms> out;
  std::set<Mask> leads;
  for (auto& r : relations) leads.insert(r.first);
  for (auto& [t, combo] : relations) {
    bool minimal = true;
    for (Mask s : leads)
      if (s != t && (s & t) == s) {
        minimal = false;
        break;
      }
    if (!minimal) continue;
    // combo = t + combination of standard-term evaluation vectors' origins;
    // rewrite it in the standard terms only.
    out.push_back(combo);
  }
  return out;
}

inline std::vector<Terms> vanishing_gb_lex(const std::vector<Mask>& points, unsigned n) {
  return vanishing_gb(points, n, lex_cmp);
}

}  // namespace oracle
