#include "zddgb/ringstd.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <set>
#include <stdexcept>
#include <tuple>

#include "zddgb/text.hpp"

namespace zddgb::zm {

// ---------------------------------------------------------------- Modulus

Modulus::Modulus(Elem m) : m_(m) {
  if (m < 2) throw std::invalid_argument("modulus must be at least 2");
  if (m > (Elem{1} << 31)) throw std::invalid_argument("modulus too large");
  Elem rest = m;
  for (Elem p = 2; p * p <= rest; ++p) {
    unsigned e = 0;
    while (rest % p == 0) {
      rest /= p;
      ++e;
    }
    if (e) factors_.push_back({p, e});
  }
  if (rest > 1) factors_.push_back({rest, 1});
}

Elem Modulus::reduce(Elem a) const {
  a %= m_;
  return a < 0 ? a + m_ : a;
}

Elem Modulus::mul(Elem a, Elem b) const {
  return static_cast<Elem>((static_cast<__int128>(a) * b) % m_ + m_) % m_;
}

std::vector<unsigned> Modulus::nu(Elem a) const {
  a = reduce(a);
  std::vector<unsigned> v;
  for (const auto& [p, e] : factors_) {
    unsigned k = 0;
    if (a == 0) {
      k = e;
    } else {
      Elem x = a;
      while (k < e && x % p == 0) {
        x /= p;
        ++k;
      }
    }
    v.push_back(k);
  }
  return v;
}

bool Modulus::is_unit(Elem a) const { return std::gcd(reduce(a), m_) == 1; }

Elem Modulus::from_nu(const std::vector<unsigned>& v) const {
  Elem r = 1;
  for (std::size_t i = 0; i < factors_.size(); ++i)
    for (unsigned k = 0; k < v[i]; ++k) r *= factors_[i].p;
  return r;
}

Elem Modulus::core(Elem a) const { return reduce(from_nu(nu(a))); }

std::pair<Elem, Elem> Modulus::unit_normalize(Elem a) const {
  a = reduce(a);
  if (a == 0) return {1, 0};
  Elem c = from_nu(nu(a));
  Elem k = a / c, step = m_ / c;
  for (Elem u = k; u < m_; u += step)
    if (is_unit(u)) return {u, c};
  throw std::logic_error("no unit factor found");
}

Elem Modulus::inverse(Elem unit) const {
  Elem a = reduce(unit), b = m_, x0 = 1, x1 = 0;
  while (b) {
    Elem q = a / b;
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
  }
  if (a != 1) throw std::invalid_argument("not a unit");
  return reduce(x0);
}

bool Modulus::divides(Elem a, Elem b) const {
  auto na = nu(a), nb = nu(b);
  for (std::size_t i = 0; i < na.size(); ++i)
    if (na[i] > nb[i]) return false;
  return true;
}

Elem Modulus::quotient(Elem b, Elem a) const {
  auto na = nu(a), nb = nu(b);
  std::vector<unsigned> d(na.size());
  for (std::size_t i = 0; i < na.size(); ++i) {
    if (na[i] > nb[i]) throw std::invalid_argument("coefficient does not divide");
    d[i] = nb[i] - na[i];
  }
  Elem ua = unit_normalize(a).first, ub = unit_normalize(b).first;
  return mul(mul(ub, inverse(ua)), reduce(from_nu(d)));
}

Elem Modulus::gcd(Elem a, Elem b) const {
  auto na = nu(a), nb = nu(b);
  for (std::size_t i = 0; i < na.size(); ++i) na[i] = std::min(na[i], nb[i]);
  return reduce(from_nu(na));
}

Elem Modulus::lcm(Elem a, Elem b) const {
  auto na = nu(a), nb = nu(b);
  for (std::size_t i = 0; i < na.size(); ++i) na[i] = std::max(na[i], nb[i]);
  return reduce(from_nu(na));
}

Elem Modulus::ann(Elem a) const {
  auto v = nu(a);
  for (std::size_t i = 0; i < v.size(); ++i) v[i] = factors_[i].e - v[i];
  return reduce(from_nu(v));
}

// ---------------------------------------------------------------- monomials

unsigned degree(const Exponents& e) {
  unsigned d = 0;
  for (auto x : e) d += x;
  return d;
}

bool mono_divides(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

Exponents mono_lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

Exponents mono_div(const Exponents& b, const Exponents& a) {
  Exponents r(a.size());
  for (std::size_t i = 0; i < a.size(); ++i) r[i] = static_cast<std::uint16_t>(b[i] - a[i]);
  return r;
}

bool mono_coprime(const Exponents& a, const Exponents& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) return false;
  return true;
}

unsigned ecart(const Poly& f) {
  if (f.empty()) return 0;
  unsigned d = 0;
  for (const auto& t : f) d = std::max(d, degree(t.exp));
  return d - degree(f.front().exp);
}

bool term_divides(const ZmRing& r, const Term& a, const Term& b) {
  return mono_divides(a.exp, b.exp) && r.mod().divides(a.coef, b.coef);
}

// ---------------------------------------------------------------- ZmRing

ZmRing::ZmRing(Elem m, std::vector<std::string> names, ZmOrder ord)
    : mod_(m), names_(std::move(names)), ord_(ord) {}

int ZmRing::compare(const Exponents& a, const Exponents& b) const {
  if (ord_ == ZmOrder::kDlex) {
    unsigned da = degree(a), db = degree(b);
    if (da != db) return da < db ? -1 : 1;
  }
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] != b[i]) return a[i] < b[i] ? -1 : 1;
  return 0;
}

Poly ZmRing::constant(Elem c) const {
  c = mod_.reduce(c);
  if (c == 0) return {};
  return {{c, Exponents(num_vars())}};
}

Poly ZmRing::variable(std::size_t v) const {
  Exponents e(num_vars());
  e.at(v) = 1;
  return {{1, e}};
}

Poly ZmRing::normalize(std::vector<Term> terms) const {
  std::sort(terms.begin(), terms.end(),
            [&](const Term& a, const Term& b) { return compare(a.exp, b.exp) > 0; });
  Poly out;
  for (auto& t : terms) {
    t.coef = mod_.reduce(t.coef);
    if (!out.empty() && out.back().exp == t.exp) {
      out.back().coef = mod_.add(out.back().coef, t.coef);
      if (out.back().coef == 0) out.pop_back();
    } else if (t.coef != 0) {
      out.push_back(std::move(t));
    }
  }
  return out;
}

Poly ZmRing::add(const Poly& f, const Poly& g) const {
  Poly out;
  std::size_t i = 0, j = 0;
  while (i < f.size() || j < g.size()) {
    int c = i == f.size() ? -1 : j == g.size() ? 1 : compare(f[i].exp, g[j].exp);
    if (c > 0) {
      out.push_back(f[i++]);
    } else if (c < 0) {
      out.push_back(g[j++]);
    } else {
      Elem s = mod_.add(f[i].coef, g[j].coef);
      if (s) out.push_back({s, f[i].exp});
      ++i;
      ++j;
    }
  }
  return out;
}

Poly ZmRing::sub(const Poly& f, const Poly& g) const { return add(f, scale(g, mod_.m() - 1)); }

Poly ZmRing::scale(const Poly& f, Elem c) const { return mul_term(f, c, Exponents(num_vars())); }

Poly ZmRing::mul_term(const Poly& f, Elem c, const Exponents& mono) const {
  Poly out;
  for (const auto& t : f) {
    Elem k = mod_.mul(t.coef, c);
    if (!k) continue;
    Exponents e = t.exp;
    for (std::size_t i = 0; i < e.size(); ++i) e[i] = static_cast<std::uint16_t>(e[i] + mono[i]);
    out.push_back({k, std::move(e)});
  }
  return out;  // monomial multiplication keeps the order
}

Poly ZmRing::mul(const Poly& f, const Poly& g) const {
  Poly acc;
  for (const auto& t : g) acc = add(acc, mul_term(f, t.coef, t.exp));
  return acc;
}

namespace {
struct ZmBuilder {
  const ZmRing& r;
  Poly constant(std::int64_t k) { return r.constant(k); }
  std::optional<Poly> variable(std::string_view name) {
    for (std::size_t i = 0; i < r.num_vars(); ++i)
      if (r.names()[i] == name) return r.variable(i);
    return std::nullopt;
  }
  Poly add(Poly a, Poly b) { return r.add(a, b); }
  Poly sub(Poly a, Poly b) { return r.sub(a, b); }
  Poly mul(Poly a, Poly b) { return r.mul(a, b); }
  Poly neg(Poly a) { return r.scale(a, r.mod().m() - 1); }
  Poly power(Poly a, unsigned e) {
    Poly acc = r.constant(1);
    for (unsigned i = 0; i < e; ++i) acc = r.mul(acc, a);
    return acc;
  }
};
}  // namespace

Poly ZmRing::parse(std::string_view text, std::size_t line) const {
  ZmBuilder b{*this};
  ExprReader<ZmBuilder> reader(text, b, line);
  return reader.read();
}

std::string ZmRing::to_string(const Poly& f) const {
  if (f.empty()) return "0";
  std::string s;
  for (std::size_t k = 0; k < f.size(); ++k) {
    if (k) s += " + ";
    std::string mono;
    for (std::size_t i = 0; i < num_vars(); ++i) {
      if (!f[k].exp[i]) continue;
      if (!mono.empty()) mono += "*";
      mono += names_[i];
      if (f[k].exp[i] > 1) mono += "^" + std::to_string(f[k].exp[i]);
    }
    if (mono.empty()) s += std::to_string(f[k].coef);
    else if (f[k].coef == 1) s += mono;
    else s += std::to_string(f[k].coef) + "*" + mono;
  }
  return s;
}

Elem ZmRing::eval(const Poly& f, const std::vector<Elem>& point) const {
  Elem acc = 0;
  for (const auto& t : f) {
    Elem v = t.coef;
    for (std::size_t i = 0; i < num_vars(); ++i)
      for (unsigned k = 0; k < t.exp[i]; ++k) v = mod_.mul(v, point[i]);
    acc = mod_.add(acc, v);
  }
  return acc;
}

// ---------------------------------------------------------------- s-polynomials

Poly spoly_ring(const ZmRing& r, const Poly& f, const Poly& g) {
  if (f.empty() || g.empty()) throw std::invalid_argument("s-polynomial of zero");
  const auto& mod = r.mod();
  Elem l = mod.lcm(f[0].coef, g[0].coef);
  Exponents m = mono_lcm(f[0].exp, g[0].exp);
  Poly a = r.mul_term(f, mod.quotient(l, f[0].coef), mono_div(m, f[0].exp));
  Poly b = r.mul_term(g, mod.quotient(l, g[0].coef), mono_div(m, g[0].exp));
  return r.sub(a, b);
}

Poly spoly_extended(const ZmRing& r, const Poly& f) {
  if (f.empty()) throw std::invalid_argument("s-polynomial of zero");
  return r.scale(f, r.mod().ann(f[0].coef));
}

std::optional<std::vector<Elem>> solve_lead(const Modulus& mod, Elem c,
                                            const std::vector<Elem>& coeffs) {
  c = mod.reduce(c);
  std::vector<Elem> out(coeffs.size(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i)
    if (mod.divides(coeffs[i], c)) {
      out[i] = mod.quotient(c, coeffs[i]);
      return out;
    }
  // g = sum s_i coeffs_i + t m over the integers
  Elem g = mod.m();
  std::vector<Elem> s(coeffs.size(), 0);
  for (std::size_t i = 0; i < coeffs.size(); ++i) {
    Elem a = g, b = mod.reduce(coeffs[i]), x0 = 1, x1 = 0, y0 = 0, y1 = 1;
    while (b) {
      Elem q = a / b;
      std::tie(a, b) = std::make_pair(b, a - q * b);
      std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
      std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
    }
    // new g = x0 * g + y0 * coeffs_i
    for (std::size_t k = 0; k < i; ++k) s[k] = mod.mul(s[k], mod.reduce(x0));
    s[i] = mod.reduce(y0);
    g = a;
  }
  if (c % g != 0) return std::nullopt;
  Elem k = c / g;
  for (std::size_t i = 0; i < coeffs.size(); ++i) out[i] = mod.mul(s[i], k);
  return out;
}

// ---------------------------------------------------------------- normal form

Poly nf_ring(const ZmRing& r, const Poly& f, const std::vector<Poly>& g) {
  const auto& mod = r.mod();
  std::vector<Poly> t;
  for (const auto& p : g)
    if (!p.empty()) t.push_back(p);
  std::vector<unsigned> ecarts;
  for (const auto& p : t) ecarts.push_back(ecart(p));
  Poly h = f;
  while (!h.empty()) {
    const Term lead = h[0];
    std::vector<std::size_t> cand;
    for (std::size_t i = 0; i < t.size(); ++i)
      if (mono_divides(t[i][0].exp, lead.exp)) cand.push_back(i);
    if (cand.empty()) return h;
    std::optional<std::size_t> single;
    for (auto i : cand)
      if (mod.divides(t[i][0].coef, lead.coef) && (!single || ecarts[i] < ecarts[*single]))
        single = i;
    unsigned eh = ecart(h);
    Poly before = h;
    unsigned emax;
    if (single) {
      std::size_t i = *single;
      emax = ecarts[i];
      h = r.sub(h, r.mul_term(t[i], mod.quotient(lead.coef, t[i][0].coef),
                              mono_div(lead.exp, t[i][0].exp)));
    } else {
      std::vector<Elem> cs;
      for (auto i : cand) cs.push_back(t[i][0].coef);
      auto sol = solve_lead(mod, lead.coef, cs);
      if (!sol) return h;
      emax = 0;
      for (std::size_t k = 0; k < cand.size(); ++k) {
        if (!(*sol)[k]) continue;
        auto i = cand[k];
        emax = std::max(emax, ecarts[i]);
        h = r.sub(h, r.mul_term(t[i], (*sol)[k], mono_div(lead.exp, t[i][0].exp)));
      }
    }
    if (emax > eh) {
      t.push_back(std::move(before));
      ecarts.push_back(eh);
    }
  }
  return h;
}

// ---------------------------------------------------------------- criteria

bool product_criterion_ring(const ZmRing& r, const Term& a, const Term& b) {
  return mono_coprime(a.exp, b.exp) && r.mod().is_unit(a.coef) && r.mod().is_unit(b.coef);
}

bool chain_criterion_ring(const ZmRing& r, const Term& i, const Term& j, const Term& l) {
  Term lcm{r.mod().lcm(i.coef, l.coef), mono_lcm(i.exp, l.exp)};
  return term_divides(r, j, lcm);
}

bool zero_criterion(const Modulus& mod, Elem ci, Elem cl) {
  return mod.divides(mod.ann(ci), mod.quotient(mod.lcm(ci, cl), ci));
}

// ---------------------------------------------------------------- std_basis

namespace {

class StdEngine {
 public:
  StdEngine(const ZmRing& r, StdCriteria crit) : r_(r), crit_(crit), queue_(PairLess{&r}) {}

  StdResult run(const std::vector<Poly>& gens) {
    for (const auto& g : gens)
      if (!g.empty() && insert(g)) return unit_result();
    while (!queue_.empty()) {
      Pair p = *queue_.begin();
      queue_.erase(queue_.begin());
      Poly s;
      if (p.j < 0) {
        ++stats_.extended_pairs;
        s = spoly_extended(r_, g_[p.i]);
      } else {
        ++stats_.pairs;
        if (skip(p.i, p.j)) {
          done(p.i, p.j);
          continue;
        }
        s = spoly_ring(r_, g_[p.i], g_[p.j]);
      }
      Poly h = nf_ring(r_, s, g_);
      ++stats_.reductions;
      done(p.i, p.j);
      if (!h.empty() && insert(h)) return unit_result();
    }
    return {minimize(), stats_};
  }

 private:
  struct Pair {
    Exponents lcm;
    std::size_t seq;
    int i, j;  // j < 0 marks the extended pair (0, f_i)
  };
  struct PairLess {
    const ZmRing* r;
    bool operator()(const Pair& a, const Pair& b) const {
      int c = r->compare(a.lcm, b.lcm);
      if (c) return c < 0;
      return a.seq < b.seq;
    }
  };

  static std::pair<int, int> key(int i, int j) {
    if (j < 0) return {i, -1};
    return {std::min(i, j), std::max(i, j)};
  }
  void done(int i, int j) { status_[key(i, j)] = true; }
  bool is_done(int i, int j) const {
    auto it = status_.find(key(i, j));
    return it != status_.end() && it->second;
  }

  /// True when the polynomial is a unit constant.
  bool insert(Poly h) {
    if (h.size() == 1 && degree(h[0].exp) == 0 && r_.mod().is_unit(h[0].coef)) return true;
    int idx = static_cast<int>(g_.size());
    g_.push_back(std::move(h));
    push(idx, -1, g_[idx][0].exp);
    for (int k = 0; k < idx; ++k) push(k, idx, mono_lcm(g_[k][0].exp, g_[idx][0].exp));
    return false;
  }

  void push(int i, int j, Exponents lcm) {
    status_[key(i, j)] = false;
    queue_.insert({std::move(lcm), seq_++, i, j});
  }

  bool skip(int i, int j) {
    const Term& ti = g_[i][0];
    const Term& tj = g_[j][0];
    const auto& mod = r_.mod();
    if (crit_.product && product_criterion_ring(r_, ti, tj)) {
      ++stats_.product_hits;
      return true;
    }
    if (crit_.zero && is_done(i, -1) && is_done(j, -1) && zero_criterion(mod, ti.coef, tj.coef)) {
      ++stats_.zero_hits;
      return true;
    }
    if (crit_.chain) {
      for (int k = 0; k < static_cast<int>(g_.size()); ++k) {
        if (k == i || k == j) continue;
        if (!is_done(i, k) || !is_done(k, j) || !is_done(k, -1) || !is_done(i, -1) ||
            !is_done(j, -1))
          continue;
        if (chain_criterion_ring(r_, ti, g_[k][0], tj)) {
          ++stats_.chain_hits;
          return true;
        }
      }
    }
    return false;
  }

  StdResult unit_result() const { return {{r_.constant(1)}, stats_}; }

  std::vector<Poly> minimize() const {
    std::vector<Poly> out;
    for (std::size_t a = 0; a < g_.size(); ++a) {
      bool keep = true;
      for (std::size_t b = 0; b < g_.size() && keep; ++b) {
        if (a == b || !term_divides(r_, g_[b][0], g_[a][0])) continue;
        if (!term_divides(r_, g_[a][0], g_[b][0]) || b < a) keep = false;
      }
      if (keep) out.push_back(g_[a]);
    }
    std::stable_sort(out.begin(), out.end(), [&](const Poly& x, const Poly& y) {
      int c = r_.compare(x[0].exp, y[0].exp);
      if (c) return c > 0;
      return r_.mod().core(x[0].coef) < r_.mod().core(y[0].coef);
    });
    return out;
  }

  const ZmRing& r_;
  StdCriteria crit_;
  std::vector<Poly> g_;
  std::set<Pair, PairLess> queue_;
  std::map<std::pair<int, int>, bool> status_;
  std::size_t seq_ = 0;
  StdStats stats_;
};

}  // namespace

StdResult std_basis(const ZmRing& r, const std::vector<Poly>& gens, StdCriteria crit) {
  return StdEngine(r, crit).run(gens);
}

bool verify_standard_rep(const ZmRing& r, const Poly& f, const std::vector<Poly>& g) {
  return nf_ring(r, f, g).empty();
}

bool is_strong_basis(const ZmRing& r, const std::vector<Poly>& g, const std::vector<Poly>& samples) {
  for (const auto& f : samples) {
    if (f.empty()) continue;
    bool hit = false;
    for (const auto& p : g)
      if (!p.empty() && term_divides(r, p[0], f[0])) {
        hit = true;
        break;
      }
    if (!hit) return false;
  }
  return true;
}

}  // namespace zddgb::zm
