#include <doctest.h>

#include <random>
#include <set>

#include "zddgb/ringstd.hpp"
#include "zddgb/text.hpp"

using namespace zddgb::zm;

namespace {

const Elem kModuli[] = {4, 8, 12, 16, 36};

bool divides_brute(Elem m, Elem a, Elem b) {
  for (Elem x = 0; x < m; ++x)
    if (a * x % m == b) return true;
  return false;
}

std::set<Elem> ideal_of(Elem m, Elem a) {
  std::set<Elem> s;
  for (Elem x = 0; x < m; ++x) s.insert(a * x % m);
  return s;
}

Poly random_poly(std::mt19937_64& rng, const ZmRing& r, unsigned max_terms, unsigned max_deg) {
  std::vector<Term> ts;
  unsigned k = 1 + rng() % max_terms;
  for (unsigned i = 0; i < k; ++i) {
    Exponents e(r.num_vars());
    unsigned d = rng() % (max_deg + 1);
    for (unsigned j = 0; j < d; ++j) ++e[rng() % r.num_vars()];
    ts.push_back({static_cast<Elem>(rng() % r.mod().m()), e});
  }
  return r.normalize(ts);
}

std::set<std::pair<Elem, Exponents>> lead_cores(const ZmRing& r, const std::vector<Poly>& b) {
  std::set<std::pair<Elem, Exponents>> s;
  for (const auto& p : b) s.insert({r.mod().core(p[0].coef), p[0].exp});
  return s;
}

}  // namespace

TEST_CASE("valuation examples") {
  Modulus z12(12);
  CHECK(z12.nu(9) == std::vector<unsigned>{0, 1});
  CHECK(z12.nu(0) == std::vector<unsigned>{2, 1});
  CHECK(z12.nu(5) == std::vector<unsigned>{0, 0});
  CHECK(z12.unit_normalize(9) == std::pair<Elem, Elem>{7, 3});
  CHECK(z12.unit_normalize(1) == std::pair<Elem, Elem>{1, 1});
  CHECK(z12.gcd(9, 6) == 3);
  CHECK(z12.lcm(9, 6) == 6);
  Modulus z8(8);
  CHECK(z8.unit_normalize(4).second == 4);
  CHECK(z8.unit_normalize(4).first % 2 == 1);
  CHECK(z8.ann(4) == 2);
  CHECK(z8.ann(3) == 0);
  CHECK(z8.ann(0) == 1);
}

TEST_CASE("valuation laws, exhaustive") {
  for (Elem m : kModuli) {
    Modulus mod(m);
    const auto& f = mod.factors();
    for (Elem a = 0; a < m; ++a) {
      auto na = mod.nu(a);
      CHECK(mod.is_unit(a) == (mod.core(a) == 1 % m));
      auto [u, c] = mod.unit_normalize(a);
      CHECK(mod.is_unit(u));
      CHECK(mod.mul(u, c) == a);
      CHECK(ideal_of(m, mod.ann(a)) == [&] {
        std::set<Elem> s;
        for (Elem x = 0; x < m; ++x)
          if (a * x % m == 0) s.insert(x);
        return s;
      }());
      for (Elem b = 0; b < m; ++b) {
        auto nb = mod.nu(b);
        auto nab = mod.nu(a * b);
        auto nsum = mod.nu(a + b);
        for (std::size_t i = 0; i < f.size(); ++i) {
          CHECK(nab[i] == std::min(na[i] + nb[i], f[i].e));
          if (na[i] > 0 && nb[i] == 0) CHECK(nsum[i] == 0);
        }
        bool d = divides_brute(m, a, b);
        CHECK(mod.divides(a, b) == d);
        if (d) CHECK(mod.mul(a, mod.quotient(b, a)) == b);
        // gcd generates the ideal sum, lcm the intersection
        std::set<Elem> sum;
        for (Elem x : ideal_of(m, a))
          for (Elem y : ideal_of(m, b)) sum.insert((x + y) % m);
        CHECK(ideal_of(m, mod.gcd(a, b)) == sum);
        std::set<Elem> inter;
        auto ia = ideal_of(m, a), ib = ideal_of(m, b);
        for (Elem x : ia)
          if (ib.count(x)) inter.insert(x);
        CHECK(ideal_of(m, mod.lcm(a, b)) == inter);
      }
    }
  }
  for (Elem m = 2; m <= 36; ++m) {
    Modulus mod(m);
    for (Elem a = 0; a < m; ++a) {
      auto [u, c] = mod.unit_normalize(a);
      CHECK(mod.is_unit(u));
      CHECK(mod.mul(u, c) == a);
    }
  }
}

TEST_CASE("parse and print") {
  ZmRing r(4, {"x", "y", "z"});
  CHECK(r.to_string(r.parse("2*x - 2*y")) == "2*x + 2*y");
  CHECK(r.to_string(r.parse("x^2*y + 3 - 1")) == "x^2*y + 2");
  CHECK(r.to_string(r.parse("4*x")) == "0");
  CHECK(r.to_string(r.parse("-z")) == "3*z");
  CHECK_THROWS_AS(r.parse("x + w"), zddgb::ParseError);
  ZmRing d(8, {"x", "y"}, ZmOrder::kDlex);
  CHECK(d.to_string(d.parse("x + y^2")) == "y^2 + x");
}

TEST_CASE("s-polynomials") {
  ZmRing r(4, {"x", "y", "z"});
  Poly f = r.parse("2*x + 2*y"), g = r.parse("2*y + 3*z");
  CHECK(spoly_ring(r, f, f).empty());
  CHECK(r.to_string(spoly_ring(r, f, g)) == "x*z + 2*y^2");
  CHECK(r.to_string(spoly_ring(r, r.parse("x + 1"), r.parse("y + 1"))) == "3*x + y");
  CHECK(spoly_extended(r, r.parse("2")).empty());
  CHECK_THROWS(spoly_ring(r, {}, f));
  ZmRing r8(8, {"x", "y"});
  CHECK(r8.to_string(spoly_extended(r8, r8.parse("4*x + y"))) == "2*y");
  CHECK(spoly_extended(r8, r8.parse("x + 3")).empty());
}

TEST_CASE("solve_lead") {
  Modulus z8(8), z12(12);
  auto a = solve_lead(z8, 4, {2});
  REQUIRE(a);
  CHECK((*a)[0] == 2);
  CHECK_FALSE(solve_lead(z8, 1, {2}));
  auto b = solve_lead(z12, 1, {4, 3});
  REQUIRE(b);
  CHECK(z12.add(z12.mul((*b)[0], 4), z12.mul((*b)[1], 3)) == 1);
  std::mt19937_64 rng(9);
  for (Elem m : kModuli) {
    Modulus mod(m);
    for (int k = 0; k < 300; ++k) {
      std::vector<Elem> cs;
      for (unsigned i = 0; i < 1 + rng() % 3; ++i) cs.push_back(rng() % m);
      Elem c = rng() % m;
      Elem g = 0;
      for (Elem x : cs) g = std::gcd(g, x);
      bool expect = c % std::gcd(g, m) == 0;
      auto s = solve_lead(mod, c, cs);
      CHECK(s.has_value() == expect);
      if (!s) continue;
      Elem acc = 0;
      for (std::size_t i = 0; i < cs.size(); ++i) acc = mod.add(acc, mod.mul((*s)[i], cs[i]));
      CHECK(acc == c);
    }
  }
}

TEST_CASE("normal forms") {
  ZmRing r(4, {"x"});
  CHECK(nf_ring(r, r.parse("2*x^2"), {r.parse("2*x")}).empty());
  CHECK(r.to_string(nf_ring(r, r.parse("x"), {r.parse("2*x")})) == "x");
  ZmRing r8(8, {"x", "y", "t"});
  // lex with x > y: the lead 4*x^2*y is out of reach of x^3
  Poly h = nf_ring(r8, r8.parse("x^5 + 2*x^2"), {r8.parse("4*y + x^3 + 1")});
  CHECK(r8.to_string(h) == "4*x^2*y + x^2");
  // gcd combination: 4*x and 3*x together reach x in Z_12
  ZmRing r12(12, {"x"});
  CHECK(nf_ring(r12, r12.parse("x + 1"), {r12.parse("4*x"), r12.parse("3*x")}) ==
        r12.parse("1"));
}

TEST_CASE("criteria") {
  ZmRing r(4, {"x", "y", "z"});
  auto lt = [&](const char* s) { return r.parse(s)[0]; };
  CHECK(product_criterion_ring(r, lt("x"), lt("y")));
  CHECK_FALSE(product_criterion_ring(r, lt("2*x"), lt("y")));
  CHECK_FALSE(product_criterion_ring(r, lt("x*y"), lt("y*z")));
  CHECK(chain_criterion_ring(r, lt("2*x"), lt("2*x*y"), lt("2*y")));
  CHECK_FALSE(chain_criterion_ring(r, lt("x"), lt("z"), lt("y")));
  ZmRing r8(8, {"x", "y"});
  CHECK(chain_criterion_ring(r8, r8.parse("4*x")[0], r8.parse("2*x*y")[0],
                             r8.parse("4*y")[0]));
  CHECK_FALSE(chain_criterion_ring(r8, r8.parse("2*x")[0], r8.parse("4*x*y")[0],
                                   r8.parse("2*y")[0]));
  Modulus z8(8), z12(12);
  CHECK_FALSE(zero_criterion(z8, 3, 5));
  CHECK_FALSE(zero_criterion(z12, 4, 2));
  CHECK(zero_criterion(z12, 4, 3));
  // the unsound reading ann(c_i) | lcm(c_i, c_l) would drop (4x, 2y + 1)
  CHECK(z8.divides(z8.ann(4), z8.lcm(4, 2)));
  CHECK_FALSE(zero_criterion(z8, 4, 2));
  auto b = std_basis(r8, {r8.parse("4*x"), r8.parse("2*y + 1")});
  CHECK(nf_ring(r8, r8.parse("2*x"), b.basis).empty());
}

TEST_CASE("std_basis examples") {
  ZmRing r(4, {"x", "y"});
  auto a = std_basis(r, {r.parse("2*x"), r.parse("2*y")});
  REQUIRE(a.basis.size() == 2);
  CHECK(r.to_string(a.basis[0]) == "2*x");
  CHECK(r.to_string(a.basis[1]) == "2*y");
  auto b = std_basis(r, {r.parse("x + 2"), r.parse("2")});
  REQUIRE(b.basis.size() == 2);
  CHECK(r.to_string(b.basis[0]) == "x + 2");
  CHECK(r.to_string(b.basis[1]) == "2");
  auto c = std_basis(r, {r.parse("1")});
  REQUIRE(c.basis.size() == 1);
  CHECK(r.to_string(c.basis[0]) == "1");
  auto d = std_basis(r, {r.parse("3*x"), r.parse("3*x + 1")});
  REQUIRE(d.basis.size() == 1);
  CHECK(r.to_string(d.basis[0]) == "1");
}

TEST_CASE("std_basis membership, criteria, varieties") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 40; ++round) {
    Elem m = round % 2 ? 8 : 4;
    unsigned n = 1 + round % 3;
    std::vector<std::string> names{"x", "y", "z"};
    names.resize(n);
    ZmRing r(m, names, round % 4 < 2 ? ZmOrder::kLex : ZmOrder::kDlex);
    std::vector<Poly> gens;
    for (unsigned i = 0; i < 1 + rng() % 3; ++i) gens.push_back(random_poly(rng, r, 3, 3));
    auto on = std_basis(r, gens);
    auto off = std_basis(r, gens, {false, false, false});
    CHECK(lead_cores(r, on.basis) == lead_cores(r, off.basis));
    for (auto& g : gens) CHECK(verify_standard_rep(r, g, on.basis));
    std::vector<Poly> samples;
    for (int k = 0; k < 100; ++k) {
      Poly f;
      for (auto& g : gens) f = r.add(f, r.mul(random_poly(rng, r, 3, 2), g));
      CHECK(nf_ring(r, f, on.basis).empty());
      samples.push_back(f);
    }
    CHECK(is_strong_basis(r, on.basis, samples));
    // outputs lie in the ideal of the inputs
    for (auto& g : on.basis) CHECK(nf_ring(r, g, off.basis).empty());
    if (n <= 2) {
      std::size_t pts = 1;
      for (unsigned i = 0; i < n; ++i) pts *= m;
      for (std::size_t code = 0; code < pts; ++code) {
        std::vector<Elem> p;
        for (std::size_t c = code, i = 0; i < n; ++i, c /= m) p.push_back(c % m);
        bool zin = true, zout = true;
        for (auto& g : gens) zin = zin && r.eval(g, p) == 0;
        for (auto& g : on.basis) zout = zout && r.eval(g, p) == 0;
        CHECK(zin == zout);
      }
    }
  }
}

TEST_CASE("truncated basis is not strong") {
  ZmRing r(4, {"x", "y"});
  auto b = std_basis(r, {r.parse("2*x + y^2"), r.parse("2*y")});
  REQUIRE(b.basis.size() >= 2);
  std::vector<Poly> cut(b.basis.begin(), b.basis.end() - 1);
  CHECK(is_strong_basis(r, b.basis, b.basis));
  CHECK_FALSE(is_strong_basis(r, cut, {b.basis.back()}));
  CHECK(is_strong_basis(r, {r.parse("1")}, {r.parse("x + 3*y")}));
}
