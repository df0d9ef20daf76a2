#include <doctest.h>

#include <random>

#include "oracle.hpp"
#include "zddgb/boolpoly.hpp"
#include "zddgb/text.hpp"

using namespace zddgb;

namespace {
std::string str(const BoolPoly& f) { return to_string(f); }
}  // namespace

TEST_CASE("ordering parse and name") {
  CHECK(Ordering::parse("lp") == Ordering::lex());
  CHECK(Ordering::parse("dlex").name() == "dlex");
  CHECK(Ordering::parse("dp_asc").name() == "dp_asc");
  Ordering b = Ordering::parse("block(dlex:3,dp_asc:6)");
  CHECK(b.kind() == OrderKind::kBlock);
  CHECK(b.name() == "block(dlex:3,dp_asc:6)");
  CHECK_NOTHROW(b.validate(6));
  CHECK_THROWS(b.validate(7));
  CHECK_THROWS(Ordering::parse("block(lp:3)"));
  CHECK_THROWS(Ordering::parse("block(dlex:3,dlex:2)"));
  CHECK_THROWS(Ordering::parse("grevlex"));
}

TEST_CASE("ring construction and parsing") {
  CHECK_THROWS(BoolRing(std::vector<std::string>{"a", "a"}));
  CHECK_THROWS(BoolRing(std::vector<std::string>{}));
  BoolRing r({"a", "b", "c"});
  CHECK(str(r.parse("a*c + c")) == "a*c + c");
  CHECK(str(r.parse("a^3*c - c + 1 + 1")) == "a*c + c");
  CHECK(str(r.parse("(a+b)*(a+c)")) == "a*b + a*c + a + b*c");
  CHECK(str(r.parse("3*a + 2*b")) == "a");
  CHECK(str(r.parse("a^0")) == "1");
  try {
    r.parse("a + q", 4);
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 4);
    CHECK(e.column() == 5);
  }
  CHECK_THROWS_AS(r.parse("a +"), ParseError);
  CHECK_THROWS_AS(r.parse("a b"), ParseError);
}

TEST_CASE("add") {
  BoolRing r({"a", "b", "c"});
  BoolPoly f = r.parse("a*c + c");
  CHECK((f + f).is_zero());
  CHECK(f + r.parse("b*c") == r.parse("a*c + b*c + c"));
  CHECK(f + r.parse("c") == r.parse("a*c"));
  BoolRing other({"a", "b", "c"});
  CHECK_THROWS_AS(f + other.parse("a"), RingMismatch);
}

TEST_CASE("mul_boolean") {
  BoolRing r({"a", "b", "c"});
  BoolPoly x = r.parse("a");
  CHECK(x * x == x);
  BoolPoly f = r.parse("a*c + b + 1");
  CHECK(f * r.one() == f);
  BoolPoly p = r.parse("a + b") * r.parse("a + c");
  // truth-table oracle
  oracle::Table ta = oracle::table(oracle::from_poly(r.parse("a + b")), 3);
  oracle::Table tb = oracle::table(oracle::from_poly(r.parse("a + c")), 3);
  oracle::Table tp(8);
  for (int i = 0; i < 8; ++i) tp[i] = ta[i] & tb[i];
  CHECK(oracle::from_poly(p) == oracle::anf(tp));
  CHECK(p == r.parse("a + a*b + a*c + b*c"));
}

TEST_CASE("monomial multiplication and quotient") {
  BoolRing r({"a", "b", "c"});
  CHECK(quotient_by_monomial(r.parse("a*c + b*c + c"), r.monomial({2})) == r.parse("a + b + 1"));
  CHECK(quotient_by_monomial(r.parse("a*c"), r.monomial({1})).is_zero());
  CHECK(mul_monomial(r.parse("a + 1"), r.monomial({1})) == r.parse("a*b + b"));
  CHECK(mul_monomial(r.parse("a*b + b + a"), r.monomial({1})) == r.parse("b"));
  BoolMonomial ab = r.monomial({0, 1}), bc = r.monomial({1, 2});
  CHECK(ab.lcm(bc) == r.monomial({0, 1, 2}));
  CHECK((r.monomial({0, 1, 2}) / bc) == r.monomial({0}));
  CHECK(r.monomial({1}).divides(ab));
  CHECK_FALSE(ab.divides(bc));
  CHECK_FALSE(ab.coprime(bc));
  CHECK(r.monomial({0}).coprime(r.monomial({2})));
}

TEST_CASE("nf_monomial_set") {
  BoolRing r({"a", "b", "c"});
  ZddManager& m = r.manager();
  BoolPoly f = r.parse("a*b + c + 1");
  CHECK(nf_monomial_set(f, m.base()).is_zero());
  CHECK(nf_monomial_set(r.parse("a*c + c"), m.singleton(2)).is_zero());
  CHECK(nf_monomial_set(f, m.single_set({0, 1})) == r.parse("c + 1"));
  CHECK(nf_monomial_set(f, m.empty()) == f);
}

TEST_CASE("degree") {
  BoolRing r({"a", "b", "c"});
  CHECK(deg(r.one()) == 0);
  CHECK(deg(r.zero()) == 0);
  CHECK(deg(r.parse("a*c + c")) == 2);
  CHECK(deg_bounded(r.parse("a*b*c + a"), 1) == 1);
  CHECK(deg_bounded(r.parse("a*b*c + a"), 5) == 3);
  CHECK(deg_bounded(r.parse("b + a*c"), 2) == 2);
}

TEST_CASE("lead and comparisons") {
  BoolRing r({"x", "y", "z"});
  CHECK(to_string(lead(r.parse("x*z + y*z + z"), Ordering::lex())) == "x*z");
  CHECK(to_string(lead(r.parse("x + y*z"), Ordering::dlex())) == "y*z");
  // dp_asc: last path of maximal degree in the natural path sequence
  CHECK(to_string(lead(r.parse("x*y + x*z + y*z"), Ordering::dp_asc())) == "y*z");
  CHECK(to_string(lead(r.parse("x*y + z"), Ordering::dp_asc())) == "x*y");
  CHECK_THROWS(lead(r.zero(), Ordering::lex()));
  BoolMonomial x = r.monomial({0}), y = r.monomial({1}), z = r.monomial({2});
  BoolMonomial xy = r.monomial({0, 1}), yz = r.monomial({1, 2});
  CHECK(compare_monomials(x, x, Ordering::dp_asc()) == std::strong_ordering::equal);
  CHECK(compare_monomials(xy, z, Ordering::dlex()) == std::strong_ordering::greater);
  CHECK(compare_monomials(x, yz, Ordering::lex()) == std::strong_ordering::greater);
  CHECK(compare_monomials(x, yz, Ordering::dlex()) == std::strong_ordering::less);
  CHECK(compare_monomials(x, y, Ordering::dp_asc()) == std::strong_ordering::less);
}

TEST_CASE("terms iteration") {
  BoolRing r({"a", "b", "c"});
  CHECK(terms(r.zero(), Ordering::lex()).empty());
  auto ts = terms(r.parse("a*c + c"), Ordering::lex());
  REQUIRE(ts.size() == 2);
  CHECK(to_string(ts[0]) == "a*c");
  CHECK(to_string(ts[1]) == "c");
  auto td = terms(r.parse("a + b*c"), Ordering::dlex());
  CHECK(to_string(td[0]) == "b*c");
  CHECK(to_string(td[1]) == "a");
}

TEST_CASE("eval, spoly and vars_of") {
  BoolRing r({"a", "b", "c"});
  CHECK(eval(r.one(), {false, true, false}));
  CHECK_FALSE(eval(r.parse("a*c + c"), {true, false, true}));
  CHECK_THROWS(eval(r.one(), {true}));
  CHECK(vars_of(r.one()).empty());
  CHECK(vars_of(r.zero()).empty());
  CHECK(vars_of(r.parse("a*c + c")) == std::vector<VarIndex>{0, 2});

  BoolRing s({"x", "y", "z"});
  BoolPoly f = s.parse("x*y + 1");
  CHECK(spoly(f, f, Ordering::lex()).is_zero());
  // lcm = x*y: (x*y+1) + y*x  =  1
  CHECK(spoly(f, s.parse("x"), Ordering::lex()) == s.one());
  // y*(x+y) + x*(y+z) = y + x*z
  CHECK(spoly(s.parse("x + y"), s.parse("y + z"), Ordering::lex()) == s.parse("y + x*z"));
}

TEST_CASE("block ordering leads") {
  BoolRing r(std::vector<std::string>{"a", "b", "c", "d"},
             Ordering::parse("block(dlex:2,dlex:4)"));
  // first block decides by degree in {a,b}
  CHECK(to_string(lead(r.parse("a*c*d + a*b"))) == "a*b");
  CHECK(to_string(lead(r.parse("a*c*d + a*d + b*c"))) == "a*c*d");
  BoolPoly f = r.parse("a*c*d + b*c + a*d + c + d + 1");
  auto ts = terms(f, r.ordering());
  CHECK(ts[0] == lead(f));
}

TEST_CASE("random oracle agreement") {
  std::mt19937_64 rng(11);
  const unsigned n = 6;
  BoolRing r(n);
  std::vector<Ordering> ords{Ordering::lex(), Ordering::dlex(), Ordering::dp_asc(),
                             Ordering::parse("block(dp_asc:2,dlex:6)")};
  for (int i = 0; i < 300; ++i) {
    auto a = oracle::random_terms(rng, n, 8, 4);
    auto b = oracle::random_terms(rng, n, 8, 4);
    BoolPoly f = oracle::to_poly(r, a), g = oracle::to_poly(r, b);
    CHECK(oracle::from_poly(f + g) == oracle::add(a, b));
    CHECK(oracle::from_poly(f * g) == oracle::mul(a, b));
    for (oracle::Mask p = 0; p < 64; ++p)
      CHECK(eval(f, oracle::point(p, n)) == oracle::eval(a, p));
    if (a.empty()) continue;
    for (int k = 0; k < 4; ++k) {
      auto ts = terms(f, ords[k]);
      CHECK(ts.size() == a.size());
      CHECK(ts.front() == lead(f, ords[k]));
      for (std::size_t j = 1; j < ts.size(); ++j)
        CHECK(compare_monomials(ts[j - 1], ts[j], ords[k]) == std::strong_ordering::greater);
    }
    oracle::Mask best = *a.begin();
    for (auto t : a)
      if (oracle::dp_asc_cmp(t, best) > 0) best = t;
    CHECK(oracle::mask_of(lead(f, Ordering::dp_asc()).vars()) == best);
    best = *a.begin();
    for (auto t : a)
      if (oracle::dlex_cmp(t, best) > 0) best = t;
    CHECK(oracle::mask_of(lead(f, Ordering::dlex()).vars()) == best);
    CHECK(f == r.parse(to_string(f)));
  }
}
