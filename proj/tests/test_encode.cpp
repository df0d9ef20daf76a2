#include <doctest.h>

#include <map>
#include <sstream>

#include "oracle.hpp"
#include "zddgb/boolgb.hpp"
#include "zddgb/encode.hpp"
#include "zddgb/text.hpp"

using namespace zddgb;
using namespace zddgb::encode;

namespace {

Circuit circuit(const std::string& text) {
  std::istringstream in(text);
  return read_circuit(in);
}

const char* kRunning =
    "wordlen 3\n"
    "signal a b c d e f\n"
    "assign d = b + c\n"
    "assign e = a * d\n"
    "assert b = 0\n"
    "assert a * c = f\n"
    "disequal f e\n";

/// ANF of bit j of (a * b) mod 2^n, variables a_0..a_{n-1} then b_0..b_{n-1}.
oracle::Terms product_bit_anf(unsigned n, unsigned j) {
  oracle::Table tt(std::size_t{1} << (2 * n));
  for (oracle::Mask m = 0; m < tt.size(); ++m) {
    unsigned a = m & ((1u << n) - 1), b = m >> n;
    tt[m] = ((a * b) >> j) & 1;
  }
  return oracle::anf(tt);
}

}  // namespace

TEST_CASE("running example at word level") {
  WordSystem ws = word_level_encode(circuit(kRunning), true);
  const auto& r = *ws.ring;
  std::vector<std::string> got;
  for (auto& p : ws.polys()) got.push_back(r.to_string(p));
  std::vector<std::string> want{r.to_string(r.parse("b + c - d")), r.to_string(r.parse("a*d - e")),
                                r.to_string(r.parse("b")), r.to_string(r.parse("a*c - f")),
                                r.to_string(r.parse("s*(f - e) - 4"))};
  CHECK(got == want);
  CHECK(ws.outputs == std::vector<std::string>{"d", "e"});
  CHECK(ws.inputs == std::vector<std::string>{"a", "b", "c", "f"});
  auto plain = word_level_encode(circuit("wordlen 2\nsignal x y\nassign y = x * x\n"));
  CHECK(plain.polys().size() == 1);
  auto k = word_level_encode(circuit("wordlen 4\nsignal x\nassign x = 3\n"));
  CHECK(k.ring->to_string(k.polys()[0]) == k.ring->to_string(k.ring->parse("3 - x")));
  CHECK_THROWS_AS(word_level_encode(circuit("wordlen 2\nsignal x\n"), true), std::invalid_argument);
}

TEST_CASE("circuit parse errors") {
  auto err = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    try {
      auto c = circuit(text);
      word_level_encode(c);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(err("signal a\n") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(err("wordlen 2\nsignal a b\nassign c = a\n") == std::pair<std::size_t, std::size_t>{3, 8});
  CHECK(err("wordlen 2\nsignal a b\nassign b = a + q\n") == std::pair<std::size_t, std::size_t>{3, 16});
  CHECK(err("wordlen 2\nsignal a b\nfrob\n") == std::pair<std::size_t, std::size_t>{3, 1});
  CHECK_THROWS_AS(circuit("wordlen 2\nsignal a b\nassign a = b\nassign b = a + 1\n"),
                  std::invalid_argument);
}

TEST_CASE("bit_add and bit_mul") {
  BoolRing r({"a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3"});
  Bits a, b;
  for (int i = 0; i < 4; ++i) a.push_back(r.variable(i));
  for (int i = 0; i < 4; ++i) b.push_back(r.variable(4 + i));
  auto p = bit_mul(a, b).bits;
  CHECK(p[0] == r.parse("a0*b0"));
  CHECK(p[1] == r.parse("a1*b0 + a0*b1"));
  CHECK(p[2] == r.parse("a2*b0 + a1*b1 + a0*b2 + a1*a0*b1*b0"));
  // the four-bit display for p_3 in the source text
  BoolPoly shown = r.parse(
      "a3*b0 + a2*b1 + a1*b2 + a0*b3 + a2*a1*a0*b1*b0 + a2*a1*b1*b0 + a2*a0*b2*b0"
      " + a1*a0*b2*b1*b0 + a1*a0*b2*b1 + a1*a0*b1*b0");
  CHECK(p[3] == shown);
  Bits a1{r.variable(0)}, b1{r.variable(4)};
  CHECK(bit_add(a1, b1).bits[0] == r.parse("a0 + b0"));
  CHECK_THROWS(bit_add(a, a1));
}

TEST_CASE("bit_mul matches integer multiplication") {
  for (unsigned n = 1; n <= 5; ++n) {
    BoolRing r(2 * n);
    Bits a, b;
    for (unsigned i = 0; i < n; ++i) a.push_back(r.variable(i));
    for (unsigned i = 0; i < n; ++i) b.push_back(r.variable(n + i));
    auto p = bit_mul(a, b).bits;
    auto s = bit_add(a, b).bits;
    for (unsigned j = 0; j < n; ++j) {
      CHECK(oracle::from_poly(p[j]) == product_bit_anf(n, j));
      for (oracle::Mask m = 0; m < (1u << (2 * n)); ++m) {
        unsigned x = m & ((1u << n) - 1), y = m >> n;
        CHECK(eval(s[j], oracle::point(m, 2 * n)) == (((x + y) >> j) & 1));
      }
    }
  }
}

TEST_CASE("gate-level multiplier agrees after eliminating auxiliaries") {
  unsigned n = 3;
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= bit_mul_aux_count(n); ++i) names.push_back("t" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i) names.push_back("a" + std::to_string(i));
  for (unsigned i = 0; i < n; ++i) names.push_back("b" + std::to_string(i));
  BoolRing r(names);
  Bits a, b;
  std::size_t base = bit_mul_aux_count(n);
  for (unsigned i = 0; i < n; ++i) a.push_back(r.variable(base + i));
  for (unsigned i = 0; i < n; ++i) b.push_back(r.variable(base + n + i));
  std::size_t next = 0;
  Fresh fresh = [&] { return r.variable(static_cast<VarIndex>(next++)); };
  auto m = bit_mul(a, b, fresh);
  CHECK(next == bit_mul_aux_count(n));
  // evaluate the netlist in order on every input
  for (unsigned x = 0; x < (1u << n); ++x)
    for (unsigned y = 0; y < (1u << n); ++y) {
      Point pt(r.num_vars());
      for (unsigned i = 0; i < n; ++i) {
        pt[base + i] = x >> i & 1;
        pt[base + n + i] = y >> i & 1;
      }
      // aux[k] defines the k-th fresh variable
      for (std::size_t k = 0; k < m.aux.size(); ++k)
        pt[k] = eval(m.aux[k] + r.variable(static_cast<VarIndex>(k)), pt);
      for (unsigned j = 0; j < n; ++j) CHECK(eval(m.bits[j], pt) == (((x * y) >> j) & 1));
    }
}

TEST_CASE("disequality gadget") {
  for (unsigned n = 1; n <= 4; ++n) {
    zm::Elem m = zm::Elem{1} << n;
    zm::ZmRing r(m, {"s", "f", "e"});
    zm::Poly g = r.parse("s*(f - e) - " + std::to_string(m / 2));
    for (zm::Elem f = 0; f < m; ++f)
      for (zm::Elem e = 0; e < m; ++e) {
        bool solvable = false;
        for (zm::Elem s = 0; s < m; ++s) solvable = solvable || r.eval(g, {s, f, e}) == 0;
        CHECK(solvable == (f != e));
      }
  }
}

TEST_CASE("blast") {
  auto x0 = blast(word_level_encode(circuit("wordlen 2\nsignal x\nassert x = 0\n")));
  REQUIRE(x0.polys.size() == 2);
  CHECK(to_string(x0.polys[0]) == "x_0");
  CHECK(to_string(x0.polys[1]) == "x_1");
  auto d = blast(word_level_encode(circuit("wordlen 1\nsignal f e\ndisequal f e\n")));
  REQUIRE(d.polys.size() == 1);
  CHECK(d.polys[0] == d.ring->parse("1 + f_0 + e_0"));
  auto p = blast(word_level_encode(circuit("wordlen 4\nsignal p a b\nassign p = a * b\n")));
  REQUIRE(p.polys.size() == 4);
  CHECK(p.ring->names()[0] == "p_3");
  CHECK(p.polys[0] == p.ring->parse("p_0 + a_0*b_0"));
  CHECK(p.polys[1] == p.ring->parse("p_1 + a_1*b_0 + a_0*b_1"));
}

TEST_CASE("blast soundness by enumeration") {
  const char* circuits[] = {
      "wordlen 2\nsignal x y z\nassign z = x * y + 1\nassert x + y = 3\n",
      "wordlen 3\nsignal x y\nassert x * x = y + 1\n",
      "wordlen 3\nsignal x y z\nassign z = 2 * x - y\nassert z * y = 4\n",
      "wordlen 4\nsignal x y\nassign y = 3 * x + 5\nassert x * y = 6\n",
      "wordlen 2\nsignal a b c d e f\nassign d = b + c\nassign e = a * d\nassert b = 0\n"
      "assert a * c = f\ndisequal f e\n",
  };
  for (const char* text : circuits) {
    for (bool aux : {false, true}) {
      Circuit c = circuit(text);
      WordSystem ws = word_level_encode(c);
      BitSystem bs = blast(ws, {aux});
      const auto& wr = *ws.ring;
      unsigned n = ws.wordlen;
      std::size_t nsig = c.signals.size();
      zm::Elem m = zm::Elem{1} << n;
      std::size_t total = 1;
      for (std::size_t i = 0; i < nsig; ++i) total *= m;
      // word solutions, expanded to bit points; auxiliaries solved by sat_check
      std::set<std::vector<bool>> word_sols;
      for (std::size_t code = 0; code < total; ++code) {
        std::vector<zm::Elem> val(wr.num_vars(), 0);
        for (std::size_t c2 = code, i = 0; i < nsig; ++i, c2 /= m) val[i] = c2 % m;
        bool ok = true;
        for (auto& eq : ws.equations) ok = ok && wr.eval(eq, val) == 0;
        if (ws.disequal) ok = ok && val[ws.disequal->first] != val[ws.disequal->second];
        if (!ok) continue;
        std::vector<bool> bits;
        for (std::size_t i = 0; i < nsig; ++i)
          for (unsigned b = 0; b < n; ++b) bits.push_back(val[i] >> b & 1);
        word_sols.insert(bits);
      }
      std::set<std::vector<bool>> bit_sols;
      const BoolRing& br = *bs.ring;
      std::size_t nb = br.num_vars();
      std::vector<std::size_t> sig_index;
      for (std::size_t i = 0; i < nsig; ++i)
        for (unsigned b = 0; b < n; ++b)
          sig_index.push_back(*br.find(c.signals[i] + "_" + std::to_string(b)));
      if (nb <= 18) {
        for (std::uint32_t pm = 0; pm < (1u << nb); ++pm) {
          Point pt = oracle::point(pm, static_cast<unsigned>(nb));
          bool ok = true;
          for (auto& q : bs.polys) ok = ok && !eval(q, pt);
          if (!ok) continue;
          std::vector<bool> bits;
          for (auto idx : sig_index) bits.push_back(pt[idx]);
          CHECK(bit_sols.insert(bits).second);  // auxiliaries are functionally determined
        }
        CHECK(word_sols == bit_sols);
      } else {
        CHECK(sat_check(bs.polys, Ordering::lex()).sat == !word_sols.empty());
      }
    }
  }
}

TEST_CASE("cnf conversion") {
  std::istringstream in("c comment\np cnf 2 3\n1 0\n1 -2 0\n0\n");
  Cnf cnf = read_dimacs(in);
  CHECK(cnf.vars == 2);
  REQUIRE(cnf.clauses.size() == 3);
  auto bs = cnf_to_polys(cnf);
  CHECK(bs.polys[0] == bs.ring->parse("x1 + 1"));
  CHECK(bs.polys[1] == bs.ring->parse("(x1 + 1)*x2"));
  CHECK(bs.polys[2].is_one());
  auto err = [](const std::string& text) -> std::pair<std::size_t, std::size_t> {
    std::istringstream s(text);
    try {
      read_dimacs(s);
    } catch (const ParseError& e) {
      return {e.line(), e.column()};
    }
    return {0, 0};
  };
  CHECK(err("p cnf x 1\n") == std::pair<std::size_t, std::size_t>{1, 1});
  CHECK(err("p cnf 2 1\n1 3 0\n") == std::pair<std::size_t, std::size_t>{2, 3});
  CHECK(err("1 0\n") == std::pair<std::size_t, std::size_t>{1, 1});
  std::ostringstream out;
  write_dimacs(out, cnf);
  std::istringstream back(out.str());
  CHECK(read_dimacs(back).clauses == cnf.clauses);
}

TEST_CASE("cnf semantics, exhaustive") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 30; ++round) {
    unsigned n = 3 + round % 10;
    Cnf cnf;
    cnf.vars = n;
    for (unsigned k = 0; k < 2 + rng() % 6; ++k) {
      std::vector<int> c;
      for (unsigned l = 0; l < 1 + rng() % 3; ++l) {
        int v = 1 + static_cast<int>(rng() % n);
        c.push_back(rng() & 1 ? v : -v);
      }
      cnf.clauses.push_back(c);
    }
    auto bs = cnf_to_polys(cnf);
    for (oracle::Mask m = 0; m < (1u << n); ++m) {
      Point pt = oracle::point(m, n);
      bool sat = true;
      for (auto& c : cnf.clauses) {
        bool any = false;
        for (int l : c) any = any || (l > 0) == pt[std::abs(l) - 1];
        sat = sat && any;
      }
      bool zero = true;
      for (auto& p : bs.polys) zero = zero && !eval(p, pt);
      CHECK(sat == zero);
    }
  }
}

TEST_CASE("instance families") {
  Cnf h6 = pigeonhole(6);
  CHECK(h6.vars == 42);
  CHECK(h6.clauses.size() == 133);
  for (unsigned k = 1; k <= 3; ++k) {
    auto bs = cnf_to_polys(pigeonhole(k));
    CHECK_FALSE(sat_check(bs.polys, Ordering::lex()).sat);
  }
  for (unsigned n = 2; n <= 3; ++n) {
    auto bs = mult_verification(n);
    CHECK_FALSE(sat_check(bs.polys, Ordering::lex()).sat);
  }
  auto t = mult_verification(2, true);
  auto res = sat_check(t.polys, Ordering::lex());
  REQUIRE(res.sat);
  for (auto& p : t.polys) CHECK_FALSE(eval(p, res.model));
  const BoolRing& r = *t.ring;
  CHECK(res.model[*r.find("a_1")]);
  CHECK(res.model[*r.find("b_0")]);
}
