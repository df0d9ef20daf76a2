#include "zddgb/encode.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>
#include <stdexcept>

#include "zddgb/text.hpp"

namespace zddgb::encode {

// ---------------------------------------------------------------- circuits

namespace {

struct LineReader {
  std::string raw;
  std::size_t line;
  std::size_t pos = 0;

  void skip() {
    while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
  }
  bool done() {
    skip();
    return pos >= raw.size() || raw[pos] == '#';
  }
  std::string word() {
    skip();
    std::size_t start = pos;
    while (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos])) && raw[pos] != '#')
      ++pos;
    return raw.substr(start, pos - start);
  }
  [[noreturn]] void fail(const std::string& msg, std::size_t col) const {
    throw ParseError(msg, line, col);
  }
  /// Text up to a comment, trimmed; sets col to its first column.
  std::string rest(std::size_t& col) {
    skip();
    col = pos + 1;
    std::size_t end = raw.find('#', pos);
    std::string s = raw.substr(pos, end == std::string::npos ? std::string::npos : end - pos);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.pop_back();
    pos = raw.size();
    return s;
  }
};

bool is_identifier(const std::string& s) {
  if (s.empty() || !ident_start(s[0])) return false;
  return std::all_of(s.begin() + 1, s.end(), ident_char);
}

/// "lhs = rhs" split at the single '='.
Equation split_equation(LineReader& lr) {
  std::size_t col;
  std::string text = lr.rest(col);
  auto eq = text.find('=');
  if (eq == std::string::npos) lr.fail("expected '='", col + text.size());
  if (text.find('=', eq + 1) != std::string::npos) lr.fail("more than one '='", col + text.find('=', eq + 1));
  Equation e;
  e.line = lr.line;
  std::string lhs = text.substr(0, eq), rhs = text.substr(eq + 1);
  std::size_t lead = lhs.find_first_not_of(" \t");
  e.lhs_col = col + (lead == std::string::npos ? 0 : lead);
  lead = rhs.find_first_not_of(" \t");
  e.rhs_col = col + eq + 1 + (lead == std::string::npos ? 0 : lead);
  auto trim = [](std::string s) {
    s.erase(0, s.find_first_not_of(" \t"));
    s.erase(s.find_last_not_of(" \t") + 1);
    return s;
  };
  e.lhs = trim(lhs);
  e.rhs = trim(rhs);
  if (e.lhs.empty()) lr.fail("empty left-hand side", e.lhs_col);
  if (e.rhs.empty()) lr.fail("empty right-hand side", e.rhs_col);
  return e;
}

}  // namespace

Circuit read_circuit(std::istream& in) {
  Circuit c;
  std::set<std::string> declared, assigned;
  std::map<std::string, std::set<std::string>> deps;
  std::string raw;
  for (std::size_t line = 1; std::getline(in, raw); ++line) {
    LineReader lr{raw, line};
    if (lr.done()) continue;
    std::size_t kw_col = lr.pos + 1;
    std::string kw = lr.word();
    if (kw != "wordlen" && c.wordlen == 0) lr.fail("'wordlen' must come first", kw_col);
    if (kw == "wordlen") {
      if (c.wordlen) lr.fail("duplicate 'wordlen'", kw_col);
      lr.skip();
      std::size_t col = lr.pos + 1;
      std::string n = lr.word();
      if (n.empty() || !std::all_of(n.begin(), n.end(), ::isdigit) || n.size() > 2)
        lr.fail("expected a word length", col);
      c.wordlen = static_cast<unsigned>(std::stoul(n));
      if (c.wordlen < 1 || c.wordlen > 30) lr.fail("word length must be in 1..30", col);
    } else if (kw == "signal") {
      while (!lr.done()) {
        std::size_t col = lr.pos + 1;
        std::string s = lr.word();
        if (!is_identifier(s)) lr.fail("bad signal name '" + s + "'", col);
        if (s == "s") lr.fail("'s' is reserved for the disequality gadget", col);
        if (!declared.insert(s).second) lr.fail("signal '" + s + "' declared twice", col);
        c.signals.push_back(s);
      }
    } else if (kw == "assign") {
      Equation e = split_equation(lr);
      if (!declared.count(e.lhs)) lr.fail("undeclared signal '" + e.lhs + "'", e.lhs_col);
      if (!assigned.insert(e.lhs).second) lr.fail("signal '" + e.lhs + "' assigned twice", e.lhs_col);
      for (auto& id : scan_identifiers(e.rhs)) deps[e.lhs].insert(id);
      c.assigns.push_back(std::move(e));
    } else if (kw == "assert") {
      c.asserts.push_back(split_equation(lr));
    } else if (kw == "disequal") {
      std::size_t col1 = lr.pos + 1;
      std::string f = lr.word();
      lr.skip();
      std::size_t col2 = lr.pos + 1;
      std::string e = lr.word();
      if (!declared.count(f)) lr.fail("undeclared signal '" + f + "'", col1);
      if (!declared.count(e)) lr.fail("undeclared signal '" + e + "'", col2);
      if (c.disequal) lr.fail("only one disequality is allowed", kw_col);
      if (!lr.done()) lr.fail("trailing input", lr.pos + 1);
      c.disequal = {f, e};
    } else {
      lr.fail("unknown keyword '" + kw + "'", kw_col);
    }
  }
  if (c.wordlen == 0) throw ParseError("missing 'wordlen'", 1, 1);
  // assignment dependencies must be acyclic
  std::map<std::string, int> state;
  std::function<void(const std::string&)> visit = [&](const std::string& s) {
    if (state[s] == 2) return;
    if (state[s] == 1) throw std::invalid_argument("cyclic assignment through '" + s + "'");
    state[s] = 1;
    for (auto& d : deps[s])
      if (assigned.count(d)) visit(d);
    state[s] = 2;
  };
  for (auto& s : assigned) visit(s);
  return c;
}

// ---------------------------------------------------------------- word level

std::vector<zm::Poly> WordSystem::polys() const {
  auto out = equations;
  if (gadget) out.push_back(*gadget);
  return out;
}

namespace {
zm::Poly parse_at(const zm::ZmRing& r, const std::string& text, std::size_t line, std::size_t col) {
  try {
    return r.parse(text, line);
  } catch (const ParseError& e) {
    throw ParseError(e.what(), line, e.column() + col - 1);
  }
}
}  // namespace

WordSystem word_level_encode(const Circuit& c, bool require_disequality) {
  if (require_disequality && !c.disequal)
    throw std::invalid_argument("refutation system needs a disequality");
  WordSystem ws;
  ws.wordlen = c.wordlen;
  std::vector<std::string> names = c.signals;
  if (c.disequal) names.push_back("s");
  ws.ring = std::make_shared<zm::ZmRing>(zm::Elem{1} << c.wordlen, names);
  const auto& r = *ws.ring;
  auto index = [&](const std::string& s) {
    return static_cast<std::size_t>(std::find(names.begin(), names.end(), s) - names.begin());
  };
  std::set<std::string> assigned;
  for (const auto& e : c.assigns) {
    zm::Poly rhs = parse_at(r, e.rhs, e.line, e.rhs_col);
    ws.equations.push_back(r.sub(rhs, r.variable(index(e.lhs))));
    assigned.insert(e.lhs);
  }
  for (const auto& e : c.asserts) {
    zm::Poly lhs = parse_at(r, e.lhs, e.line, e.lhs_col);
    zm::Poly rhs = parse_at(r, e.rhs, e.line, e.rhs_col);
    ws.equations.push_back(r.sub(lhs, rhs));
  }
  for (const auto& s : c.signals) (assigned.count(s) ? ws.outputs : ws.inputs).push_back(s);
  if (c.disequal) {
    std::size_t f = index(c.disequal->first), e = index(c.disequal->second);
    ws.disequal = {f, e};
    zm::Poly diff = r.sub(r.variable(f), r.variable(e));
    ws.gadget = r.sub(r.mul(r.variable(index("s")), diff), r.constant(zm::Elem{1} << (c.wordlen - 1)));
  }
  return ws;
}

// ---------------------------------------------------------------- bit level

Bits constant_bits(const BoolRing& ring, std::uint64_t value, unsigned n) {
  Bits b;
  for (unsigned i = 0; i < n; ++i) b.push_back(value >> i & 1 ? ring.one() : ring.zero());
  return b;
}

namespace {
BoolPoly gate(const BoolPoly& expr, const Fresh& fresh, std::vector<BoolPoly>& aux) {
  if (!fresh) return expr;
  BoolPoly t = fresh();
  aux.push_back(t + expr);
  return t;
}

void check_widths(const Bits& a, const Bits& b) {
  if (a.empty() || a.size() != b.size()) throw std::invalid_argument("bit vectors differ in length");
}
}  // namespace

BitResult bit_add(const Bits& a, const Bits& b, const Fresh& fresh) {
  check_widths(a, b);
  BitResult r;
  BoolPoly c = a[0].ring().zero();
  for (std::size_t i = 0; i < a.size(); ++i) {
    r.bits.push_back(gate(a[i] + b[i] + c, fresh, r.aux));
    if (i + 1 < a.size()) c = gate(a[i] * b[i] + a[i] * c + b[i] * c, fresh, r.aux);
  }
  return r;
}

namespace {
/// Rows a * b_i (bit j of row i is a_{j-i} b_i), summed from `first` row on;
/// `skip` removes one partial product (row, column).
BitResult rows_mul(const Bits& a, const Bits& b, const Fresh& fresh, bool descending,
                   std::optional<std::pair<std::size_t, std::size_t>> skip = std::nullopt) {
  check_widths(a, b);
  std::size_t n = a.size();
  const BoolRing& ring = a[0].ring();
  auto row = [&](std::size_t i) {
    Bits r(n, ring.zero());
    for (std::size_t j = i; j < n; ++j)
      if (!(skip && skip->first == i && skip->second == j)) r[j] = a[j - i] * b[i];
    return r;
  };
  BitResult out;
  if (descending) {
    out.bits = row(n - 1);
    for (std::size_t i = n - 1; i-- > 0;) {
      auto s = bit_add(out.bits, row(i), fresh);
      out.bits = std::move(s.bits);
      out.aux.insert(out.aux.end(), s.aux.begin(), s.aux.end());
    }
  } else {
    out.bits = row(0);
    for (std::size_t i = 1; i < n; ++i) {
      auto s = bit_add(out.bits, row(i), fresh);
      out.bits = std::move(s.bits);
      out.aux.insert(out.aux.end(), s.aux.begin(), s.aux.end());
    }
  }
  return out;
}
}  // namespace

BitResult bit_mul(const Bits& a, const Bits& b, const Fresh& fresh) {
  return rows_mul(a, b, fresh, false);
}

std::size_t bit_mul_aux_count(unsigned n) { return std::size_t{n - 1} * (2 * n - 1); }

namespace {

std::vector<std::string> bit_names(const std::string& sig, unsigned n) {
  std::vector<std::string> out;
  for (unsigned i = n; i-- > 0;) out.push_back(sig + "_" + std::to_string(i));
  return out;
}

std::vector<std::string> aux_names(std::size_t k) {
  std::vector<std::string> out;
  for (std::size_t i = 1; i <= k; ++i) out.push_back("t" + std::to_string(i));
  return out;
}

Bits var_bits(const BoolRing& ring, const std::string& sig, unsigned n) {
  Bits b;
  for (unsigned i = 0; i < n; ++i) b.push_back(ring.variable(*ring.find(sig + "_" + std::to_string(i))));
  return b;
}

/// Sequential fresh variables t1, t2, ... of a ring.
struct FreshPool {
  const BoolRing* ring;
  std::size_t next = 1;
  std::size_t limit;
  BoolPoly operator()() {
    if (next > limit) throw std::logic_error("auxiliary variable pool exhausted");
    return ring->variable(*ring->find("t" + std::to_string(next++)));
  }
};

}  // namespace

BitSystem blast(const WordSystem& ws, BlastOptions opt) {
  const zm::ZmRing& wr = *ws.ring;
  unsigned n = ws.wordlen;
  std::size_t aux = 0;
  if (opt.aux)
    for (const auto& p : ws.equations)
      for (const auto& t : p) {
        unsigned d = zm::degree(t.exp);
        if (d > 1) aux += (d - 1) * bit_mul_aux_count(n);
      }
  std::vector<std::string> names;
  for (const auto& s : ws.outputs)
    for (auto& b : bit_names(s, n)) names.push_back(b);
  for (auto& t : aux_names(aux)) names.push_back(t);
  for (const auto& s : ws.inputs)
    for (auto& b : bit_names(s, n)) names.push_back(b);
  BitSystem out;
  out.ring = std::make_shared<BoolRing>(names);
  const BoolRing& br = *out.ring;
  FreshPool pool{&br, 1, aux};
  Fresh fresh;
  if (opt.aux) fresh = [&pool] { return pool(); };

  std::vector<Bits> word(wr.num_vars());
  for (std::size_t v = 0; v < wr.num_vars(); ++v)
    if (wr.names()[v] != "s" || !ws.gadget) word[v] = var_bits(br, wr.names()[v], n);

  std::uint64_t modulus = std::uint64_t{1} << n;
  auto scaled = [&](const Bits& x, std::uint64_t c) {
    Bits acc = constant_bits(br, 0, n);
    for (unsigned k = 0; k < n; ++k) {
      if (!(c >> k & 1)) continue;
      Bits sh(n, br.zero());
      for (unsigned j = k; j < n; ++j) sh[j] = x[j - k];
      acc = bit_add(acc, sh).bits;
    }
    return acc;
  };
  for (const auto& p : ws.equations) {
    Bits pos = constant_bits(br, 0, n), neg = constant_bits(br, 0, n);
    for (const auto& t : p) {
      Bits v = constant_bits(br, 1, n);
      bool first = true;
      for (std::size_t x = 0; x < t.exp.size(); ++x)
        for (unsigned k = 0; k < t.exp[x]; ++k) {
          if (word[x].empty()) throw std::invalid_argument("gadget variable in an equation");
          if (first) {
            v = word[x];
            first = false;
          } else {
            auto m = bit_mul(v, word[x], fresh);
            v = std::move(m.bits);
            out.polys.insert(out.polys.end(), m.aux.begin(), m.aux.end());
          }
        }
      auto c = static_cast<std::uint64_t>(t.coef);
      if (c <= modulus / 2) pos = bit_add(pos, scaled(v, c)).bits;
      else neg = bit_add(neg, scaled(v, modulus - c)).bits;
    }
    for (unsigned i = 0; i < n; ++i) {
      BoolPoly q = pos[i] + neg[i];
      if (!q.is_zero()) out.polys.push_back(q);
    }
  }
  if (ws.disequal) {
    BoolPoly prod = br.one();
    const Bits& f = word[ws.disequal->first];
    const Bits& e = word[ws.disequal->second];
    for (unsigned i = 0; i < n; ++i) prod = prod * (br.one() + f[i] + e[i]);
    out.polys.push_back(prod);
  }
  return out;
}

// ---------------------------------------------------------------- CNF

Cnf read_dimacs(std::istream& in) {
  Cnf cnf;
  bool header = false;
  std::size_t declared = 0;
  std::vector<int> clause;
  std::string raw;
  std::size_t line = 0;
  for (line = 1; std::getline(in, raw); ++line) {
    std::size_t p = raw.find_first_not_of(" \t\r");
    if (p == std::string::npos || raw[p] == 'c') continue;
    if (raw[p] == '%') break;
    if (raw[p] == 'p') {
      if (header) throw ParseError("duplicate header", line, p + 1);
      std::istringstream hs(raw.substr(p + 1));
      std::string fmt;
      long long v = -1, c = -1;
      if (!(hs >> fmt >> v >> c) || fmt != "cnf" || v < 0 || c < 0)
        throw ParseError("malformed header, expected 'p cnf VARS CLAUSES'", line, p + 1);
      std::string extra;
      if (hs >> extra) throw ParseError("malformed header, trailing input", line, p + 1);
      cnf.vars = static_cast<unsigned>(v);
      declared = static_cast<std::size_t>(c);
      header = true;
      continue;
    }
    if (!header) throw ParseError("clause before 'p cnf' header", line, p + 1);
    std::size_t pos = 0;
    while (pos < raw.size()) {
      while (pos < raw.size() && std::isspace(static_cast<unsigned char>(raw[pos]))) ++pos;
      if (pos >= raw.size()) break;
      std::size_t start = pos;
      if (raw[pos] == '-') ++pos;
      while (pos < raw.size() && std::isdigit(static_cast<unsigned char>(raw[pos]))) ++pos;
      std::string tok = raw.substr(start, pos - start);
      if (tok.empty() || tok == "-" || (pos < raw.size() && !std::isspace(static_cast<unsigned char>(raw[pos]))))
        throw ParseError("expected an integer literal", line, start + 1);
      if (tok.size() > 10) throw ParseError("literal out of range", line, start + 1);
      long long lit = std::stoll(tok);
      if (lit == 0) {
        cnf.clauses.push_back(std::move(clause));
        clause.clear();
      } else {
        if (std::llabs(lit) > static_cast<long long>(cnf.vars))
          throw ParseError("literal out of range", line, start + 1);
        clause.push_back(static_cast<int>(lit));
      }
    }
  }
  if (!header) throw ParseError("missing 'p cnf' header", line, 1);
  if (!clause.empty()) cnf.clauses.push_back(std::move(clause));
  if (cnf.clauses.size() > declared)
    throw ParseError("more clauses than declared", line, 1);
  return cnf;
}

void write_dimacs(std::ostream& out, const Cnf& cnf) {
  out << "p cnf " << cnf.vars << ' ' << cnf.clauses.size() << '\n';
  for (const auto& c : cnf.clauses) {
    for (int l : c) out << l << ' ';
    out << "0\n";
  }
}

BitSystem cnf_to_polys(const Cnf& cnf) {
  BitSystem out;
  out.ring = std::make_shared<BoolRing>(std::max(cnf.vars, 1u));
  const BoolRing& r = *out.ring;
  for (const auto& c : cnf.clauses) {
    BoolPoly p = r.one();
    for (int l : c) {
      BoolPoly x = r.variable(static_cast<VarIndex>(std::abs(l) - 1));
      p = p * (l > 0 ? x + r.one() : x);
    }
    out.polys.push_back(p);
  }
  return out;
}

Cnf pigeonhole(unsigned k) {
  if (k < 1) throw std::invalid_argument("pigeonhole needs at least one hole");
  Cnf cnf;
  cnf.vars = (k + 1) * k;
  auto var = [k](unsigned pigeon, unsigned hole) { return static_cast<int>(pigeon * k + hole + 1); };
  for (unsigned i = 0; i <= k; ++i) {
    std::vector<int> c;
    for (unsigned j = 0; j < k; ++j) c.push_back(var(i, j));
    cnf.clauses.push_back(c);
  }
  for (unsigned j = 0; j < k; ++j)
    for (unsigned i = 0; i <= k; ++i)
      for (unsigned i2 = i + 1; i2 <= k; ++i2) cnf.clauses.push_back({-var(i, j), -var(i2, j)});
  return cnf;
}

BitSystem mult_verification(unsigned n, bool tamper) {
  if (n < 2) throw std::invalid_argument("multiplier width must be at least 2");
  std::size_t aux = bit_mul_aux_count(n);
  std::vector<std::string> names;
  for (auto& s : bit_names("p", n)) names.push_back(s);
  for (auto& s : bit_names("q", n)) names.push_back(s);
  for (auto& s : aux_names(aux)) names.push_back(s);
  for (auto& s : bit_names("a", n)) names.push_back(s);
  for (auto& s : bit_names("b", n)) names.push_back(s);
  BitSystem out;
  out.ring = std::make_shared<BoolRing>(names);
  const BoolRing& r = *out.ring;
  Bits a = var_bits(r, "a", n), b = var_bits(r, "b", n);
  Bits p = var_bits(r, "p", n), q = var_bits(r, "q", n);
  // first: expanded schoolbook a * b
  Bits x = bit_mul(a, b).bits;
  for (unsigned i = 0; i < n; ++i) out.polys.push_back(p[i] + x[i]);
  // second: gate-level array b * a, rows added from the top
  FreshPool pool{&r, 1, aux};
  Fresh fresh = [&pool] { return pool(); };
  std::optional<std::pair<std::size_t, std::size_t>> skip;
  if (tamper) skip = std::pair<std::size_t, std::size_t>{n - 1, n - 1};
  BitResult y = rows_mul(b, a, fresh, true, skip);
  for (unsigned i = 0; i < n; ++i) out.polys.push_back(q[i] + y.bits[i]);
  out.polys.insert(out.polys.end(), y.aux.begin(), y.aux.end());
  BoolPoly diseq = r.one();
  for (unsigned i = 0; i < n; ++i) diseq = diseq * (r.one() + p[i] + q[i]);
  out.polys.push_back(diseq);
  return out;
}

}  // namespace zddgb::encode
