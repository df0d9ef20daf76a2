// Polynomials over Z/m and their standard bases.  Coefficients are residues
// in [0, m); divisibility is governed by the valuation vector nu.
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace zddgb::zm {

using Elem = std::int64_t;

struct PrimePower {
  Elem p;
  unsigned e;
};

class Modulus {
 public:
  explicit Modulus(Elem m);

  Elem m() const { return m_; }
  const std::vector<PrimePower>& factors() const { return factors_; }

  Elem reduce(Elem a) const;
  Elem add(Elem a, Elem b) const { return reduce(a + b); }
  Elem sub(Elem a, Elem b) const { return reduce(a - b); }
  Elem mul(Elem a, Elem b) const;
  Elem neg(Elem a) const { return reduce(-a); }

  /// nu_i(a) = min(p_i-adic valuation of a, e_i); nu_i(0) = e_i.
  std::vector<unsigned> nu(Elem a) const;
  bool is_unit(Elem a) const;
  /// prod p_i^{nu_i(a)} as a residue (m itself maps to 0).
  Elem core(Elem a) const;
  /// a = u * core(a) with u a unit.
  std::pair<Elem, Elem> unit_normalize(Elem a) const;
  Elem inverse(Elem unit) const;
  bool divides(Elem a, Elem b) const;
  /// Some x with a * x = b; requires divides(a, b).
  Elem quotient(Elem b, Elem a) const;
  Elem gcd(Elem a, Elem b) const;
  Elem lcm(Elem a, Elem b) const;
  /// Generator of Ann(a) = {x : a x = 0}.
  Elem ann(Elem a) const;

 private:
  Elem from_nu(const std::vector<unsigned>& v) const;

  Elem m_;
  std::vector<PrimePower> factors_;
};

enum class ZmOrder { kLex, kDlex };

using Exponents = std::vector<std::uint16_t>;

struct Term {
  Elem coef;
  Exponents exp;
  bool operator==(const Term&) const = default;
};

/// Terms strictly descending under the ring ordering, no zero coefficients.
using Poly = std::vector<Term>;

class ZmRing {
 public:
  ZmRing(Elem m, std::vector<std::string> names, ZmOrder ord = ZmOrder::kLex);

  const Modulus& mod() const { return mod_; }
  const std::vector<std::string>& names() const { return names_; }
  std::size_t num_vars() const { return names_.size(); }
  ZmOrder ordering() const { return ord_; }

  /// <0, 0, >0 as monomial a is smaller, equal, larger than b.
  int compare(const Exponents& a, const Exponents& b) const;

  Poly constant(Elem c) const;
  Poly variable(std::size_t v) const;
  Poly normalize(std::vector<Term> terms) const;

  Poly add(const Poly& f, const Poly& g) const;
  Poly sub(const Poly& f, const Poly& g) const;
  Poly scale(const Poly& f, Elem c) const;
  Poly mul_term(const Poly& f, Elem c, const Exponents& mono) const;
  Poly mul(const Poly& f, const Poly& g) const;

  Poly parse(std::string_view text, std::size_t line = 1) const;
  std::string to_string(const Poly& f) const;

  Elem eval(const Poly& f, const std::vector<Elem>& point) const;

 private:
  Modulus mod_;
  std::vector<std::string> names_;
  ZmOrder ord_;
};

unsigned degree(const Exponents& e);
bool mono_divides(const Exponents& a, const Exponents& b);
Exponents mono_lcm(const Exponents& a, const Exponents& b);
Exponents mono_div(const Exponents& b, const Exponents& a);
bool mono_coprime(const Exponents& a, const Exponents& b);

/// deg f - deg lm f.
unsigned ecart(const Poly& f);
/// Lead term a divides lead term b: monomials and coefficients.
bool term_divides(const ZmRing& r, const Term& a, const Term& b);

Poly spoly_ring(const ZmRing& r, const Poly& f, const Poly& g);
/// ann(lc f) * f.
Poly spoly_extended(const ZmRing& r, const Poly& f);

/// c as a combination of coeffs: a single divisor when one exists, otherwise
/// an extended-gcd combination.  Empty when c is not in the ideal.
std::optional<std::vector<Elem>> solve_lead(const Modulus& mod, Elem c,
                                            const std::vector<Elem>& coeffs);

/// Weak normal form; stops at the first irreducible lead.
Poly nf_ring(const ZmRing& r, const Poly& f, const std::vector<Poly>& g);

struct StdCriteria {
  bool product = true;
  bool chain = true;
  bool zero = true;
};

struct StdStats {
  std::size_t pairs = 0;
  std::size_t extended_pairs = 0;
  std::size_t reductions = 0;
  std::size_t product_hits = 0;
  std::size_t chain_hits = 0;
  std::size_t zero_hits = 0;
};

struct StdResult {
  std::vector<Poly> basis;
  StdStats stats;
};

StdResult std_basis(const ZmRing& r, const std::vector<Poly>& gens, StdCriteria crit = {});

bool product_criterion_ring(const ZmRing& r, const Term& a, const Term& b);
/// The middle lead term divides the lcm of the outer ones.
bool chain_criterion_ring(const ZmRing& r, const Term& i, const Term& j, const Term& l);
/// Pair (i, l) follows from the extended pairs of i and l.  The condition
/// ann(c_i) | lcm(c_i, c_l) / c_i is equivalent to lcm(c_i, c_l) = 0.
bool zero_criterion(const Modulus& mod, Elem ci, Elem cl);

bool verify_standard_rep(const ZmRing& r, const Poly& f, const std::vector<Poly>& g);
bool is_strong_basis(const ZmRing& r, const std::vector<Poly>& g, const std::vector<Poly>& samples);

}  // namespace zddgb::zm
