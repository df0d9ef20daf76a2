// Boolean polynomials: Z/2 polynomials modulo the field relations x^2 = x,
// stored as the ZDD of their term set.
#pragma once

#include <compare>
#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "zddgb/zdd.hpp"

namespace zddgb {

enum class OrderKind { kLex, kDlex, kDpAsc, kBlock };

struct OrderBlock {
  OrderKind kind;  // kDlex or kDpAsc
  VarIndex end;    // one past the last variable of the block
  bool operator==(const OrderBlock&) const = default;
};

/// Monomial ordering descriptor.  Variable 0 is the largest variable for
/// lex and dlex; dp_asc is degree-reverse-lexicographic over the reversed
/// variable list, so among terms of equal degree the lexicographically
/// smallest wins.  Block orderings compose degree orderings; earlier blocks
/// dominate.
class Ordering {
 public:
  static Ordering lex() { return Ordering(OrderKind::kLex, {}); }
  static Ordering dlex() { return Ordering(OrderKind::kDlex, {}); }
  static Ordering dp_asc() { return Ordering(OrderKind::kDpAsc, {}); }
  static Ordering block(std::vector<OrderBlock> blocks);

  /// Accepts lp, lex, dlex, dp_asc and block(dlex:3,dp_asc:6).
  static Ordering parse(std::string_view text);

  OrderKind kind() const { return kind_; }
  /// Block list covering [0, n).  Non-block orderings are one block.
  std::vector<OrderBlock> segments(std::size_t n) const;
  /// Throws unless the ordering is well formed for n variables.
  void validate(std::size_t n) const;
  std::string name() const;

  bool operator==(const Ordering&) const = default;

 private:
  Ordering(OrderKind k, std::vector<OrderBlock> b) : kind_(k), blocks_(std::move(b)) {}
  OrderKind kind_;
  std::vector<OrderBlock> blocks_;
};

class BoolPoly;
class BoolMonomial;

using Point = std::vector<bool>;

class BoolRing {
 public:
  explicit BoolRing(std::vector<std::string> names, Ordering ord = Ordering::lex());
  /// Ring with variables x1 ... xn.
  explicit BoolRing(std::size_t n, Ordering ord = Ordering::lex());

  BoolRing(const BoolRing&) = delete;
  BoolRing& operator=(const BoolRing&) = delete;

  std::size_t num_vars() const { return names_.size(); }
  const std::string& name(VarIndex v) const { return names_.at(v); }
  const std::vector<std::string>& names() const { return names_; }
  std::optional<VarIndex> find(std::string_view name) const;

  const Ordering& ordering() const { return ordering_; }
  void set_ordering(Ordering ord);

  ZddManager& manager() const { return *mgr_; }

  BoolPoly zero() const;
  BoolPoly one() const;
  BoolPoly variable(VarIndex v) const;
  BoolPoly from_diagram(Zdd z) const;
  BoolPoly from_terms(const std::vector<std::vector<VarIndex>>& terms) const;
  BoolMonomial monomial(std::vector<VarIndex> vars) const;

  /// Reads "x*y + z + 1"; '-' is the same as '+'; x^k = x for k >= 1.
  BoolPoly parse(std::string_view text, std::size_t line = 1) const;

 private:
  std::vector<std::string> names_;
  Ordering ordering_;
  std::unique_ptr<ZddManager> mgr_;
};

class BoolPoly {
 public:
  BoolPoly() = default;
  BoolPoly(const BoolRing* ring, NodeId id) : ring_(ring), id_(id) {}

  const BoolRing& ring() const { return *ring_; }
  NodeId id() const { return id_; }
  Zdd diagram() const { return ring_->manager().wrap(id_); }

  bool is_zero() const { return id_ == kEmptyNode; }
  bool is_one() const { return id_ == kBaseNode; }
  bool is_constant() const { return id_ <= kBaseNode; }
  bool has_constant_term() const { return ring_->manager().contains_base(id_); }
  std::uint64_t length() const;

  friend bool operator==(const BoolPoly& a, const BoolPoly& b) {
    return a.ring_ == b.ring_ && a.id_ == b.id_;
  }

 private:
  const BoolRing* ring_ = nullptr;
  NodeId id_ = kEmptyNode;
};

/// A single term; held both as its sorted variable list and as a one-path
/// diagram so equality is an id comparison.
class BoolMonomial {
 public:
  BoolMonomial() = default;
  BoolMonomial(const BoolRing* ring, std::vector<VarIndex> sorted_vars);

  const std::vector<VarIndex>& vars() const { return vars_; }
  std::size_t degree() const { return vars_.size(); }
  NodeId id() const { return id_; }
  BoolPoly as_poly() const { return {ring_, id_}; }
  const BoolRing& ring() const { return *ring_; }

  bool divides(const BoolMonomial& other) const;
  BoolMonomial lcm(const BoolMonomial& other) const;
  /// this / other; other must divide this.
  BoolMonomial operator/(const BoolMonomial& other) const;
  bool coprime(const BoolMonomial& other) const;

  friend bool operator==(const BoolMonomial& a, const BoolMonomial& b) {
    return a.ring_ == b.ring_ && a.id_ == b.id_;
  }

 private:
  const BoolRing* ring_ = nullptr;
  NodeId id_ = kBaseNode;
  std::vector<VarIndex> vars_;
};

class RingMismatch : public std::logic_error {
 public:
  RingMismatch() : std::logic_error("operands belong to different rings") {}
};

BoolPoly add(const BoolPoly& f, const BoolPoly& g);
BoolPoly mul_boolean(const BoolPoly& f, const BoolPoly& g);
inline BoolPoly operator+(const BoolPoly& f, const BoolPoly& g) { return add(f, g); }
inline BoolPoly operator*(const BoolPoly& f, const BoolPoly& g) { return mul_boolean(f, g); }

BoolPoly mul_var(const BoolPoly& f, VarIndex v);
BoolPoly mul_monomial(const BoolPoly& f, const BoolMonomial& m);
BoolPoly quotient_by_monomial(const BoolPoly& f, const BoolMonomial& m);

/// Removes every term of f divisible by a member of the monomial set g.
BoolPoly nf_monomial_set(const BoolPoly& f, Zdd monomials);
NodeId nf_monomial_set(ZddManager& m, NodeId f, NodeId monomials);

/// Maximal term degree; deg(0) = 0.
int deg(const BoolPoly& f);
/// min(deg(f), bound), without descending further once bound is reached.
int deg_bounded(const BoolPoly& f, int bound);
/// Degree counting only variables below `end`; -1 for the zero polynomial.
int block_deg(const BoolRing& ring, NodeId f, VarIndex end);

BoolMonomial lead(const BoolPoly& f, const Ordering& ord);
inline BoolMonomial lead(const BoolPoly& f) { return lead(f, f.ring().ordering()); }

std::strong_ordering compare_monomials(const BoolMonomial& a, const BoolMonomial& b,
                                       const Ordering& ord);
std::strong_ordering compare_terms(const std::vector<VarIndex>& a,
                                   const std::vector<VarIndex>& b, const Ordering& ord,
                                   std::size_t n);

/// Terms in strictly decreasing order.
std::vector<BoolMonomial> terms(const BoolPoly& f, const Ordering& ord);

bool eval(const BoolPoly& f, const Point& p);

BoolPoly spoly(const BoolPoly& f, const BoolPoly& g, const Ordering& ord);

std::vector<VarIndex> vars_of(const BoolPoly& f);

/// Terms in decreasing order joined by " + ", variables by "*".
std::string to_string(const BoolPoly& f, const Ordering& ord);
inline std::string to_string(const BoolPoly& f) { return to_string(f, f.ring().ordering()); }
std::string to_string(const BoolMonomial& m);

}  // namespace zddgb
