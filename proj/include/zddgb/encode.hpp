// Verification problems as polynomial systems: word level over Z/2^n,
// bit level over the Boolean ring, CNF, and benchmark instance families.
#pragma once

#include <cstdint>
#include <functional>
#include <istream>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "zddgb/boolpoly.hpp"
#include "zddgb/ringstd.hpp"

namespace zddgb::encode {

struct Equation {
  std::string lhs;
  std::string rhs;
  std::size_t line = 0;
  std::size_t lhs_col = 1;
  std::size_t rhs_col = 1;
};

/// wordlen n / signal a b ... / assign z = expr / assert expr = expr / disequal f e
struct Circuit {
  unsigned wordlen = 0;
  std::vector<std::string> signals;
  std::vector<Equation> assigns;  // lhs is a signal
  std::vector<Equation> asserts;
  std::optional<std::pair<std::string, std::string>> disequal;
};

Circuit read_circuit(std::istream& in);

struct WordSystem {
  unsigned wordlen = 0;
  std::shared_ptr<zm::ZmRing> ring;  // signals, then s when a disequality is present
  std::vector<zm::Poly> equations;
  std::optional<std::pair<std::size_t, std::size_t>> disequal;  // word variable indices
  std::optional<zm::Poly> gadget;                               // s*(f - e) - 2^(n-1)
  std::vector<std::string> outputs;                             // assigned signals
  std::vector<std::string> inputs;

  std::vector<zm::Poly> polys() const;
};

WordSystem word_level_encode(const Circuit& c, bool require_disequality = false);

struct BitSystem {
  std::shared_ptr<BoolRing> ring;
  std::vector<BoolPoly> polys;
};

/// Supplies a fresh Boolean variable for auxiliary gate outputs.
using Fresh = std::function<BoolPoly()>;

/// Bit vectors are least significant bit first.
using Bits = std::vector<BoolPoly>;

struct BitResult {
  Bits bits;
  std::vector<BoolPoly> aux;  // defining polynomials t + expr of fresh variables
};

/// Ripple-carry sum mod 2^n.  With `fresh`, every adder output is a new
/// variable with a defining polynomial.
BitResult bit_add(const Bits& a, const Bits& b, const Fresh& fresh = {});
/// Schoolbook product mod 2^n: rows a * b_i accumulated with bit_add.
BitResult bit_mul(const Bits& a, const Bits& b, const Fresh& fresh = {});
/// Fresh variables used by one n-bit bit_mul with `fresh`.
std::size_t bit_mul_aux_count(unsigned n);
Bits constant_bits(const BoolRing& ring, std::uint64_t value, unsigned n);

struct BlastOptions {
  bool aux = false;
};

/// Variables <sig>_<bit>: outputs first, then inputs, most significant bit first.
BitSystem blast(const WordSystem& ws, BlastOptions opt = {});

struct Cnf {
  unsigned vars = 0;
  std::vector<std::vector<int>> clauses;
};

Cnf read_dimacs(std::istream& in);
void write_dimacs(std::ostream& out, const Cnf& cnf);
/// Clause -> product of (x + 1) over positive and x over negative literals.
BitSystem cnf_to_polys(const Cnf& cnf);

/// k + 1 pigeons, k holes.
Cnf pigeonhole(unsigned k);

/// Two n-bit multipliers over shared inputs with their outputs forced apart.
/// UNSAT unless `tamper` drops a partial product from the second one.
BitSystem mult_verification(unsigned n, bool tamper = false);

}  // namespace zddgb::encode
