// Boolean Groebner bases: greedy normal forms, pair criteria, symmetry cache
// and a satisfiability front end.
#pragma once

#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "zddgb/boolpoly.hpp"

namespace zddgb {

struct Strategy {
  bool product_criterion = true;
  bool chain_criterion = true;
  /// With the chain criterion: prune at insertion (Gebauer-Moeller) instead
  /// of testing each pair when it is selected.
  bool gebauer_moeller = true;
  bool linear_lead_criterion = true;
  bool sugar = true;
  /// BGB(p) via factor stripping, shifting and the symmetry cache.
  bool symmetry = true;
  /// Choose among reducers by weighted length; otherwise by index.
  bool weighted_length = true;
  bool tail_reduce = true;
  /// Cores with more variables than this skip the symmetry path.
  std::size_t symmetry_max_vars = 6;
  /// Node count that triggers compaction of the working diagrams.
  std::size_t compact_nodes = std::size_t{1} << 22;
  /// Optional file for persisting the symmetry cache.
  std::string table_path;
  /// sat_check: first multiply the system into its single generator and
  /// skip the pair loop when that generator is 1.
  bool conjoin = true;
  /// Node limit for that product; past it the system is used as given.
  std::size_t conjoin_nodes = std::size_t{1} << 23;
  /// Wall-clock budget in seconds for one run; 0 means none.
  double time_limit = 0;

  /// Applies ZDDGB_SYM_TABLE when set.
  static Strategy from_env();
};

struct GBStats {
  std::size_t pairs_created = 0;
  std::size_t pairs_reduced = 0;
  std::size_t zero_reductions = 0;
  std::size_t product_hits = 0;
  std::size_t chain_hits = 0;
  std::size_t linear_lead_hits = 0;
  std::size_t field_pairs = 0;
  std::size_t sym_lookups = 0;
  std::size_t sym_hits = 0;
  std::size_t generators = 0;
  std::size_t compactions = 0;
};

/// Reduced Boolean Groebner bases of shifted single polynomials, keyed by
/// ordering kind and the term list of the shifted core.
class SymCache {
 public:
  using TermList = std::vector<std::vector<VarIndex>>;

  const std::vector<TermList>* find(const std::string& key) const;
  void put(const std::string& key, std::vector<TermList> basis);
  std::size_t size() const { return map_.size(); }

  /// Text file: one entry per line, "key\tbasis" (see source for format).
  void load(const std::string& path);
  void save(const std::string& path) const;

 private:
  std::map<std::string, std::vector<TermList>> map_;
};

/// Generators indexed by leading monomial, with ZDD-based reductor search.
class LeadIndex {
 public:
  LeadIndex(const BoolRing& ring, Ordering ord, bool weighted = true);

  const Ordering& ordering() const { return ord_; }
  std::size_t add(const BoolPoly& g);
  /// Removes g_i from the lead set (it stays addressable by index).
  void retire(std::size_t i);
  bool live(std::size_t i) const { return live_[i]; }
  const BoolPoly& gen(std::size_t i) const { return gens_[i]; }
  const BoolMonomial& lead_of(std::size_t i) const { return leads_[i]; }
  std::size_t size() const { return gens_.size(); }
  Zdd lead_set() const { return leadset_; }

  /// Live generators whose lead divides m.
  std::vector<std::size_t> search(const BoolMonomial& m) const;
  /// Fully reduced normal form (no term divisible by a live lead).
  BoolPoly reduce(BoolPoly f) const;
  /// Index of the lead owning monomial m, if live.
  std::optional<std::size_t> owner(const BoolMonomial& m) const;

  /// Moves every held diagram into `ring`; `copy` maps node ids across.
  void rebind(const BoolRing& ring, const std::function<NodeId(NodeId)>& copy);

 private:
  std::size_t pick(const std::vector<std::size_t>& cands) const;

  const BoolRing* ring_;
  Ordering ord_;
  bool weighted_;
  std::vector<BoolPoly> gens_;
  std::vector<BoolMonomial> leads_;
  std::vector<std::uint64_t> weight_;
  std::vector<bool> live_;
  Zdd leadset_;
  Zdd monoset_;
  absl::flat_hash_map<NodeId, std::size_t> lm2idx_;
};

/// w(f) = sum over terms t of (1 + deg t).
std::uint64_t weighted_length(const BoolPoly& f);

BoolPoly greedy_nf(const BoolPoly& f, const std::vector<BoolPoly>& G, const Ordering& ord);
std::vector<std::size_t> search_reductor(const LeadIndex& index, const BoolMonomial& m);

bool product_criterion(const BoolPoly& f, const BoolPoly& g, const Ordering& ord);
/// True when the field pair (f, x_v) is covered by a factor l with lm(l) = x_v.
bool linear_lead_criterion(const BoolPoly& f, VarIndex v);

struct LinearFactor {
  VarIndex var;
  bool plus_one;  // x_v + 1 rather than x_v
};
struct Factorization {
  std::vector<LinearFactor> factors;
  BoolPoly core;
};
Factorization factor_linear_leads(const BoolPoly& p);
BoolPoly factor_poly(const BoolRing& ring, const LinearFactor& f);

struct Shift {
  BoolPoly shifted;            // lives in `ring`
  std::vector<VarIndex> map;   // shifted index i  <->  original map[i]
  OrderKind kind;              // ordering kind of the target ring
};
/// Relabels p onto the first |vars(p)| variables of a fresh ring with the
/// same (symmetric) ordering kind.  Throws if p spans several blocks.
Shift suitable_shift(const BoolPoly& p, const Ordering& ord, const BoolRing& target);
/// Ordering kind usable for shifting p, or nullopt across blocks.
std::optional<OrderKind> symmetric_kind(const BoolPoly& p, const Ordering& ord);

std::vector<BoolPoly> bgb_single(const BoolPoly& p, const Ordering& ord, SymCache& cache,
                                 GBStats* stats = nullptr, std::size_t max_vars = 64);

/// Thrown when a run exceeds Strategy::time_limit.
struct TimeLimitExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct GBResult {
  std::vector<BoolPoly> basis;
  GBStats stats;
};

/// Reduced Boolean Groebner basis of <gens> + FP, sorted by descending lead.
GBResult buchberger(const std::vector<BoolPoly>& gens, const Ordering& ord,
                    const Strategy& strategy = {}, SymCache* cache = nullptr);

/// Every s-polynomial of the basis, field pairs included, has greedy_nf 0.
bool gb_certificate(const std::vector<BoolPoly>& basis, const Ordering& ord);
/// Leads pairwise non-dividing and no tail term divisible by any lead.
bool is_reduced(const std::vector<BoolPoly>& basis, const Ordering& ord);

/// 1 + prod(1 + g) over gens: the generator of <gens> + FP.  The balanced
/// product runs in a private ring; nullopt once it passes node_budget nodes.
std::optional<BoolPoly> conjoin(const BoolRing& ring, const std::vector<BoolPoly>& gens,
                                std::size_t node_budget);

struct SatResult {
  bool sat = false;
  Point model;
  std::vector<BoolPoly> basis;
  GBStats stats;
};
SatResult sat_check(const std::vector<BoolPoly>& gens, const Ordering& ord,
                    const Strategy& strategy = {});

}  // namespace zddgb
