#include "zddgb/boolgb.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <deque>
#include <fstream>
#include <iterator>
#include <set>
#include <sstream>
#include <stdexcept>

namespace zddgb {

Strategy Strategy::from_env() {
  Strategy s;
  if (const char* p = std::getenv("ZDDGB_SYM_TABLE")) s.table_path = p;
  return s;
}

// ---------------------------------------------------------------- SymCache

namespace {

std::string encode_terms(const SymCache::TermList& terms) {
  std::string s;
  for (std::size_t i = 0; i < terms.size(); ++i) {
    if (i) s += ',';
    if (terms[i].empty()) s += 'e';
    for (std::size_t j = 0; j < terms[i].size(); ++j) {
      if (j) s += '.';
      s += std::to_string(terms[i][j]);
    }
  }
  return s;
}

SymCache::TermList decode_terms(const std::string& s) {
  SymCache::TermList out;
  std::stringstream ss(s);
  std::string term;
  while (std::getline(ss, term, ',')) {
    std::vector<VarIndex> vs;
    if (term != "e") {
      std::stringstream ts(term);
      std::string v;
      while (std::getline(ts, v, '.')) vs.push_back(static_cast<VarIndex>(std::stoul(v)));
    }
    out.push_back(std::move(vs));
  }
  return out;
}

}  // namespace

const std::vector<SymCache::TermList>* SymCache::find(const std::string& key) const {
  auto it = map_.find(key);
  return it == map_.end() ? nullptr : &it->second;
}

void SymCache::put(const std::string& key, std::vector<TermList> basis) {
  map_.insert_or_assign(key, std::move(basis));
}

// One entry per line: key, a tab, then the basis polynomials separated by
// spaces.  A polynomial is a comma list of terms, a term a dot list of
// variable indices, "e" the empty term.
void SymCache::load(const std::string& path) {
  std::ifstream in(path);
  if (!in) return;
  std::string line;
  while (std::getline(in, line)) {
    auto tab = line.find('\t');
    if (tab == std::string::npos) continue;
    std::vector<TermList> basis;
    std::stringstream ss(line.substr(tab + 1));
    std::string poly;
    while (ss >> poly) basis.push_back(decode_terms(poly));
    map_.insert_or_assign(line.substr(0, tab), std::move(basis));
  }
}

void SymCache::save(const std::string& path) const {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (const auto& [key, basis] : map_) {
    out << key << '\t';
    for (std::size_t i = 0; i < basis.size(); ++i) out << (i ? " " : "") << encode_terms(basis[i]);
    out << '\n';
  }
}

// ---------------------------------------------------------------- LeadIndex

std::uint64_t weighted_length(const BoolPoly& f) {
  std::uint64_t w = 0;
  for (const auto& t : f.ring().manager().enumerate(f.diagram())) w += 1 + t.size();
  return w;
}

LeadIndex::LeadIndex(const BoolRing& ring, Ordering ord, bool weighted)
    : ring_(&ring),
      ord_(std::move(ord)),
      weighted_(weighted),
      leadset_(ring.manager().empty()),
      monoset_(ring.manager().empty()) {}

std::size_t LeadIndex::add(const BoolPoly& g) {
  if (g.is_zero()) throw std::invalid_argument("zero generator");
  std::size_t i = gens_.size();
  gens_.push_back(g);
  leads_.push_back(lead(g, ord_));
  weight_.push_back(weighted_ ? weighted_length(g) : 0);
  bool fresh = !lm2idx_.contains(leads_[i].id());
  live_.push_back(fresh);
  if (fresh) {
    ZddManager& m = ring_->manager();
    lm2idx_.emplace(leads_[i].id(), i);
    leadset_ = m.unite(leadset_, m.wrap(leads_[i].id()));
    if (g.id() == leads_[i].id()) monoset_ = m.unite(monoset_, m.wrap(g.id()));
  }
  return i;
}

void LeadIndex::retire(std::size_t i) {
  if (!live_[i]) return;
  live_[i] = false;
  ZddManager& m = ring_->manager();
  lm2idx_.erase(leads_[i].id());
  leadset_ = m.diff(leadset_, m.wrap(leads_[i].id()));
  monoset_ = m.diff(monoset_, m.wrap(leads_[i].id()));
}

std::optional<std::size_t> LeadIndex::owner(const BoolMonomial& m) const {
  auto it = lm2idx_.find(m.id());
  if (it == lm2idx_.end()) return std::nullopt;
  return it->second;
}

void LeadIndex::rebind(const BoolRing& ring, const std::function<NodeId(NodeId)>& copy) {
  ring_ = &ring;
  for (auto& g : gens_) g = BoolPoly(&ring, copy(g.id()));
  for (auto& l : leads_) l = BoolMonomial(&ring, l.vars());
  leadset_ = ring.manager().wrap(copy(leadset_.id()));
  monoset_ = ring.manager().wrap(copy(monoset_.id()));
  absl::flat_hash_map<NodeId, std::size_t> remapped;
  for (const auto& [id, i] : lm2idx_) remapped.emplace(leads_[i].id(), i);
  lm2idx_ = std::move(remapped);
}

std::vector<std::size_t> LeadIndex::search(const BoolMonomial& mono) const {
  ZddManager& m = ring_->manager();
  Zdd divs = m.wrap(m.divisors_within(leadset_.id(), mono.id()));
  std::vector<std::size_t> out;
  for (const auto& t : m.enumerate(divs)) {
    auto it = lm2idx_.find(m.single_set(t).id());
    if (it == lm2idx_.end()) throw std::logic_error("lead map out of sync with lead set");
    out.push_back(it->second);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::size_t LeadIndex::pick(const std::vector<std::size_t>& cands) const {
  std::size_t best = cands.front();
  for (std::size_t c : cands)
    if (weight_[c] < weight_[best] || (weight_[c] == weight_[best] && c < best)) best = c;
  return best;
}

BoolPoly LeadIndex::reduce(BoolPoly f) const {
  ZddManager& m = ring_->manager();
  NodeId acc = kEmptyNode;
  NodeId cur = f.id();
  for (;;) {
    cur = nf_monomial_set(BoolPoly(ring_, cur), monoset_).id();
    NodeId irr = nf_monomial_set(BoolPoly(ring_, cur), leadset_).id();
    acc = m.sym_diff(acc, irr);
    cur = m.sym_diff(cur, irr);
    if (cur == kEmptyNode) break;
    BoolPoly cp(ring_, cur);
    auto cands = search(lead(cp, ord_));
    if (cands.empty()) throw std::logic_error("reducible term without reducer");
    std::size_t i = pick(cands);
    BoolPoly h = quotient_by_monomial(cp, leads_[i]);
    cur = (cp + h * gens_[i]).id();
  }
  return {ring_, acc};
}

BoolPoly greedy_nf(const BoolPoly& f, const std::vector<BoolPoly>& G, const Ordering& ord) {
  LeadIndex idx(f.ring(), ord);
  for (const auto& g : G)
    if (!g.is_zero()) idx.add(g);
  return idx.reduce(f);
}

std::vector<std::size_t> search_reductor(const LeadIndex& index, const BoolMonomial& m) {
  return index.search(m);
}

// ---------------------------------------------------------------- criteria

bool product_criterion(const BoolPoly& f, const BoolPoly& g, const Ordering& ord) {
  return lead(f, ord).coprime(lead(g, ord));
}

bool linear_lead_criterion(const BoolPoly& f, VarIndex v) {
  ZddManager& m = f.ring().manager();
  NodeId s0 = m.subset0(f.id(), v);
  if (s0 == kEmptyNode) return true;        // f = x_v * g
  return m.subset1(f.id(), v) == s0;         // f = (x_v + 1) * g
}

Factorization factor_linear_leads(const BoolPoly& p) {
  if (p.is_zero()) throw std::invalid_argument("factoring the zero polynomial");
  ZddManager& m = p.ring().manager();
  Factorization out{{}, p};
  for (VarIndex v : vars_of(p)) {
    NodeId c = out.core.id();
    NodeId s0 = m.subset0(c, v);
    NodeId s1 = m.subset1(c, v);
    if (s1 == kEmptyNode) continue;
    if (s0 == kEmptyNode) {
      out.factors.push_back({v, false});
      out.core = BoolPoly(&p.ring(), s1);
    } else if (s0 == s1) {
      out.factors.push_back({v, true});
      out.core = BoolPoly(&p.ring(), s0);
    }
  }
  return out;
}

BoolPoly factor_poly(const BoolRing& ring, const LinearFactor& f) {
  BoolPoly x = ring.variable(f.var);
  return f.plus_one ? x + ring.one() : x;
}

// ---------------------------------------------------------------- symmetry

namespace {

Ordering ordering_of(OrderKind k) {
  switch (k) {
    case OrderKind::kDlex: return Ordering::dlex();
    case OrderKind::kDpAsc: return Ordering::dp_asc();
    default: return Ordering::lex();
  }
}

const char* kind_key(OrderKind k) {
  switch (k) {
    case OrderKind::kDlex: return "dlex";
    case OrderKind::kDpAsc: return "dp_asc";
    default: return "lp";
  }
}

// Term list of p relabelled onto 0..k-1, in natural path order.
SymCache::TermList shifted_terms(const BoolPoly& p, const std::vector<VarIndex>& vars) {
  SymCache::TermList out = p.ring().manager().enumerate(p.diagram());
  for (auto& t : out)
    for (auto& v : t)
      v = static_cast<VarIndex>(std::lower_bound(vars.begin(), vars.end(), v) - vars.begin());
  return out;
}

}  // namespace

std::optional<OrderKind> symmetric_kind(const BoolPoly& p, const Ordering& ord) {
  auto segs = ord.segments(p.ring().num_vars());
  auto vars = vars_of(p);
  if (vars.empty()) return segs.front().kind;
  for (const auto& s : segs) {
    if (vars.front() < s.end) {
      if (vars.back() < s.end) return s.kind;
      return std::nullopt;
    }
  }
  return std::nullopt;
}

Shift suitable_shift(const BoolPoly& p, const Ordering& ord, const BoolRing& target) {
  auto kind = symmetric_kind(p, ord);
  if (!kind) throw std::invalid_argument("polynomial spans several ordering blocks");
  auto vars = vars_of(p);
  if (target.num_vars() < vars.size()) throw std::invalid_argument("target ring too small");
  return {target.from_terms(shifted_terms(p, vars)), vars, *kind};
}

std::vector<BoolPoly> bgb_single(const BoolPoly& p, const Ordering& ord, SymCache& cache,
                                 GBStats* stats, std::size_t max_vars) {
  if (p.is_zero()) return {};
  const BoolRing& ring = p.ring();
  Factorization fac = factor_linear_leads(p);
  std::vector<BoolPoly> basis;
  if (fac.core.is_one()) {
    basis.push_back(ring.one());
  } else {
    auto kind = symmetric_kind(fac.core, ord);
    if (!kind) throw std::invalid_argument("polynomial spans several ordering blocks");
    auto vars = vars_of(fac.core);
    if (vars.size() > max_vars) throw std::invalid_argument("too many variables for BGB");
    SymCache::TermList key_terms = shifted_terms(fac.core, vars);
    std::string key = std::string(kind_key(*kind)) + "|" + encode_terms(key_terms);
    if (stats) ++stats->sym_lookups;
    const auto* hit = cache.find(key);
    std::vector<SymCache::TermList> shifted;
    if (hit) {
      if (stats) ++stats->sym_hits;
      shifted = *hit;
    } else {
      Ordering inner_ord = ordering_of(*kind);
      BoolRing inner(vars.size(), inner_ord);
      Strategy st;
      st.symmetry = false;
      auto res = buchberger({inner.from_terms(key_terms)}, inner_ord, st);
      for (const auto& b : res.basis) shifted.push_back(inner.manager().enumerate(b.diagram()));
      cache.put(key, shifted);
    }
    for (auto terms : shifted) {
      for (auto& t : terms)
        for (auto& v : t) v = vars[v];
      basis.push_back(ring.from_terms(terms));
    }
  }
  for (const auto& f : fac.factors) {
    BoolPoly l = factor_poly(ring, f);
    for (auto& b : basis) b = l * b;
  }
  return basis;
}

// ---------------------------------------------------------------- Buchberger

namespace {

// Copies diagrams between managers, sharing already copied nodes.
class NodeCopy {
 public:
  NodeCopy(const ZddManager& from, ZddManager& to) : from_(from), to_(to) {}

  NodeId operator()(NodeId n) {
    if (n <= kBaseNode) return n;
    auto it = memo_.find(n);
    if (it != memo_.end()) return it->second;
    NodeId r = to_.node(from_.var_of(n), (*this)(from_.then_of(n)), (*this)(from_.else_of(n)));
    memo_.emplace(n, r);
    return r;
  }

 private:
  const ZddManager& from_;
  ZddManager& to_;
  absl::flat_hash_map<NodeId, NodeId> memo_;
};

struct PairEntry {
  int sugar;
  BoolMonomial lcm;
  std::uint64_t seq;
  bool field;
  std::size_t i;
  std::size_t j;  // second generator, or the variable of a field pair
};

class Engine {
 public:
  Engine(const BoolRing& ring, const Ordering& ord, const Strategy& st, SymCache* cache)
      : caller_(ring),
        work_(std::make_unique<BoolRing>(ring.names(), ring.ordering())),
        ord_(ord),
        st_(st),
        cache_(cache),
        idx_(*work_, ord, st.weighted_length),
        pairs_(PairLess{&ord_}) {
    compact_at_ = st.compact_nodes;
  }

  GBResult run(const std::vector<BoolPoly>& gens) {
    {
      NodeCopy in(caller_.manager(), work_->manager());
      for (const auto& g : gens)
        if (!g.is_zero()) inserts_.push_back({BoolPoly(work_.get(), in(g.id())), deg(g)});
    }
    using Clock = std::chrono::steady_clock;
    const auto deadline = Clock::now() + std::chrono::duration_cast<Clock::duration>(
                                             std::chrono::duration<double>(st_.time_limit));
    for (std::size_t round = 0;; ++round) {
      if (st_.time_limit > 0 && round % 64 == 0 && Clock::now() > deadline)
        throw TimeLimitExceeded("time limit exceeded after " + std::to_string(stats_.pairs_reduced) +
                                " reductions");
      if (work_->manager().node_count() > compact_at_) compact();
      while (!inserts_.empty() && !found_one_) {
        auto [g, s] = inserts_.front();
        inserts_.pop_front();
        BoolPoly r = idx_.reduce(g);
        if (!r.is_zero()) insert(r, s);
      }
      if (found_one_) break;
      if (pairs_.empty()) break;
      PairEntry p = *pairs_.begin();
      pairs_.erase(pairs_.begin());
      BoolPoly s;
      if (p.field) {
        s = mul_var(idx_.gen(p.i), static_cast<VarIndex>(p.j));
      } else {
        status_[key(p.i, p.j)] = false;
        if (st_.chain_criterion && !st_.gebauer_moeller && chain(p)) {
          ++stats_.chain_hits;
          continue;
        }
        s = spoly(idx_.gen(p.i), idx_.gen(p.j), ord_);
      }
      ++stats_.pairs_reduced;
      BoolPoly r = idx_.reduce(s);
      if (r.is_zero()) {
        ++stats_.zero_reductions;
      } else {
        insert(r, p.sugar);
      }
    }
    return finish();
  }

 private:
  struct PairLess {
    const Ordering* ord;
    bool operator()(const PairEntry& a, const PairEntry& b) const {
      if (a.sugar != b.sugar) return a.sugar < b.sugar;
      if (a.lcm != b.lcm) return compare_monomials(a.lcm, b.lcm, *ord) < 0;
      return a.seq < b.seq;
    }
  };

  static std::uint64_t key(std::size_t i, std::size_t j) {
    if (i > j) std::swap(i, j);
    return (static_cast<std::uint64_t>(i) << 32) | j;
  }

  bool done(std::size_t i, std::size_t j) const {
    auto it = status_.find(key(i, j));
    return it != status_.end() && !it->second;
  }

  bool chain(const PairEntry& p) const {
    for (std::size_t k : idx_.search(p.lcm)) {
      if (k == p.i || k == p.j) continue;
      if (done(p.i, k) && done(p.j, k)) return true;
    }
    return false;
  }

  void push(PairEntry e) {
    e.seq = seq_++;
    if (!st_.sugar) e.sugar = 0;
    ++stats_.pairs_created;
    pairs_.insert(std::move(e));
  }

  void insert(const BoolPoly& h, int sugar) {
    if (h.is_one()) {
      found_one_ = true;
      return;
    }
    std::vector<std::size_t> before;
    for (std::size_t k = 0; k < idx_.size(); ++k)
      if (idx_.live(k)) before.push_back(k);
    NodeId leads_before = idx_.lead_set().id();
    std::size_t i = idx_.add(h);
    sugar_.push_back(sugar);
    ++stats_.generators;
    const BoolMonomial& li = idx_.lead_of(i);
    if (st_.chain_criterion && st_.gebauer_moeller) {
      update_pairs(i, before, leads_before, sugar);
    } else {
      for (std::size_t k : before) {
        const BoolMonomial& lk = idx_.lead_of(k);
        if (st_.product_criterion && li.coprime(lk)) {
          ++stats_.product_hits;
          status_[key(k, i)] = false;
          continue;
        }
        status_[key(k, i)] = true;
        push({pair_sugar(k, i, sugar), li.lcm(lk), 0, false, k, i});
      }
    }
    for (std::size_t k : before)
      if (li.divides(idx_.lead_of(k))) idx_.retire(k);

    if (st_.symmetry && cache_ && try_symmetry(h, sugar)) return;
    for (VarIndex v : li.vars()) {
      ++stats_.field_pairs;
      if (st_.linear_lead_criterion && linear_lead_criterion(h, v)) {
        ++stats_.linear_lead_hits;
        continue;
      }
      push({sugar + 1, li, 0, true, i, v});
    }
  }

  static std::vector<VarIndex> lcm_vars(const BoolMonomial& a, const BoolMonomial& b) {
    std::vector<VarIndex> out;
    std::set_union(a.vars().begin(), a.vars().end(), b.vars().begin(), b.vars().end(),
                   std::back_inserter(out));
    return out;
  }

  int pair_sugar(std::size_t k, std::size_t i, int sugar) const {
    const BoolMonomial& lk = idx_.lead_of(k);
    const BoolMonomial& li = idx_.lead_of(i);
    return std::max(sugar_[k] - static_cast<int>(lk.degree()),
                    sugar - static_cast<int>(li.degree())) +
           static_cast<int>(lcm_vars(li, lk).size());
  }

  // Gebauer-Moeller update for a new generator i.
  void update_pairs(std::size_t i, const std::vector<std::size_t>& before, NodeId leads,
                    int sugar) {
    const BoolMonomial& li = idx_.lead_of(i);
    // Old pairs whose lcm is a proper multiple through li.
    for (auto it = pairs_.begin(); it != pairs_.end();) {
      const PairEntry& p = *it;
      if (!p.field && li.divides(p.lcm) && lcm_vars(idx_.lead_of(p.i), li) != p.lcm.vars() &&
          lcm_vars(idx_.lead_of(p.j), li) != p.lcm.vars()) {
        status_[key(p.i, p.j)] = false;
        ++stats_.chain_hits;
        it = pairs_.erase(it);
      } else {
        ++it;
      }
    }
    struct Cand {
      std::size_t k;
      std::vector<VarIndex> lcm;
      bool coprime;
      bool keep = true;
    };
    ZddManager& m = work_->manager();
    std::vector<Cand> cands;
    for (std::size_t k : before) {
      const BoolMonomial& lk = idx_.lead_of(k);
      cands.push_back({k, lcm_vars(li, lk), li.coprime(lk)});
      status_[key(k, i)] = false;
    }
    // All candidate lcms: li joined to every earlier live lead.
    NodeId all = leads;
    for (VarIndex v : li.vars())
      all = m.change(m.unite(m.subset0(all, v), m.subset1(all, v)), v);
    // A pair goes when another candidate's lcm properly divides its own, or
    // equals it and comes first or is coprime.  Coprime pairs only answer
    // to the product criterion.
    absl::flat_hash_map<NodeId, std::size_t> first;
    for (std::size_t a = 0; a < cands.size(); ++a) {
      auto& c = cands[a];
      if (c.coprime) continue;
      BoolMonomial l(work_.get(), c.lcm);
      bool drop = m.divisors_within(all, l.id()) != l.id() || !first.try_emplace(l.id(), a).second;
      if (!drop) {
        std::vector<VarIndex> rest;
        std::set_difference(c.lcm.begin(), c.lcm.end(), li.vars().begin(), li.vars().end(),
                            std::back_inserter(rest));
        auto owner = idx_.owner(BoolMonomial(work_.get(), std::move(rest)));
        drop = owner && *owner != i && idx_.lead_of(*owner).coprime(li);
      }
      if (drop) {
        c.keep = false;
        ++stats_.chain_hits;
      }
    }
    for (const auto& c : cands) {
      if (!c.keep) continue;
      if (c.coprime) {
        if (st_.product_criterion) {
          ++stats_.product_hits;
          continue;
        }
      }
      status_[key(c.k, i)] = true;
      push({pair_sugar(c.k, i, sugar), BoolMonomial(work_.get(), c.lcm), 0, false, c.k, i});
    }
  }

  bool try_symmetry(const BoolPoly& h, int sugar) {
    Factorization fac = factor_linear_leads(h);
    if (!fac.core.is_one()) {
      if (!symmetric_kind(fac.core, ord_)) return false;
      if (vars_of(fac.core).size() > st_.symmetry_max_vars) return false;
    }
    auto basis = bgb_single(h, ord_, *cache_, &stats_, st_.symmetry_max_vars);
    for (auto& b : basis)
      if (b != h) inserts_.push_back({b, std::max(sugar, deg(b))});
    return true;
  }

  GBResult finish() {
    GBResult res;
    res.stats = stats_;
    if (found_one_) {
      res.basis.push_back(caller_.one());
      return res;
    }
    for (std::size_t i = 0; i < idx_.size(); ++i) {
      if (!idx_.live(i)) continue;
      BoolPoly g = idx_.gen(i);
      if (st_.tail_reduce) {
        BoolPoly lm = idx_.lead_of(i).as_poly();
        g = lm + idx_.reduce(g + lm);
      }
      res.basis.push_back(g);
    }
    std::sort(res.basis.begin(), res.basis.end(), [&](const BoolPoly& a, const BoolPoly& b) {
      return compare_monomials(lead(a, ord_), lead(b, ord_), ord_) > 0;
    });
    NodeCopy out(work_->manager(), caller_.manager());
    for (auto& g : res.basis) g = BoolPoly(&caller_, out(g.id()));
    return res;
  }

  // Drops dead nodes by moving the live state into a fresh ring.
  void compact() {
    auto fresh = std::make_unique<BoolRing>(work_->names(), work_->ordering());
    NodeCopy copy(work_->manager(), fresh->manager());
    idx_.rebind(*fresh, std::ref(copy));
    std::set<PairEntry, PairLess> moved(PairLess{&ord_});
    for (const auto& p : pairs_) {
      PairEntry q = p;
      q.lcm = BoolMonomial(fresh.get(), p.lcm.vars());
      moved.insert(std::move(q));
    }
    pairs_ = std::move(moved);
    for (auto& [g, s] : inserts_) g = BoolPoly(fresh.get(), copy(g.id()));
    work_ = std::move(fresh);
    ++stats_.compactions;
    compact_at_ = std::max(st_.compact_nodes, 4 * work_->manager().node_count());
  }

  const BoolRing& caller_;
  std::unique_ptr<BoolRing> work_;
  std::size_t compact_at_;
  Ordering ord_;
  Strategy st_;
  SymCache* cache_;
  GBStats stats_;
  LeadIndex idx_;
  std::vector<int> sugar_;
  std::set<PairEntry, PairLess> pairs_;
  absl::flat_hash_map<std::uint64_t, bool> status_;  // true = pending
  std::deque<std::pair<BoolPoly, int>> inserts_;
  std::uint64_t seq_ = 0;
  bool found_one_ = false;
};

}  // namespace

GBResult buchberger(const std::vector<BoolPoly>& gens, const Ordering& ord,
                    const Strategy& strategy, SymCache* cache) {
  if (gens.empty()) return {};
  const BoolRing& ring = gens.front().ring();
  for (const auto& g : gens)
    if (&g.ring() != &ring) throw RingMismatch();
  ord.validate(ring.num_vars());
  SymCache local;
  SymCache* c = cache ? cache : &local;
  if (strategy.symmetry && !cache && !strategy.table_path.empty()) local.load(strategy.table_path);
  Engine engine(ring, ord, strategy, c);
  GBResult res = engine.run(gens);
  if (strategy.symmetry && !cache && !strategy.table_path.empty()) local.save(strategy.table_path);
  return res;
}

bool gb_certificate(const std::vector<BoolPoly>& basis, const Ordering& ord) {
  if (basis.empty()) return true;
  LeadIndex idx(basis.front().ring(), ord);
  for (const auto& g : basis) idx.add(g);
  for (std::size_t i = 0; i < basis.size(); ++i) {
    for (std::size_t j = i + 1; j < basis.size(); ++j)
      if (!idx.reduce(spoly(basis[i], basis[j], ord)).is_zero()) return false;
    for (VarIndex v : idx.lead_of(i).vars())
      if (!idx.reduce(mul_var(basis[i], v)).is_zero()) return false;
  }
  return true;
}

bool is_reduced(const std::vector<BoolPoly>& basis, const Ordering& ord) {
  if (basis.empty()) return true;
  ZddManager& m = basis.front().ring().manager();
  std::vector<BoolMonomial> leads;
  Zdd leadset = m.empty();
  for (const auto& g : basis) {
    leads.push_back(lead(g, ord));
    leadset = m.unite(leadset, m.wrap(leads.back().id()));
  }
  for (std::size_t i = 0; i < leads.size(); ++i) {
    for (std::size_t j = 0; j < leads.size(); ++j)
      if (i != j && leads[i].divides(leads[j])) return false;
    BoolPoly tail = basis[i] + leads[i].as_poly();
    if (nf_monomial_set(tail, leadset) != tail) return false;
  }
  return true;
}

// ---------------------------------------------------------------- SAT

std::optional<BoolPoly> conjoin(const BoolRing& ring, const std::vector<BoolPoly>& gens,
                                std::size_t node_budget) {
  BoolRing work(ring.names(), ring.ordering());
  std::vector<BoolPoly> level;
  {
    NodeCopy in(ring.manager(), work.manager());
    for (const auto& g : gens) level.push_back(BoolPoly(&work, in(g.id())) + work.one());
  }
  if (level.empty()) return ring.zero();
  while (level.size() > 1) {
    std::vector<BoolPoly> next;
    for (std::size_t i = 0; i + 1 < level.size(); i += 2) {
      next.push_back(level[i] * level[i + 1]);
      if (next.back().is_zero()) return ring.one();
      if (work.manager().node_count() > node_budget) return std::nullopt;
    }
    if (level.size() % 2) next.push_back(level.back());
    level = std::move(next);
  }
  BoolPoly g = level.front() + work.one();
  NodeCopy out(work.manager(), ring.manager());
  return BoolPoly(&ring, out(g.id()));
}

SatResult sat_check(const std::vector<BoolPoly>& gens, const Ordering& ord,
                    const Strategy& strategy) {
  SatResult out;
  std::vector<BoolPoly> live;
  for (const auto& g : gens)
    if (!g.is_zero()) live.push_back(g);
  if (live.empty()) {
    out.sat = true;
    if (!gens.empty()) out.model.assign(gens.front().ring().num_vars(), false);
    return out;
  }
  const BoolRing& ring = live.front().ring();
  SymCache cache;
  if (!strategy.table_path.empty()) cache.load(strategy.table_path);
  std::optional<BoolPoly> one;
  if (strategy.conjoin) {
    one = conjoin(ring, live, strategy.conjoin_nodes);
    if (one && !one->is_one()) one.reset();
  }
  auto res = buchberger(one ? std::vector<BoolPoly>{*one} : live, ord, strategy, &cache);
  out.basis = res.basis;
  out.stats = res.stats;
  if (res.basis.size() == 1 && res.basis.front().is_one()) return out;
  out.sat = true;
  out.model.assign(ring.num_vars(), false);
  std::vector<BoolPoly> G = res.basis;
  for (VarIndex v = 0; v < ring.num_vars() && !G.empty(); ++v) {
    bool occurs = false;
    for (const auto& g : G) {
      auto vs = vars_of(g);
      if (std::binary_search(vs.begin(), vs.end(), v)) {
        occurs = true;
        break;
      }
    }
    if (!occurs) continue;
    auto try_value = [&](bool value) -> std::optional<std::vector<BoolPoly>> {
      std::vector<BoolPoly> sys = G;
      BoolPoly x = ring.variable(v);
      sys.push_back(value ? x + ring.one() : x);
      auto r = buchberger(sys, ord, strategy, &cache);
      if (r.basis.size() == 1 && r.basis.front().is_one()) return std::nullopt;
      return r.basis;
    };
    if (auto g0 = try_value(false)) {
      G = std::move(*g0);
    } else if (auto g1 = try_value(true)) {
      out.model[v] = true;
      G = std::move(*g1);
    } else {
      throw std::logic_error("both values of a variable are inconsistent");
    }
  }
  for (const auto& g : live)
    if (eval(g, out.model)) throw std::logic_error("model does not satisfy the system");
  if (!strategy.table_path.empty()) cache.save(strategy.table_path);
  return out;
}

}  // namespace zddgb
