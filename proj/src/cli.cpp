#include "zddgb/cli.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <fstream>
#include <iostream>
#include <memory>
#include <sstream>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "zddgb/encode.hpp"
#include "zddgb/interp.hpp"
#include "zddgb/text.hpp"

namespace zddgb::cli {

namespace {

using json = nlohmann::json;

std::string_view strip_comment(std::string_view line) {
  auto hash = line.find('#');
  return hash == std::string_view::npos ? line : line.substr(0, hash);
}

bool blank(std::string_view s) {
  return std::all_of(s.begin(), s.end(), [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
}

std::vector<std::string> words(std::string_view s) {
  std::istringstream in{std::string(s)};
  std::vector<std::string> out;
  for (std::string w; in >> w;) out.push_back(w);
  return out;
}

bool looks_dimacs(const std::string& text) {
  std::istringstream in(text);
  for (std::string line; std::getline(in, line);) {
    if (blank(line) || line == "c" || line.rfind("c ", 0) == 0) continue;
    return line.rfind("p cnf", 0) == 0;
  }
  return false;
}

zm::Elem parse_modulus(const std::string& s, std::size_t line, std::size_t col) {
  std::size_t caret = s.find('^');
  try {
    std::size_t used = 0;
    if (caret == std::string::npos) {
      zm::Elem m = std::stoll(s, &used);
      if (used == s.size()) return m;
    } else {
      zm::Elem base = std::stoll(s.substr(0, caret), &used);
      std::size_t used_e = 0;
      unsigned e = static_cast<unsigned>(std::stoul(s.substr(caret + 1), &used_e));
      if (used == caret && used_e == s.size() - caret - 1 && e < 63) {
        zm::Elem m = 1;
        for (unsigned i = 0; i < e; ++i) {
          if (m > (zm::Elem{1} << 40)) throw std::out_of_range("modulus");
          m *= base;
        }
        return m;
      }
    }
  } catch (const std::invalid_argument&) {
  } catch (const std::out_of_range&) {
  }
  throw ParseError("bad modulus '" + s + "'", line, col);
}

Ordering bool_ordering(const Job& job, const SystemText& sys) {
  return Ordering::parse(job.order.value_or(sys.order.value_or("lp")));
}

zm::ZmOrder ring_ordering(const Job& job, const SystemText& sys) {
  std::string o = job.order.value_or(sys.order.value_or("lp"));
  if (o == "lp" || o == "lex") return zm::ZmOrder::kLex;
  if (o == "dlex" || o == "Dp") return zm::ZmOrder::kDlex;
  throw std::invalid_argument("ordering '" + o + "' is not available over Z/m");
}

std::vector<std::string> var_names(const SystemText& sys, const std::string& extra = {}) {
  if (!sys.vars.empty()) return sys.vars;
  std::vector<std::string> names;
  auto note = [&](std::string_view text) {
    for (auto& id : scan_identifiers(text))
      if (std::find(names.begin(), names.end(), id) == names.end()) names.push_back(id);
  };
  for (const auto& [text, line] : sys.polys) note(text);
  note(extra);
  return names;
}

struct BoolInput {
  std::shared_ptr<BoolRing> ring;
  std::vector<BoolPoly> polys;
};

BoolInput bool_input(const Job& job, const SystemText& sys, const std::string& extra = {}) {
  BoolInput out;
  Ordering ord = bool_ordering(job, sys);
  if (sys.dimacs) {
    std::istringstream in(sys.raw);
    auto bs = encode::cnf_to_polys(encode::read_dimacs(in));
    out.ring = std::make_shared<BoolRing>(bs.ring->names(), ord);
    for (const auto& p : bs.polys)
      out.polys.push_back(out.ring->from_terms(bs.ring->manager().enumerate(p.diagram())));
    return out;
  }
  out.ring = std::make_shared<BoolRing>(var_names(sys, extra), ord);
  for (const auto& [text, line] : sys.polys) out.polys.push_back(out.ring->parse(text, line));
  return out;
}

struct RingInput {
  std::shared_ptr<zm::ZmRing> ring;
  std::vector<zm::Poly> polys;
};

RingInput ring_input(const Job& job, const SystemText& sys, zm::Elem m, const std::string& extra = {}) {
  if (sys.dimacs) throw std::invalid_argument("DIMACS input has no Z/m reading");
  RingInput out;
  out.ring = std::make_shared<zm::ZmRing>(m, var_names(sys, extra), ring_ordering(job, sys));
  for (const auto& [text, line] : sys.polys) out.polys.push_back(out.ring->parse(text, line));
  return out;
}

Strategy strategy_for(const Job& job, bool search) {
  Strategy st = job.strategy;
  st.sugar = job.sugar.value_or(!search);
  return st;
}

std::string point_string(const Point& p) {
  std::string s;
  for (bool b : p) s += b ? '1' : '0';
  return s;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

void print_bool_system(std::ostream& out, const BoolRing& ring, const std::vector<BoolPoly>& polys) {
  out << "vars";
  for (const auto& n : ring.names()) out << ' ' << n;
  out << "\norder " << ring.ordering().name() << '\n';
  for (const auto& p : polys) out << to_string(p) << '\n';
}

std::string read_all(std::istream& in) {
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

std::string input_text(const Job& job, std::size_t k, std::istream& in) {
  if (job.inputs.size() <= k) {
    if (k > 0) throw std::invalid_argument("missing input file");
    return read_all(in);
  }
  std::ifstream f(job.inputs[k]);
  if (!f) throw std::invalid_argument("cannot open " + job.inputs[k]);
  return read_all(f);
}

std::string instance_name(const Job& job) {
  return job.inputs.empty() ? "-" : job.inputs.front();
}

// ---------------------------------------------------------------- commands

int cmd_gb(const Job& job, const SystemText& sys, std::ostream& out) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<std::string> lines;
  std::size_t vars = 0, eqs = 0;
  auto m = job.mod ? job.mod : sys.mod;
  if (m) {
    auto in = ring_input(job, sys, *m);
    auto res = zm::std_basis(*in.ring, in.polys);
    for (const auto& g : res.basis) lines.push_back(in.ring->to_string(g));
    vars = in.ring->num_vars();
    eqs = in.polys.size();
  } else {
    auto in = bool_input(job, sys);
    auto ord = bool_ordering(job, sys);
    auto res = buchberger(in.polys, ord, strategy_for(job, false));
    for (const auto& g : res.basis) lines.push_back(to_string(g, ord));
    vars = in.ring->num_vars();
    eqs = in.polys.size();
  }
  if (job.format == Format::kJsonLines) {
    bool one = lines.size() == 1 && lines.front() == "1";
    out << json{{"command", "gb"}, {"instance", instance_name(job)}, {"vars", vars},
                {"eqs", eqs}, {"basis_size", lines.size()},
                {"verdict", one ? "UNSAT" : "SAT"}, {"seconds", seconds_since(t0)},
                {"basis", lines}}.dump()
        << '\n';
  } else {
    for (const auto& l : lines) out << l << '\n';
  }
  return kOk;
}

int cmd_nf(const Job& job, const SystemText& sys, std::ostream& out) {
  if (job.poly.empty()) throw std::invalid_argument("nf needs --poly");
  std::string result;
  auto m = job.mod ? job.mod : sys.mod;
  if (m) {
    auto in = ring_input(job, sys, *m, job.poly);
    auto f = in.ring->parse(job.poly);
    auto basis = zm::std_basis(*in.ring, in.polys).basis;
    result = in.ring->to_string(zm::nf_ring(*in.ring, f, basis));
  } else {
    auto in = bool_input(job, sys, job.poly);
    auto ord = bool_ordering(job, sys);
    auto f = in.ring->parse(job.poly);
    auto basis = buchberger(in.polys, ord, strategy_for(job, false)).basis;
    result = to_string(greedy_nf(f, basis, ord), ord);
  }
  if (job.format == Format::kJsonLines)
    out << json{{"command", "nf"}, {"instance", instance_name(job)}, {"nf", result}}.dump() << '\n';
  else
    out << result << '\n';
  return kOk;
}

int cmd_sat(const Job& job, const SystemText& sys, std::ostream& out) {
  if (job.mod || sys.mod) throw std::invalid_argument("sat works over the Boolean ring only");
  auto t0 = std::chrono::steady_clock::now();
  auto in = bool_input(job, sys);
  auto res = sat_check(in.polys, bool_ordering(job, sys), strategy_for(job, true));
  if (job.format == Format::kJsonLines) {
    json j{{"command", "sat"}, {"instance", instance_name(job)}, {"vars", in.ring->num_vars()},
           {"eqs", in.polys.size()}, {"basis_size", res.basis.size()},
           {"verdict", res.sat ? "SAT" : "UNSAT"}, {"seconds", seconds_since(t0)}};
    if (res.sat) j["model"] = point_string(res.model);
    out << j.dump() << '\n';
  } else if (res.sat) {
    out << "s SATISFIABLE\nv";
    for (std::size_t v = 0; v < res.model.size(); ++v) {
      if (sys.dimacs)
        out << ' ' << (res.model[v] ? "" : "-") << v + 1;
      else
        out << ' ' << in.ring->name(static_cast<VarIndex>(v)) << '=' << res.model[v];
    }
    out << (sys.dimacs ? " 0\n" : "\n");
  } else {
    out << "s UNSATISFIABLE\n";
  }
  return res.sat ? kSat : kUnsat;
}

int cmd_zeros(const Job& job, const SystemText& sys, std::ostream& out) {
  auto in = bool_input(job, sys);
  PointSet s = full_cube(*in.ring);
  for (const auto& p : in.polys) s = zeros(p, s);
  auto pts = points_of(*in.ring, s);
  if (job.format == Format::kJsonLines) {
    std::vector<std::string> rows;
    for (const auto& p : pts) rows.push_back(point_string(p));
    out << json{{"command", "zeros"}, {"instance", instance_name(job)}, {"vars", in.ring->names()},
                {"count", rows.size()}, {"points", rows}}.dump()
        << '\n';
  } else {
    for (const auto& p : pts) out << point_string(p) << '\n';
  }
  return kOk;
}

int cmd_interp(const Job& job, const std::string& text, std::ostream& out) {
  std::size_t n = 0;
  {
    std::istringstream in(text);
    for (std::string line; std::getline(in, line);) {
      auto body = strip_comment(line);
      if (blank(body)) continue;
      n = words(body).front().size();
      break;
    }
  }
  std::vector<std::string> names;
  for (std::size_t i = 1; i <= n; ++i) names.push_back("x" + std::to_string(i));
  BoolRing ring(names);
  std::istringstream in(text);
  auto fn = read_partial_fn(ring, in);
  auto p = interpolate_smallest_lex(ring, fn);
  if (job.format == Format::kJsonLines)
    out << json{{"command", "interp"}, {"instance", instance_name(job)}, {"vars", names},
                {"interpolant", to_string(p)}}.dump()
        << '\n';
  else
    out << to_string(p) << '\n';
  return kOk;
}

int cmd_encode(const Job& job, std::istream& stdin_, std::ostream& out) {
  if (job.hole) {
    encode::write_dimacs(out, encode::pigeonhole(*job.hole));
    return kOk;
  }
  if (job.mult) {
    auto bs = encode::mult_verification(*job.mult, job.tamper);
    print_bool_system(out, *bs.ring, bs.polys);
    return kOk;
  }
  std::istringstream in(input_text(job, 0, stdin_));
  auto circuit = encode::read_circuit(in);
  auto ws = encode::word_level_encode(circuit);
  if (job.word) {
    const auto& r = *ws.ring;
    out << "mod " << r.mod().m() << "\nvars";
    for (const auto& n : r.names()) out << ' ' << n;
    out << "\norder lp\n";
    for (const auto& p : ws.polys()) out << r.to_string(p) << '\n';
    return kOk;
  }
  auto bs = encode::blast(ws, {job.aux});
  print_bool_system(out, *bs.ring, bs.polys);
  return kOk;
}

struct BenchRow {
  std::string instance;
  std::size_t vars = 0;
  std::size_t eqs = 0;
  std::size_t basis_size = 0;
  bool sat = false;
  double seconds = 0;
};

int cmd_bench(const Job& job, std::ostream& out) {
  struct Instance {
    std::string name;
    bool hole;
    unsigned k;
  };
  std::vector<Instance> list;
  bool holes = job.family == "all" || job.family == "hole";
  bool mults = job.family == "all" || job.family == "mult";
  if (!holes && !mults) throw std::invalid_argument("unknown family '" + job.family + "'");
  if (holes)
    for (unsigned k = job.from.value_or(4); k <= job.to.value_or(6); ++k)
      list.push_back({"hole" + std::to_string(k), true, k});
  if (mults)
    for (unsigned k = job.from.value_or(3); k <= job.to.value_or(4); ++k)
      list.push_back({"mult" + std::to_string(k) + "x" + std::to_string(k), false, k});

  Strategy st = strategy_for(job, true);
  Ordering ord = Ordering::parse(job.order.value_or("lp"));
  std::vector<BenchRow> rows(list.size());
  auto work = [&](std::size_t i) {
    const auto& inst = list[i];
    auto t0 = std::chrono::steady_clock::now();
    encode::BitSystem bs;
    BenchRow row;
    row.instance = inst.name;
    if (inst.hole) {
      auto cnf = encode::pigeonhole(inst.k);
      row.vars = cnf.vars;
      row.eqs = cnf.clauses.size();
      bs = encode::cnf_to_polys(cnf);
    } else {
      bs = encode::mult_verification(inst.k);
      row.vars = bs.ring->num_vars();
      row.eqs = bs.polys.size();
    }
    auto res = sat_check(bs.polys, ord, st);
    row.basis_size = res.basis.size();
    row.sat = res.sat;
    row.seconds = seconds_since(t0);
    rows[i] = row;
  };
  unsigned jobs = std::max(1u, job.jobs);
  if (jobs == 1) {
    for (std::size_t i = 0; i < list.size(); ++i) work(i);
  } else {
    std::vector<std::exception_ptr> errors(list.size());
    std::vector<std::thread> pool;
    std::atomic<std::size_t> next{0};
    for (unsigned t = 0; t < jobs; ++t)
      pool.emplace_back([&] {
        for (std::size_t i; (i = next++) < list.size();) {
          try {
            work(i);
          } catch (...) {
            errors[i] = std::current_exception();
          }
        }
      });
    for (auto& th : pool) th.join();
    for (auto& e : errors)
      if (e) std::rethrow_exception(e);
  }
  for (const auto& r : rows) {
    if (job.format == Format::kJsonLines) {
      out << json{{"command", "bench"}, {"instance", r.instance}, {"vars", r.vars},
                  {"eqs", r.eqs}, {"basis_size", r.basis_size},
                  {"verdict", r.sat ? "SAT" : "UNSAT"}, {"seconds", r.seconds}}.dump()
          << '\n';
    } else {
      out << r.instance << " vars=" << r.vars << " eqs=" << r.eqs
          << " verdict=" << (r.sat ? "SAT" : "UNSAT") << " basis=" << r.basis_size
          << " seconds=" << r.seconds << '\n';
    }
  }
  return kOk;
}

int dispatch(const Job& job, std::istream& in, std::ostream& out) {
  const auto& c = job.command;
  if (c == "encode") return cmd_encode(job, in, out);
  if (c == "bench") return cmd_bench(job, out);
  std::string text = input_text(job, 0, in);
  if (c == "interp") return cmd_interp(job, text, out);
  std::istringstream ss(text);
  SystemText sys = read_system(ss);
  if (c == "gb") return cmd_gb(job, sys, out);
  if (c == "nf") return cmd_nf(job, sys, out);
  if (c == "sat") return cmd_sat(job, sys, out);
  if (c == "zeros") return cmd_zeros(job, sys, out);
  throw std::invalid_argument("unknown command '" + c + "'");
}

}  // namespace

SystemText read_system(std::istream& in) {
  SystemText sys;
  sys.raw = read_all(in);
  if (looks_dimacs(sys.raw)) {
    sys.dimacs = true;
    return sys;
  }
  std::istringstream lines(sys.raw);
  std::size_t no = 0;
  for (std::string line; std::getline(lines, line);) {
    ++no;
    std::string_view body = strip_comment(line);
    if (blank(body)) continue;
    auto w = words(body);
    bool header = sys.polys.empty() && w.size() >= 2;
    if (header && w[0] == "vars") {
      sys.vars.assign(w.begin() + 1, w.end());
    } else if (header && w[0] == "order") {
      std::size_t at = body.find("order") + 5;
      std::string rest(body.substr(at));
      rest.erase(0, rest.find_first_not_of(" \t"));
      rest.erase(rest.find_last_not_of(" \t\r") + 1);
      sys.order = rest;
    } else if (header && w[0] == "mod") {
      if (w.size() != 2) throw ParseError("mod takes one value", no, body.find("mod") + 1);
      sys.mod = parse_modulus(w[1], no, body.find(w[1]) + 1);
    } else {
      sys.polys.emplace_back(std::string(body), no);
    }
  }
  return sys;
}

int run(const Job& job, std::istream& in, std::ostream& out, std::ostream& err) {
  try {
    return dispatch(job, in, out);
  } catch (const ParseError& e) {
    err << "parse error at line " << e.line() << ", column " << e.column() << ": " << e.what() << '\n';
    return kParseError;
  } catch (const std::invalid_argument& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  } catch (const TimeLimitExceeded& e) {
    err << "timeout: " << e.what() << '\n';
    return kTimeout;
  } catch (const std::logic_error& e) {
    err << "internal error: " << e.what() << '\n';
    return kInternalError;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kInputError;
  }
}

}  // namespace zddgb::cli
