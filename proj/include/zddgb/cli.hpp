// Command-line jobs: read a system, run one computation, print the result.
#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "zddgb/boolgb.hpp"
#include "zddgb/ringstd.hpp"

namespace zddgb::cli {

enum class Format { kText, kJsonLines };

struct Job {
  std::string command;              // gb nf sat zeros interp encode bench
  std::vector<std::string> inputs;  // empty: read the input stream
  std::optional<std::string> order;
  std::optional<zm::Elem> mod;
  Strategy strategy;
  /// Unset: sugar for gb and nf, plain lcm order for sat and bench.
  std::optional<bool> sugar;
  std::uint64_t seed = 1;
  Format format = Format::kText;

  std::string poly;  // nf

  bool word = false;  // encode: stop at the word level
  bool aux = false;   // encode: fresh variables for adder outputs
  std::optional<unsigned> hole;
  std::optional<unsigned> mult;
  bool tamper = false;

  std::string family = "all";  // bench: hole, mult or all
  std::optional<unsigned> from;
  std::optional<unsigned> to;
  unsigned jobs = 1;
};

/// Exit codes.
inline constexpr int kOk = 0;
inline constexpr int kInputError = 1;
inline constexpr int kParseError = 2;
inline constexpr int kInternalError = 3;
inline constexpr int kTimeout = 4;
inline constexpr int kSat = 10;
inline constexpr int kUnsat = 20;

int run(const Job& job, std::istream& in, std::ostream& out, std::ostream& err);

/// Text systems: optional `vars`, `order` and `mod` header lines, then one
/// polynomial per line; '#' starts a comment.  DIMACS is detected by its
/// `c` / `p cnf` lines.
struct SystemText {
  std::vector<std::string> vars;
  std::optional<std::string> order;
  std::optional<zm::Elem> mod;
  std::vector<std::pair<std::string, std::size_t>> polys;  // text, line
  bool dimacs = false;
  std::string raw;
};

SystemText read_system(std::istream& in);

}  // namespace zddgb::cli
