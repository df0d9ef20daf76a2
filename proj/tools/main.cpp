// zddgb: Groebner bases over the Boolean ring and Z/m from the command line.
#include <iostream>

#include <CLI11.hpp>

#include "zddgb/cli.hpp"

using zddgb::cli::Format;
using zddgb::cli::Job;

namespace {

void common(CLI::App* sub, Job& job, std::string& format) {
  sub->add_option("--order", job.order, "lp, dlex, dp_asc or block(kind:end,...)");
  sub->add_option("--format", format, "text or json")->check(CLI::IsMember({"text", "json"}));
}

void strategy(CLI::App* sub, Job& job, bool& no_product, bool& no_chain, bool& no_ll,
              bool& no_sym, bool& no_gm, bool& no_weighted) {
  sub->add_flag("--no-product", no_product, "disable the product criterion");
  sub->add_flag("--no-chain", no_chain, "disable the chain criterion");
  sub->add_flag("--no-linear-lead", no_ll, "disable the linear-lead criterion");
  sub->add_flag("--no-symmetry", no_sym, "disable the symmetry cache");
  sub->add_flag("--no-gm", no_gm, "test the chain criterion at selection time");
  sub->add_flag("--no-weighted", no_weighted, "pick reducers by index");
  sub->add_option("--sugar", job.sugar, "select pairs by sugar degree (true/false)");
  sub->add_option("--sym-max-vars", job.strategy.symmetry_max_vars, "largest core for the symmetry path");
  sub->add_option("--table", job.strategy.table_path, "symmetry cache file");
  sub->add_option("--time-limit", job.strategy.time_limit, "seconds per computation, 0 for none");
  sub->add_flag_callback("--no-conjoin", [&job] { job.strategy.conjoin = false; },
                         "sat: skip multiplying the system into one generator");
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Groebner bases with zero-suppressed decision diagrams"};
  app.require_subcommand(1);
  Job job;
  job.strategy = zddgb::Strategy::from_env();
  std::string format = "text";
  bool no_product = false, no_chain = false, no_ll = false, no_sym = false, no_gm = false,
       no_weighted = false;

  auto* gb = app.add_subcommand("gb", "reduced Groebner basis, one polynomial per line");
  auto* nf = app.add_subcommand("nf", "normal form of --poly modulo the system");
  auto* sat = app.add_subcommand("sat", "satisfiability; exit 10 SAT, 20 UNSAT");
  auto* zeros = app.add_subcommand("zeros", "common zeros in {0,1}^n");
  auto* interp = app.add_subcommand("interp", "lex-smallest interpolant of a partial function");
  auto* enc = app.add_subcommand("encode", "circuit or instance family to a polynomial system");
  auto* bench = app.add_subcommand("bench", "run the hole and mult families");

  for (auto* sub : {gb, nf, sat, zeros, interp, enc, bench}) common(sub, job, format);
  for (auto* sub : {gb, nf, sat, bench})
    strategy(sub, job, no_product, no_chain, no_ll, no_sym, no_gm, no_weighted);
  for (auto* sub : {gb, nf, sat, zeros, interp, enc})
    sub->add_option("input", job.inputs, "input file (default: standard input)");
  for (auto* sub : {gb, nf}) sub->add_option("--mod", job.mod, "work over Z/m");
  nf->add_option("--poly", job.poly, "polynomial to reduce")->required();
  interp->add_option("--seed", job.seed, "random seed");
  enc->add_flag("--word", job.word, "print the word-level system over Z/2^n");
  enc->add_flag("--aux", job.aux, "fresh variables for adder outputs");
  enc->add_option("--hole", job.hole, "pigeonhole instance as DIMACS");
  enc->add_option("--mult", job.mult, "multiplier equivalence instance");
  enc->add_flag("--tamper", job.tamper, "drop one partial product from the second multiplier");
  bench->add_option("--family", job.family, "hole, mult or all")
      ->check(CLI::IsMember({"hole", "mult", "all"}));
  bench->add_option("--from", job.from, "smallest size");
  bench->add_option("--to", job.to, "largest size");
  bench->add_option("--jobs", job.jobs, "instances run in parallel");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }
  job.command = app.get_subcommands().front()->get_name();
  job.format = format == "json" ? Format::kJsonLines : Format::kText;
  auto& st = job.strategy;
  st.product_criterion = !no_product;
  st.chain_criterion = !no_chain;
  st.linear_lead_criterion = !no_ll;
  st.symmetry = !no_sym;
  st.gebauer_moeller = !no_gm;
  st.weighted_length = !no_weighted;
  return zddgb::cli::run(job, std::cin, std::cout, std::cerr);
}
