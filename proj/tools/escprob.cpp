#include <iostream>

#include <CLI11.hpp>

#include "escprob/commands.hpp"

namespace {

void add_common(CLI::App* cmd, escprob::cli::CommonOptions& c) {
  cmd->add_option("--tol", c.tol, "Absolute and relative quadrature tolerance");
  cmd->add_option("--max-subdivisions", c.max_subdivisions, "Cap on adaptive quadrature boxes");
  cmd->add_option("--particles", c.particles, "Monte Carlo particles")->capture_default_str();
  cmd->add_option("--seed", c.seed, "Random seed")->capture_default_str();
  cmd->add_option("--runs", c.runs, "Repeated MC runs for the empirical error")->capture_default_str();
  cmd->add_option("--workers", c.workers, "OpenMP threads (0: runtime default)")->capture_default_str();
  cmd->add_option("--output", c.output, "Write the report here instead of stdout");
}

}  // namespace

int main(int argc, char** argv) {
  namespace cli = escprob::cli;
  CLI::App app{"Single-step escape probabilities of mesh cells"};
  app.set_version_flag("--version", ESCPROB_VERSION);
  app.require_subcommand(1);

  cli::EscapeArgs escape;
  auto* esc = app.add_subcommand("escape", "Escape probability of one cell");
  esc->add_option("--geometry", escape.geometry, "Geometry JSON file")->required();
  esc->add_option("--distribution", escape.distribution, "Step law JSON file")->required();
  esc->add_option("--method", escape.method, "det, mc or both")
      ->check(CLI::IsMember({"det", "mc", "both"}))
      ->capture_default_str();
  add_common(esc, escape.common);

  cli::TransitionArgs transition;
  auto* tr = app.add_subcommand("transition", "Transition probability between two cells");
  tr->add_option("--source", transition.source, "Source geometry JSON file")->required();
  tr->add_option("--target", transition.target, "Target geometry JSON file")->required();
  tr->add_option("--distribution", transition.distribution, "Step law JSON file")->required();
  tr->add_option("--method", transition.method, "det, mc or both")
      ->check(CLI::IsMember({"det", "mc", "both"}))
      ->capture_default_str();
  add_common(tr, transition.common);

  cli::BenchArgs bench;
  auto* b = app.add_subcommand("bench-table3", "Reproduce the benchmark escape table");
  b->add_option("--particles", bench.particles, "Monte Carlo particles per cell")->capture_default_str();
  b->add_option("--seed", bench.seed, "Random seed")->capture_default_str();
  b->add_option("--runs", bench.runs, "Repeated MC runs for the empirical error")->capture_default_str();
  b->add_option("--tol", bench.tol, "Quadrature tolerance");
  b->add_option("--output", bench.output, "Write the JSON table here");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : cli::kBadInput;
  }

  if (*esc) return cli::cmd_escape(escape, std::cout, std::cerr);
  if (*tr) return cli::cmd_transition(transition, std::cout, std::cerr);
  return cli::cmd_bench_table3(bench, std::cout, std::cerr);
}
