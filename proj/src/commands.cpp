#include "escprob/commands.hpp"

#include <algorithm>
#include <cmath>
#include <fstream>
#include <ostream>

#include "escprob/io.hpp"
#include "escprob/montecarlo.hpp"
#include "escprob/quadrature.hpp"
#include "escprob/table3.hpp"

namespace escprob::cli {

using nlohmann::json;

namespace {

QuadratureConfig quad_config(const std::optional<double>& tol,
                             const std::optional<std::size_t>& max_subdivisions = std::nullopt) {
  QuadratureConfig cfg;
  if (tol) cfg.abs_tol = cfg.rel_tol = *tol;
  if (max_subdivisions) cfg.max_subdivisions = *max_subdivisions;
  cfg.validate();
  return cfg;
}

McConfig mc_config(const CommonOptions& c) {
  McConfig cfg;
  cfg.particles = c.particles;
  cfg.seed = c.seed;
  cfg.runs = c.runs;
  cfg.workers = c.workers;
  return cfg;
}

bool valid_method(const std::string& m) { return m == "det" || m == "mc" || m == "both"; }

json config_echo(const std::string& method, const CommonOptions& c) {
  const QuadratureConfig q = quad_config(c.tol, c.max_subdivisions);
  return {{"method", method},
          {"abs_tol", q.abs_tol},
          {"rel_tol", q.rel_tol},
          {"max_subdivisions", q.max_subdivisions},
          {"particles", c.particles},
          {"seed", c.seed},
          {"runs", c.runs}};
}

void write_document(const json& doc, const std::optional<std::string>& path, std::ostream& out) {
  if (path) {
    std::ofstream f(*path);
    if (!f) throw InputError("output", "cannot write " + *path);
    f << doc.dump(2) << '\n';
  } else {
    out << doc.dump(2) << '\n';
  }
}

RunReport base_report(const std::string& command, const CommonOptions& c) {
  RunReport r;
  r.command = command;
  r.provenance.version = ESCPROB_VERSION;
  r.provenance.seed = c.seed;
  r.provenance.rng = std::string(RandomStream::kFamily);
  r.provenance.timestamp = utc_timestamp();
  return r;
}

void attach_comparison(RunReport& r) {
  if (!r.deterministic || !r.monte_carlo) return;
  const double p = r.deterministic->value;
  McComparison cmp;
  cmp.difference = r.monte_carlo->value - p;
  cmp.four_sigma = 4.0 * theoretical_stat_error(p, r.monte_carlo->cost);
  cmp.within = std::abs(cmp.difference) <= cmp.four_sigma;
  r.comparison = cmp;
}

void note_cost(RunReport& r, std::ostream& err) {
  if (r.deterministic && r.deterministic->cost > kEvaluationWarning) {
    const std::string w = "deterministic solver used " + std::to_string(r.deterministic->cost) +
                          " density evaluations";
    r.warnings.push_back(w);
    err << "warning: " << w << '\n';
  }
}

// Runs `body`; solver failures are recorded in the report and mapped to exit 3.
template <class Body>
int run_solver(RunReport& report, std::ostream& err, Body body) {
  try {
    body();
    return kOk;
  } catch (const ToleranceNotMet& e) {
    ProbabilityEstimate partial;
    partial.value = e.value();
    partial.error_estimate = e.error();
    partial.cost = e.evaluations();
    report.deterministic = partial;
    report.status = "solver_failure";
    report.message = e.what();
  } catch (const InputError&) {
    throw;
  } catch (const Error& e) {
    report.status = "solver_failure";
    report.message = e.what();
  }
  err << "error: " << report.message << '\n';
  return kSolverFailure;
}

}  // namespace

int cmd_escape(const EscapeArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (!valid_method(args.method)) throw InputError("method", "expected det, mc or both");
    const json geometry_doc = read_json_file(args.geometry);
    const json law_doc = read_json_file(args.distribution);
    const MeshElement element = parse_geometry(geometry_doc);
    const auto law = parse_distribution(law_doc, element.dim());
    const McConfig mc = mc_config(args.common);
    mc.validate();
    const QuadratureConfig quad = quad_config(args.common.tol, args.common.max_subdivisions);

    RunReport report = base_report("escape", args.common);
    report.request = {{"geometry", geometry_to_json(element)},
                      {"distribution", distribution_to_json(*law)},
                      {"config", config_echo(args.method, args.common)}};
    const int code = run_solver(report, err, [&] {
      if (args.method != "mc") report.deterministic = escape_probability_det(element, *law, quad);
      if (args.method != "det") {
        report.monte_carlo = escape_probability_mc(element, *law, mc);
        if (mc.runs >= 2) {
          const auto rep = repeated_escape_mc(element, *law, mc);
          report.runs = RepeatedRuns{rep.values, rep.mean, rep.empirical_error};
        }
      }
      attach_comparison(report);
      note_cost(report, err);
    });
    write_document(report_to_json(report), args.common.output, out);
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

int cmd_transition(const TransitionArgs& args, std::ostream& out, std::ostream& err) {
  try {
    if (!valid_method(args.method)) throw InputError("method", "expected det, mc or both");
    const MeshElement source = [&] {
      try {
        return parse_geometry(read_json_file(args.source));
      } catch (const InputError& e) {
        throw InputError("source." + e.field(), e.what());
      }
    }();
    const MeshElement target = [&] {
      try {
        return parse_geometry(read_json_file(args.target));
      } catch (const InputError& e) {
        throw InputError("target." + e.field(), e.what());
      }
    }();
    if (source.dim() != target.dim()) throw InputError("target", "dimension differs from source");
    const auto law = parse_distribution(read_json_file(args.distribution), source.dim());
    const McConfig mc = mc_config(args.common);
    mc.validate();
    const QuadratureConfig quad = quad_config(args.common.tol, args.common.max_subdivisions);

    if (args.method != "mc" && source.dim() != 1) {
      err << "error: deterministic transition supported in 1D only\n";
      return kUnsupported;
    }

    RunReport report = base_report("transition", args.common);
    report.request = {{"source", geometry_to_json(source)},
                      {"target", geometry_to_json(target)},
                      {"distribution", distribution_to_json(*law)},
                      {"config", config_echo(args.method, args.common)}};
    const int code = run_solver(report, err, [&] {
      if (args.method != "mc") {
        auto interval = [](const MeshElement& e) {
          const auto& v = e.vertices();
          return Interval{std::min(v[0][0], v[1][0]), std::max(v[0][0], v[1][0])};
        };
        report.deterministic = transition_probability_det_1d(interval(source), interval(target), *law,
                                                             quad);
      }
      if (args.method != "det") report.monte_carlo = transition_probability_mc(source, target, *law, mc);
      attach_comparison(report);
      note_cost(report, err);
    });
    write_document(report_to_json(report), args.common.output, out);
    return code;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  }
}

int cmd_bench_table3(const BenchArgs& args, std::ostream& out, std::ostream& err) {
  McConfig mc;
  mc.particles = args.particles;
  mc.seed = args.seed;
  mc.runs = args.runs;
  try {
    mc.validate();
    const table3::Table table = table3::run(quad_config(args.tol), mc);
    json doc = table3::to_json(table);
    doc["provenance"] = {{"tool", "escprob"},
                         {"version", ESCPROB_VERSION},
                         {"seed", args.seed},
                         {"rng", std::string(RandomStream::kFamily)},
                         {"timestamp", utc_timestamp()}};
    if (args.output) {
      std::ofstream f(*args.output);
      if (!f) throw InputError("output", "cannot write " + *args.output);
      f << doc.dump(2) << '\n';
    }
    out << table3::render(table);
    return table.pass ? kOk : kCheckFailed;
  } catch (const InputError& e) {
    err << "error: " << e.what() << '\n';
    return kBadInput;
  } catch (const Error& e) {
    err << "error: " << e.what() << '\n';
    return kSolverFailure;
  }
}

}  // namespace escprob::cli
