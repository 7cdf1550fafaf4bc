// Command-line front end: run one convergence study, reproduce one of
// the built-in studies, or run the verification suites.

#include <cstdio>
#include <fstream>
#include <iostream>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "expsplit/harness.hpp"
#include "expsplit/problems.hpp"
#include "expsplit/properties.hpp"
#include "expsplit/tables.hpp"

namespace {

using namespace expsplit;

const std::map<std::string, Method> method_names{
    {"lie-corrected", Method::LieCorrected},
    {"strang-corrected", Method::StrangCorrected},
    {"lie-standard", Method::LieStandard},
    {"strang-standard", Method::StrangStandard},
    {"lie-split2d", Method::LieSplit2D},
    {"strang-split2d", Method::StrangSplit2D},
};

const std::map<std::string, ExpBackend> backend_names{
    {"auto", ExpBackend::Auto},
    {"dense", ExpBackend::Dense},
    {"krylov", ExpBackend::Krylov},
};

const std::map<std::string, ErrorKind> error_names{
    {"local", ErrorKind::Local},
    {"global", ErrorKind::Global},
    {"both", ErrorKind::Both},
};

const std::map<std::string, ReportFormat> format_names{
    {"csv", ReportFormat::Csv},
    {"pretty", ReportFormat::Pretty},
};

const std::map<std::string, bool> trace_names{
    {"numeric", false},
    {"exact", true},
};

const std::map<std::string, SplitDisplay> split_display_names{
    {"chained", SplitDisplay::Chained},
    {"literal", SplitDisplay::Literal},
};

const std::map<std::string, LocalAggregation> agg_names{
    {"max", LocalAggregation::Max},
    {"mean", LocalAggregation::Mean},
    {"first", LocalAggregation::First},
};

void write_out(const std::string& text, const std::string& out_file) {
  if (out_file.empty()) {
    std::cout << text;
    return;
  }
  std::ofstream f(out_file);
  if (!f) throw std::runtime_error("cannot open output file: " + out_file);
  f << text;
}

int run_verify(const std::string& suite) {
  std::vector<PropertyResult> results;
  if (suite == "all")
    results = verify_all();
  else if (suite == "contractivity")
    results = check_contractivity();
  else if (suite == "projection")
    results = check_projection_orders();
  else
    results = check_equivalences();
  bool all_pass = true;
  for (const PropertyResult& r : results) {
    all_pass = all_pass && r.pass;
    std::printf("[%s] %s: %s\n", r.pass ? "PASS" : "FAIL", r.name.c_str(), r.detail.c_str());
  }
  std::printf("%zu checks, %s\n", results.size(), all_pass ? "all passed" : "FAILURES above");
  return all_pass ? 0 : 1;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exponential splitting integrators for reaction-diffusion problems "
               "with time-dependent boundary data"};
  app.require_subcommand(1);
  // --h is a mesh width here, so help gets no short flag.
  app.set_help_flag("--help", "Print help");

  // run
  auto* run = app.add_subcommand("run", "Run one convergence study");
  run->set_help_flag("--help", "Print help");
  ExperimentPlan plan;
  std::string out_file;
  ReportFormat format = ReportFormat::Pretty;
  run->add_option("--problem", plan.problem, "Problem name (see --list)")->required();
  run->add_option("--method", plan.method, "Time integrator")
      ->required()
      ->transform(CLI::CheckedTransformer(method_names));
  run->add_option("--h", plan.h, "Mesh width, 1/(h) an integer")->required();
  run->add_option("--k", plan.k_ladder, "Comma-separated step-size ladder, decreasing")
      ->required()
      ->delimiter(',');
  run->add_option("--T", plan.horizon, "Horizon (default: problem horizon)");
  run->add_option("--backend", plan.backend, "Exponential backend")
      ->transform(CLI::CheckedTransformer(backend_names));
  run->add_option("--error", plan.kind, "Which errors to measure")
      ->transform(CLI::CheckedTransformer(error_names));
  run->add_option("--trace", plan.exact_trace,
                  "Boundary trace of f on flux faces: from the numeric boundary value "
                  "or from the exact solution")
      ->transform(CLI::CheckedTransformer(trace_names));
  run->add_option("--split-display", plan.split_display,
                  "Second directional stage input: chained composition or the "
                  "literal displayed form")
      ->transform(CLI::CheckedTransformer(split_display_names));
  run->add_option("--local-agg", plan.local_agg, "Local-error aggregation over steps")
      ->transform(CLI::CheckedTransformer(agg_names));
  run->add_option("--krylov-tol", plan.krylov.tol, "Krylov accuracy target per evaluation");
  run->add_option("--krylov-m", plan.krylov.m_max, "Krylov subspace dimension cap");
  run->add_option("--format", format, "Report format")
      ->transform(CLI::CheckedTransformer(format_names));
  run->add_option("--out", out_file, "Write the report to a file instead of stdout");

  // list
  auto* list = app.add_subcommand("list", "List the built-in problems and studies");

  // reproduce
  auto* rep = app.add_subcommand("reproduce", "Re-run one of the built-in studies 1..8");
  int table_number = 0;
  bool full_h = false;
  ReportFormat rep_format = ReportFormat::Pretty;
  std::string rep_out;
  rep->add_option("--table", table_number, "Study number, 1..8")->required();
  rep->add_flag("--full-h", full_h,
                "Use the fine reference mesh for studies 2 and 4 (slower, Krylov)");
  rep->add_option("--format", rep_format, "Report format")
      ->transform(CLI::CheckedTransformer(format_names));
  rep->add_option("--out", rep_out, "Write the report to a file instead of stdout");

  // verify
  auto* ver = app.add_subcommand("verify", "Run the property suites");
  std::string suite = "all";
  ver->add_option("--suite", suite, "Which suite")
      ->check(CLI::IsMember({"all", "contractivity", "projection", "equivalence"}));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (list->parsed()) {
      std::printf("problems:\n");
      for (const ProblemSpec& p : benchmark_catalog())
        std::printf("  %-16s %dD, default horizon %g\n", p.name.c_str(), p.dim,
                    p.default_horizon);
      std::printf("studies:\n");
      for (const TablePreset& t : table_presets())
        std::printf("  %d  %s\n", t.number, t.caption.c_str());
      return 0;
    }
    if (run->parsed()) {
      find_problem(plan.problem);  // fail early with a clear message
      const ErrorReport report = run_plan(plan);
      write_out(emit_report(report, format), out_file);
      return 0;
    }
    if (rep->parsed()) {
      const TablePreset& preset = find_table(table_number, full_h);
      if (rep_format == ReportFormat::Pretty)
        std::printf("study %d: %s\n", preset.number, preset.caption.c_str());
      const ErrorReport report = run_plan(preset.plan);
      write_out(emit_report(report, rep_format), rep_out);
      return 0;
    }
    return run_verify(suite);
  } catch (const std::invalid_argument& e) {
    std::cerr << "usage error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}
