#include "expsplit/harness.hpp"

#include <cmath>
#include <cstdio>
#include <stdexcept>

namespace expsplit {

int n_hat_from_h(double h) {
  if (!(h > 0.0) || h >= 0.5) throw std::invalid_argument("n_hat_from_h: h out of range");
  const double m = 1.0 / h;
  const double r = std::round(m);
  if (std::abs(m - r) > 1e-6 * m)
    throw std::invalid_argument("n_hat_from_h: 1/h is not an integer");
  return static_cast<int>(r) - 1;
}

namespace {

int step_count(double horizon, double k) {
  if (!(horizon > 0.0)) throw std::invalid_argument("run: horizon must be positive");
  const int n = static_cast<int>(std::floor(horizon / k + 1e-9));
  if (n < 1) throw std::invalid_argument("run: horizon shorter than one step");
  return n;
}

}  // namespace

double run_global(const StepContext& ctx, const ProblemSpec& spec, double horizon,
                  double* actual_horizon) {
  const double k = ctx.config().k;
  const int n_steps = step_count(horizon, k);
  Vector u = initial_state(spec, ctx.grid());
  for (int n = 0; n < n_steps; ++n) u = ctx.step(n * k, u);
  const double t_end = n_steps * k;
  if (actual_horizon) *actual_horizon = t_end;
  const Vector ref = project_exact(spec, ctx.grid(), t_end);
  double err = 0.0;
  for (size_t i = 0; i < u.size(); ++i) err = std::max(err, std::abs(u[i] - ref[i]));
  return err;
}

double run_local(const StepContext& ctx, const ProblemSpec& spec, double horizon,
                 LocalAggregation agg) {
  const double k = ctx.config().k;
  const int n_steps =
      agg == LocalAggregation::First ? 1 : step_count(horizon, k);
  double acc = 0.0;
  Vector u = initial_state(spec, ctx.grid());
  for (int n = 0; n < n_steps; ++n) {
    const Vector u1 = ctx.step(n * k, u);
    const Vector ref = project_exact(spec, ctx.grid(), (n + 1) * k);
    double defect = 0.0;
    for (size_t i = 0; i < u1.size(); ++i)
      defect = std::max(defect, std::abs(u1[i] - ref[i]));
    acc = agg == LocalAggregation::Mean ? acc + defect : std::max(acc, defect);
    u = ref;  // restart every step from the projected exact solution
  }
  return agg == LocalAggregation::Mean ? acc / n_steps : acc;
}

std::vector<std::optional<double>> estimate_orders(const std::vector<double>& errors,
                                                   const std::vector<double>& ks) {
  if (errors.size() != ks.size())
    throw std::invalid_argument("estimate_orders: size mismatch");
  std::vector<std::optional<double>> orders(errors.size());
  for (size_t i = 1; i < errors.size(); ++i) {
    if (!(errors[i - 1] > 0.0) || !(errors[i] > 0.0)) continue;
    if (!(ks[i - 1] > ks[i])) throw std::invalid_argument("estimate_orders: ladder not decreasing");
    orders[i] = std::log(errors[i - 1] / errors[i]) / std::log(ks[i - 1] / ks[i]);
  }
  return orders;
}

ErrorReport run_plan(const ExperimentPlan& plan) {
  const ProblemSpec& spec = find_problem(plan.problem);
  if (plan.k_ladder.empty()) throw std::invalid_argument("run_plan: empty k ladder");
  for (size_t i = 1; i < plan.k_ladder.size(); ++i)
    if (!(plan.k_ladder[i] < plan.k_ladder[i - 1]))
      throw std::invalid_argument("run_plan: k ladder must decrease");
  const double horizon = plan.horizon > 0.0 ? plan.horizon : spec.default_horizon;
  const int n_hat = n_hat_from_h(plan.h);

  const bool split = plan.method == Method::LieSplit2D || plan.method == Method::StrangSplit2D;
  std::optional<DiscreteOperator> op;
  std::optional<SplitOperator2D> sop;
  if (split) {
    if (spec.dim != 2) throw std::invalid_argument("run_plan: split methods are 2D only");
    sop = build_2d_split(n_hat);
  } else if (spec.dim == 2) {
    op = build_2d_5pt(n_hat);
  } else {
    op = build_1d(n_hat, spec.faces[1].bc);
  }

  ErrorReport report;
  report.plan = plan;
  for (double k : plan.k_ladder) {
    IntegratorConfig cfg;
    cfg.method = plan.method;
    cfg.k = k;
    cfg.backend = plan.backend;
    cfg.krylov = plan.krylov;
    cfg.exact_trace = plan.exact_trace;
    cfg.split_display = plan.split_display;
    StepContext ctx = split ? StepContext(spec, *sop, cfg) : StepContext(spec, *op, cfg);

    LadderEntry entry;
    entry.k = k;
    entry.actual_horizon = horizon;
    if (plan.kind != ErrorKind::Local)
      entry.global_err = run_global(ctx, spec, horizon, &entry.actual_horizon);
    if (plan.kind != ErrorKind::Global)
      entry.local_err = run_local(ctx, spec, horizon, plan.local_agg);
    report.entries.push_back(entry);
  }

  std::vector<double> ks, le, ge;
  for (const LadderEntry& e : report.entries) {
    ks.push_back(e.k);
    le.push_back(e.local_err.value_or(0.0));
    ge.push_back(e.global_err.value_or(0.0));
  }
  const auto lo = estimate_orders(le, ks);
  const auto go = estimate_orders(ge, ks);
  for (size_t i = 0; i < report.entries.size(); ++i) {
    report.entries[i].local_order = lo[i];
    report.entries[i].global_order = go[i];
  }
  return report;
}

namespace {

std::string fmt(const char* f, double v) {
  char buf[64];
  std::snprintf(buf, sizeof buf, f, v);
  return buf;
}

std::string opt_fmt(const char* f, const std::optional<double>& v, const char* empty) {
  return v ? fmt(f, *v) : std::string(empty);
}

}  // namespace

std::string emit_report(const ErrorReport& report, ReportFormat format) {
  std::string out;
  if (format == ReportFormat::Csv) {
    out = "k,local_error,local_order,global_error,global_order,horizon\n";
    for (const LadderEntry& e : report.entries) {
      out += fmt("%.17g", e.k);
      out += ',' + opt_fmt("%.17g", e.local_err, "");
      out += ',' + opt_fmt("%.17g", e.local_order, "");
      out += ',' + opt_fmt("%.17g", e.global_err, "");
      out += ',' + opt_fmt("%.17g", e.global_order, "");
      out += ',' + fmt("%.17g", e.actual_horizon);
      out += '\n';
    }
    return out;
  }
  out = "        k    local error  order    global error  order\n";
  for (const LadderEntry& e : report.entries) {
    out += fmt("%9.3g", e.k);
    out += "   " + opt_fmt("%12.4e", e.local_err, "           -");
    out += "  " + opt_fmt("%6.4f", e.local_order, "     -");
    out += "   " + opt_fmt("%12.4e", e.global_err, "           -");
    out +=
        "  " + opt_fmt("%6.4f", e.global_order, "     -");
    out += '\n';
  }
  return out;
}

}  // namespace expsplit
