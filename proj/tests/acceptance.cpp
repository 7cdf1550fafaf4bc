// Acceptance gates for the shipped convergence studies and the
// library's structural guarantees. Each criterion prints exactly one
// [PASS]/[FAIL] line with the measured quantities next to the reference
// values and tolerances it is held to; the exit code is the number of
// failed criteria. Run with a criterion number (1..8) or "all".

#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <cstring>
#include <optional>
#include <string>
#include <vector>

#include "expsplit/discretize.hpp"
#include "expsplit/matfun.hpp"
#include "expsplit/properties.hpp"
#include "expsplit/tables.hpp"

using namespace expsplit;

namespace {

double now_s() {
  return std::chrono::duration<double>(
             std::chrono::steady_clock::now().time_since_epoch())
      .count();
}

std::string fmt(const char* f, ...) {
  char buf[1024];
  va_list args;
  va_start(args, f);
  std::vsnprintf(buf, sizeof buf, f, args);
  va_end(args);
  return buf;
}

bool order_near(const std::optional<double>& got, double ref, double tol) {
  return got.has_value() && std::abs(*got - ref) <= tol;
}

bool mag_near(const std::optional<double>& got, double ref, double rel) {
  return got.has_value() && std::abs(*got - ref) <= rel * std::abs(ref);
}

std::string order_pair(const ErrorReport& r, bool global) {
  auto v = [&](size_t i) {
    const auto& o = global ? r.entries[i].global_order : r.entries[i].local_order;
    return o ? fmt("%.4f", *o) : std::string("-");
  };
  return v(1) + "/" + v(2);
}

std::string err_triple(const ErrorReport& r, bool global) {
  std::string s;
  for (size_t i = 0; i < r.entries.size(); ++i) {
    const auto& e = global ? r.entries[i].global_err : r.entries[i].local_err;
    s += (i ? "/" : "") + (e ? fmt("%.4e", *e) : std::string("-"));
  }
  return s;
}

// Reference errors and observed orders of the built-in studies; the
// study gates below hold the reproduced runs to these values.
struct StudyRef {
  double global_err[3];
  double global_order[2];
};
const StudyRef kRef3 = {{3.9872e-2, 1.9887e-2, 9.9237e-3}, {1.0036, 1.0029}};
const StudyRef kRef5 = {{6.1666e-1, 2.9307e-1, 1.4341e-1}, {1.0732, 1.0311}};
const StudyRef kRef6 = {{3.0713e-1, 7.7562e-2, 2.1856e-2}, {1.9854, 1.8273}};
const StudyRef kRef7 = {{6.1373e-1, 2.9240e-1, 1.4325e-1}, {1.0697, 1.0294}};
const StudyRef kRef8 = {{3.4096e-1, 8.7881e-2, 2.3635e-2}, {1.9560, 1.8946}};

bool gate_study(const ErrorReport& rep, const StudyRef& ref, double order_tol,
                double mag_rel) {
  bool ok = true;
  for (int i = 0; i < 3; ++i)
    ok = ok && mag_near(rep.entries[i].global_err, ref.global_err[i], mag_rel);
  for (int i = 0; i < 2; ++i)
    ok = ok && order_near(rep.entries[i + 1].global_order, ref.global_order[i], order_tol);
  return ok;
}

bool criterion_1() {
  const double t0 = now_s();
  const ErrorReport rep = run_plan(find_table(1).plan);
  const double dt = now_s() - t0;

  const double ref_err[3] = {6.8139e-3, 3.4035e-3, 1.7016e-3};
  bool ok = true;
  for (int i = 0; i < 3; ++i) ok = ok && mag_near(rep.entries[i].global_err, ref_err[i], 0.10);
  ok = ok && order_near(rep.entries[1].global_order, 1.0015, 0.1);
  ok = ok && order_near(rep.entries[2].global_order, 1.0001, 0.1);
  ok = ok && order_near(rep.entries[1].local_order, 1.8867, 0.2);
  ok = ok && order_near(rep.entries[2].local_order, 1.9108, 0.2);
  ok = ok && dt < 60.0;

  std::printf("[%s] criterion 1: study 1, first-order corrected splitting on the "
              "Dirichlet problem: global %s orders %s (refs 1.0015/1.0001 +-0.1, "
              "magnitudes +-10%%), local orders %s (refs 1.8867/1.9108 +-0.2), %.1fs (<60s)\n",
              ok ? "PASS" : "FAIL", err_triple(rep, true).c_str(),
              order_pair(rep, true).c_str(), order_pair(rep, false).c_str(), dt);
  return ok;
}

bool criterion_2() {
  const double t0 = now_s();
  const ErrorReport coarse = run_plan(find_table(2).plan);
  const ErrorReport fine = run_plan(find_table(2, true).plan);
  const double dt = now_s() - t0;

  bool ok = true;
  for (int i = 1; i < 3; ++i) {
    ok = ok && order_near(coarse.entries[i].local_order, 2.0, 0.2);
    ok = ok && order_near(coarse.entries[i].global_order, 2.0, 0.2);
  }
  const double ref_local[3] = {8.5559e-5, 2.1777e-5, 5.5000e-6};
  const double ref_global[3] = {1.6140e-4, 4.2882e-5, 1.1235e-5};
  for (int i = 0; i < 3; ++i) {
    ok = ok && mag_near(fine.entries[i].local_err, ref_local[i], 0.10);
    ok = ok && mag_near(fine.entries[i].global_err, ref_global[i], 0.10);
  }
  ok = ok && dt < 300.0;

  std::printf("[%s] criterion 2: study 2, second-order corrected splitting: coarse-mesh "
              "orders local %s global %s (2.0 +-0.2); fine-mesh magnitudes local %s "
              "global %s (+-10%%), %.1fs (<300s)\n",
              ok ? "PASS" : "FAIL", order_pair(coarse, false).c_str(),
              order_pair(coarse, true).c_str(), err_triple(fine, false).c_str(),
              err_triple(fine, true).c_str(), dt);
  return ok;
}

bool criterion_3() {
  // Flux studies run with the numeric boundary trace first; the exact
  // trace is the documented fallback if the magnitudes drift.
  auto run3 = [](bool exact) {
    ExperimentPlan p = find_table(3).plan;
    p.exact_trace = exact;
    return run_plan(p);
  };
  auto run4 = [](bool exact) {
    ExperimentPlan p = find_table(4, true).plan;
    p.exact_trace = exact;
    return run_plan(p);
  };

  auto gate3 = [](const ErrorReport& r) { return gate_study(r, kRef3, 0.1, 0.10); };
  auto gate4 = [](const ErrorReport& r) {
    return order_near(r.entries[1].global_order, 2.0048, 0.25) &&
           order_near(r.entries[2].global_order, 2.0957, 0.25);
  };

  ErrorReport r3 = run3(false);
  std::string trace3 = "numeric trace";
  if (!gate3(r3)) {
    r3 = run3(true);
    trace3 = "exact trace (numeric missed)";
  }
  ErrorReport r4 = run4(false);
  std::string trace4 = "numeric trace";
  if (!gate4(r4)) {
    r4 = run4(true);
    trace4 = "exact trace (numeric missed)";
  }
  const bool ok = gate3(r3) && gate4(r4);

  std::printf("[%s] criterion 3: flux studies; study 3 global %s orders %s "
              "(refs 1.0036/1.0029 +-0.1, magnitudes +-10%%, %s); study 4 global "
              "orders %s (refs 2.0048/2.0957 +-0.25, %s)\n",
              ok ? "PASS" : "FAIL", err_triple(r3, true).c_str(),
              order_pair(r3, true).c_str(), trace3.c_str(), order_pair(r4, true).c_str(),
              trace4.c_str());
  return ok;
}

bool criterion_4() {
  const double t0 = now_s();
  const ErrorReport r5 = run_plan(find_table(5).plan);
  const ErrorReport r6 = run_plan(find_table(6).plan);
  const ErrorReport r7 = run_plan(find_table(7).plan);
  const ErrorReport r8 = run_plan(find_table(8).plan);
  const double dt = now_s() - t0;

  const bool ok = gate_study(r5, kRef5, 0.15, 0.15) && gate_study(r6, kRef6, 0.15, 0.15) &&
                  gate_study(r7, kRef7, 0.15, 0.15) && gate_study(r8, kRef8, 0.15, 0.15) &&
                  dt < 600.0;

  std::printf("[%s] criterion 4: 2d studies 5-8 (orders +-0.15, magnitudes +-15%%): "
              "study 5 %s orders %s; study 6 %s orders %s; study 7 %s orders %s; "
              "study 8 %s orders %s; %.1fs (<600s)\n",
              ok ? "PASS" : "FAIL", err_triple(r5, true).c_str(), order_pair(r5, true).c_str(),
              err_triple(r6, true).c_str(), order_pair(r6, true).c_str(),
              err_triple(r7, true).c_str(), order_pair(r7, true).c_str(),
              err_triple(r8, true).c_str(), order_pair(r8, true).c_str(), dt);
  return ok;
}

bool criterion_5() {
  ExperimentPlan corrected = find_table(1).plan;
  corrected.kind = ErrorKind::Global;
  ExperimentPlan standard = corrected;
  standard.method = Method::LieStandard;

  const ErrorReport rc = run_plan(corrected);
  const ErrorReport rs = run_plan(standard);

  double c_min = 1e300, s_max = -1e300;
  for (size_t i = 1; i < 3; ++i) {
    c_min = std::min(c_min, rc.entries[i].global_order.value_or(-1e300));
    s_max = std::max(s_max, rs.entries[i].global_order.value_or(1e300));
  }
  const bool ok = s_max <= 0.9 && c_min >= 0.95;

  std::printf("[%s] criterion 5: order reduction contrast on the study 1 ladder: "
              "uncorrected global %s orders %s (max %.4f, gate <= 0.9), corrected "
              "global %s orders %s (min %.4f, gate >= 0.95)\n",
              ok ? "PASS" : "FAIL", err_triple(rs, true).c_str(),
              order_pair(rs, true).c_str(), s_max, err_triple(rc, true).c_str(),
              order_pair(rc, true).c_str(), c_min);
  return ok;
}

bool criterion_6() {
  const double t0 = now_s();
  std::vector<PropertyResult> rs = check_contractivity();
  for (auto& r : check_projection_orders()) rs.push_back(std::move(r));
  const double dt = now_s() - t0;

  bool ok = dt < 30.0;
  std::string failed;
  for (const PropertyResult& r : rs) {
    if (r.pass) continue;
    ok = false;
    failed += (failed.empty() ? "" : "; ") + r.name + ": " + r.detail;
  }
  std::printf("[%s] criterion 6: flow contractivity, zero log-norms, and projection "
              "consistency slopes: %zu properties%s%s, %.1fs (<30s)\n",
              ok ? "PASS" : "FAIL", rs.size(),
              failed.empty() ? " all hold" : " with failures ", failed.c_str(), dt);
  return ok;
}

bool criterion_7() {
  std::vector<PropertyResult> rs = check_equivalences();
  bool ok = true;
  std::string failed;
  for (const PropertyResult& r : rs) {
    if (r.pass) continue;
    ok = false;
    failed += (failed.empty() ? "" : "; ") + r.name + ": " + r.detail;
  }
  std::printf("[%s] criterion 7: backend and splitting equivalences (krylov-dense "
              "trajectory, directional sandwich, homogeneous collapse): %zu "
              "properties%s%s\n",
              ok ? "PASS" : "FAIL", rs.size(),
              failed.empty() ? " all hold" : " with failures ", failed.c_str());
  return ok;
}

bool criterion_8() {
  bool ok = true;
  double worst_scalar = 0.0;

  // Scalar closed forms on 1x1 matrices.
  for (double z : {-6.0, -2.0, -0.5, 0.7, 3.0}) {
    DenseMatrix m(1);
    m(0, 0) = z;
    const double e = std::exp(z);
    const double want[4] = {e, (e - 1.0) / z, (e - 1.0 - z) / (z * z),
                            (e - 1.0 - z - 0.5 * z * z) / (z * z * z)};
    for (int j = 0; j <= 3; ++j) {
      const double got = phi_dense(j, m)(0, 0);
      const double rel = std::abs(got - want[j]) / (1.0 + std::abs(want[j]));
      worst_scalar = std::max(worst_scalar, rel);
      ok = ok && rel <= 1e-12;
    }
  }

  // Recurrence z phi_j = phi_{j-1} - 1/(j-1)! on a stiff stencil block.
  DenseMatrix m = build_1d(33).a.to_dense();
  m *= 1e-3;
  const int n = m.size();
  double worst_rec = 0.0;
  DenseMatrix prev = phi_dense(0, m);
  double fact = 1.0;
  for (int j = 1; j <= 3; ++j) {
    const DenseMatrix pj = phi_dense(j, m);
    const DenseMatrix mp = mat_mul(m, pj);
    for (int r = 0; r < n; ++r)
      for (int c = 0; c < n; ++c) {
        const double want = prev(r, c) - (r == c ? 1.0 / fact : 0.0);
        worst_rec = std::max(worst_rec, std::abs(mp(r, c) - want));
      }
    prev = pj;
    fact *= j;
  }
  ok = ok && worst_rec <= 1e-9;

  // phi_j(0) = I / j!.
  double worst_zero = 0.0;
  DenseMatrix zero(4);
  double jfact = 1.0;
  for (int j = 0; j <= 3; ++j) {
    if (j > 0) jfact *= j;
    const DenseMatrix pj = phi_dense(j, zero);
    for (int r = 0; r < 4; ++r)
      for (int c = 0; c < 4; ++c)
        worst_zero = std::max(worst_zero,
                              std::abs(pj(r, c) - (r == c ? 1.0 / jfact : 0.0)));
  }
  ok = ok && worst_zero <= 1e-13;

  std::printf("[%s] criterion 8: phi function identities: scalar closed forms off by "
              "%.2e (<=1e-12), recurrence residual %.2e (<=1e-9), value at zero off by "
              "%.2e (<=1e-13)\n",
              ok ? "PASS" : "FAIL", worst_scalar, worst_rec, worst_zero);
  return ok;
}

}  // namespace

int main(int argc, char** argv) {
  bool (*const criteria[8])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                                 criterion_5, criterion_6, criterion_7, criterion_8};
  std::vector<int> todo;
  if (argc < 2 || std::strcmp(argv[1], "all") == 0) {
    for (int i = 1; i <= 8; ++i) todo.push_back(i);
  } else {
    const int c = std::atoi(argv[1]);
    if (c < 1 || c > 8) {
      std::fprintf(stderr, "usage: %s [1..8|all]\n", argv[0]);
      return 64;
    }
    todo.push_back(c);
  }
  int fails = 0;
  for (int c : todo)
    if (!criteria[c - 1]()) ++fails;
  return fails;
}
