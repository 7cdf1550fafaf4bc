#include "expsplit/integrate.hpp"

#include <array>
#include <cmath>
#include <stdexcept>

namespace expsplit {

Vector rk4_step(const OdeRhs& f, double t0, const Vector& y0, double tau) {
  const size_t n = y0.size();
  Vector k1(n), k2(n), k3(n), k4(n), stage(n);
  f(t0, y0, k1);
  for (size_t i = 0; i < n; ++i) stage[i] = y0[i] + 0.5 * tau * k1[i];
  f(t0 + 0.5 * tau, stage, k2);
  for (size_t i = 0; i < n; ++i) stage[i] = y0[i] + 0.5 * tau * k2[i];
  f(t0 + 0.5 * tau, stage, k3);
  for (size_t i = 0; i < n; ++i) stage[i] = y0[i] + tau * k3[i];
  f(t0 + tau, stage, k4);
  Vector y1(n);
  const double w = tau / 6.0;
  for (size_t i = 0; i < n; ++i)
    y1[i] = y0[i] + w * (k1[i] + 2.0 * (k2[i] + k3[i]) + k4[i]);
  if (!all_finite(y1)) throw std::runtime_error("rk4_step: non-finite stage value");
  return y1;
}

namespace {

void transpose_grid(int nh, const double* x, double* xt) {
  for (int j = 0; j < nh; ++j)
    for (int i = 0; i < nh; ++i)
      xt[static_cast<size_t>(i) * nh + j] = x[static_cast<size_t>(j) * nh + i];
}

}  // namespace

struct StepContext::Impl {
  const ProblemSpec* spec = nullptr;
  const DiscreteOperator* op = nullptr;
  const SplitOperator2D* sop = nullptr;
  IntegratorConfig cfg;
  ReactionEvaluator react;

  // Dense backend: phi table plus the phi-weighted injection columns,
  // cp1[slot] = phi_1(kA) C_h e_slot and likewise cp2. The per-step
  // correction is then a handful of axpys.
  std::optional<PhiTable> table;
  std::vector<Vector> cp1, cp2;
  bool use_dense = false;

  LinearOp aop;  // Krylov backend

  // Directional splitting: one dense block table per needed tau, with
  // the first/last phi columns already scaled by 1/h^2.
  struct BlockCols {
    DenseMatrix e;
    Vector p1f, p1l, p2f, p2l;
  };
  std::optional<BlockCols> blk_full, blk_half;

  static BlockCols block_cols(const BandedMatrix& block, double tau);

  Impl(const ProblemSpec& s, const Grid& g, const IntegratorConfig& c)
      : spec(&s), cfg(c), react(s, g) {}

  const Grid& grid() const { return op ? op->grid : sop->grid; }

  OdeRhs reaction_rhs() const {
    return [this](double t, const Vector& y, Vector& out) { react.eval(t, y, out); };
  }

  // Right-hand side of the unsplit nonlinear flow in the standard
  // scheme: all boundary data rides along with the reaction.
  OdeRhs reaction_plus_bc_rhs() const {
    return [this](double t, const Vector& y, Vector& out) {
      react.eval(t, y, out);
      const Vector bc = op->apply_bc(boundary_values_g(*spec, op->grid, t));
      for (size_t i = 0; i < out.size(); ++i) out[i] += bc[i];
    };
  }

  Vector exp_flow(const Vector& v) const {
    if (use_dense) return mat_vec(table->e, v);
    return phi_combination(aop, cfg.k, v, {}, cfg.krylov);
  }

  // e^{kA} v + k phi_1(kA) C_h bv1 + k^2 phi_2(kA) C_h bv2.
  Vector corrected_flow(const Vector& v, const BoundaryValues& bv1,
                        const BoundaryValues& bv2) const {
    const double k = cfg.k;
    if (use_dense) {
      Vector y = mat_vec(table->e, v);
      for (size_t q = 0; q < bv1.values.size(); ++q) {
        if (bv1.values[q] != 0.0) axpy(k * bv1.values[q], cp1[q], y);
        if (bv2.values[q] != 0.0) axpy(k * k * bv2.values[q], cp2[q], y);
      }
      return y;
    }
    const std::array<Vector, 2> rhs = {op->apply_bc(bv1), op->apply_bc(bv2)};
    return phi_combination(aop, k, v, rhs, cfg.krylov);
  }

  Vector step_lie_corrected(double t, const Vector& u) const {
    BoundaryValues bv1 = boundary_values_g(*spec, op->grid, t);
    BoundaryValues bv2 = boundary_values_gt(*spec, op->grid, t);
    const BoundaryValues tr = boundary_f_trace(*spec, *op, t, u, cfg.exact_trace);
    for (size_t q = 0; q < bv2.values.size(); ++q) bv2.values[q] -= tr.values[q];
    const Vector v = corrected_flow(u, bv1, bv2);
    return rk4_step(reaction_rhs(), t, v, cfg.k);
  }

  Vector step_strang_corrected(double t, const Vector& u) const {
    const double k = cfg.k;
    const Vector v = rk4_step(reaction_rhs(), t, u, 0.5 * k);
    BoundaryValues bv1 = boundary_values_g(*spec, op->grid, t);
    BoundaryValues bv2 = boundary_values_gt(*spec, op->grid, t);
    const BoundaryValues tr = boundary_f_trace(*spec, *op, t, u, cfg.exact_trace);
    for (size_t q = 0; q < bv1.values.size(); ++q) {
      bv1.values[q] += 0.5 * k * tr.values[q];
      bv2.values[q] -= tr.values[q];
    }
    const Vector w = corrected_flow(v, bv1, bv2);
    return rk4_step(reaction_rhs(), t + 0.5 * k, w, 0.5 * k);
  }

  Vector step_lie_standard(double t, const Vector& u) const {
    return rk4_step(reaction_plus_bc_rhs(), t, exp_flow(u), cfg.k);
  }

  Vector step_strang_standard(double t, const Vector& u) const {
    const double k = cfg.k;
    const Vector v = rk4_step(reaction_plus_bc_rhs(), t, u, 0.5 * k);
    return rk4_step(reaction_plus_bc_rhs(), t + 0.5 * k, exp_flow(v), 0.5 * k);
  }

  // One directional stage: per block b along the sweep direction,
  // y_b = E x_b + c1[b] (phi1 first/last columns) + c2[b] (phi2 ...).
  void split_stage(const BlockCols& bt, const double* x, double* y,
                   const std::vector<double>& c1f, const std::vector<double>& c1l,
                   const std::vector<double>& c2f, const std::vector<double>& c2l) const {
    const int nh = sop->grid.n_hat;
    for (int b = 0; b < nh; ++b) {
      const double* xb = x + static_cast<size_t>(b) * nh;
      double* yb = y + static_cast<size_t>(b) * nh;
      for (int i = 0; i < nh; ++i) {
        const double* row = bt.e.row(i);
        double acc = 0.0;
        for (int j = 0; j < nh; ++j) acc += row[j] * xb[j];
        yb[i] = acc;
      }
      for (int i = 0; i < nh; ++i)
        yb[i] += c1f[b] * bt.p1f[i] + c1l[b] * bt.p1l[i] + c2f[b] * bt.p2f[i] +
                 c2l[b] * bt.p2l[i];
    }
  }

  Vector step_lie_split(double t, const Vector& u) const {
    const int nh = sop->grid.n_hat;
    const int n = nh * nh;
    const double k = cfg.k;
    const BoundaryProfile pr = boundary_profile(*spec, sop->grid, t);

    // x sweep: phi1 carries the boundary value of u, phi2 the normal
    // second derivative (the x-directional part of Au on an x face).
    std::vector<double> c1f(nh), c1l(nh), c2f(nh), c2l(nh);
    for (int b = 0; b < nh; ++b) {
      c1f[b] = k * pr.g[b];
      c1l[b] = k * pr.g[nh + b];
      c2f[b] = k * k * pr.d2n[b];
      c2l[b] = k * k * pr.d2n[nh + b];
    }
    Vector z(n);
    split_stage(*blk_full, u.data(), z.data(), c1f, c1l, c2f, c2l);

    // y sweep on the transposed layout. The phi1 trace is the boundary
    // value of u + k A1 u, whose restriction to a y face is g plus k
    // times the tangential second derivative.
    const Vector& base = cfg.split_display == SplitDisplay::Literal ? u : z;
    Vector bt(n), rt(n), r(n);
    transpose_grid(nh, base.data(), bt.data());
    for (int b = 0; b < nh; ++b) {
      const int qs = 2 * nh + b, qn = 3 * nh + b;
      c1f[b] = k * (pr.g[qs] + k * pr.g_ss[qs]);
      c1l[b] = k * (pr.g[qn] + k * pr.g_ss[qn]);
      c2f[b] = k * k * pr.d2n[qs];
      c2l[b] = k * k * pr.d2n[qn];
    }
    split_stage(*blk_full, bt.data(), rt.data(), c1f, c1l, c2f, c2l);
    transpose_grid(nh, rt.data(), r.data());

    return rk4_step(reaction_rhs(), t, r, k);
  }

  Vector step_strang_split(double t, const Vector& u) const {
    const int nh = sop->grid.n_hat;
    const int n = nh * nh;
    const double k = cfg.k;
    const Vector v = rk4_step(reaction_rhs(), t, u, 0.5 * k);
    const BoundaryProfile pr = boundary_profile(*spec, sop->grid, t);

    // Half x sweep of u + (k/2) f.
    std::vector<double> c1f(nh), c1l(nh), c2f(nh), c2l(nh);
    for (int b = 0; b < nh; ++b) {
      const int qw = b, qe = nh + b;
      c1f[b] = 0.5 * k * (pr.g[qw] + 0.5 * k * pr.f[qw]);
      c1l[b] = 0.5 * k * (pr.g[qe] + 0.5 * k * pr.f[qe]);
      c2f[b] = 0.25 * k * k * pr.d2n[qw];
      c2l[b] = 0.25 * k * k * pr.d2n[qe];
    }
    Vector rstage(n);
    split_stage(*blk_half, v.data(), rstage.data(), c1f, c1l, c2f, c2l);

    // Full y sweep of u + (k/2) f + (k/2) A1 u; A1 u restricted to a y
    // face is the tangential second derivative.
    Vector bt(n), ft(n), phi(n);
    transpose_grid(nh, rstage.data(), bt.data());
    for (int b = 0; b < nh; ++b) {
      const int qs = 2 * nh + b, qn = 3 * nh + b;
      c1f[b] = k * (pr.g[qs] + 0.5 * k * (pr.f[qs] + pr.g_ss[qs]));
      c1l[b] = k * (pr.g[qn] + 0.5 * k * (pr.f[qn] + pr.g_ss[qn]));
      c2f[b] = k * k * pr.d2n[qs];
      c2l[b] = k * k * pr.d2n[qn];
    }
    split_stage(*blk_full, bt.data(), ft.data(), c1f, c1l, c2f, c2l);
    transpose_grid(nh, ft.data(), phi.data());

    // Half x sweep of u + (k/2) f + (k/2) A1 u + k A2 u; on an x face
    // A1 u is the normal and A2 u the tangential second derivative.
    for (int b = 0; b < nh; ++b) {
      const int qw = b, qe = nh + b;
      c1f[b] = 0.5 * k *
               (pr.g[qw] + 0.5 * k * (pr.f[qw] + pr.d2n[qw]) + k * pr.g_ss[qw]);
      c1l[b] = 0.5 * k *
               (pr.g[qe] + 0.5 * k * (pr.f[qe] + pr.d2n[qe]) + k * pr.g_ss[qe]);
      c2f[b] = 0.25 * k * k * pr.d2n[qw];
      c2l[b] = 0.25 * k * k * pr.d2n[qe];
    }
    Vector mu(n);
    split_stage(*blk_half, phi.data(), mu.data(), c1f, c1l, c2f, c2l);

    return rk4_step(reaction_rhs(), t + 0.5 * k, mu, 0.5 * k);
  }

  Vector step(double t, const Vector& u) const {
    switch (cfg.method) {
      case Method::LieCorrected:
        return step_lie_corrected(t, u);
      case Method::StrangCorrected:
        return step_strang_corrected(t, u);
      case Method::LieStandard:
        return step_lie_standard(t, u);
      case Method::StrangStandard:
        return step_strang_standard(t, u);
      case Method::LieSplit2D:
        return step_lie_split(t, u);
      case Method::StrangSplit2D:
        return step_strang_split(t, u);
    }
    throw std::logic_error("StepContext: unknown method");
  }
};

namespace {

bool is_split_method(Method m) {
  return m == Method::LieSplit2D || m == Method::StrangSplit2D;
}

void validate_common(const ProblemSpec& spec, const IntegratorConfig& cfg) {
  if (!(cfg.k > 0.0)) throw std::invalid_argument("StepContext: k must be positive");
  if (cfg.exact_trace && !spec.exact)
    throw std::invalid_argument("StepContext: exact_trace needs an exact solution");
}

}  // namespace

StepContext::Impl::BlockCols StepContext::Impl::block_cols(const BandedMatrix& block,
                                                           double tau) {
  const int nh = block.size();
  const double m = nh + 1;
  const double inv_h2 = m * m;
  PhiTable t = build_phi_table(block, tau);
  BlockCols c;
  c.p1f.resize(static_cast<size_t>(nh));
  c.p1l.resize(static_cast<size_t>(nh));
  c.p2f.resize(static_cast<size_t>(nh));
  c.p2l.resize(static_cast<size_t>(nh));
  for (int i = 0; i < nh; ++i) {
    c.p1f[static_cast<size_t>(i)] = inv_h2 * t.p1(i, 0);
    c.p1l[static_cast<size_t>(i)] = inv_h2 * t.p1(i, nh - 1);
    c.p2f[static_cast<size_t>(i)] = inv_h2 * t.p2(i, 0);
    c.p2l[static_cast<size_t>(i)] = inv_h2 * t.p2(i, nh - 1);
  }
  c.e = std::move(t.e);
  return c;
}

StepContext::StepContext(const ProblemSpec& spec, const DiscreteOperator& op,
                         const IntegratorConfig& cfg)
    : impl_(std::make_unique<Impl>(spec, op.grid, cfg)) {
  validate_common(spec, cfg);
  if (is_split_method(cfg.method))
    throw std::invalid_argument("StepContext: split methods need a SplitOperator2D");
  if (spec.dim != op.grid.dim)
    throw std::invalid_argument("StepContext: problem/operator dimension mismatch");
  impl_->op = &op;

  impl_->use_dense = cfg.backend == ExpBackend::Dense ||
                     (cfg.backend == ExpBackend::Auto && op.n() <= dense_backend_max_n);
  if (impl_->use_dense) {
    impl_->table = build_phi_table(op.a, cfg.k);
    const int n = op.n();
    impl_->cp1.assign(op.grid.boundary.size(), Vector(n, 0.0));
    impl_->cp2.assign(op.grid.boundary.size(), Vector(n, 0.0));
    for (const DiscreteOperator::Injection& inj : op.injections)
      for (int i = 0; i < n; ++i) {
        impl_->cp1[inj.slot][i] += inj.weight * impl_->table->p1(i, inj.row);
        impl_->cp2[inj.slot][i] += inj.weight * impl_->table->p2(i, inj.row);
      }
  } else {
    impl_->aop = as_op(op.a);
  }
}

StepContext::StepContext(const ProblemSpec& spec, const SplitOperator2D& op,
                         const IntegratorConfig& cfg)
    : impl_(std::make_unique<Impl>(spec, op.grid, cfg)) {
  validate_common(spec, cfg);
  if (!is_split_method(cfg.method))
    throw std::invalid_argument("StepContext: non-split methods need a DiscreteOperator");
  if (spec.dim != 2)
    throw std::invalid_argument("StepContext: directional splitting is 2D only");
  impl_->sop = &op;
  // Both sweep directions share the same 1D block, so each tau needs
  // one table regardless of direction.
  impl_->blk_full = Impl::block_cols(op.block, cfg.k);
  if (cfg.method == Method::StrangSplit2D)
    impl_->blk_half = Impl::block_cols(op.block, 0.5 * cfg.k);
}

StepContext::~StepContext() = default;
StepContext::StepContext(StepContext&&) noexcept = default;
StepContext& StepContext::operator=(StepContext&&) noexcept = default;

Vector StepContext::step(double t, const Vector& u) const {
  if (static_cast<int>(u.size()) != static_cast<int>(impl_->grid().nodes.size()))
    throw std::invalid_argument("StepContext::step: state size mismatch");
  return impl_->step(t, u);
}

const Grid& StepContext::grid() const { return impl_->grid(); }
const IntegratorConfig& StepContext::config() const { return impl_->cfg; }

}  // namespace expsplit
