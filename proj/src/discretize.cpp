#include "expsplit/discretize.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace expsplit {

namespace {

// 1/h^2 for h = 1/(n_hat+1), formed from the integer so the row sums
// of the stencil cancel exactly in floating point.
double inv_h2_of(int n_hat) {
  const double m = n_hat + 1;
  return m * m;
}

void check_n_hat(int n_hat) {
  if (n_hat < 3) throw std::invalid_argument("discretize: n_hat must be at least 3");
}

}  // namespace

Vector DiscreteOperator::apply_bc(const BoundaryValues& g) const {
  if (g.values.size() != grid.boundary.size())
    throw std::invalid_argument("apply_bc: boundary value count mismatch");
  Vector y(n(), 0.0);
  for (const Injection& inj : injections)
    y[inj.row] += inj.weight * g.values[inj.slot];
  return y;
}

DiscreteOperator build_1d(int n_hat, const BcSpec& right) {
  check_n_hat(n_hat);
  if (right.kind != BcKind::Dirichlet && right.beta == 0.0)
    throw std::invalid_argument("build_1d: Neumann/Robin need beta != 0");

  const double inv_h2 = inv_h2_of(n_hat);
  const double inv_h = n_hat + 1;
  const double h = 1.0 / inv_h;
  const bool flux = right.kind != BcKind::Dirichlet;
  const int n = flux ? n_hat + 1 : n_hat;

  DiscreteOperator op;
  op.grid.dim = 1;
  op.grid.n_hat = n_hat;
  op.grid.h = h;
  op.grid.nodes.resize(n);
  for (int i = 0; i < n; ++i) op.grid.nodes[i] = {(i + 1) * h, 0.0};
  op.grid.boundary = {{0.0, 0.0, 0}, {1.0, 0.0, 1}};
  op.bc = {BcSpec{}, right};

  op.a = BandedMatrix(n, 1, 1);
  for (int i = 0; i < n; ++i) op.a.at(i, i) = -2.0 * inv_h2;
  for (int i = 0; i + 1 < n; ++i) {
    op.a.at(i, i + 1) = inv_h2;
    op.a.at(i + 1, i) = inv_h2;
  }
  op.injections.push_back({0, 0, inv_h2});
  if (flux) {
    // Ghost-node closure of the boundary row: the normal derivative in
    // alpha*u + beta*u_x = g is eliminated against the centered
    // difference through x = 1.
    const double alpha = right.kind == BcKind::Neumann ? 0.0 : right.alpha;
    op.a.at(n - 1, n - 2) = 2.0 * inv_h2;
    op.a.at(n - 1, n - 1) = -2.0 * inv_h2 - 2.0 * alpha * inv_h / right.beta;
    op.injections.push_back({n - 1, 1, 2.0 * inv_h / right.beta});
  } else {
    op.injections.push_back({n - 1, 1, inv_h2});
  }
  return op;
}

namespace {

Grid make_square_grid(int n_hat) {
  const double h = 1.0 / (n_hat + 1);
  Grid g;
  g.dim = 2;
  g.n_hat = n_hat;
  g.h = h;
  g.nodes.resize(static_cast<size_t>(n_hat) * n_hat);
  for (int j = 1; j <= n_hat; ++j)
    for (int i = 1; i <= n_hat; ++i)
      g.nodes[static_cast<size_t>(j - 1) * n_hat + (i - 1)] = {i * h, j * h};
  g.boundary.resize(static_cast<size_t>(4) * n_hat);
  for (int j = 1; j <= n_hat; ++j) {
    g.boundary[j - 1] = {0.0, j * h, 0};
    g.boundary[n_hat + j - 1] = {1.0, j * h, 1};
  }
  for (int i = 1; i <= n_hat; ++i) {
    g.boundary[2 * n_hat + i - 1] = {i * h, 0.0, 2};
    g.boundary[3 * n_hat + i - 1] = {i * h, 1.0, 3};
  }
  return g;
}

}  // namespace

DiscreteOperator build_2d_5pt(int n_hat) {
  check_n_hat(n_hat);
  const double inv_h2 = inv_h2_of(n_hat);
  const int n = n_hat * n_hat;

  DiscreteOperator op;
  op.grid = make_square_grid(n_hat);
  op.bc.assign(4, BcSpec{});
  op.a = BandedMatrix(n, n_hat, n_hat);
  for (int j = 0; j < n_hat; ++j)
    for (int i = 0; i < n_hat; ++i) {
      const int idx = j * n_hat + i;
      op.a.at(idx, idx) = -4.0 * inv_h2;
      if (i > 0) op.a.at(idx, idx - 1) = inv_h2;
      if (i + 1 < n_hat) op.a.at(idx, idx + 1) = inv_h2;
      if (j > 0) op.a.at(idx, idx - n_hat) = inv_h2;
      if (j + 1 < n_hat) op.a.at(idx, idx + n_hat) = inv_h2;
    }
  op.a.refresh_live_diagonals();

  for (int j = 0; j < n_hat; ++j) {
    op.injections.push_back({j * n_hat, j, inv_h2});
    op.injections.push_back({j * n_hat + n_hat - 1, n_hat + j, inv_h2});
  }
  for (int i = 0; i < n_hat; ++i) {
    op.injections.push_back({i, 2 * n_hat + i, inv_h2});
    op.injections.push_back({(n_hat - 1) * n_hat + i, 3 * n_hat + i, inv_h2});
  }
  return op;
}

SplitOperator2D build_2d_split(int n_hat) {
  check_n_hat(n_hat);
  SplitOperator2D op;
  op.grid = make_square_grid(n_hat);
  op.bc.assign(4, BcSpec{});
  op.block = build_1d(n_hat, BcSpec{}).a;
  return op;
}

void SplitOperator2D::apply_a1(const double* x, double* y) const {
  const int n = grid.n_hat;
  for (int b = 0; b < n; ++b) mat_vec(block, x + static_cast<size_t>(b) * n, y + static_cast<size_t>(b) * n);
}

void SplitOperator2D::apply_a2(const double* x, double* y) const {
  const int n = grid.n_hat;
  std::vector<double> xt(static_cast<size_t>(n) * n), yt(static_cast<size_t>(n) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) xt[static_cast<size_t>(i) * n + j] = x[static_cast<size_t>(j) * n + i];
  for (int b = 0; b < n; ++b) mat_vec(block, xt.data() + static_cast<size_t>(b) * n, yt.data() + static_cast<size_t>(b) * n);
  for (int j = 0; j < n; ++j)
    for (int i = 0; i < n; ++i) y[static_cast<size_t>(j) * n + i] = yt[static_cast<size_t>(i) * n + j];
}

Vector SplitOperator2D::apply_bc1(const BoundaryValues& g) const {
  if (g.values.size() != grid.boundary.size())
    throw std::invalid_argument("apply_bc1: boundary value count mismatch");
  const int nh = grid.n_hat;
  const double inv_h2 = inv_h2_of(nh);
  Vector y(n(), 0.0);
  for (int j = 0; j < nh; ++j) {
    y[static_cast<size_t>(j) * nh] += inv_h2 * g.values[j];
    y[static_cast<size_t>(j) * nh + nh - 1] += inv_h2 * g.values[nh + j];
  }
  return y;
}

Vector SplitOperator2D::apply_bc2(const BoundaryValues& g) const {
  if (g.values.size() != grid.boundary.size())
    throw std::invalid_argument("apply_bc2: boundary value count mismatch");
  const int nh = grid.n_hat;
  const double inv_h2 = inv_h2_of(nh);
  Vector y(n(), 0.0);
  for (int i = 0; i < nh; ++i) {
    y[i] += inv_h2 * g.values[2 * nh + i];
    y[static_cast<size_t>(nh - 1) * nh + i] += inv_h2 * g.values[3 * nh + i];
  }
  return y;
}

BandedMatrix SplitOperator2D::materialize_a1() const {
  const int nh = grid.n_hat;
  BandedMatrix a(n(), 1, 1);
  for (int b = 0; b < nh; ++b)
    for (int i = 0; i < nh; ++i) {
      const int idx = b * nh + i;
      a.at(idx, idx) = block.get(i, i);
      if (i + 1 < nh) {
        a.at(idx, idx + 1) = block.get(i, i + 1);
        a.at(idx + 1, idx) = block.get(i + 1, i);
      }
    }
  return a;
}

BandedMatrix SplitOperator2D::materialize_a2() const {
  const int nh = grid.n_hat;
  BandedMatrix a(n(), nh, nh);
  for (int j = 0; j < nh; ++j)
    for (int i = 0; i < nh; ++i) {
      const int idx = j * nh + i;
      a.at(idx, idx) = block.get(j, j);
      if (j + 1 < nh) {
        a.at(idx, idx + nh) = block.get(j, j + 1);
        a.at(idx + nh, idx) = block.get(j + 1, j);
      }
    }
  a.refresh_live_diagonals();
  return a;
}

Vector elliptic_projection(const DiscreteOperator& op, const Vector& au_nodes,
                           const BoundaryValues& bu) {
  if (static_cast<int>(au_nodes.size()) != op.n())
    throw std::invalid_argument("elliptic_projection: au size mismatch");
  Vector rhs = op.apply_bc(bu);
  for (int i = 0; i < op.n(); ++i) rhs[i] = au_nodes[i] - rhs[i];
  return solve(op.a, rhs);
}

double log_norm_inf(const BandedMatrix& a) {
  const int n = a.size();
  std::vector<double> row_sum(n, 0.0);
  for (int d = -a.lower_bandwidth(); d <= a.upper_bandwidth(); ++d) {
    const double* dg = a.diagonal(d);
    const int lo = std::max(0, -d);
    const int hi = n - std::max(0, d);
    if (d == 0)
      for (int i = lo; i < hi; ++i) row_sum[i] += dg[i];
    else
      for (int i = lo; i < hi; ++i) row_sum[i] += std::abs(dg[i]);
  }
  return *std::max_element(row_sum.begin(), row_sum.end());
}

}  // namespace expsplit
