#include <doctest.h>

#include <cmath>
#include <stdexcept>

#include "expsplit/discretize.hpp"

using namespace expsplit;

namespace {

// Full discrete operator on nodal samples: A u + C_h g.
Vector full_apply(const DiscreteOperator& op, const Vector& u, const BoundaryValues& g) {
  Vector y = mat_vec(op.a, u);
  const Vector c = op.apply_bc(g);
  for (size_t i = 0; i < y.size(); ++i) y[i] += c[i];
  return y;
}

Vector sample_nodes(const Grid& g, double (*f)(double, double)) {
  Vector u(g.nodes.size());
  for (size_t i = 0; i < g.nodes.size(); ++i) u[i] = f(g.nodes[i].x, g.nodes[i].y);
  return u;
}

double quad_1d(double x, double) { return x * x; }
double quad_2d(double x, double y) { return x * x + y * y; }

}  // namespace

TEST_CASE("1d dirichlet rows carry the second-difference stencil") {
  const DiscreteOperator op = build_1d(4);
  CHECK(op.n() == 4);
  CHECK(op.grid.h == doctest::Approx(0.2));
  CHECK(op.grid.nodes.front().x == doctest::Approx(0.2));
  CHECK(op.grid.nodes.back().x == doctest::Approx(0.8));

  const double w = 25.0;  // 1/h^2
  CHECK(op.a.get(0, 0) == -2.0 * w);
  CHECK(op.a.get(0, 1) == w);
  CHECK(op.a.get(2, 1) == w);
  CHECK(op.a.get(2, 2) == -2.0 * w);
  CHECK(op.a.get(2, 3) == w);

  // Injections scatter 1/h^2 times the boundary value into the end rows.
  const Vector c = op.apply_bc(BoundaryValues{{3.0, 7.0}});
  CHECK(c[0] == 75.0);
  CHECK(c[1] == 0.0);
  CHECK(c[2] == 0.0);
  CHECK(c[3] == 175.0);
}

TEST_CASE("flux closures keep the boundary node and scale its row") {
  const DiscreteOperator nm = build_1d(4, BcSpec{BcKind::Neumann, 0.0, 1.0});
  CHECK(nm.n() == 5);
  CHECK(nm.grid.nodes.back().x == doctest::Approx(1.0));
  CHECK(nm.a.get(4, 3) == 50.0);
  CHECK(nm.a.get(4, 4) == -50.0);
  const Vector cn = nm.apply_bc(BoundaryValues{{3.0, 7.0}});
  CHECK(cn[0] == 75.0);
  CHECK(cn[4] == doctest::Approx(70.0));  // 2 g / h

  const DiscreteOperator rb = build_1d(4, BcSpec{BcKind::Robin, 2.0, 1.0});
  CHECK(rb.a.get(4, 3) == 50.0);
  CHECK(rb.a.get(4, 4) == doctest::Approx(-70.0));  // -2/h^2 - 2 alpha / (beta h)
  const Vector cr = rb.apply_bc(BoundaryValues{{0.0, 7.0}});
  CHECK(cr[4] == doctest::Approx(70.0));

  CHECK_THROWS_AS((void)build_1d(4, BcSpec{BcKind::Neumann, 0.0, 0.0}),
                  std::invalid_argument);
  CHECK_THROWS_AS((void)build_1d(2), std::invalid_argument);
  CHECK_THROWS_AS((void)nm.apply_bc(BoundaryValues{{1.0}}), std::invalid_argument);
}

TEST_CASE("stencils are exact on quadratics for every closure") {
  // u = x^2 has vanishing fourth derivative, so the centered second
  // difference and the ghost-node eliminations reproduce u'' = 2 up to
  // roundoff; this pins the injection weights against the matrix rows.
  struct Case {
    BcSpec right;
    double g1;  // alpha u(1) + beta u'(1)
  };
  const Case cases[] = {
      {BcSpec{}, 1.0},
      {BcSpec{BcKind::Neumann, 0.0, 1.0}, 2.0},
      {BcSpec{BcKind::Robin, 3.0, 2.0}, 7.0},
  };
  for (const Case& c : cases) {
    const DiscreteOperator op = build_1d(12, c.right);
    const Vector u = sample_nodes(op.grid, quad_1d);
    const Vector y = full_apply(op, u, BoundaryValues{{0.0, c.g1}});
    for (double v : y) CHECK(v == doctest::Approx(2.0).epsilon(1e-10));
  }

  const DiscreteOperator op2 = build_2d_5pt(7);
  const Vector u2 = sample_nodes(op2.grid, quad_2d);
  BoundaryValues g2;
  for (const Grid::BoundaryNode& b : op2.grid.boundary)
    g2.values.push_back(quad_2d(b.x, b.y));
  const Vector y2 = full_apply(op2, u2, g2);
  for (double v : y2) CHECK(v == doctest::Approx(4.0).epsilon(1e-10));
}

TEST_CASE("logarithmic max-norm of every built operator is exactly zero") {
  CHECK(log_norm_inf(build_1d(31).a) == 0.0);
  CHECK(log_norm_inf(build_1d(31, BcSpec{BcKind::Neumann, 0.0, 1.0}).a) == 0.0);
  CHECK(log_norm_inf(build_1d(31, BcSpec{BcKind::Robin, 2.0, 1.0}).a) == 0.0);
  CHECK(log_norm_inf(build_2d_5pt(9).a) == 0.0);
  const SplitOperator2D sp = build_2d_split(9);
  CHECK(log_norm_inf(sp.materialize_a1()) == 0.0);
  CHECK(log_norm_inf(sp.materialize_a2()) == 0.0);
}

TEST_CASE("directional parts assemble the five-point operator") {
  const int nh = 6;
  const SplitOperator2D sp = build_2d_split(nh);
  const DiscreteOperator five = build_2d_5pt(nh);
  const BandedMatrix a1 = sp.materialize_a1();
  const BandedMatrix a2 = sp.materialize_a2();
  const int n = sp.n();
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      CHECK(a1.get(i, j) + a2.get(i, j) == five.a.get(i, j));

  // Fast applies agree with the materializations, and the two parts
  // commute (shared eigenvectors of the directional blocks).
  Vector x(n);
  for (int i = 0; i < n; ++i) x[i] = std::sin(0.37 * i + 0.2);
  Vector y1(n), y2(n), y12(n), y21(n);
  sp.apply_a1(x.data(), y1.data());
  sp.apply_a2(x.data(), y2.data());
  const Vector m1 = mat_vec(a1, x);
  const Vector m2 = mat_vec(a2, x);
  for (int i = 0; i < n; ++i) {
    CHECK(y1[i] == doctest::Approx(m1[i]).epsilon(1e-13));
    CHECK(y2[i] == doctest::Approx(m2[i]).epsilon(1e-13));
  }
  sp.apply_a2(y1.data(), y12.data());
  sp.apply_a1(y2.data(), y21.data());
  double worst = 0.0;
  for (int i = 0; i < n; ++i) worst = std::max(worst, std::abs(y12[i] - y21[i]));
  CHECK(worst < 1e-9 * (1.0 + norm_max(y12)));
}

TEST_CASE("directional injections split the five-point injection by face") {
  const int nh = 6;
  const SplitOperator2D sp = build_2d_split(nh);
  const DiscreteOperator five = build_2d_5pt(nh);
  BoundaryValues g;
  for (size_t q = 0; q < sp.grid.boundary.size(); ++q)
    g.values.push_back(std::cos(0.31 * static_cast<double>(q)));
  const Vector cx = sp.apply_bc1(g);
  const Vector cy = sp.apply_bc2(g);
  const Vector c = five.apply_bc(g);
  double worst = 0.0;
  for (int i = 0; i < sp.n(); ++i)
    worst = std::max(worst, std::abs(cx[i] + cy[i] - c[i]));
  CHECK(worst < 1e-9);
}

TEST_CASE("elliptic projection reproduces fields the stencil resolves exactly") {
  // A r + C_h (boundary data) = P(Au) with u = x^2: the defect is zero,
  // so r must return the nodal samples themselves.
  struct Case {
    BcSpec right;
    double g1;
  };
  const Case cases[] = {
      {BcSpec{}, 1.0},
      {BcSpec{BcKind::Neumann, 0.0, 1.0}, 2.0},
      {BcSpec{BcKind::Robin, 3.0, 2.0}, 7.0},
  };
  for (const Case& c : cases) {
    const DiscreteOperator op = build_1d(24, c.right);
    const Vector u = sample_nodes(op.grid, quad_1d);
    const Vector au(op.n(), 2.0);
    const Vector r = elliptic_projection(op, au, BoundaryValues{{0.0, c.g1}});
    for (int i = 0; i < op.n(); ++i)
      CHECK(r[i] == doctest::Approx(u[i]).epsilon(1e-10));
  }

  const DiscreteOperator op2 = build_2d_5pt(9);
  const Vector u2 = sample_nodes(op2.grid, quad_2d);
  const Vector au2(op2.n(), 4.0);
  BoundaryValues g2;
  for (const Grid::BoundaryNode& b : op2.grid.boundary)
    g2.values.push_back(quad_2d(b.x, b.y));
  const Vector r2 = elliptic_projection(op2, au2, g2);
  for (int i = 0; i < op2.n(); ++i)
    CHECK(r2[i] == doctest::Approx(u2[i]).epsilon(1e-9));

  CHECK_THROWS_AS((void)elliptic_projection(op2, Vector{1.0}, g2), std::invalid_argument);
}

TEST_CASE("elliptic projection error decays at second order") {
  // Smooth non-polynomial field: u = exp(x), Au = exp(x); halving h
  // should quarter the projection error.
  double err[2];
  const int hats[2] = {24, 49};
  for (int c = 0; c < 2; ++c) {
    const DiscreteOperator op = build_1d(hats[c]);
    Vector u(op.n()), au(op.n());
    for (int i = 0; i < op.n(); ++i) u[i] = au[i] = std::exp(op.grid.nodes[i].x);
    const Vector r = elliptic_projection(op, au, BoundaryValues{{1.0, std::exp(1.0)}});
    double e = 0.0;
    for (int i = 0; i < op.n(); ++i) e = std::max(e, std::abs(r[i] - u[i]));
    err[c] = e;
  }
  const double slope = std::log2(err[0] / err[1]);
  CHECK(slope > 1.7);
  CHECK(slope < 2.3);
}
