#include "expsplit/problems.hpp"

#include <cmath>
#include <stdexcept>

namespace expsplit {

ReactionEvaluator::ReactionEvaluator(const ProblemSpec& spec, const Grid& grid)
    : spec_(&spec) {
  xs_.reserve(grid.nodes.size());
  ys_.reserve(grid.nodes.size());
  for (const Grid::Node& nd : grid.nodes) {
    xs_.push_back(nd.x);
    ys_.push_back(nd.y);
  }
}

void ReactionEvaluator::eval(double t, const Vector& u, Vector& out) const {
  const size_t n = xs_.size();
  if (u.size() != n) throw std::invalid_argument("ReactionEvaluator: state size mismatch");
  out.resize(n);
  for (size_t i = 0; i < n; ++i)
    out[i] = spec_->phi(u[i]) + spec_->src(t, xs_[i], ys_[i]);
}

namespace {

double tangential(const Grid::BoundaryNode& b) {
  return b.face < 2 ? b.y : b.x;
}

BoundaryValues sample_faces(
    const ProblemSpec& spec, const Grid& grid,
    const std::function<double(const ProblemSpec::FaceData&, double)>& f) {
  BoundaryValues bv;
  bv.values.reserve(grid.boundary.size());
  for (const Grid::BoundaryNode& b : grid.boundary)
    bv.values.push_back(f(spec.faces[b.face], tangential(b)));
  return bv;
}

}  // namespace

BoundaryValues boundary_values_g(const ProblemSpec& spec, const Grid& grid, double t) {
  return sample_faces(spec, grid, [t](const ProblemSpec::FaceData& fd, double s) {
    return fd.g(t, s);
  });
}

BoundaryValues boundary_values_gt(const ProblemSpec& spec, const Grid& grid, double t) {
  return sample_faces(spec, grid, [t](const ProblemSpec::FaceData& fd, double s) {
    return fd.g_t(t, s);
  });
}

BoundaryValues boundary_f_trace(const ProblemSpec& spec, const DiscreteOperator& op,
                                double t, const Vector& u_num, bool exact_trace) {
  const Grid& grid = op.grid;
  BoundaryValues bv;
  bv.values.reserve(grid.boundary.size());
  for (const Grid::BoundaryNode& b : grid.boundary) {
    const ProblemSpec::FaceData& fd = spec.faces[b.face];
    const double s = tangential(b);
    if (fd.bc.kind == BcKind::Dirichlet) {
      bv.values.push_back(spec.phi(fd.g(t, s)) + spec.src(t, b.x, b.y));
      continue;
    }
    // Flux face (1D layout: the boundary node is the last unknown).
    double ub;
    if (exact_trace) {
      if (!spec.exact) throw std::invalid_argument("boundary_f_trace: no exact solution");
      ub = spec.exact(t, b.x, b.y);
    } else {
      ub = u_num.at(op.n() - 1);
    }
    const double un = (fd.g(t, s) - fd.bc.alpha * ub) / fd.bc.beta;
    bv.values.push_back(fd.bc.alpha * (spec.phi(ub) + spec.src(t, b.x, b.y)) +
                        fd.bc.beta * (spec.dphi(ub) * un + fd.src_n(t, s)));
  }
  return bv;
}

BoundaryProfile boundary_profile(const ProblemSpec& spec, const Grid& grid, double t) {
  const size_t nb = grid.boundary.size();
  BoundaryProfile pr;
  pr.g.resize(nb);
  pr.g_t.resize(nb);
  pr.g_ss.resize(nb);
  pr.f.resize(nb);
  pr.d2n.resize(nb);
  for (size_t q = 0; q < nb; ++q) {
    const Grid::BoundaryNode& b = grid.boundary[q];
    const ProblemSpec::FaceData& fd = spec.faces[b.face];
    if (fd.bc.kind != BcKind::Dirichlet)
      throw std::invalid_argument("boundary_profile: Dirichlet faces only");
    const double s = tangential(b);
    pr.g[q] = fd.g(t, s);
    pr.g_t[q] = fd.g_t(t, s);
    pr.g_ss[q] = fd.g_ss ? fd.g_ss(t, s) : 0.0;
    pr.f[q] = spec.phi(pr.g[q]) + spec.src(t, b.x, b.y);
    pr.d2n[q] = pr.g_t[q] - pr.g_ss[q] - pr.f[q];
  }
  return pr;
}

Vector project_exact(const ProblemSpec& spec, const Grid& grid, double t) {
  if (!spec.exact) throw std::invalid_argument("project_exact: no exact solution");
  Vector u(grid.nodes.size());
  for (size_t i = 0; i < grid.nodes.size(); ++i)
    u[i] = spec.exact(t, grid.nodes[i].x, grid.nodes[i].y);
  return u;
}

Vector initial_state(const ProblemSpec& spec, const Grid& grid) {
  return project_exact(spec, grid, 0.0);
}

namespace {

// Shared pieces of the exp(t + x^3 [+ y^3]) family.
double cubic_exp(double t, double x, double y) { return std::exp(t + x * x * x + y * y * y); }

double cubic_src_1d(double t, double x) {
  const double e = cubic_exp(t, x, 0.0);
  return -e * (9.0 * x * x * x * x + 6.0 * x + e - 1.0);
}

double cubic_src_2d(double t, double x, double y) {
  const double e = cubic_exp(t, x, y);
  const double x4 = x * x * x * x;
  const double y4 = y * y * y * y;
  return -e * (9.0 * (x4 + y4) + 6.0 * (x + y) + e - 1.0);
}

ProblemSpec make_p1(bool neumann_right) {
  ProblemSpec p;
  p.name = neumann_right ? "p1_neumann" : "p1_dirichlet";
  p.dim = 1;
  p.default_horizon = 0.2;
  p.phi = [](double u) { return u * u; };
  p.dphi = [](double u) { return 2.0 * u; };
  p.src = [](double t, double x, double) { return cubic_src_1d(t, x); };
  p.exact = [](double t, double x, double) { return cubic_exp(t, x, 0.0); };

  ProblemSpec::FaceData left;
  left.bc = BcSpec{};
  left.g = [](double t, double) { return std::exp(t); };
  left.g_t = left.g;

  ProblemSpec::FaceData right;
  if (neumann_right) {
    right.bc = BcSpec{BcKind::Neumann, 0.0, 1.0};
    right.g = [](double t, double) { return 3.0 * std::exp(1.0 + t); };
    right.g_t = right.g;
    right.src_n = [](double t, double) {
      const double e = std::exp(1.0 + t);
      return -84.0 * e - 6.0 * e * e;
    };
  } else {
    right.bc = BcSpec{};
    right.g = [](double t, double) { return std::exp(1.0 + t); };
    right.g_t = right.g;
  }
  p.faces = {left, right};
  return p;
}

ProblemSpec make_p2() {
  ProblemSpec p;
  p.name = "p2_dirichlet";
  p.dim = 2;
  p.default_horizon = 1.0;
  p.phi = [](double u) { return u * u; };
  p.dphi = [](double u) { return 2.0 * u; };
  p.src = cubic_src_2d;
  p.exact = cubic_exp;

  // On every face the data is exp(t + c + s^3) with c = 0 or 1 the
  // frozen coordinate; its tangential second derivative is
  // (6 s + 9 s^4) times the data.
  auto face = [](double c) {
    ProblemSpec::FaceData fd;
    fd.bc = BcSpec{};
    fd.g = [c](double t, double s) { return std::exp(t + c + s * s * s); };
    fd.g_t = fd.g;
    fd.g_ss = [c](double t, double s) {
      return (6.0 * s + 9.0 * s * s * s * s) * std::exp(t + c + s * s * s);
    };
    return fd;
  };
  p.faces = {face(0.0), face(1.0), face(0.0), face(1.0)};
  return p;
}

ProblemSpec make_p1_homogeneous() {
  ProblemSpec p;
  p.name = "p1_homogeneous";
  p.dim = 1;
  p.default_horizon = 0.2;
  p.phi = [](double u) { return u * u; };
  p.dphi = [](double u) { return 2.0 * u; };
  const double pi2 = M_PI * M_PI;
  p.src = [pi2](double t, double x, double) {
    const double w = std::exp(t) * std::sin(M_PI * x);
    return (1.0 + pi2) * w - w * w;
  };
  p.exact = [](double t, double x, double) { return std::exp(t) * std::sin(M_PI * x); };

  ProblemSpec::FaceData fd;
  fd.bc = BcSpec{};
  fd.g = [](double, double) { return 0.0; };
  fd.g_t = fd.g;
  p.faces = {fd, fd};
  return p;
}

}  // namespace

const std::vector<ProblemSpec>& benchmark_catalog() {
  static const std::vector<ProblemSpec> catalog = {
      make_p1(false), make_p1(true), make_p2(), make_p1_homogeneous()};
  return catalog;
}

const ProblemSpec& find_problem(const std::string& name) {
  for (const ProblemSpec& p : benchmark_catalog())
    if (p.name == name) return p;
  throw std::invalid_argument("unknown problem: " + name);
}

}  // namespace expsplit
