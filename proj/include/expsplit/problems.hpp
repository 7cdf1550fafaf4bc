#ifndef EXPSPLIT_PROBLEMS_HPP
#define EXPSPLIT_PROBLEMS_HPP

#include <functional>
#include <string>
#include <vector>

#include "expsplit/discretize.hpp"

namespace expsplit {

/// Semilinear reaction-diffusion problem
///   u_t = Lap(u) + phi(u) + src(t, x)
/// on the unit interval or square, with boundary data g per face and a
/// known exact solution for error measurement. Face ids and tangential
/// parameterization follow Grid: faces 0/1 are x=0/x=1 with tangential
/// coordinate y, faces 2/3 are y=0/y=1 with tangential coordinate x.
struct ProblemSpec {
  std::string name;
  int dim = 1;
  double default_horizon = 0.0;

  std::function<double(double)> phi;   // reaction phi(u)
  std::function<double(double)> dphi;  // phi'(u)
  std::function<double(double, double, double)> src;    // src(t, x, y)
  std::function<double(double, double, double)> exact;  // u(t, x, y)

  struct FaceData {
    BcSpec bc;
    std::function<double(double, double)> g;      // g(t, s)
    std::function<double(double, double)> g_t;    // d/dt g
    std::function<double(double, double)> g_ss;   // tangential second derivative (2D)
    std::function<double(double, double)> src_n;  // normal derivative of src on the face
  };
  std::vector<FaceData> faces;  // 1D: 2 entries, 2D: 4 entries
};

/// Nodal reaction term f(t, u) = phi(u) + src(t, x) with the node
/// coordinates resolved once at construction.
class ReactionEvaluator {
public:
  ReactionEvaluator(const ProblemSpec& spec, const Grid& grid);

  void eval(double t, const Vector& u, Vector& out) const;
  int n() const { return static_cast<int>(xs_.size()); }

private:
  const ProblemSpec* spec_;
  std::vector<double> xs_, ys_;
};

/// g (or d/dt g) sampled on the boundary slots at time t.
BoundaryValues boundary_values_g(const ProblemSpec& spec, const Grid& grid, double t);
BoundaryValues boundary_values_gt(const ProblemSpec& spec, const Grid& grid, double t);

/// Trace of f(t, u(t)) on the boundary slots. Dirichlet faces read the
/// solution value from the boundary data; flux faces reconstruct the
/// pair (u, du/dn) on the face from the data and the boundary unknown,
/// taken from the current iterate u_num, or from the exact solution
/// when exact_trace is set.
BoundaryValues boundary_f_trace(const ProblemSpec& spec, const DiscreteOperator& op,
                                double t, const Vector& u_num, bool exact_trace);

/// Everything the directional-splitting correction needs on the
/// boundary at one time, per slot: data, time derivative, tangential
/// second derivative, f trace, and the normal second derivative
/// recovered through the differential equation on the boundary,
/// d2u/dn2 = g_t - g_ss - f.
struct BoundaryProfile {
  std::vector<double> g, g_t, g_ss, f, d2n;
};
BoundaryProfile boundary_profile(const ProblemSpec& spec, const Grid& grid, double t);

/// Exact solution sampled on the unknown nodes.
Vector project_exact(const ProblemSpec& spec, const Grid& grid, double t);
/// Initial state, project_exact at t = 0.
Vector initial_state(const ProblemSpec& spec, const Grid& grid);

/// Built-in benchmark problems:
///   p1_dirichlet   1D, u = exp(t + x^3), Dirichlet both ends
///   p1_neumann     same solution, normal-derivative data at x = 1
///   p2_dirichlet   2D, u = exp(t + x^3 + y^3), Dirichlet faces
///   p1_homogeneous 1D, u = exp(t) sin(pi x), zero boundary data
const std::vector<ProblemSpec>& benchmark_catalog();
const ProblemSpec& find_problem(const std::string& name);

}  // namespace expsplit

#endif
