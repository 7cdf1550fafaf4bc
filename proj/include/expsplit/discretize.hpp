#ifndef EXPSPLIT_DISCRETIZE_HPP
#define EXPSPLIT_DISCRETIZE_HPP

#include <vector>

#include "expsplit/linalg.hpp"

namespace expsplit {

enum class BcKind { Dirichlet, Neumann, Robin };

/// Boundary condition on one face: alpha*u + beta*du/dn = g.
/// Dirichlet is (1, 0), Neumann (0, 1). Robin needs beta != 0 and is
/// experimental: second-order behavior of the resulting one-sided
/// stencil has no reference data behind it.
struct BcSpec {
  BcKind kind = BcKind::Dirichlet;
  double alpha = 1.0;
  double beta = 0.0;
};

/// Uniform grid on the unit interval or square with mesh width
/// h = 1/(n_hat+1), where n_hat counts interior nodes per direction.
///
/// `nodes` lists the coordinates carrying unknowns (interior nodes,
/// plus the x=1 boundary node when the right condition involves the
/// normal derivative); 2D nodes are ordered x-fastest. `boundary`
/// describes the slots of a BoundaryValues vector: per boundary node
/// one slot, corners excluded in 2D since the five-point stencil never
/// reads them.
struct Grid {
  int dim = 1;
  int n_hat = 0;
  double h = 0.0;

  struct Node {
    double x = 0.0, y = 0.0;
  };
  std::vector<Node> nodes;

  // Face ids: 0 -> x=0, 1 -> x=1, 2 -> y=0, 3 -> y=1.
  struct BoundaryNode {
    double x = 0.0, y = 0.0;
    int face = 0;
  };
  std::vector<BoundaryNode> boundary;
};

/// Values attached to the boundary slots of a Grid, e.g. g sampled on
/// the boundary nodes, or a trace of f.
struct BoundaryValues {
  std::vector<double> values;
};

/// Interior-stencil matrix A_{h,0} together with the boundary-to-
/// interior injection C_h of the same splitting A u = A_{h,0} u + C_h
/// (boundary data): apply_bc scatters weighted boundary values into
/// the rows next to (or on) the boundary.
struct DiscreteOperator {
  Grid grid;
  BandedMatrix a;
  std::vector<BcSpec> bc;  // per face, indexed by Grid face id

  struct Injection {
    int row = 0;
    int slot = 0;       // index into BoundaryValues
    double weight = 0.0;
  };
  std::vector<Injection> injections;

  int n() const { return a.size(); }
  Vector apply_bc(const BoundaryValues& g) const;
};

/// Second-difference operator on (0,1), homogeneous part plus
/// injection. Left face is Dirichlet; the right face may be Dirichlet,
/// Neumann, or Robin. Neumann/Robin keep the boundary node x=1 as an
/// unknown and close its row with the ghost-node trick, so A stays
/// within bandwidth one but loses symmetry there.
DiscreteOperator build_1d(int n_hat, const BcSpec& right = {});

/// Five-point Laplacian on the unit square, Dirichlet on all faces,
/// x-fastest ordering; the band has width n_hat but only five live
/// diagonals.
DiscreteOperator build_2d_5pt(int n_hat);

/// Directional splitting of the five-point operator: a1 acts along x
/// (block-diagonal with the 1D Dirichlet block), a2 along y (the same
/// blocks after the transposing permutation). c1/c2 carry the matching
/// boundary injections for the x faces respectively y faces.
struct SplitOperator2D {
  Grid grid;                 // same layout as build_2d_5pt
  BandedMatrix block;        // shared 1D Dirichlet block, n_hat x n_hat
  std::vector<BcSpec> bc;

  int n() const { return grid.n_hat * grid.n_hat; }

  /// y = A1 x (blocks along x lines).
  void apply_a1(const double* x, double* y) const;
  /// y = A2 x (blocks along y lines, via transpose).
  void apply_a2(const double* x, double* y) const;

  /// Scatter x-face values (slots of faces 0,1) into the volume.
  Vector apply_bc1(const BoundaryValues& g) const;
  /// Scatter y-face values (slots of faces 2,3).
  Vector apply_bc2(const BoundaryValues& g) const;

  /// Materialize a1/a2 in the x-fastest ordering (for tests and for
  /// assembling the un-split operator).
  BandedMatrix materialize_a1() const;
  BandedMatrix materialize_a2() const;
};

SplitOperator2D build_2d_split(int n_hat);

/// Elliptic companion projection: solve A_{h,0} r + C_h (boundary u) =
/// P_h(Au) for r, the discrete lift of u through its image under the
/// continuous operator.
Vector elliptic_projection(const DiscreteOperator& op, const Vector& au_nodes,
                           const BoundaryValues& bu);

/// Logarithmic max-norm: max_i ( a_ii + sum_{j != i} |a_ij| ).
double log_norm_inf(const BandedMatrix& a);

}  // namespace expsplit

#endif
