#ifndef EXPSPLIT_MATFUN_HPP
#define EXPSPLIT_MATFUN_HPP

#include <functional>
#include <span>

#include "expsplit/linalg.hpp"

namespace expsplit {

/// Matrix exponential by Pade approximation with scaling and squaring,
/// degree chosen from the 1-norm (Higham's 2005 parameterization).
DenseMatrix expm_dense(const DenseMatrix& m);

/// phi_j(M) for j in 0..3, extracted from the exponential of the block
/// matrix that chains M with j identity couplings. Accurate uniformly in
/// ||M||; M may be singular. Intended for moderate sizes (the augmented
/// exponential has dimension (j+1) * n).
DenseMatrix phi_dense(int j, const DenseMatrix& m);

/// Exponential and first two phi functions of tau*A, precomputed once
/// per step size and reused across every time step.
struct PhiTable {
  double tau = 0.0;
  DenseMatrix e;   // exp(tau A)
  DenseMatrix p1;  // phi_1(tau A)
  DenseMatrix p2;  // phi_2(tau A)
};

/// Residual guard for the recurrence identities inside build_phi_table.
inline constexpr double tol_phi = 1e-9;

/// Build a PhiTable for tau*A. The phi matrices come from banded solves
/// against tau*A, so the recurrence (tau A) phi_{j+1} = phi_j - I/j!
/// holds by construction; a residual check enforces it to tol_phi and
/// throws on violation (tau = 0 is rejected, as phi_1 and phi_2 would
/// need the limit values instead of a solve).
PhiTable build_phi_table(const BandedMatrix& a, double tau);

/// Matrix-free operator handed to the Krylov evaluator. When `scale` is
/// non-empty, `apply` realizes the diagonally symmetrized similarity
/// D A D^{-1} with D = diag(scale); the evaluator maps its inputs and
/// outputs through D so callers always work in original coordinates.
struct LinearOp {
  int n = 0;
  bool symmetric = false;
  double norm_inf = 0.0;  // estimate, used only for step-size heuristics
  std::function<void(const double*, double*)> apply;
  Vector scale;  // empty means identity (no similarity applied)
};

/// Wrap a banded matrix. Exactly symmetric matrices keep the fast
/// three-term recurrence in the evaluator; nonsymmetric tridiagonal
/// matrices whose paired off-diagonal entries have matching signs (flux
/// and Robin closures) are symmetrized by a diagonal similarity for the
/// same purpose. Anything else falls back to the general path.
LinearOp as_op(const BandedMatrix& a);

struct KrylovConfig {
  int m_max = 60;           // Krylov subspace dimension cap
  double tol = 1e-10;       // relative accuracy target for one evaluation
  bool allow_restart = true;  // permit splitting tau into substeps
};

/// Evaluate e^{tau A} u + sum_{j=1..p} tau^j phi_j(tau A) b[j-1] with a
/// single Krylov subspace per internal substep. Either u may be empty
/// (treated as zero) or b may be empty (pure exponential action).
/// Throws on non-convergence, carrying the achieved residual estimate.
Vector phi_combination(const LinearOp& a, double tau, const Vector& u,
                       std::span<const Vector> b, const KrylovConfig& cfg = {});

/// phi_j(tau A) v for j in 0..3 via the combination evaluator.
Vector krylov_phi_apply(const LinearOp& a, const Vector& v, double tau, int j,
                        const KrylovConfig& cfg = {});

}  // namespace expsplit

#endif
