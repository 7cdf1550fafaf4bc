#ifndef EXPSPLIT_LINALG_HPP
#define EXPSPLIT_LINALG_HPP

#include <cstdint>
#include <string>
#include <vector>

namespace expsplit {

using Vector = std::vector<double>;

/// Max-norm of a vector, max_i |v_i|.
double norm_max(const Vector& v);

/// True when every component is finite (no NaN, no Inf).
bool all_finite(const Vector& v);

/// y += a*x
void axpy(double a, const Vector& x, Vector& y);

/// Square dense matrix, row-major storage.
class DenseMatrix {
public:
  DenseMatrix() = default;
  explicit DenseMatrix(int n) : n_(n), a_(static_cast<size_t>(n) * n, 0.0) {}

  static DenseMatrix identity(int n);

  int size() const { return n_; }

  double& operator()(int i, int j) { return a_[static_cast<size_t>(i) * n_ + j]; }
  double operator()(int i, int j) const { return a_[static_cast<size_t>(i) * n_ + j]; }

  const double* row(int i) const { return a_.data() + static_cast<size_t>(i) * n_; }
  double* row(int i) { return a_.data() + static_cast<size_t>(i) * n_; }

  double* data() { return a_.data(); }
  const double* data() const { return a_.data(); }

  double norm_inf() const;  // induced: max absolute row sum
  double norm_1() const;    // induced: max absolute column sum
  bool all_finite() const;

  DenseMatrix& operator+=(const DenseMatrix& other);
  DenseMatrix& operator*=(double s);

private:
  int n_ = 0;
  std::vector<double> a_;
};

Vector mat_vec(const DenseMatrix& m, const Vector& v);

/// c = a*b, cache-blocked.
DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b);

/// Banded square matrix with lower bandwidth kl and upper bandwidth ku.
///
/// Storage is by diagonal: diag(d) holds entries a(i, i+d) for
/// d in [-kl, ku]. Construction tracks which diagonals were ever
/// written so mat_vec can skip structurally zero diagonals; the
/// five-point Laplacian sits in a band of width n but touches only
/// five diagonals, and its products should cost accordingly.
class BandedMatrix {
public:
  BandedMatrix() = default;
  BandedMatrix(int n, int kl, int ku);

  int size() const { return n_; }
  int lower_bandwidth() const { return kl_; }
  int upper_bandwidth() const { return ku_; }

  /// Entry reference; (i, j) must lie inside the band.
  double& at(int i, int j);
  /// Entry value; zero outside the band.
  double get(int i, int j) const;

  /// True when diagonal d (=j-i) holds at least one nonzero.
  bool diagonal_live(int d) const { return live_[static_cast<size_t>(d + kl_)] != 0; }

  const double* diagonal(int d) const;

  double norm_inf() const;
  DenseMatrix to_dense() const;
  BandedMatrix& operator*=(double s);

  /// Recompute the live-diagonal flags from the stored values.
  void refresh_live_diagonals();

private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  std::vector<double> a_;            // (kl+ku+1) rows of length n, row d+kl = diagonal d
  std::vector<std::uint8_t> live_;   // per-diagonal nonzero flag
};

Vector mat_vec(const BandedMatrix& m, const Vector& v);
void mat_vec(const BandedMatrix& m, const double* x, double* y);

/// LU factorization with partial pivoting of a banded matrix.
/// Fill-in widens the upper band to kl+ku, the usual growth.
class BandedLU {
public:
  explicit BandedLU(const BandedMatrix& m);

  Vector solve(const Vector& b) const;
  void solve_in_place(double* b) const;

  /// Cheap order-of-magnitude estimate of cond_inf(A).
  double condition_estimate() const { return cond_; }

private:
  int n_ = 0, kl_ = 0, ku_ = 0;
  std::vector<double> lu_;        // (2*kl+ku+1) diagonal rows
  std::vector<int> pivot_;
  double cond_ = 0.0;

  // Diagonal-major storage: after fill-in the factors occupy diagonals
  // j - i in [-kl, kl+ku], stored as rows (j - i) + kl of length n.
  double& entry(int i, int j) { return lu_[static_cast<size_t>(j - i + kl_) * n_ + i]; }
  double entry(int i, int j) const { return lu_[static_cast<size_t>(j - i + kl_) * n_ + i]; }
};

/// LU factorization with partial pivoting of a dense matrix.
class DenseLU {
public:
  explicit DenseLU(DenseMatrix m);

  Vector solve(const Vector& b) const;
  /// Solve for every column of B in place.
  void solve_multi(DenseMatrix& b) const;

  double condition_estimate() const { return cond_; }

private:
  DenseMatrix lu_;
  std::vector<int> pivot_;
  double cond_ = 0.0;
};

/// Relative residual guard applied by the solve() wrappers.
inline constexpr double tol_solve = 1e-10;

/// Solve m x = b. Throws std::runtime_error when the matrix is
/// singular or the residual check ||m x - b|| > tol_solve * ||b||
/// fails; the message carries the condition estimate.
Vector solve(const BandedMatrix& m, const Vector& b);
Vector solve(const DenseMatrix& m, const Vector& b);

}  // namespace expsplit

#endif
