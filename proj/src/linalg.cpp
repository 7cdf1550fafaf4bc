#include "expsplit/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <type_traits>

namespace expsplit {

double norm_max(const Vector& v) {
  double m = 0.0;
  for (double x : v) m = std::max(m, std::abs(x));
  return m;
}

bool all_finite(const Vector& v) {
  for (double x : v)
    if (!std::isfinite(x)) return false;
  return true;
}

void axpy(double a, const Vector& x, Vector& y) {
  const size_t n = x.size();
  for (size_t i = 0; i < n; ++i) y[i] += a * x[i];
}

DenseMatrix DenseMatrix::identity(int n) {
  DenseMatrix m(n);
  for (int i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

double DenseMatrix::norm_inf() const {
  double m = 0.0;
  for (int i = 0; i < n_; ++i) {
    double s = 0.0;
    const double* r = row(i);
    for (int j = 0; j < n_; ++j) s += std::abs(r[j]);
    m = std::max(m, s);
  }
  return m;
}

double DenseMatrix::norm_1() const {
  std::vector<double> col(n_, 0.0);
  for (int i = 0; i < n_; ++i) {
    const double* r = row(i);
    for (int j = 0; j < n_; ++j) col[j] += std::abs(r[j]);
  }
  return *std::max_element(col.begin(), col.end());
}

bool DenseMatrix::all_finite() const {
  for (double x : a_)
    if (!std::isfinite(x)) return false;
  return true;
}

DenseMatrix& DenseMatrix::operator+=(const DenseMatrix& other) {
  for (size_t i = 0; i < a_.size(); ++i) a_[i] += other.a_[i];
  return *this;
}

DenseMatrix& DenseMatrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

Vector mat_vec(const DenseMatrix& m, const Vector& v) {
  const int n = m.size();
  Vector y(n);
  for (int i = 0; i < n; ++i) {
    const double* r = m.row(i);
    double s = 0.0;
    for (int j = 0; j < n; ++j) s += r[j] * v[j];
    y[i] = s;
  }
  return y;
}

DenseMatrix mat_mul(const DenseMatrix& a, const DenseMatrix& b) {
  const int n = a.size();
  if (b.size() != n) throw std::invalid_argument("mat_mul: size mismatch");
  DenseMatrix c(n);
  // Row blocks keep a panel of b in cache while n stays the inner
  // (vectorized) loop; good enough for the n ~ 1000 sizes used here.
  constexpr int ib = 48;
  constexpr int kb = 256;
  for (int i0 = 0; i0 < n; i0 += ib) {
    const int imax = std::min(i0 + ib, n);
    for (int k0 = 0; k0 < n; k0 += kb) {
      const int kmax = std::min(k0 + kb, n);
      for (int i = i0; i < imax; ++i) {
        double* ci = c.row(i);
        for (int k = k0; k < kmax; ++k) {
          const double aik = a(i, k);
          const double* bk = b.row(k);
          for (int j = 0; j < n; ++j) ci[j] += aik * bk[j];
        }
      }
    }
  }
  return c;
}

BandedMatrix::BandedMatrix(int n, int kl, int ku)
    : n_(n),
      kl_(kl),
      ku_(ku),
      a_(static_cast<size_t>(kl + ku + 1) * n, 0.0),
      live_(static_cast<size_t>(kl + ku + 1), 0) {
  if (n <= 0 || kl < 0 || ku < 0 || kl >= n || ku >= n)
    throw std::invalid_argument("BandedMatrix: bad shape");
}

double& BandedMatrix::at(int i, int j) {
  const int d = j - i;
  if (i < 0 || i >= n_ || d < -kl_ || d > ku_)
    throw std::out_of_range("BandedMatrix::at outside band");
  live_[static_cast<size_t>(d + kl_)] = 1;
  return a_[static_cast<size_t>(d + kl_) * n_ + i];
}

double BandedMatrix::get(int i, int j) const {
  const int d = j - i;
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("BandedMatrix::get");
  if (d < -kl_ || d > ku_) return 0.0;
  return a_[static_cast<size_t>(d + kl_) * n_ + i];
}

const double* BandedMatrix::diagonal(int d) const {
  return a_.data() + static_cast<size_t>(d + kl_) * n_;
}

void BandedMatrix::refresh_live_diagonals() {
  for (int d = -kl_; d <= ku_; ++d) {
    const double* dg = diagonal(d);
    const int lo = std::max(0, -d);
    const int hi = n_ - std::max(0, d);
    std::uint8_t any = 0;
    for (int i = lo; i < hi; ++i)
      if (dg[i] != 0.0) {
        any = 1;
        break;
      }
    live_[static_cast<size_t>(d + kl_)] = any;
  }
}

double BandedMatrix::norm_inf() const {
  std::vector<double> row_sum(n_, 0.0);
  for (int d = -kl_; d <= ku_; ++d) {
    const double* dg = diagonal(d);
    const int lo = std::max(0, -d);
    const int hi = n_ - std::max(0, d);
    for (int i = lo; i < hi; ++i) row_sum[i] += std::abs(dg[i]);
  }
  return *std::max_element(row_sum.begin(), row_sum.end());
}

DenseMatrix BandedMatrix::to_dense() const {
  DenseMatrix m(n_);
  for (int d = -kl_; d <= ku_; ++d) {
    const double* dg = diagonal(d);
    const int lo = std::max(0, -d);
    const int hi = n_ - std::max(0, d);
    for (int i = lo; i < hi; ++i) m(i, i + d) = dg[i];
  }
  return m;
}

BandedMatrix& BandedMatrix::operator*=(double s) {
  for (double& x : a_) x *= s;
  return *this;
}

void mat_vec(const BandedMatrix& m, const double* x, double* y) {
  const int n = m.size();
  std::fill(y, y + n, 0.0);
  for (int d = -m.lower_bandwidth(); d <= m.upper_bandwidth(); ++d) {
    if (!m.diagonal_live(d)) continue;
    const double* dg = m.diagonal(d);
    const double* xs = x + d;
    const int lo = std::max(0, -d);
    const int hi = n - std::max(0, d);
    for (int i = lo; i < hi; ++i) y[i] += dg[i] * xs[i];
  }
}

Vector mat_vec(const BandedMatrix& m, const Vector& v) {
  Vector y(m.size());
  mat_vec(m, v.data(), y.data());
  return y;
}

namespace {

// Probe ||A^{-1}||_inf with two cheap solves; only used to report a
// condition estimate, never to steer the factorization.
template <typename Lu>
double estimate_condition(const Lu& lu, int n, double anorm) {
  Vector probe(n, 1.0);
  double inv_norm = norm_max(lu.solve(probe));
  for (int i = 0; i < n; ++i) probe[i] = (i % 2 == 0) ? 1.0 : -1.0;
  inv_norm = std::max(inv_norm, norm_max(lu.solve(probe)));
  return anorm * inv_norm;
}

}  // namespace

BandedLU::BandedLU(const BandedMatrix& m)
    : n_(m.size()), kl_(m.lower_bandwidth()), ku_(m.upper_bandwidth()) {
  const double anorm = m.norm_inf();
  const int ldab = 2 * kl_ + ku_ + 1;
  lu_.assign(static_cast<size_t>(ldab) * n_, 0.0);
  pivot_.resize(n_);

  for (int j = 0; j < n_; ++j)
    for (int i = std::max(0, j - ku_); i <= std::min(n_ - 1, j + kl_); ++i)
      entry(i, j) = m.get(i, j);

  for (int j = 0; j < n_; ++j) {
    int piv = j;
    double pmax = std::abs(entry(j, j));
    const int ilast = std::min(n_ - 1, j + kl_);
    for (int i = j + 1; i <= ilast; ++i) {
      const double v = std::abs(entry(i, j));
      if (v > pmax) {
        pmax = v;
        piv = i;
      }
    }
    pivot_[j] = piv;
    if (pmax == 0.0) throw std::runtime_error("BandedLU: singular matrix");
    if (piv != j) {
      const int jlast = std::min(n_ - 1, j + kl_ + ku_);
      for (int c = j; c <= jlast; ++c) std::swap(entry(j, c), entry(piv, c));
    }
    const double inv_piv = 1.0 / entry(j, j);
    const int jlast = std::min(n_ - 1, j + kl_ + ku_);
    for (int i = j + 1; i <= ilast; ++i) {
      const double mult = entry(i, j) * inv_piv;
      entry(i, j) = mult;
      if (mult != 0.0)
        for (int c = j + 1; c <= jlast; ++c) entry(i, c) -= mult * entry(j, c);
    }
  }
  cond_ = estimate_condition(*this, n_, anorm);
}

void BandedLU::solve_in_place(double* b) const {
  for (int j = 0; j < n_; ++j) {
    if (pivot_[j] != j) std::swap(b[j], b[pivot_[j]]);
    const double bj = b[j];
    if (bj != 0.0) {
      const int ilast = std::min(n_ - 1, j + kl_);
      for (int i = j + 1; i <= ilast; ++i) b[i] -= entry(i, j) * bj;
    }
  }
  for (int j = n_ - 1; j >= 0; --j) {
    b[j] /= entry(j, j);
    const double bj = b[j];
    if (bj != 0.0) {
      const int ifirst = std::max(0, j - kl_ - ku_);
      for (int i = ifirst; i < j; ++i) b[i] -= entry(i, j) * bj;
    }
  }
}

Vector BandedLU::solve(const Vector& b) const {
  if (static_cast<int>(b.size()) != n_) throw std::invalid_argument("BandedLU::solve size");
  Vector x = b;
  solve_in_place(x.data());
  return x;
}

DenseLU::DenseLU(DenseMatrix m) : lu_(std::move(m)) {
  const int n = lu_.size();
  const double anorm = lu_.norm_inf();
  pivot_.resize(n);
  for (int j = 0; j < n; ++j) {
    int piv = j;
    double pmax = std::abs(lu_(j, j));
    for (int i = j + 1; i < n; ++i) {
      const double v = std::abs(lu_(i, j));
      if (v > pmax) {
        pmax = v;
        piv = i;
      }
    }
    pivot_[j] = piv;
    if (pmax == 0.0) throw std::runtime_error("DenseLU: singular matrix");
    if (piv != j)
      for (int c = 0; c < n; ++c) std::swap(lu_(j, c), lu_(piv, c));
    const double inv_piv = 1.0 / lu_(j, j);
    for (int i = j + 1; i < n; ++i) {
      const double mult = lu_(i, j) * inv_piv;
      lu_(i, j) = mult;
      if (mult != 0.0) {
        double* ri = lu_.row(i);
        const double* rj = lu_.row(j);
        for (int c = j + 1; c < n; ++c) ri[c] -= mult * rj[c];
      }
    }
  }
  cond_ = estimate_condition(*this, n, anorm);
}

Vector DenseLU::solve(const Vector& b) const {
  const int n = lu_.size();
  if (static_cast<int>(b.size()) != n) throw std::invalid_argument("DenseLU::solve size");
  Vector x = b;
  for (int j = 0; j < n; ++j) {
    if (pivot_[j] != j) std::swap(x[j], x[pivot_[j]]);
    const double xj = x[j];
    if (xj != 0.0)
      for (int i = j + 1; i < n; ++i) x[i] -= lu_(i, j) * xj;
  }
  for (int j = n - 1; j >= 0; --j) {
    x[j] /= lu_(j, j);
    const double xj = x[j];
    if (xj != 0.0)
      for (int i = 0; i < j; ++i) x[i] -= lu_(i, j) * xj;
  }
  return x;
}

void DenseLU::solve_multi(DenseMatrix& b) const {
  const int n = lu_.size();
  if (b.size() != n) throw std::invalid_argument("DenseLU::solve_multi size");
  // Row-major rhs: apply the row operations across whole rows so the
  // inner loops run over contiguous memory.
  for (int j = 0; j < n; ++j)
    if (pivot_[j] != j) {
      double* rj = b.row(j);
      double* rp = b.row(pivot_[j]);
      for (int c = 0; c < n; ++c) std::swap(rj[c], rp[c]);
    }
  for (int j = 0; j < n; ++j) {
    const double* rj = b.row(j);
    for (int i = j + 1; i < n; ++i) {
      const double mult = lu_(i, j);
      if (mult != 0.0) {
        double* ri = b.row(i);
        for (int c = 0; c < n; ++c) ri[c] -= mult * rj[c];
      }
    }
  }
  for (int j = n - 1; j >= 0; --j) {
    double* rj = b.row(j);
    const double inv = 1.0 / lu_(j, j);
    for (int c = 0; c < n; ++c) rj[c] *= inv;
    for (int i = 0; i < j; ++i) {
      const double mult = lu_(i, j);
      if (mult != 0.0) {
        double* ri = b.row(i);
        for (int c = 0; c < n; ++c) ri[c] -= mult * rj[c];
      }
    }
  }
}

namespace {

template <typename Matrix>
Vector checked_solve(const Matrix& m, const Vector& b, const char* who) {
  using LuType =
      std::conditional_t<std::is_same_v<Matrix, BandedMatrix>, BandedLU, DenseLU>;
  LuType lu(m);
  Vector x = lu.solve(b);
  Vector r = mat_vec(m, x);
  for (size_t i = 0; i < r.size(); ++i) r[i] -= b[i];
  const double rel = norm_max(r) / std::max(norm_max(b), 1e-300);
  if (!all_finite(x) || rel > tol_solve)
    throw std::runtime_error(std::string(who) +
                             ": residual above tolerance, cond estimate " +
                             std::to_string(lu.condition_estimate()));
  return x;
}

}  // namespace

Vector solve(const BandedMatrix& m, const Vector& b) {
  return checked_solve(m, b, "solve(banded)");
}

Vector solve(const DenseMatrix& m, const Vector& b) {
  return checked_solve(m, b, "solve(dense)");
}

}  // namespace expsplit
