#include "einldg/implicit_solver.hpp"

#include <lapacke.h>

#include <cmath>
#include <cstring>
#include <stdexcept>

namespace einldg {

BandedLU::BandedLU(int n, int kl, int ku)
    : n_(n), kl_(kl), ku_(ku), ldab_(2 * kl + ku + 1) {
  ab_.assign(static_cast<size_t>(ldab_) * n_, 0.0);
  ipiv_.assign(n_, 0);
}

void BandedLU::add(int i, int j, double v) {
  if (i < 0 || i >= n_ || j < 0 || j >= n_) throw std::out_of_range("BandedLU::add");
  if (i - j > kl_ || j - i > ku_) {
    if (v != 0.0) throw std::out_of_range("BandedLU::add: entry outside the band");
    return;
  }
  // LAPACK band storage: A(i,j) at AB(kl+ku+i-j, j), column-major.
  ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)] += v;
  max_entry_ = std::max(max_entry_, std::abs(ab_[static_cast<size_t>(j) * ldab_ + (kl_ + ku_ + i - j)]));
}

bool BandedLU::factor() {
  const lapack_int info = LAPACKE_dgbtrf(LAPACK_COL_MAJOR, n_, n_, kl_, ku_, ab_.data(), ldab_,
                                         ipiv_.data());
  factored_ = (info == 0);
  if (factored_ && max_entry_ > 0.0) {
    double mx = 0.0;
    for (double v : ab_) mx = std::max(mx, std::abs(v));
    growth_ = mx / max_entry_;
  }
  return factored_;
}

void BandedLU::solve(std::vector<double>& b) const { solve_many(b, 1); }

void BandedLU::solve_many(std::vector<double>& b, int nrhs) const {
  if (!factored_) throw std::logic_error("BandedLU::solve before factor");
  if (static_cast<int>(b.size()) != n_ * nrhs) throw std::invalid_argument("BandedLU::solve size");
  const lapack_int info = LAPACKE_dgbtrs(LAPACK_COL_MAJOR, 'N', n_, kl_, ku_, nrhs, ab_.data(),
                                         ldab_, ipiv_.data(), b.data(), n_);
  if (info != 0) throw std::runtime_error("BandedLU::solve failed");
}

DenseLU::DenseLU(std::vector<double> a, int n) : n_(n), a_(std::move(a)) {
  if (static_cast<int>(a_.size()) != n_ * n_) throw std::invalid_argument("DenseLU: size");
  piv_.resize(n_);
}

bool DenseLU::factor() {
  for (int c = 0; c < n_; ++c) {
    int p = c;
    double best = std::abs(a_[static_cast<size_t>(c) * n_ + c]);
    for (int r = c + 1; r < n_; ++r) {
      const double v = std::abs(a_[static_cast<size_t>(r) * n_ + c]);
      if (v > best) {
        best = v;
        p = r;
      }
    }
    if (best == 0.0) return false;
    piv_[c] = p;
    if (p != c)
      for (int k = 0; k < n_; ++k)
        std::swap(a_[static_cast<size_t>(c) * n_ + k], a_[static_cast<size_t>(p) * n_ + k]);
    const double inv = 1.0 / a_[static_cast<size_t>(c) * n_ + c];
    for (int r = c + 1; r < n_; ++r) {
      const double l = a_[static_cast<size_t>(r) * n_ + c] * inv;
      a_[static_cast<size_t>(r) * n_ + c] = l;
      if (l != 0.0)
        for (int k = c + 1; k < n_; ++k)
          a_[static_cast<size_t>(r) * n_ + k] -= l * a_[static_cast<size_t>(c) * n_ + k];
    }
  }
  factored_ = true;
  return true;
}

void DenseLU::solve(std::vector<double>& b) const {
  if (!factored_) throw std::logic_error("DenseLU::solve before factor");
  for (int c = 0; c < n_; ++c) {
    if (piv_[c] != c) std::swap(b[c], b[piv_[c]]);
    for (int r = c + 1; r < n_; ++r) b[r] -= a_[static_cast<size_t>(r) * n_ + c] * b[c];
  }
  for (int r = n_ - 1; r >= 0; --r) {
    for (int k = r + 1; k < n_; ++k) b[r] -= a_[static_cast<size_t>(r) * n_ + k] * b[k];
    b[r] /= a_[static_cast<size_t>(r) * n_ + r];
  }
}

ImplicitFactorization::ImplicitFactorization(const DiscreteLaplacian& D, double shift,
                                             FactorizationKey key, Mode mode)
    : D_(&D), shift_(shift), key_(key), mode_(mode) {
  if (shift < 0.0) throw std::invalid_argument("ImplicitFactorization: negative shift");
  block_ = D.block();
  n_ = D.rows();
  periodic_ = D.periodic;
  const int N = D.mesh->cells();
  if (mode_ == Mode::BandedCorner && (!periodic_ || N >= 3)) {
    build_banded(D);
    if (band_ && band_->pivot_growth() > 1e8) {
      band_.reset();
      schur_.reset();
      mode_ = Mode::Dense;
      build_dense(D);
    }
  } else {
    mode_ = Mode::Dense;
    build_dense(D);
  }
}

void ImplicitFactorization::build_dense(const DiscreteLaplacian& D) {
  std::vector<double> A = D.to_dense();
  for (auto& v : A) v = -shift_ * v;
  for (int i = 0; i < n_; ++i) A[static_cast<size_t>(i) * n_ + i] += 1.0;
  dense_ = std::make_unique<DenseLU>(std::move(A), n_);
  if (!dense_->factor()) throw std::runtime_error("ImplicitFactorization: singular matrix");
}

void ImplicitFactorization::build_banded(const DiscreteLaplacian& D) {
  const int N = D.mesh->cells();
  const int B = block_;
  const size_t bb = static_cast<size_t>(B) * B;
  const int kd = 2 * B - 1;
  nb_ = periodic_ ? (N - 1) * B : N * B;
  band_ = std::make_unique<BandedLU>(nb_, kd, kd);

  const int nband_cells = periodic_ ? N - 1 : N;
  for (int j = 0; j < nband_cells; ++j) {
    for (int m = 0; m < B; ++m) {
      band_->add(j * B + m, j * B + m, 1.0);
      for (int n = 0; n < B; ++n) {
        band_->add(j * B + m, j * B + n, -shift_ * D.diag[j * bb + m * B + n]);
        if (j > 0) band_->add(j * B + m, (j - 1) * B + n, -shift_ * D.lower[j * bb + m * B + n]);
        if (j < nband_cells - 1)
          band_->add(j * B + m, (j + 1) * B + n, -shift_ * D.upper[j * bb + m * B + n]);
      }
    }
  }
  if (!band_->factor()) throw std::runtime_error("ImplicitFactorization: singular band");

  if (!periodic_) return;

  // Bordered system: border columns B (couplings of band rows to the last
  // cell) and border rows C (last cell's couplings into the band).
  border_x_.assign(static_cast<size_t>(nb_) * B, 0.0);
  for (int n = 0; n < B; ++n) {
    double* col = border_x_.data() + static_cast<size_t>(n) * nb_;
    for (int m = 0; m < B; ++m) {
      col[0 * B + m] += -shift_ * D.lower[0 * bb + m * B + n];          // row block 0
      col[(N - 2) * B + m] += -shift_ * D.upper[(N - 2) * bb + m * B + n];  // row block N-2
    }
  }
  band_->solve_many(border_x_, B);

  border_c_.assign(static_cast<size_t>(B) * nb_, 0.0);
  for (int m = 0; m < B; ++m) {
    double* row = border_c_.data() + static_cast<size_t>(m) * nb_;
    for (int n = 0; n < B; ++n) {
      row[0 * B + n] += -shift_ * D.upper[(N - 1) * bb + m * B + n];    // corner to cell 0
      row[(N - 2) * B + n] += -shift_ * D.lower[(N - 1) * bb + m * B + n];
    }
  }

  std::vector<double> S(static_cast<size_t>(B) * B, 0.0);
  for (int m = 0; m < B; ++m) {
    for (int n = 0; n < B; ++n) {
      double s = (m == n ? 1.0 : 0.0) - shift_ * D.diag[(N - 1) * bb + m * B + n];
      const double* crow = border_c_.data() + static_cast<size_t>(m) * nb_;
      const double* xcol = border_x_.data() + static_cast<size_t>(n) * nb_;
      for (int i = 0; i < nb_; ++i) s -= crow[i] * xcol[i];
      S[m * B + n] = s;
    }
  }
  schur_ = std::make_unique<DenseLU>(std::move(S), B);
  if (!schur_->factor()) throw std::runtime_error("ImplicitFactorization: singular Schur block");
}

std::vector<double> ImplicitFactorization::solve(const std::vector<double>& rhs) const {
  if (static_cast<int>(rhs.size()) != n_)
    throw std::invalid_argument("ImplicitFactorization::solve: length mismatch");
  if (mode_ == Mode::Dense) {
    std::vector<double> x = rhs;
    dense_->solve(x);
    return x;
  }
  if (!periodic_) {
    std::vector<double> x = rhs;
    band_->solve(x);
    return x;
  }
  const int B = block_;
  std::vector<double> y1(rhs.begin(), rhs.begin() + nb_);
  band_->solve(y1);
  std::vector<double> y2(rhs.begin() + nb_, rhs.end());
  for (int m = 0; m < B; ++m) {
    const double* crow = border_c_.data() + static_cast<size_t>(m) * nb_;
    double s = 0.0;
    for (int i = 0; i < nb_; ++i) s += crow[i] * y1[i];
    y2[m] -= s;
  }
  schur_->solve(y2);
  std::vector<double> x(n_);
  for (int i = 0; i < nb_; ++i) {
    double s = y1[i];
    for (int m = 0; m < B; ++m) s -= border_x_[static_cast<size_t>(m) * nb_ + i] * y2[m];
    x[i] = s;
  }
  for (int m = 0; m < B; ++m) x[nb_ + m] = y2[m];
  return x;
}

double ImplicitFactorization::residual_inf(const std::vector<double>& x,
                                           const std::vector<double>& rhs) const {
  std::vector<double> Dx;
  D_->apply(x, Dx);
  double r = 0.0;
  for (int i = 0; i < n_; ++i) r = std::max(r, std::abs(x[i] - shift_ * Dx[i] - rhs[i]));
  return r;
}

}  // namespace einldg
