#pragma once

#include <memory>
#include <vector>

#include "einldg/ldg.hpp"

namespace einldg {

// General banded LU with partial pivoting (LAPACK dgbtrf/dgbtrs behind it).
class BandedLU {
 public:
  BandedLU(int n, int kl, int ku);
  void add(int i, int j, double v);
  bool factor();  // false if a zero pivot was hit
  void solve(std::vector<double>& b) const;
  void solve_many(std::vector<double>& b, int nrhs) const;  // column-major
  double pivot_growth() const { return growth_; }

 private:
  int n_, kl_, ku_, ldab_;
  std::vector<double> ab_;
  std::vector<int> ipiv_;
  double max_entry_ = 0.0, growth_ = 1.0;
  bool factored_ = false;
};

// Row-major dense LU with partial pivoting; reference path and small blocks.
class DenseLU {
 public:
  DenseLU(std::vector<double> a, int n);
  bool factor();
  void solve(std::vector<double>& b) const;

 private:
  int n_;
  std::vector<double> a_;
  std::vector<int> piv_;
  bool factored_ = false;
};

// Epoch tag: the (a0, dt, stage gamma) triple a factorization was built for.
struct FactorizationKey {
  double a0 = 0.0, dt = 0.0, gamma = 0.0;
};

inline bool epoch_check(const FactorizationKey& key, double a0, double dt, double gamma) {
  return key.a0 == a0 && key.dt == dt && key.gamma == gamma;
}

// LU of I - shift * D where shift = gamma*dt*a0 and D is the discrete
// Laplacian. Periodic meshes use a banded factorization of the leading
// N-1 block rows bordered by the last block (Schur complement); Dirichlet
// meshes are plainly banded. Falls back to a dense factorization when the
// band pivot growth is excessive.
class ImplicitFactorization {
 public:
  enum class Mode { BandedCorner, Dense };

  ImplicitFactorization(const DiscreteLaplacian& D, double shift, FactorizationKey key = {},
                        Mode mode = Mode::BandedCorner);

  std::vector<double> solve(const std::vector<double>& rhs) const;
  double shift() const { return shift_; }
  Mode mode() const { return mode_; }
  const FactorizationKey& epoch() const { return key_; }

  // max-norm residual of (I - shift*D) x = rhs; diagnostic.
  double residual_inf(const std::vector<double>& x, const std::vector<double>& rhs) const;

 private:
  void build_banded(const DiscreteLaplacian& D);
  void build_dense(const DiscreteLaplacian& D);

  const DiscreteLaplacian* D_;
  double shift_;
  FactorizationKey key_;
  Mode mode_;
  int n_ = 0, block_ = 0, nb_ = 0;
  bool periodic_ = false;

  std::unique_ptr<BandedLU> band_;
  std::vector<double> border_x_;   // nb x block, column-major: Q^{-1} B
  std::vector<double> border_c_;   // block x nb, row-major: C
  std::unique_ptr<DenseLU> schur_;
  std::unique_ptr<DenseLU> dense_;
};

}  // namespace einldg
