#include "einldg/ldg.hpp"

#include <cmath>
#include <stdexcept>

namespace einldg {

double jump_ratio_flux(double u_minus, double u_plus, const std::function<double(double)>& b,
                       const std::function<double(double)>& B, double tol) {
  const double jump = u_plus - u_minus;
  const double scale = std::max({1.0, std::abs(u_minus), std::abs(u_plus)});
  if (std::abs(jump) > tol * scale) return (B(u_plus) - B(u_minus)) / jump;
  return b(0.5 * (u_plus + u_minus));
}

void DiscreteLaplacian::apply(const std::vector<double>& x, std::vector<double>& y) const {
  const int N = mesh->cells();
  const int B = block();
  if (static_cast<int>(x.size()) != N * B) throw std::invalid_argument("apply: length mismatch");
  y.assign(x.size(), 0.0);
  for (int j = 0; j < N; ++j) {
    const double* dj = diag.data() + static_cast<size_t>(j) * B * B;
    const double* lj = lower.data() + static_cast<size_t>(j) * B * B;
    const double* uj = upper.data() + static_cast<size_t>(j) * B * B;
    const int jm = (j == 0) ? N - 1 : j - 1;
    const int jp = (j == N - 1) ? 0 : j + 1;
    const bool has_lower = periodic || j > 0;
    const bool has_upper = periodic || j < N - 1;
    for (int m = 0; m < B; ++m) {
      double s = 0.0;
      for (int n = 0; n < B; ++n) {
        s += dj[m * B + n] * x[j * B + n];
        if (has_lower) s += lj[m * B + n] * x[jm * B + n];
        if (has_upper) s += uj[m * B + n] * x[jp * B + n];
      }
      y[j * B + m] = s;
    }
  }
}

std::vector<double> DiscreteLaplacian::to_dense() const {
  const int N = mesh->cells();
  const int B = block();
  const int n = N * B;
  std::vector<double> A(static_cast<size_t>(n) * n, 0.0);
  for (int j = 0; j < N; ++j) {
    const int jm = (j == 0) ? N - 1 : j - 1;
    const int jp = (j == N - 1) ? 0 : j + 1;
    const bool has_lower = periodic || j > 0;
    const bool has_upper = periodic || j < N - 1;
    for (int m = 0; m < B; ++m)
      for (int nn = 0; nn < B; ++nn) {
        A[static_cast<size_t>(j * B + m) * n + (j * B + nn)] +=
            diag[static_cast<size_t>(j) * B * B + m * B + nn];
        if (has_lower)
          A[static_cast<size_t>(j * B + m) * n + (jm * B + nn)] +=
              lower[static_cast<size_t>(j) * B * B + m * B + nn];
        if (has_upper)
          A[static_cast<size_t>(j * B + m) * n + (jp * B + nn)] +=
              upper[static_cast<size_t>(j) * B * B + m * B + nn];
      }
  }
  return A;
}

SpatialOps::SpatialOps(MeshPtr mesh, int degree)
    : mesh_(std::move(mesh)), degree_(degree), rule_(gauss_quadrature(10)) {
  if (degree_ < 0) throw std::invalid_argument("SpatialOps: degree must be >= 0");
  const int nq = rule_.size();
  P_.resize(static_cast<size_t>(degree_ + 1) * nq);
  dP_.resize(static_cast<size_t>(degree_ + 1) * nq);
  for (int m = 0; m <= degree_; ++m)
    for (int q = 0; q < nq; ++q) {
      P_[m * nq + q] = legendre_eval(m, rule_.nodes[q]);
      dP_[m * nq + q] = legendre_deriv(m, rule_.nodes[q]);
    }
  S_.assign(static_cast<size_t>(degree_ + 1) * (degree_ + 1), 0.0);
  for (int m = 0; m <= degree_; ++m)
    for (int n = 0; n < m; ++n)
      if ((m - n) % 2 == 1) S_[m * (degree_ + 1) + n] = 2.0;
}

DGFunction SpatialOps::from_volume_and_flux(const std::vector<double>& vol,
                                            const std::vector<double>& flux) const {
  const int N = mesh_->cells();
  const int B = degree_ + 1;
  DGFunction out(mesh_, degree_);
  for (int j = 0; j < N; ++j) {
    const double inv_h = 1.0 / mesh_->cell_width(j);
    for (int m = 0; m < B; ++m) {
      const double sgn = (m % 2 == 0) ? 1.0 : -1.0;
      out.coeff(j, m) = (2 * m + 1) * inv_h * (-vol[j * B + m] + flux[j + 1] - sgn * flux[j]);
    }
  }
  return out;
}

// u^- at every interface (indices 0..N); boundary datum at both ends for
// Dirichlet meshes.
std::vector<double> SpatialOps::interface_values_minus(const DGFunction& u, double t) const {
  const int N = mesh_->cells();
  std::vector<double> v(N + 1);
  for (int i = 1; i < N; ++i) v[i] = u.eval(i - 1, 1.0);
  if (mesh_->periodic()) {
    // Interfaces 0 and N are identified; u^- there is cell N-1's right trace.
    v[0] = v[N] = u.eval(N - 1, 1.0);
  } else {
    v[0] = mesh_->dirichlet().left(t);
    v[N] = mesh_->dirichlet().right(t);
  }
  return v;
}

// q^+ at every interface; for Dirichlet meshes the outer interfaces take the
// interior trace instead.
std::vector<double> SpatialOps::interface_values_plus_pattern(const DGFunction& q) const {
  const int N = mesh_->cells();
  std::vector<double> v(N + 1);
  for (int i = 0; i < N; ++i) v[i] = q.eval(i, -1.0);
  if (mesh_->periodic())
    v[N] = q.eval(0, -1.0);
  else
    v[N] = q.eval(N - 1, 1.0);
  return v;
}

DGFunction SpatialOps::op_K(const DGFunction& u, double t) const {
  const int N = mesh_->cells();
  const int B = degree_ + 1;
  std::vector<double> vol(static_cast<size_t>(N) * B, 0.0);
  for (int j = 0; j < N; ++j)
    for (int m = 0; m < B; ++m) {
      double s = 0.0;
      for (int n = 0; n < m; ++n) s += S_[m * B + n] * u.coeff(j, n);
      vol[j * B + m] = s;
    }
  return from_volume_and_flux(vol, interface_values_minus(u, t));
}

DGFunction SpatialOps::op_L(const DGFunction& q) const {
  const int N = mesh_->cells();
  const int B = degree_ + 1;
  std::vector<double> vol(static_cast<size_t>(N) * B, 0.0);
  for (int j = 0; j < N; ++j)
    for (int m = 0; m < B; ++m) {
      double s = 0.0;
      for (int n = 0; n < m; ++n) s += S_[m * B + n] * q.coeff(j, n);
      vol[j * B + m] = s;
    }
  return from_volume_and_flux(vol, interface_values_plus_pattern(q));
}

DGFunction SpatialOps::op_Ktilde(const DGFunction& u, const std::function<double(double)>& B,
                                 double t) const {
  const int N = mesh_->cells();
  const int Bk = degree_ + 1;
  const int nq = rule_.size();
  std::vector<double> vol(static_cast<size_t>(N) * Bk, 0.0);
  std::vector<double> Bu(nq);
  for (int j = 0; j < N; ++j) {
    for (int q = 0; q < nq; ++q) Bu[q] = B(u.eval(j, rule_.nodes[q]));
    for (int m = 1; m < Bk; ++m) {
      double s = 0.0;
      for (int q = 0; q < nq; ++q) s += rule_.weights[q] * Bu[q] * dP_[m * nq + q];
      vol[j * Bk + m] = s;
    }
  }
  std::vector<double> flux = interface_values_minus(u, t);
  for (double& v : flux) v = B(v);
  return from_volume_and_flux(vol, flux);
}

DGFunction SpatialOps::op_Ltilde(const DGFunction& u, const DGFunction& p,
                                 const std::function<double(double)>& b,
                                 const std::function<double(double)>& B, double t) const {
  const int N = mesh_->cells();
  const int Bk = degree_ + 1;
  const int nq = rule_.size();
  std::vector<double> vol(static_cast<size_t>(N) * Bk, 0.0);
  std::vector<double> g(nq);
  for (int j = 0; j < N; ++j) {
    for (int q = 0; q < nq; ++q)
      g[q] = b(u.eval(j, rule_.nodes[q])) * p.eval(j, rule_.nodes[q]);
    for (int m = 1; m < Bk; ++m) {
      double s = 0.0;
      for (int q = 0; q < nq; ++q) s += rule_.weights[q] * g[q] * dP_[m * nq + q];
      vol[j * Bk + m] = s;
    }
  }
  // Interface coefficient b^(u) paired with p^ = p+.
  std::vector<double> phat = interface_values_plus_pattern(p);
  std::vector<double> flux(N + 1);
  for (int i = 0; i <= N; ++i) {
    double um, up;
    if (mesh_->periodic()) {
      const int ii = (i == N) ? 0 : i;
      um = u.eval(ii == 0 ? N - 1 : ii - 1, 1.0);
      up = u.eval(ii, -1.0);
    } else if (i == 0) {
      um = mesh_->dirichlet().left(t);
      up = u.eval(0, -1.0);
    } else if (i == N) {
      um = u.eval(N - 1, 1.0);
      up = mesh_->dirichlet().right(t);
    } else {
      um = u.eval(i - 1, 1.0);
      up = u.eval(i, -1.0);
    }
    flux[i] = jump_ratio_flux(um, up, b, B) * phat[i];
  }
  return from_volume_and_flux(vol, flux);
}

DGFunction SpatialOps::op_L_weighted(const DGFunction& q, const std::function<double(double)>& w,
                                     const std::vector<double>& w_iface) const {
  const int N = mesh_->cells();
  const int Bk = degree_ + 1;
  const int nq = rule_.size();
  if (static_cast<int>(w_iface.size()) != N + 1)
    throw std::invalid_argument("op_L_weighted: interface weight size mismatch");
  std::vector<double> vol(static_cast<size_t>(N) * Bk, 0.0);
  std::vector<double> g(nq);
  for (int j = 0; j < N; ++j) {
    for (int qi = 0; qi < nq; ++qi)
      g[qi] = w(mesh_->to_physical(j, rule_.nodes[qi])) * q.eval(j, rule_.nodes[qi]);
    for (int m = 1; m < Bk; ++m) {
      double s = 0.0;
      for (int qi = 0; qi < nq; ++qi) s += rule_.weights[qi] * g[qi] * dP_[m * nq + qi];
      vol[j * Bk + m] = s;
    }
  }
  std::vector<double> flux = interface_values_plus_pattern(q);
  for (int i = 0; i <= N; ++i) flux[i] *= w_iface[i];
  return from_volume_and_flux(vol, flux);
}

DGFunction SpatialOps::op_convection(const DGFunction& n, const ConvectionFlux& flux,
                                     double dflux_bound) const {
  if (!mesh_->periodic())
    throw std::logic_error("op_convection: only periodic meshes are supported");
  const int N = mesh_->cells();
  const int Bk = degree_ + 1;
  const int nq = rule_.size();
  std::vector<double> vol(static_cast<size_t>(N) * Bk, 0.0);
  std::vector<double> g(nq);
  for (int j = 0; j < N; ++j) {
    for (int qi = 0; qi < nq; ++qi) g[qi] = flux.volume(j, qi, n.eval(j, rule_.nodes[qi]));
    for (int m = 1; m < Bk; ++m) {
      double s = 0.0;
      for (int qi = 0; qi < nq; ++qi) s += rule_.weights[qi] * g[qi] * dP_[m * nq + qi];
      vol[j * Bk + m] = s;
    }
  }
  std::vector<double> fhat(N + 1);
  for (int i = 0; i <= N; ++i) {
    const int ii = (i == N) ? 0 : i;
    const double nm = n.eval(ii == 0 ? N - 1 : ii - 1, 1.0);
    const double np = n.eval(ii, -1.0);
    fhat[i] = 0.5 * (flux.interface_flux(ii, Side::Minus, nm) +
                     flux.interface_flux(ii, Side::Plus, np)) -
              0.5 * dflux_bound * (np - nm);
  }
  return from_volume_and_flux(vol, fhat);
}

DiscreteLaplacian SpatialOps::assemble_discrete_laplacian() const {
  const int N = mesh_->cells();
  const int B = degree_ + 1;
  const bool periodic = mesh_->periodic();
  const size_t bb = static_cast<size_t>(B) * B;

  // Per-cell blocks of the two first-order operators.
  std::vector<double> Kd(N * bb, 0.0), Ks(N * bb, 0.0), Ld(N * bb, 0.0), Lu(N * bb, 0.0);
  for (int j = 0; j < N; ++j) {
    const double inv_h = 1.0 / mesh_->cell_width(j);
    for (int m = 0; m < B; ++m) {
      const double cm = (2 * m + 1) * inv_h;
      const double sgn_m = (m % 2 == 0) ? 1.0 : -1.0;
      for (int n = 0; n < B; ++n) {
        const double sgn_n = (n % 2 == 0) ? 1.0 : -1.0;
        double kd = -S_[m * B + n];
        if (periodic || j < N - 1) kd += 1.0;  // own right trace unless datum
        Kd[j * bb + m * B + n] = cm * kd;
        if (periodic || j > 0) Ks[j * bb + m * B + n] = -cm * sgn_m;
        double ld = -S_[m * B + n] - sgn_m * sgn_n;
        if (!periodic && j == N - 1) ld += 1.0;  // q^ takes own right trace
        Ld[j * bb + m * B + n] = cm * ld;
        if (periodic || j < N - 1) Lu[j * bb + m * B + n] = cm * sgn_n;
      }
    }
  }

  DiscreteLaplacian D;
  D.mesh = mesh_;
  D.degree = degree_;
  D.periodic = periodic;
  D.lower.assign(N * bb, 0.0);
  D.diag.assign(N * bb, 0.0);
  D.upper.assign(N * bb, 0.0);

  auto mul_into = [&](const double* A, const double* Bm, double* C) {
    for (int m = 0; m < B; ++m)
      for (int n = 0; n < B; ++n) {
        double s = 0.0;
        for (int l = 0; l < B; ++l) s += A[m * B + l] * Bm[l * B + n];
        C[m * B + n] += s;
      }
  };

  for (int j = 0; j < N; ++j) {
    const int jp = (j == N - 1) ? 0 : j + 1;
    mul_into(&Ld[j * bb], &Ks[j * bb], &D.lower[j * bb]);
    mul_into(&Ld[j * bb], &Kd[j * bb], &D.diag[j * bb]);
    mul_into(&Lu[j * bb], &Ks[jp * bb], &D.diag[j * bb]);
    mul_into(&Lu[j * bb], &Kd[jp * bb], &D.upper[j * bb]);
  }
  return D;
}

}  // namespace einldg
