#pragma once

#include <functional>
#include <optional>
#include <vector>

#include "einldg/fem.hpp"

namespace einldg {

// Interface diffusion coefficient for the nonlinear divergence form:
// [B(u)]/[u] across the interface, or b((u^+ + u^-)/2) when the jump is
// negligible relative to the states.
double jump_ratio_flux(double u_minus, double u_plus, const std::function<double(double)>& b,
                       const std::function<double(double)>& B, double tol = 1e-12);

// Block-tridiagonal matrix of the composed operator u -> M^{-1} L(K u)
// (cyclic corner blocks when periodic). Row block j couples cells j-1, j, j+1.
struct DiscreteLaplacian {
  MeshPtr mesh;
  int degree = 0;
  bool periodic = true;
  // N blocks each, row-major (k+1)x(k+1). lower[0] and upper[N-1] are the
  // periodic corner blocks; they are zero for Dirichlet meshes.
  std::vector<double> lower, diag, upper;

  int block() const { return degree + 1; }
  int rows() const { return mesh->cells() * block(); }
  void apply(const std::vector<double>& x, std::vector<double>& y) const;
  std::vector<double> to_dense() const;
};

// Lax-Friedrichs convection fluxes with coefficients frozen in space: the
// callbacks see the quadrature slot / interface index so callers can bake in
// position-dependent data (electric field, doping, ...).
struct ConvectionFlux {
  std::function<double(int cell, int node, double n)> volume;
  std::function<double(int interface, Side side, double n)> interface_flux;
};

// LDG operators with the alternating flux choice q^ = q+, p^ = p+, u^ = u-,
// B^ = B(u^-). Dirichlet runs take the boundary datum for u^ at both ends and
// interior traces for q^/p^ at both ends.
class SpatialOps {
 public:
  SpatialOps(MeshPtr mesh, int degree);

  const MeshPtr& mesh() const { return mesh_; }
  int degree() const { return degree_; }
  const QuadratureRule& volume_quadrature() const { return rule_; }

  // Auxiliary derivative: q in V_h with (q,r) = K(u,r) for all r.
  DGFunction op_K(const DGFunction& u, double t = 0.0) const;
  // M^{-1} of the divergence form with q^ = q+.
  DGFunction op_L(const DGFunction& q) const;
  // p in V_h with (p,w) = K~(B(u),w); B^ = B(u^-).
  DGFunction op_Ktilde(const DGFunction& u, const std::function<double(double)>& B,
                       double t = 0.0) const;
  // M^{-1} of the nonlinear divergence form L~(b(u)p, .); p^ = p+.
  DGFunction op_Ltilde(const DGFunction& u, const DGFunction& p,
                       const std::function<double(double)>& b,
                       const std::function<double(double)>& B, double t = 0.0) const;
  // M^{-1} divergence of w(x)*q with the q^ = q+ flux; w_iface supplies the
  // interface weight values (size cells()+1).
  DGFunction op_L_weighted(const DGFunction& q, const std::function<double(double)>& w,
                           const std::vector<double>& w_iface) const;
  // M^{-1} weak divergence of the convection flux with interface value
  // (f(n-) + f(n+))/2 - dflux_bound*(n+ - n-)/2. Periodic meshes only.
  DGFunction op_convection(const DGFunction& n, const ConvectionFlux& flux,
                           double dflux_bound) const;

  DiscreteLaplacian assemble_discrete_laplacian() const;

  double legendre_at(int m, int node) const { return P_[m * rule_.size() + node]; }
  double legendre_deriv_at(int m, int node) const { return dP_[m * rule_.size() + node]; }

 private:
  // Shared assembly: out_{j,m} = (2m+1)/h_j (-vol_{j,m} + F_{j+1} - (-1)^m F_j).
  DGFunction from_volume_and_flux(const std::vector<double>& vol,
                                  const std::vector<double>& flux) const;
  std::vector<double> interface_values_minus(const DGFunction& u, double t) const;
  std::vector<double> interface_values_plus_pattern(const DGFunction& q) const;

  MeshPtr mesh_;
  int degree_;
  QuadratureRule rule_;
  std::vector<double> P_, dP_;  // [m * nq + q]
  std::vector<double> S_;      // S[m][n] = integral of P_n P_m' over [-1,1]
};

}  // namespace einldg
