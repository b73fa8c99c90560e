#pragma once

#include <functional>
#include <iosfwd>
#include <memory>
#include <vector>

namespace einldg {

// Legendre polynomial P_m on [-1,1] (unnormalized, P_0 = 1) and its derivative.
double legendre_eval(int m, double xi);
double legendre_deriv(int m, double xi);

struct QuadratureRule {
  std::vector<double> nodes;    // in (-1,1), increasing
  std::vector<double> weights;  // positive, sum to 2
  int size() const { return static_cast<int>(nodes.size()); }
};

// Gauss-Legendre rule with 1..20 points (exact for degree <= 2n-1).
QuadratureRule gauss_quadrature(int n_points);

// Time-dependent Dirichlet boundary values.
struct DirichletData {
  std::function<double(double)> left;
  std::function<double(double)> right;
};

class Mesh1D {
 public:
  static std::shared_ptr<const Mesh1D> uniform_periodic(double left, double right, int cells);
  static std::shared_ptr<const Mesh1D> uniform_dirichlet(double left, double right, int cells,
                                                         DirichletData data);
  static std::shared_ptr<const Mesh1D> from_edges(std::vector<double> edges, bool periodic,
                                                  DirichletData data = {});

  int cells() const { return static_cast<int>(edges_.size()) - 1; }
  double left() const { return edges_.front(); }
  double right() const { return edges_.back(); }
  double edge(int i) const { return edges_[i]; }
  double cell_width(int j) const { return edges_[j + 1] - edges_[j]; }
  double cell_center(int j) const { return 0.5 * (edges_[j] + edges_[j + 1]); }
  double max_cell_width() const;
  bool periodic() const { return periodic_; }
  const DirichletData& dirichlet() const;

  // Affine map between the reference element [-1,1] and cell j.
  double to_physical(int j, double xi) const { return cell_center(j) + 0.5 * cell_width(j) * xi; }
  // Cell index containing x (clamped to the domain).
  int locate(double x) const;

 private:
  Mesh1D(std::vector<double> edges, bool periodic, DirichletData data);
  std::vector<double> edges_;
  bool periodic_;
  DirichletData dirichlet_;
};

using MeshPtr = std::shared_ptr<const Mesh1D>;

// Piecewise polynomial in Legendre modal coordinates: coefficient m of cell j
// multiplies P_m mapped to the cell, so coeff(j,0) is the cell average.
class DGFunction {
 public:
  DGFunction() = default;
  DGFunction(MeshPtr mesh, int degree);

  int degree() const { return degree_; }
  int cells() const { return mesh_ ? mesh_->cells() : 0; }
  int block() const { return degree_ + 1; }
  const MeshPtr& mesh() const { return mesh_; }

  double coeff(int j, int m) const { return coeffs_[j * block() + m]; }
  double& coeff(int j, int m) { return coeffs_[j * block() + m]; }
  const std::vector<double>& data() const { return coeffs_; }
  std::vector<double>& data() { return coeffs_; }

  // Value inside cell j at reference coordinate xi.
  double eval(int j, double xi) const;
  // Value at physical x (one-sided at cell edges: the owning cell decides).
  double eval_at(double x) const;
  double cell_average(int j) const { return coeff(j, 0); }

  DGFunction& operator+=(const DGFunction& o);
  DGFunction& operator-=(const DGFunction& o);
  DGFunction& operator*=(double s);
  // this += s * o
  void axpy(double s, const DGFunction& o);
  void fill(double v);

  bool finite() const;

 private:
  MeshPtr mesh_;
  int degree_ = 0;
  std::vector<double> coeffs_;
};

DGFunction operator+(DGFunction a, const DGFunction& b);
DGFunction operator-(DGFunction a, const DGFunction& b);
DGFunction operator*(double s, DGFunction a);

enum class Side { Minus, Plus };

// One-sided limit at interface i in [0, cells()]; for periodic meshes the two
// boundary interfaces are identified. jump = Plus - Minus.
double trace(const DGFunction& u, int interface, Side side);

DGFunction l2_project(const std::function<double(double)>& f, const MeshPtr& mesh, int degree);

// Gauss-Radau projection: moments up to degree-1 plus exact collocation at the
// right (Minus) or left (Plus) endpoint of every cell.
DGFunction gauss_radau_project(const std::function<double(double)>& f, const MeshPtr& mesh,
                               int degree, Side side);

double l2_norm(const DGFunction& u);
double l2_error(const DGFunction& u, const std::function<double(double)>& exact);
double l2_error(const DGFunction& u, const std::function<double(double, double)>& exact, double t);
double l1_diff(const DGFunction& u, const DGFunction& v);
// Integral of u over the domain (sum of h_j * cell averages).
double total_mass(const DGFunction& u);

// Text lines "x,u(x)" at samples_per_cell uniform points in every cell.
void write_snapshot(std::ostream& os, const DGFunction& u, int samples_per_cell);

}  // namespace einldg
