#include "einldg/fem.hpp"

#include <algorithm>
#include <cmath>
#include <ostream>
#include <stdexcept>

namespace einldg {

double legendre_eval(int m, double xi) {
  if (m < 0) throw std::invalid_argument("legendre_eval: negative degree");
  double pm1 = 0.0, p = 1.0;
  for (int n = 0; n < m; ++n) {
    const double pm2 = pm1;
    pm1 = p;
    p = ((2 * n + 1) * xi * pm1 - n * pm2) / (n + 1);
  }
  return p;
}

double legendre_deriv(int m, double xi) {
  if (m < 0) throw std::invalid_argument("legendre_deriv: negative degree");
  if (m == 0) return 0.0;
  if (std::abs(1.0 - xi * xi) < 1e-14) {
    const double sgn = (xi > 0 || m % 2 == 1) ? 1.0 : -1.0;
    return sgn * 0.5 * m * (m + 1);
  }
  // (1-xi^2) P_m' = m (P_{m-1} - xi P_m)
  return m * (legendre_eval(m - 1, xi) - xi * legendre_eval(m, xi)) / (1.0 - xi * xi);
}

QuadratureRule gauss_quadrature(int n_points) {
  if (n_points < 1 || n_points > 20)
    throw std::invalid_argument("gauss_quadrature: point count must be in [1,20]");
  QuadratureRule rule;
  rule.nodes.assign(n_points, 0.0);
  rule.weights.assign(n_points, 0.0);
  const int half = (n_points + 1) / 2;
  for (int i = 0; i < half; ++i) {
    // Newton iteration on P_n from the Chebyshev-like initial guess.
    double x = -std::cos(M_PI * (i + 0.75) / (n_points + 0.5));
    for (int it = 0; it < 100; ++it) {
      const double f = legendre_eval(n_points, x);
      const double df = legendre_deriv(n_points, x);
      const double dx = f / df;
      x -= dx;
      if (std::abs(dx) < 1e-16) break;
    }
    const double dp = legendre_deriv(n_points, x);
    const double w = 2.0 / ((1.0 - x * x) * dp * dp);
    rule.nodes[i] = x;
    rule.weights[i] = w;
    rule.nodes[n_points - 1 - i] = -x;
    rule.weights[n_points - 1 - i] = w;
  }
  if (n_points % 2 == 1) rule.nodes[n_points / 2] = 0.0;
  return rule;
}

Mesh1D::Mesh1D(std::vector<double> edges, bool periodic, DirichletData data)
    : edges_(std::move(edges)), periodic_(periodic), dirichlet_(std::move(data)) {}

std::shared_ptr<const Mesh1D> Mesh1D::from_edges(std::vector<double> edges, bool periodic,
                                                 DirichletData data) {
  if (edges.size() < 2) throw std::invalid_argument("Mesh1D: need at least one cell");
  for (size_t i = 1; i < edges.size(); ++i)
    if (!(edges[i] > edges[i - 1]))
      throw std::invalid_argument("Mesh1D: cell edges must be strictly increasing");
  if (!periodic && (!data.left || !data.right))
    throw std::invalid_argument("Mesh1D: Dirichlet mesh needs boundary value functions");
  return std::shared_ptr<const Mesh1D>(new Mesh1D(std::move(edges), periodic, std::move(data)));
}

std::shared_ptr<const Mesh1D> Mesh1D::uniform_periodic(double left, double right, int cells) {
  if (cells < 1 || !(right > left)) throw std::invalid_argument("Mesh1D: bad uniform mesh");
  std::vector<double> edges(cells + 1);
  for (int i = 0; i <= cells; ++i) edges[i] = left + (right - left) * i / cells;
  edges[cells] = right;
  return from_edges(std::move(edges), true);
}

std::shared_ptr<const Mesh1D> Mesh1D::uniform_dirichlet(double left, double right, int cells,
                                                        DirichletData data) {
  if (cells < 1 || !(right > left)) throw std::invalid_argument("Mesh1D: bad uniform mesh");
  std::vector<double> edges(cells + 1);
  for (int i = 0; i <= cells; ++i) edges[i] = left + (right - left) * i / cells;
  edges[cells] = right;
  return from_edges(std::move(edges), false, std::move(data));
}

double Mesh1D::max_cell_width() const {
  double h = 0.0;
  for (int j = 0; j < cells(); ++j) h = std::max(h, cell_width(j));
  return h;
}

const DirichletData& Mesh1D::dirichlet() const {
  if (periodic_) throw std::logic_error("Mesh1D: periodic mesh has no Dirichlet data");
  return dirichlet_;
}

int Mesh1D::locate(double x) const {
  const auto it = std::upper_bound(edges_.begin(), edges_.end(), x);
  int j = static_cast<int>(it - edges_.begin()) - 1;
  return std::clamp(j, 0, cells() - 1);
}

DGFunction::DGFunction(MeshPtr mesh, int degree) : mesh_(std::move(mesh)), degree_(degree) {
  if (degree_ < 0) throw std::invalid_argument("DGFunction: degree must be >= 0");
  coeffs_.assign(static_cast<size_t>(mesh_->cells()) * (degree_ + 1), 0.0);
}

double DGFunction::eval(int j, double xi) const {
  const int B = block();
  const double* c = coeffs_.data() + static_cast<size_t>(j) * B;
  double pm1 = 0.0, p = 1.0, v = c[0];
  for (int m = 1; m < B; ++m) {
    const double pm2 = pm1;
    pm1 = p;
    p = ((2 * m - 1) * xi * pm1 - (m - 1) * pm2) / m;
    v += c[m] * p;
  }
  return v;
}

double DGFunction::eval_at(double x) const {
  const int j = mesh_->locate(x);
  const double xi = (x - mesh_->cell_center(j)) / (0.5 * mesh_->cell_width(j));
  return eval(j, std::clamp(xi, -1.0, 1.0));
}

static void check_same_layout(const DGFunction& a, const DGFunction& b) {
  if (a.mesh() != b.mesh() || a.degree() != b.degree())
    throw std::invalid_argument("DGFunction: mesh/degree mismatch");
}

DGFunction& DGFunction::operator+=(const DGFunction& o) {
  check_same_layout(*this, o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += o.coeffs_[i];
  return *this;
}

DGFunction& DGFunction::operator-=(const DGFunction& o) {
  check_same_layout(*this, o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] -= o.coeffs_[i];
  return *this;
}

DGFunction& DGFunction::operator*=(double s) {
  for (double& c : coeffs_) c *= s;
  return *this;
}

void DGFunction::axpy(double s, const DGFunction& o) {
  check_same_layout(*this, o);
  for (size_t i = 0; i < coeffs_.size(); ++i) coeffs_[i] += s * o.coeffs_[i];
}

void DGFunction::fill(double v) { std::fill(coeffs_.begin(), coeffs_.end(), v); }

bool DGFunction::finite() const {
  for (double c : coeffs_)
    if (!std::isfinite(c)) return false;
  return true;
}

DGFunction operator+(DGFunction a, const DGFunction& b) { return a += b; }
DGFunction operator-(DGFunction a, const DGFunction& b) { return a -= b; }
DGFunction operator*(double s, DGFunction a) { return a *= s; }

double trace(const DGFunction& u, int interface, Side side) {
  const int N = u.cells();
  if (interface < 0 || interface > N) throw std::out_of_range("trace: bad interface index");
  const bool periodic = u.mesh()->periodic();
  if (periodic && interface == N) interface = 0;
  if (side == Side::Minus) {
    if (interface == 0) {
      if (!periodic) throw std::logic_error("trace: no interior value left of the domain");
      return u.eval(N - 1, 1.0);
    }
    return u.eval(interface - 1, 1.0);
  }
  if (interface == N) {
    if (!periodic) throw std::logic_error("trace: no interior value right of the domain");
    return u.eval(0, -1.0);
  }
  return u.eval(interface, -1.0);
}

namespace {
const QuadratureRule& projection_rule() {
  static const QuadratureRule rule = gauss_quadrature(10);
  return rule;
}
}  // namespace

DGFunction l2_project(const std::function<double(double)>& f, const MeshPtr& mesh, int degree) {
  DGFunction g(mesh, degree);
  const auto& rule = projection_rule();
  std::vector<double> fv(rule.size());
  for (int j = 0; j < mesh->cells(); ++j) {
    for (int q = 0; q < rule.size(); ++q) fv[q] = f(mesh->to_physical(j, rule.nodes[q]));
    for (int m = 0; m <= degree; ++m) {
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * fv[q] * legendre_eval(m, rule.nodes[q]);
      g.coeff(j, m) = 0.5 * (2 * m + 1) * s;
    }
  }
  return g;
}

DGFunction gauss_radau_project(const std::function<double(double)>& f, const MeshPtr& mesh,
                               int degree, Side side) {
  DGFunction g(mesh, degree);
  const auto& rule = projection_rule();
  std::vector<double> fv(rule.size());
  for (int j = 0; j < mesh->cells(); ++j) {
    for (int q = 0; q < rule.size(); ++q) fv[q] = f(mesh->to_physical(j, rule.nodes[q]));
    for (int m = 0; m < degree; ++m) {
      double s = 0.0;
      for (int q = 0; q < rule.size(); ++q)
        s += rule.weights[q] * fv[q] * legendre_eval(m, rule.nodes[q]);
      g.coeff(j, m) = 0.5 * (2 * m + 1) * s;
    }
    // Collocation at the designated endpoint fixes the top coefficient.
    if (side == Side::Minus) {
      double partial = 0.0;
      for (int m = 0; m < degree; ++m) partial += g.coeff(j, m);
      g.coeff(j, degree) = f(mesh->edge(j + 1)) - partial;
    } else {
      double partial = 0.0;
      for (int m = 0; m < degree; ++m)
        partial += (m % 2 == 0 ? 1.0 : -1.0) * g.coeff(j, m);
      const double target = f(mesh->edge(j));
      g.coeff(j, degree) = (degree % 2 == 0 ? 1.0 : -1.0) * (target - partial);
    }
  }
  return g;
}

double l2_norm(const DGFunction& u) {
  // The modal mass matrix is diagonal: ||u||^2 = sum_j sum_m c_jm^2 h_j/(2m+1).
  double s = 0.0;
  for (int j = 0; j < u.cells(); ++j) {
    const double h = u.mesh()->cell_width(j);
    for (int m = 0; m <= u.degree(); ++m) {
      const double c = u.coeff(j, m);
      s += c * c * h / (2 * m + 1);
    }
  }
  return std::sqrt(s);
}

double l2_error(const DGFunction& u, const std::function<double(double)>& exact) {
  const auto& rule = projection_rule();
  double s = 0.0;
  for (int j = 0; j < u.cells(); ++j) {
    const double h = u.mesh()->cell_width(j);
    for (int q = 0; q < rule.size(); ++q) {
      const double x = u.mesh()->to_physical(j, rule.nodes[q]);
      const double d = u.eval(j, rule.nodes[q]) - exact(x);
      s += 0.5 * h * rule.weights[q] * d * d;
    }
  }
  return std::sqrt(s);
}

double l2_error(const DGFunction& u, const std::function<double(double, double)>& exact,
                double t) {
  return l2_error(u, [&](double x) { return exact(x, t); });
}

double l1_diff(const DGFunction& u, const DGFunction& v) {
  check_same_layout(u, v);
  const auto& rule = projection_rule();
  double s = 0.0;
  for (int j = 0; j < u.cells(); ++j) {
    const double h = u.mesh()->cell_width(j);
    for (int q = 0; q < rule.size(); ++q)
      s += 0.5 * h * rule.weights[q] *
           std::abs(u.eval(j, rule.nodes[q]) - v.eval(j, rule.nodes[q]));
  }
  return s;
}

double total_mass(const DGFunction& u) {
  double s = 0.0;
  for (int j = 0; j < u.cells(); ++j) s += u.mesh()->cell_width(j) * u.coeff(j, 0);
  return s;
}

void write_snapshot(std::ostream& os, const DGFunction& u, int samples_per_cell) {
  if (samples_per_cell < 1) throw std::invalid_argument("write_snapshot: need >= 1 sample");
  os << "x,u\n";
  char buf[64];
  for (int j = 0; j < u.cells(); ++j) {
    for (int s = 0; s < samples_per_cell; ++s) {
      const double xi = samples_per_cell == 1 ? 0.0 : -1.0 + 2.0 * s / (samples_per_cell - 1);
      const double x = u.mesh()->to_physical(j, xi);
      std::snprintf(buf, sizeof(buf), "%.12g,%.12g\n", x, u.eval(j, xi));
      os << buf;
    }
  }
}

}  // namespace einldg
