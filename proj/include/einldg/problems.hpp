#pragma once

#include <functional>
#include <string>

#include "einldg/fem.hpp"

namespace einldg {

// Diffusion coefficient in one of the three shapes the solver handles:
// a constant, a(x), or a(u) with b = sqrt(a) and B(u) = integral of b.
struct Diffusion {
  enum class Kind { Constant, OfX, OfU };
  Kind kind = Kind::Constant;
  double value = 0.0;
  std::function<double(double)> a_of_x;
  std::function<double(double)> a_of_u, b_of_u, B_of_u;

  static Diffusion constant(double a);
  static Diffusion of_x(std::function<double(double)> a);
  static Diffusion of_u(std::function<double(double)> a, std::function<double(double)> b,
                        std::function<double(double)> B);
};

struct ProblemSpec {
  std::string name;
  double left = 0.0, right = 1.0;
  Diffusion diffusion;
  std::function<double(double, double)> source;  // f(x,t), optional
  std::function<double(double, double)> exact;   // u(x,t), optional
  std::function<double(double)> initial;
  bool periodic = true;
  DirichletData dirichlet;  // used when !periodic
  double final_time = 1.0;

  bool limiter = false;
  double limiter_floor = 0.0;
  enum class Init { GaussRadauMinus, L2 } init = Init::GaussRadauMinus;

  // Defaults the paper-style experiments use; the runner may override.
  int default_degree = 1;
  int default_order = 2;
  double default_dt_coef = 1.0;  // dt = coef * h

  MeshPtr make_mesh(int cells) const;
  DGFunction project_initial(const MeshPtr& mesh, int degree) const;

  // Finite-difference consistency check of (exact, source): the residual
  // u_t - (a u_x)_x - f must vanish at sampled points. Throws on failure.
  void self_check(int samples = 1000, unsigned seed = 12345) const;
};

enum class Example1Case { ConstHalf, Quadratic, SineSq };
// u = sin(x - t) on [-pi,pi], periodic, T = 10, with the matching source.
ProblemSpec example1(Example1Case c);
// a(x) = 1 + b sin^2 x with the same exact solution.
ProblemSpec example2(double b);

struct BarenblattParams {
  double m = 2.0;
  double s() const { return 1.0 / (m + 1.0); }
};
// Closed-form source solution of u_t = (u^m)_xx; requires t > 0.
double barenblatt(const BarenblattParams& params, double x, double t);

enum class PmeTest { Barenblatt, TwoBoxEqual, TwoBoxUnequal, WaitingTime };
// Porous-medium scenarios: a(u) = m u^{m-1}, positivity limiter enabled,
// homogeneous Dirichlet boundaries. m is only free for the Barenblatt test.
ProblemSpec pme_spec(PmeTest test, double m = 2.0);

}  // namespace einldg
