#pragma once

#include <functional>
#include <string>
#include <vector>

#include "pathspace/sampler.hpp"

namespace pathspace {

// F(path) = f(x(t_1), ..., x(t_N)). Evaluation times are fractions of T in
// (0, 1] and snap to the nearest grid index; value and gradient take the
// points at those indices in chart coordinates.
struct CylinderPointwise {
  std::string name;
  std::vector<double> time_fracs;
  double lipschitz = 1.0;
  std::function<double(const std::vector<Vec>&)> value;
  // grads[i] = chart partial derivatives of f in its i-th argument
  std::function<void(const std::vector<Vec>&, std::vector<Vec>&)> gradient;

  int n_times() const { return static_cast<int>(time_fracs.size()); }
  std::vector<int> grid_indices(int n_steps) const;
};

double eval_pointwise(const PathSample& path, const CylinderPointwise& F,
                      const std::vector<int>& idx);

// registered pointwise functions
CylinderPointwise pointwise_constant(double c,
                                     std::vector<double> time_fracs = {1.0});
// sum over evaluation times of one chart coordinate
CylinderPointwise pointwise_coord_sum(int coord, std::vector<double> time_fracs);
// tanh(scale * coordinate sum); bounded with bounded gradients
CylinderPointwise pointwise_tanh_of_sum(int coord, double scale,
                                        std::vector<double> time_fracs);

// F(path) = f(I_1, ..., I_m) with I_j = int_0^T g_j(s, x_s) ds, left-endpoint
// Riemann sums on the path grid.
struct IntegralComponent {
  std::string name;
  std::function<double(double, const Vec&)> g;
  std::function<void(double, const Vec&, Vec&)> grad_g;  // chart partials
};

struct CylinderIntegral {
  std::string name;
  std::vector<IntegralComponent> comps;
  std::function<double(const Vec&)> f;      // argument has size m
  std::function<void(const Vec&, Vec&)> df;

  int m() const { return static_cast<int>(comps.size()); }
};

IntegralComponent integral_g_one();
IntegralComponent integral_g_coord(int coord);
IntegralComponent integral_g_coord_times_time(int coord);

// m = 1 outer functions
CylinderIntegral integral_identity(IntegralComponent g);
CylinderIntegral integral_tanh(double scale, IntegralComponent g);
// any m, f = sum of the integrals
CylinderIntegral integral_sum(std::vector<IntegralComponent> gs);

}  // namespace pathspace
