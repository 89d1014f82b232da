#include "pathspace/cylinder.hpp"

#include <cmath>
#include <stdexcept>
#include <utility>

namespace pathspace {

std::vector<int> CylinderPointwise::grid_indices(int n_steps) const {
  std::vector<int> idx;
  idx.reserve(time_fracs.size());
  int prev = 0;
  for (double frac : time_fracs) {
    if (!(frac > 0.0 && frac <= 1.0))
      throw std::invalid_argument("evaluation times must lie in (0, 1] of T");
    int k = static_cast<int>(std::lround(frac * n_steps));
    if (k < 1) k = 1;
    if (k > n_steps) k = n_steps;
    if (k <= prev)
      throw std::invalid_argument("evaluation times collide on this grid");
    idx.push_back(k);
    prev = k;
  }
  return idx;
}

double eval_pointwise(const PathSample& path, const CylinderPointwise& F,
                      const std::vector<int>& idx) {
  std::vector<Vec> pts;
  pts.reserve(idx.size());
  for (int k : idx) pts.push_back(path.points[k]);
  return F.value(pts);
}

CylinderPointwise pointwise_constant(double c, std::vector<double> time_fracs) {
  CylinderPointwise F;
  F.name = "constant";
  F.time_fracs = std::move(time_fracs);
  F.lipschitz = 0.0;
  F.value = [c](const std::vector<Vec>&) { return c; };
  F.gradient = [](const std::vector<Vec>& pts, std::vector<Vec>& out) {
    out.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i)
      out[i] = Vec::Zero(pts[i].size());
  };
  return F;
}

CylinderPointwise pointwise_coord_sum(int coord,
                                      std::vector<double> time_fracs) {
  CylinderPointwise F;
  F.name = "coord_sum";
  F.time_fracs = std::move(time_fracs);
  F.lipschitz = 1.0;
  F.value = [coord](const std::vector<Vec>& pts) {
    double s = 0;
    for (const Vec& p : pts) s += p[coord];
    return s;
  };
  F.gradient = [coord](const std::vector<Vec>& pts, std::vector<Vec>& out) {
    out.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      out[i] = Vec::Zero(pts[i].size());
      out[i][coord] = 1.0;
    }
  };
  return F;
}

CylinderPointwise pointwise_tanh_of_sum(int coord, double scale,
                                        std::vector<double> time_fracs) {
  CylinderPointwise F;
  F.name = "tanh_of_sum";
  F.time_fracs = std::move(time_fracs);
  F.lipschitz = std::abs(scale);
  F.value = [coord, scale](const std::vector<Vec>& pts) {
    double s = 0;
    for (const Vec& p : pts) s += p[coord];
    return std::tanh(scale * s);
  };
  F.gradient = [coord, scale](const std::vector<Vec>& pts,
                              std::vector<Vec>& out) {
    double s = 0;
    for (const Vec& p : pts) s += p[coord];
    double th = std::tanh(scale * s);
    double d = scale * (1.0 - th * th);
    out.resize(pts.size());
    for (size_t i = 0; i < pts.size(); ++i) {
      out[i] = Vec::Zero(pts[i].size());
      out[i][coord] = d;
    }
  };
  return F;
}

IntegralComponent integral_g_one() {
  IntegralComponent c;
  c.name = "one";
  c.g = [](double, const Vec&) { return 1.0; };
  c.grad_g = [](double, const Vec& x, Vec& out) { out = Vec::Zero(x.size()); };
  return c;
}

IntegralComponent integral_g_coord(int coord) {
  IntegralComponent c;
  c.name = "coord";
  c.g = [coord](double, const Vec& x) { return x[coord]; };
  c.grad_g = [coord](double, const Vec& x, Vec& out) {
    out = Vec::Zero(x.size());
    out[coord] = 1.0;
  };
  return c;
}

IntegralComponent integral_g_coord_times_time(int coord) {
  IntegralComponent c;
  c.name = "coord_times_time";
  c.g = [coord](double s, const Vec& x) { return s * x[coord]; };
  c.grad_g = [coord](double s, const Vec& x, Vec& out) {
    out = Vec::Zero(x.size());
    out[coord] = s;
  };
  return c;
}

CylinderIntegral integral_identity(IntegralComponent g) {
  CylinderIntegral F;
  F.name = "identity(" + g.name + ")";
  F.comps.push_back(std::move(g));
  F.f = [](const Vec& y) { return y[0]; };
  F.df = [](const Vec&, Vec& out) {
    out = Vec::Ones(1);
  };
  return F;
}

CylinderIntegral integral_tanh(double scale, IntegralComponent g) {
  CylinderIntegral F;
  F.name = "tanh(" + g.name + ")";
  F.comps.push_back(std::move(g));
  F.f = [scale](const Vec& y) { return std::tanh(scale * y[0]); };
  F.df = [scale](const Vec& y, Vec& out) {
    double th = std::tanh(scale * y[0]);
    out = Vec::Constant(1, scale * (1.0 - th * th));
  };
  return F;
}

CylinderIntegral integral_sum(std::vector<IntegralComponent> gs) {
  if (gs.empty()) throw std::invalid_argument("integral_sum needs m >= 1");
  CylinderIntegral F;
  F.name = "sum";
  F.comps = std::move(gs);
  F.f = [](const Vec& y) { return y.sum(); };
  F.df = [](const Vec& y, Vec& out) { out = Vec::Ones(y.size()); };
  return F;
}

}  // namespace pathspace
