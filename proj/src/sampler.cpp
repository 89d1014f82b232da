#include "pathspace/sampler.hpp"

#include <cmath>
#include <stdexcept>

#include "pathspace/rng.hpp"

namespace pathspace {

void PathSample::resize(int n, int chart_dim, int dim) {
  n_steps = n;
  if (int(points.size()) == n + 1 && points[0].size() == chart_dim &&
      frames[0].cols() == dim) {
    // workspace reuse across paths; every slot k >= 1 is rewritten by the
    // filler, slot 0 of the increment arrays stays pinned at zero
    dw[0].setZero();
    dl[0] = 0.0;
    l[0] = 0.0;
    return;
  }
  points.assign(n + 1, Vec::Zero(chart_dim));
  frames.assign(n + 1, Mat::Zero(chart_dim, dim));
  dw.assign(n + 1, Vec::Zero(dim));
  dl.assign(n + 1, 0.0);
  l.assign(n + 1, 0.0);
  on_bd.assign(n + 1, 0);
}

namespace {

// boundary correction of a tentative point; returns the pushed distance
double apply_boundary(const ManifoldModel& m, Vec& y) {
  switch (m.kind) {
    case ModelKind::HalfLine:
    case ModelKind::HalfSpace: {
      double deficit = -y[m.dim - 1];
      if (deficit > 0) {
        y[m.dim - 1] = 0.0;
        return deficit;
      }
      return 0.0;
    }
    case ModelKind::Ball: {
      double r = y.norm();
      if (r > m.radius) {
        y *= m.radius / r;
        return r - m.radius;
      }
      return 0.0;
    }
    default:
      return 0.0;
  }
}

void run_steps(const ManifoldModel& m, const Vec& x0, const PathGrid& grid,
               PathSample& out,
               const std::function<void(int, Vec&)>& fill_dw) {
  const int n = grid.n_steps, d = m.dim;
  if (!in_domain(m, x0)) throw std::invalid_argument("start point off the domain");
  out.resize(n, m.chart_dim(), d);
  out.dt = grid.dt();
  out.points[0] = x0;
  out.frames[0] = initial_frame(m, x0);
  out.on_bd[0] = on_boundary(m, x0) ? 1 : 0;

  const bool has_drift = m.drift.size() > 0;
  Vec v(d);
  for (int k = 0; k < n; ++k) {
    fill_dw(k, out.dw[k + 1]);
    v = out.dw[k + 1];
    if (has_drift)
      v += grid.dt() *
           frame_coords(m, out.points[k], out.frames[k], m.drift);
    GeodesicResult g = geodesic_step(m, out.points[k], out.frames[k], v);
    double pushed = apply_boundary(m, g.point);
    out.points[k + 1] = g.point;
    out.frames[k + 1] = g.frame;  // flat transport is unchanged by the push
    out.dl[k + 1] = pushed;
    out.l[k + 1] = out.l[k] + pushed;
    out.on_bd[k + 1] = on_boundary(m, g.point) ? 1 : 0;
  }
}

}  // namespace

void simulate_path_into(const ManifoldModel& m, const Vec& x0,
                        const SamplerConfig& cfg, uint64_t path_index,
                        PathSample& out) {
  PathRng rng(cfg.base_seed, path_index);
  const double sdt = std::sqrt(cfg.grid.dt());
  run_steps(m, x0, cfg.grid, out, [&](int k, Vec& dw) {
    rng.normals(uint32_t(k), int(dw.size()), dw.data());
    dw *= sdt;
  });
}

PathSample simulate_path(const ManifoldModel& m, const Vec& x0,
                         const SamplerConfig& cfg, uint64_t path_index) {
  PathSample out;
  simulate_path_into(m, x0, cfg, path_index, out);
  return out;
}

void rebuild_path_from_increments(const ManifoldModel& m, const Vec& x0,
                                  const PathGrid& grid,
                                  const std::vector<Vec>& dw, PathSample& out) {
  if (int(dw.size()) != grid.n_steps + 1)
    throw std::invalid_argument("increment array must have n_steps+1 rows");
  run_steps(m, x0, grid, out, [&](int k, Vec& slot) { slot = dw[k + 1]; });
}

void for_each_path_serial(const ManifoldModel& m, const Vec& x0,
                          const SamplerConfig& cfg, uint64_t n_paths,
                          const PathConsumer& consume) {
  PathSample ws;
  for (uint64_t i = 0; i < n_paths; ++i) {
    simulate_path_into(m, x0, cfg, i, ws);
    consume(i, ws);
  }
}

void for_each_path_parallel(const ManifoldModel& m, const Vec& x0,
                            const SamplerConfig& cfg, uint64_t n_paths,
                            const PathConsumer& consume) {
#ifdef PATHSPACE_HAVE_OPENMP
  const int64_t n = int64_t(n_paths);
#pragma omp parallel
  {
    PathSample ws;
#pragma omp for schedule(static)
    for (int64_t i = 0; i < n; ++i) {
      simulate_path_into(m, x0, cfg, uint64_t(i), ws);
      consume(uint64_t(i), ws);
    }
  }
#else
  for_each_path_serial(m, x0, cfg, n_paths, consume);
#endif
}

}  // namespace pathspace
