#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "pathspace/geometry.hpp"

namespace pathspace {

struct PathGrid {
  double T = 1.0;
  int n_steps = 1;
  double dt() const { return T / n_steps; }
  double time(int k) const { return k * dt(); }
};

struct SamplerConfig {
  PathGrid grid;
  uint64_t base_seed = 0;
};

// One discrete path of the reflecting frame-bundle scheme. Arrays have
// n_steps+1 entries; increment arrays use index k for the step from t_{k-1}
// to t_k, with entry 0 fixed at zero.
struct PathSample {
  std::vector<Vec> points;
  std::vector<Mat> frames;
  std::vector<Vec> dw;          // frame-coordinate Brownian increments
  std::vector<double> dl;       // boundary local time increments, >= 0
  std::vector<double> l;        // cumulative local time, l[0] = 0
  std::vector<uint8_t> on_bd;   // grid point lies on the boundary
  int n_steps = 0;
  double dt = 0;

  void resize(int n, int chart_dim, int dim);
};

// Euler scheme: tentative geodesic move by dw + frame_coords(Z) dt, then the
// boundary correction (coordinate push for half-spaces, radial projection for
// the ball) with dl equal to the pushed distance. A corrected point lands
// exactly on the boundary.
void simulate_path_into(const ManifoldModel& m, const Vec& x0,
                        const SamplerConfig& cfg, uint64_t path_index,
                        PathSample& out);
PathSample simulate_path(const ManifoldModel& m, const Vec& x0,
                         const SamplerConfig& cfg, uint64_t path_index);

// Re-run the deterministic path map with externally supplied frame-coordinate
// increments (row k1 of dws drives step k). Used by finite-difference checks
// and grid-refinement studies.
void rebuild_path_from_increments(const ManifoldModel& m, const Vec& x0,
                                  const PathGrid& grid,
                                  const std::vector<Vec>& dw, PathSample& out);

using PathConsumer = std::function<void(uint64_t path_index, const PathSample&)>;

// Ensemble drivers. The parallel driver distributes paths over OpenMP threads;
// path content depends only on (seed, path_index), so consumers that write to
// per-path slots see results identical to the serial driver. The serial driver
// is the reference the parallel one is tested against.
void for_each_path_serial(const ManifoldModel& m, const Vec& x0,
                          const SamplerConfig& cfg, uint64_t n_paths,
                          const PathConsumer& consume);
void for_each_path_parallel(const ManifoldModel& m, const Vec& x0,
                            const SamplerConfig& cfg, uint64_t n_paths,
                            const PathConsumer& consume);

}  // namespace pathspace
