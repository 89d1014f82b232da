// Wall-clock comparison of the serial and OpenMP ensemble drivers plus a
// bit-identity check of their per-path outputs.
//
//   bench_paths [n_paths] [n_steps]

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "pathspace/sampler.hpp"

using namespace pathspace;

namespace {

double run_driver(bool parallel, uint64_t n_paths, const SamplerConfig& cfg,
                  const ManifoldModel& m, const Vec& x0,
                  std::vector<double>& sink) {
  const auto t0 = std::chrono::steady_clock::now();
  const PathConsumer consume = [&](uint64_t i, const PathSample& path) {
    double acc = 0;
    for (int k = 0; k <= path.n_steps; ++k)
      acc += path.points[size_t(k)][0] + path.l[size_t(k)];
    sink[i] = acc;
  };
  if (parallel)
    for_each_path_parallel(m, x0, cfg, n_paths, consume);
  else
    for_each_path_serial(m, x0, cfg, n_paths, consume);
  const auto t1 = std::chrono::steady_clock::now();
  return std::chrono::duration<double>(t1 - t0).count();
}

}  // namespace

int main(int argc, char** argv) {
  const uint64_t n_paths = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 20000;
  const int n_steps = argc > 2 ? std::atoi(argv[2]) : 512;

  const ManifoldModel m = make_ball(2, 1.0);
  const Vec x0 = Vec::Zero(2);
  const SamplerConfig cfg{PathGrid{1.0, n_steps}, 42};

  std::vector<double> serial_out(n_paths), parallel_out(n_paths);
  const double t_serial = run_driver(false, n_paths, cfg, m, x0, serial_out);
  const double t_parallel = run_driver(true, n_paths, cfg, m, x0, parallel_out);

  uint64_t mismatches = 0;
  for (uint64_t i = 0; i < n_paths; ++i)
    if (serial_out[i] != parallel_out[i]) ++mismatches;

  std::printf("paths=%llu steps=%d\n", (unsigned long long)n_paths, n_steps);
  std::printf("serial:   %.3f s\n", t_serial);
  std::printf("parallel: %.3f s  (speedup %.2fx)\n", t_parallel,
              t_serial / t_parallel);
  std::printf("bit-identical per-path output: %s\n",
              mismatches == 0 ? "yes" : "NO");
  return mismatches == 0 ? 0 : 1;
}
