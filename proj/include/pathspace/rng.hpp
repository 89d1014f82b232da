#pragma once

#include <array>
#include <cstdint>

namespace pathspace {

// Philox4x32-10 counter-based generator (Salmon et al. style). Stateless:
// every 128-bit block is a pure function of (key, counter), so any draw in
// an ensemble can be addressed directly and results do not depend on
// scheduling or thread count.
std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key);

// Per-path stream of standard normals and uniforms. Draws are addressed by
// (step, lane); the same (seed, path, step, lane) always yields the same
// value. Limits: step < 2^32, lane < 2^33.
class PathRng {
 public:
  PathRng(uint64_t seed, uint64_t path_index);

  // lane-th N(0,1) variate of the given step
  double normal(uint32_t step, uint32_t lane);
  void normals(uint32_t step, int n, double* out);
  // uniform in (0,1)
  double uniform(uint32_t step, uint32_t lane);

 private:
  std::array<uint32_t, 4> block(uint32_t step, uint32_t block_index);
  std::array<uint32_t, 2> key_;
  std::array<uint32_t, 2> path_;
  // one-block cache: Box-Muller yields pairs, callers consume lanes in order
  uint64_t cached_id_ = ~uint64_t(0);
  double cached_pair_[2] = {0, 0};
};

// 53-bit uniform in (0,1) from two 32-bit words
double uniform_from_bits(uint32_t hi, uint32_t lo);

}  // namespace pathspace
