#include "pathspace/rng.hpp"

#include <cmath>

namespace pathspace {

namespace {
constexpr uint32_t kWeylA = 0x9E3779B9u;
constexpr uint32_t kWeylB = 0xBB67AE85u;
constexpr uint32_t kMulA = 0xD2511F53u;
constexpr uint32_t kMulB = 0xCD9E8D57u;

inline void round_once(std::array<uint32_t, 4>& c, std::array<uint32_t, 2>& k) {
  uint64_t p0 = uint64_t(kMulA) * c[0];
  uint64_t p1 = uint64_t(kMulB) * c[2];
  uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
  uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
  c = {hi1 ^ c[1] ^ k[0], lo1, hi0 ^ c[3] ^ k[1], lo0};
  k[0] += kWeylA;
  k[1] += kWeylB;
}
}  // namespace

std::array<uint32_t, 4> philox4x32(const std::array<uint32_t, 4>& counter,
                                   const std::array<uint32_t, 2>& key) {
  std::array<uint32_t, 4> c = counter;
  std::array<uint32_t, 2> k = key;
  for (int r = 0; r < 10; ++r) round_once(c, k);
  return c;
}

double uniform_from_bits(uint32_t hi, uint32_t lo) {
  uint64_t u = (uint64_t(hi) << 32) | lo;
  // top 52 bits mapped to the midpoint of their bin: every step below is
  // exact in double, so 0 and 1 are unreachable for any input
  return (double(u >> 12) + 0.5) * 0x1.0p-52;
}

PathRng::PathRng(uint64_t seed, uint64_t path_index)
    : key_{uint32_t(seed), uint32_t(seed >> 32)},
      path_{uint32_t(path_index), uint32_t(path_index >> 32)} {}

std::array<uint32_t, 4> PathRng::block(uint32_t step, uint32_t block_index) {
  return philox4x32({path_[0], path_[1], step, block_index}, key_);
}

double PathRng::normal(uint32_t step, uint32_t lane) {
  uint64_t id = (uint64_t(step) << 32) | (lane >> 1);
  if (id != cached_id_) {
    auto b = block(step, lane >> 1);
    double u1 = uniform_from_bits(b[0], b[1]);
    double u2 = uniform_from_bits(b[2], b[3]);
    double r = std::sqrt(-2.0 * std::log(u1));
    cached_pair_[0] = r * std::cos(2.0 * M_PI * u2);
    cached_pair_[1] = r * std::sin(2.0 * M_PI * u2);
    cached_id_ = id;
  }
  return cached_pair_[lane & 1];
}

void PathRng::normals(uint32_t step, int n, double* out) {
  for (int i = 0; i < n; ++i) out[i] = normal(step, uint32_t(i));
}

double PathRng::uniform(uint32_t step, uint32_t lane) {
  // uniform lanes live in a separate block family from the normal lanes
  auto b = block(step, 0x80000000u | (lane >> 1));
  return (lane & 1) ? uniform_from_bits(b[2], b[3]) : uniform_from_bits(b[0], b[1]);
}

}  // namespace pathspace
