#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <array>
#include <cmath>
#include <cstdint>
#include <vector>

#include "pathspace/rng.hpp"

using namespace pathspace;

namespace {

// Independent transcription of the reference Philox4x32 round structure,
// kept deliberately separate from the library implementation.
void ref_round(uint32_t c[4], uint32_t k[2]) {
  uint64_t p0 = uint64_t(0xD2511F53u) * c[0];
  uint64_t p1 = uint64_t(0xCD9E8D57u) * c[2];
  uint32_t hi0 = uint32_t(p0 >> 32), lo0 = uint32_t(p0);
  uint32_t hi1 = uint32_t(p1 >> 32), lo1 = uint32_t(p1);
  uint32_t r0 = hi1 ^ c[1] ^ k[0];
  uint32_t r1 = lo1;
  uint32_t r2 = hi0 ^ c[3] ^ k[1];
  uint32_t r3 = lo0;
  c[0] = r0;
  c[1] = r1;
  c[2] = r2;
  c[3] = r3;
  k[0] += 0x9E3779B9u;
  k[1] += 0xBB67AE85u;
}

std::array<uint32_t, 4> ref_philox(std::array<uint32_t, 4> ctr,
                                   std::array<uint32_t, 2> key) {
  uint32_t c[4] = {ctr[0], ctr[1], ctr[2], ctr[3]};
  uint32_t k[2] = {key[0], key[1]};
  for (int r = 0; r < 10; ++r) ref_round(c, k);
  return {c[0], c[1], c[2], c[3]};
}

}  // namespace

TEST_CASE("philox matches an independent transcription of the round") {
  std::array<std::array<uint32_t, 4>, 4> ctrs = {{{0, 0, 0, 0},
                                                  {1, 2, 3, 3},
                                                  {0xffffffffu, 0xffffffffu,
                                                   0xffffffffu, 0xffffffffu},
                                                  {0x243f6a88u, 0x85a308d3u,
                                                   0x13198a2eu, 0x03707344u}}};
  std::array<std::array<uint32_t, 2>, 4> keys = {
      {{0, 0}, {56, 712}, {0xffffffffu, 0xffffffffu}, {0xa4093822u, 0x299f31d0u}}};
  for (size_t i = 0; i < ctrs.size(); ++i)
    CHECK(philox4x32(ctrs[i], keys[i]) == ref_philox(ctrs[i], keys[i]));
}

TEST_CASE("philox output is sensitive to every input word") {
  auto base = philox4x32({7, 8, 9, 10}, {11, 12});
  std::array<uint32_t, 4> c = {7, 8, 9, 10};
  for (int i = 0; i < 4; ++i) {
    auto cc = c;
    cc[i] ^= 1u;
    CHECK(philox4x32(cc, {11, 12}) != base);
  }
  CHECK(philox4x32(c, {11, 13}) != base);
  CHECK(philox4x32(c, {12, 12}) != base);
}

TEST_CASE("path streams are reproducible and addressable out of order") {
  PathRng a(42, 17), b(42, 17);
  double x = a.normal(3, 1);
  double y = a.normal(3, 0);
  CHECK(b.normal(3, 0) == y);
  CHECK(b.normal(3, 1) == x);
  double buf[4];
  PathRng c(42, 17);
  c.normals(3, 4, buf);
  CHECK(buf[0] == y);
  CHECK(buf[1] == x);
  PathRng d(43, 17), e(42, 18);
  CHECK(d.normal(3, 0) != y);
  CHECK(e.normal(3, 0) != y);
  CHECK(a.normal(4, 0) != y);
}

TEST_CASE("normals pass basic moment checks") {
  const int n = 400000;
  PathRng rng(2024, 0);
  double s = 0, s2 = 0, s3 = 0, s4 = 0;
  double prev = 0, lag = 0;
  for (int i = 0; i < n; ++i) {
    double z = rng.normal(uint32_t(i / 8), uint32_t(i % 8));
    s += z;
    s2 += z * z;
    s3 += z * z * z;
    s4 += z * z * z * z;
    if (i) lag += z * prev;
    prev = z;
  }
  double mean = s / n, var = s2 / n - mean * mean;
  CHECK(std::abs(mean) < 4.0 / std::sqrt(double(n)));
  CHECK(std::abs(var - 1.0) < 4.0 * std::sqrt(2.0 / n));
  CHECK(std::abs(s3 / n) < 5.0 * std::sqrt(15.0 / n));
  CHECK(std::abs(s4 / n - 3.0) < 5.0 * std::sqrt(96.0 / n));
  CHECK(std::abs(lag / (n - 1)) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("streams with different path indices are uncorrelated") {
  const int n = 100000;
  PathRng a(5, 100), b(5, 101);
  double dot = 0;
  for (int i = 0; i < n; ++i)
    dot += a.normal(uint32_t(i), 0) * b.normal(uint32_t(i), 0);
  CHECK(std::abs(dot / n) < 5.0 / std::sqrt(double(n)));
}

TEST_CASE("uniforms stay inside the open interval") {
  PathRng rng(9, 3);
  double lo = 1, hi = 0, s = 0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    double u = rng.uniform(uint32_t(i / 4), uint32_t(i % 4));
    lo = std::min(lo, u);
    hi = std::max(hi, u);
    s += u;
  }
  CHECK(lo > 0.0);
  CHECK(hi < 1.0);
  CHECK(std::abs(s / n - 0.5) < 4.0 / std::sqrt(12.0 * n));
  CHECK(uniform_from_bits(0, 0) > 0.0);
  CHECK(uniform_from_bits(0xffffffffu, 0xffffffffu) < 1.0);
}
