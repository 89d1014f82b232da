#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <random>
#include <vector>

#include "oracles.hpp"
#include "pathspace/estimators.hpp"

using namespace pathspace;

namespace {

std::vector<double> normals(int n, uint32_t seed) {
  std::mt19937 rng(seed);
  std::normal_distribution<double> nd(0.0, 1.0);
  std::vector<double> xs(static_cast<size_t>(n));
  for (double& x : xs) x = nd(rng);
  return xs;
}

}  // namespace

TEST_CASE("mean and variance on a known small sample") {
  const std::vector<double> xs{1.0, 2.0, 3.0, 4.0};
  const EstimateWithError m = mean_with_error(xs);
  CHECK(m.value == doctest::Approx(2.5).epsilon(1e-15));
  // s^2 = 5/3, se = sqrt(5/3)/2
  CHECK(m.std_error == doctest::Approx(std::sqrt(5.0 / 3.0) / 2).epsilon(1e-14));
  CHECK(m.n_samples == 4);

  const EstimateWithError v = variance_with_error(xs);
  CHECK(v.value == doctest::Approx(5.0 / 3.0).epsilon(1e-14));
  CHECK(v.std_error > 0.0);
}

TEST_CASE("variance estimate converges to the population value") {
  const std::vector<double> xs = normals(200000, 101);
  const EstimateWithError v = variance_with_error(xs);
  CHECK(std::abs(v.value - 1.0) <= 3 * v.std_error + 0.01);
  // the asymptotic se for a gaussian is sqrt(2/n) * sigma^2
  CHECK(v.std_error ==
        doctest::Approx(std::sqrt(2.0 / 200000)).epsilon(0.15));
}

TEST_CASE("standard error scales as the square root of the sample size") {
  const std::vector<double> xs = normals(80000, 7);
  const std::vector<double> quarter(xs.begin(), xs.begin() + 20000);
  const EstimateWithError big = mean_with_error(xs);
  const EstimateWithError small = mean_with_error(quarter);
  CHECK(small.std_error / big.std_error == doctest::Approx(2.0).epsilon(0.05));
}

TEST_CASE("entropy of constant and sign-valued samples") {
  // constant F: F^2 log F^2 factors exactly, entropy 0
  std::vector<double> xs(1000, 1.7);
  EstimateWithError e = estimate_entropy(xs, 5);
  CHECK(e.value == doctest::Approx(0.0).epsilon(1e-12));
  CHECK(e.std_error <= 1e-12);

  // F in {-1,+1}: F^2 is constant 1
  std::vector<double> pm(1000);
  for (size_t i = 0; i < pm.size(); ++i) pm[i] = i % 2 ? 1.0 : -1.0;
  e = estimate_entropy(pm, 5);
  CHECK(e.value == doctest::Approx(0.0).epsilon(1e-12));
}

TEST_CASE("entropy matches a quadrature oracle for a lognormal") {
  // F = exp(Z/2), Z standard normal: E[F^2] = e^{1/2},
  // E[F^2 log F^2] = E[Z e^Z] = e^{1/2}, so Ent = e^{1/2}(1 - 1/2)
  const double want =
      oracles::gaussian_expectation([](double z) { return z * std::exp(z); }, 1.0) -
      oracles::gaussian_expectation([](double z) { return std::exp(z); }, 1.0) *
          std::log(oracles::gaussian_expectation(
              [](double z) { return std::exp(z); }, 1.0));
  CHECK(want == doctest::Approx(std::exp(0.5) * 0.5).epsilon(1e-10));

  const std::vector<double> zs = normals(400000, 31);
  std::vector<double> fs(zs.size());
  for (size_t i = 0; i < zs.size(); ++i) fs[i] = std::exp(zs[i] / 2);
  const EstimateWithError e = estimate_entropy(fs, 9);
  CHECK(std::abs(e.value - want) <= 3 * e.std_error + 0.01);
  CHECK(e.std_error < 0.05);
}

TEST_CASE("bootstrap error is deterministic in the seed") {
  const std::vector<double> xs = normals(5000, 77);
  std::vector<double> fs(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) fs[i] = 1.0 + 0.3 * xs[i];
  const EstimateWithError a = estimate_entropy(fs, 1234);
  const EstimateWithError b = estimate_entropy(fs, 1234);
  CHECK(a.value == b.value);
  CHECK(a.std_error == b.std_error);
  const EstimateWithError c = estimate_entropy(fs, 4321);
  CHECK(c.std_error != a.std_error);  // different resampling
  CHECK(c.value == a.value);          // point estimate ignores the seed
}
