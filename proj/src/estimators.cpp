#include "pathspace/estimators.hpp"

#include <cmath>
#include <stdexcept>

#include "pathspace/rng.hpp"

namespace pathspace {

namespace {

double mean_of(const std::vector<double>& xs) {
  double s = 0;
  for (double x : xs) s += x;
  return s / double(xs.size());
}

// x log x with the continuous extension 0 at x = 0
double xlogx(double x) { return x > 0 ? x * std::log(x) : 0.0; }

double plug_in_entropy(const std::vector<double>& fs) {
  double a = 0, b = 0;
  for (double f : fs) {
    double f2 = f * f;
    a += xlogx(f2);
    b += f2;
  }
  const double n = double(fs.size());
  a /= n;
  b /= n;
  return a - xlogx(b);
}

}  // namespace

EstimateWithError mean_with_error(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
  EstimateWithError e;
  e.n_samples = int64_t(xs.size());
  e.value = mean_of(xs);
  double ss = 0;
  for (double x : xs) ss += (x - e.value) * (x - e.value);
  e.std_error = std::sqrt(ss / double(xs.size() - 1) / double(xs.size()));
  return e;
}

EstimateWithError variance_with_error(const std::vector<double>& xs) {
  if (xs.size() < 2) throw std::invalid_argument("need at least two samples");
  EstimateWithError e;
  e.n_samples = int64_t(xs.size());
  const double n = double(xs.size());
  const double mu = mean_of(xs);
  double m2 = 0, m4 = 0;
  for (double x : xs) {
    double d2 = (x - mu) * (x - mu);
    m2 += d2;
    m4 += d2 * d2;
  }
  m2 /= n;
  m4 /= n;
  e.value = m2 * n / (n - 1);
  double var_of_var = (m4 - m2 * m2 * (n - 3) / (n - 1)) / n;
  e.std_error = std::sqrt(std::max(0.0, var_of_var));
  return e;
}

EstimateWithError estimate_entropy(const std::vector<double>& f_values,
                                   uint64_t bootstrap_seed) {
  if (f_values.size() < 2)
    throw std::invalid_argument("need at least two samples");
  EstimateWithError e;
  e.n_samples = int64_t(f_values.size());
  e.value = plug_in_entropy(f_values);

  const size_t n = f_values.size();
  std::vector<double> resample(n);
  double acc = 0, acc2 = 0;
  for (int r = 0; r < kBootstrapResamples; ++r) {
    PathRng rng(bootstrap_seed, uint64_t(r));
    for (size_t i = 0; i < n; ++i) {
      double u = rng.uniform(uint32_t(i), 0);
      size_t j = std::min(n - 1, size_t(u * double(n)));
      resample[i] = f_values[j];
    }
    double ent = plug_in_entropy(resample);
    acc += ent;
    acc2 += ent * ent;
  }
  const double B = double(kBootstrapResamples);
  double var = (acc2 - acc * acc / B) / (B - 1);
  e.std_error = std::sqrt(std::max(0.0, var));
  return e;
}

}  // namespace pathspace
