#pragma once

#include <cstdint>
#include <vector>

namespace pathspace {

struct EstimateWithError {
  double value = 0;
  double std_error = 0;
  int64_t n_samples = 0;
};

// sample mean, standard error s / sqrt(n)
EstimateWithError mean_with_error(const std::vector<double>& xs);

// unbiased sample variance; standard error from the asymptotic
// fourth-moment formula
EstimateWithError variance_with_error(const std::vector<double>& xs);

// plug-in entropy of F^2 relative to its mean:
//   E[F^2 log F^2] - E[F^2] log E[F^2]
// standard error by nonparametric bootstrap with a fixed resample count and
// counter-based resampling, so repeated runs agree bit for bit
EstimateWithError estimate_entropy(const std::vector<double>& f_values,
                                   uint64_t bootstrap_seed);

inline constexpr int kBootstrapResamples = 200;

}  // namespace pathspace
