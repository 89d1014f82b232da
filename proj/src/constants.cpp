#include "pathspace/constants.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace pathspace {

namespace {
// |K2| (1 + T) below this switches the Lambda family to its K2 -> 0 limit
constexpr double kSmallK = 1e-9;

double beta_of(double K1, double K2) {
  return std::max(std::abs(K1), std::abs(K2)) / K2;
}
}  // namespace

double CurvatureBounds::kappa() const {
  return std::max(std::abs(K1), std::abs(K2));
}
double CurvatureBounds::sbar() const {
  return std::max(std::abs(sigma1), std::abs(sigma2));
}

double lambda_fn(double t, double T, double K1, double K2) {
  if (!(t >= 0 && t <= T)) throw std::invalid_argument("lambda_fn needs 0 <= t <= T");
  if (std::abs(K2) * (1.0 + T) < kSmallK) {
    double k = std::abs(K1);
    return 1.0 + k * T + k * k * t * (T - t / 2.0);
  }
  // grouped form of the three-exponential sum; algebraically identical but
  // free of the large cancellations the plain sum has for small K2
  double b = beta_of(K1, K2);
  double u = -std::expm1(-K2 * t);
  double v = -std::expm1(-K2 * (T - t));
  return 1.0 + b * (u + v) + 0.5 * b * b * u * (u + 2.0 * v - u * v);
}

SupResult sup_lambda(double T, double K1, double K2) {
  SupResult r;
  if (std::abs(K2) * (1.0 + T) < kSmallK) {
    // the limit family is nondecreasing in t; keep the grid fallback anyway
    // since closed-form stationarity is lost in this regime
    r.grid_fallback = true;
    double best = -1e300, arg = 0;
    const int n = 4097;
    for (int i = 0; i < n; ++i) {
      double t = T * i / (n - 1);
      double v = lambda_fn(t, T, K1, K2);
      if (v > best) {
        best = v;
        arg = t;
      }
    }
    r.t_star = arg;
    r.value = best;
    return r;
  }
  double b = beta_of(K1, K2);
  if (K2 < 0) {
    // increasing on [0,T]; the supremum sits at the right endpoint
    double q = b * -std::expm1(-K2 * T);
    r.t_star = T;
    r.value = 0.5 + 0.5 * (1.0 + q) * (1.0 + q);
    return r;
  }
  double w = 1.0 + (b / (2.0 + b)) * -std::expm1(-K2 * T);
  r.t_star = (std::log(w) + K2 * T) / (2.0 * K2);
  double s = std::sqrt(w), e = std::exp(-K2 * T / 2.0);
  r.value = (1.0 + b) * (1.0 + b) - (b + 0.5 * b * b) * s * e -
            (b + b * b - 0.5 * b * b * std::exp(-K2 * T)) / s * e;
  return r;
}

SupFormulaComparison sup_formula_comparison(double T, double K1, double K2) {
  if (K2 <= 0) throw std::invalid_argument("comparison defined for K2 > 0");
  SupFormulaComparison c;
  c.stationary_form = sup_lambda(T, K1, K2).value;
  double b = beta_of(K1, K2);
  double X = b + 0.5 * b * b;
  double Y = b + b * b - 0.5 * b * b * std::exp(-K2 * T);
  c.product_form =
      (1.0 + b) * (1.0 + b) - 2.0 * std::sqrt(X * Y) * std::exp(-K2 * T / 2.0);
  c.gap = c.stationary_form - c.product_form;
  return c;
}

double spectral_gap_bound(double T, double K1, double K2) {
  return sup_lambda(T, K1, K2).value;
}

double heat_phi(double s, double T, double K) {
  double x = T - s;
  if (std::abs(K) * (1.0 + T) < kSmallK) return x;
  return -std::expm1(-K * x) / K;
}

double heat_A(double s, double T, double K) {
  if (!(s >= 0 && s <= T)) throw std::invalid_argument("heat_A needs 0 <= s <= T");
  if (std::abs(K) * (1.0 + T) < kSmallK) return s * (T - s) + 0.5 * s * s;
  // grouped so every term shares a sign: no cancellation for any K
  const double u = std::expm1(-K * s);
  const double v = std::expm1(-K * (T - s));
  return u * (2.0 * v + u * (1.0 + v)) / (2.0 * K * K);
}

double heat_A_stationary(double T, double K) {
  if (K <= 0) throw std::invalid_argument("stationary point defined for K > 0");
  return std::log1p(2.0 * std::expm1(K * T)) / (2.0 * K);
}

double heat_C(double T, double K) {
  if (std::abs(K) * (1.0 + T) < kSmallK) return 0.5 * T * T;
  if (K < 0) {
    double q = -std::expm1(-K * T);
    return q * q / (K * K);
  }
  // equal to A evaluated at its stationary point; written so the
  // small-K cancellation is factored out exactly
  const double w = std::expm1(K * T);
  return w * w /
         (K * K * (1.0 + w) * (1.0 + w + std::sqrt(1.0 + 2.0 * w)));
}

HeatCPairings heat_C_pairings(double T, double K) {
  HeatCPairings p;
  p.published = heat_C(T, K);
  if (K > 0 && std::abs(K) * (1.0 + T) >= kSmallK)
    p.sup_A = heat_A(heat_A_stationary(T, K), T, K);
  else
    p.sup_A = heat_A(T, T, K);  // A is nondecreasing for K <= 0
  p.two_sup_A = 2.0 * p.sup_A;
  return p;
}

double mu_mass(const PathSample& path, const CurvatureBounds& b, int k) {
  const int n = path.n_steps;
  if (k < 0 || k > n) throw std::out_of_range("mu_mass index");
  const double kap = b.kappa(), sb = b.sbar(), dt = path.dt;
  double mass = 0.0;
  for (int j = n; j > k; --j) {
    double w = std::exp(-b.K2 * (j - k) * dt - b.sigma2 * (path.l[j] - path.l[k]));
    mass += w * (kap * dt + sb * path.dl[j]);
  }
  return mass;
}

PathWeights compute_weights(const PathSample& path, const CurvatureBounds& b) {
  const int n = path.n_steps;
  const double kap = b.kappa(), sb = b.sbar(), dt = path.dt;
  PathWeights w;
  w.A.assign(n + 1, 0.0);
  w.B.assign(n + 1, 0.0);

  // tail masses by the backward recursion
  // m_k = e^{-K2 dt - sigma2 dl_{k+1}} ((kappa dt + sbar dl_{k+1}) + m_{k+1})
  std::vector<double> one_plus_m(n + 1);
  double m = 0.0;
  one_plus_m[n] = 1.0;
  for (int k = n - 1; k >= 0; --k) {
    double fade = std::exp(-b.K2 * dt - b.sigma2 * path.dl[k + 1]);
    m = fade * (kap * dt + sb * path.dl[k + 1] + m);
    one_plus_m[k] = 1.0 + m;
  }

  // forward recursion for S_k = sum_{r<k} (1+m_r) e^{-K2(t_k-t_r)-sigma2(l_k-l_r)}
  double S = 0.0;
  for (int k = 0; k <= n; ++k) {
    w.A[k] = one_plus_m[k] + kap * S * dt;
    w.B[k] = sb * S * dt;
    if (k < n) {
      double fade = std::exp(-b.K2 * dt - b.sigma2 * path.dl[k + 1]);
      S = fade * (S + one_plus_m[k]);
    }
  }
  return w;
}

PathWeights compute_weights_reference(const PathSample& path,
                                      const CurvatureBounds& b) {
  const int n = path.n_steps;
  const double kap = b.kappa(), sb = b.sbar(), dt = path.dt;
  PathWeights w;
  w.A.assign(n + 1, 0.0);
  w.B.assign(n + 1, 0.0);
  for (int k = 0; k <= n; ++k) {
    double sum = 0.0;
    for (int r = 0; r < k; ++r) {
      double fade =
          std::exp(-b.K2 * (k - r) * dt - b.sigma2 * (path.l[k] - path.l[r]));
      sum += (1.0 + mu_mass(path, b, r)) * fade;
    }
    w.A[k] = 1.0 + mu_mass(path, b, k) + kap * sum * dt;
    w.B[k] = sb * sum * dt;
  }
  return w;
}

}  // namespace pathspace
