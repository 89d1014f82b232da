#pragma once

// Shared numerical oracles for the test suite. These stay independent of the
// library implementation paths they are used to check: plain quadrature,
// finite differences, grid search and extended precision only.

#include <cmath>
#include <functional>
#include <vector>

#include <Eigen/Dense>

namespace oracles {

// ---- finite differences ----------------------------------------------------

inline double central_diff(const std::function<double(double)>& f, double x,
                           double h) {
  return (f(x + h) - f(x - h)) / (2.0 * h);
}

// ---- grid maximization with one parabolic polish ---------------------------

struct GridMax {
  double arg = 0, value = 0;
};

// Max over n uniformly spaced points on [a,b], then one parabolic refinement
// inside the bracketing cell. Derivative-free; only uses evaluations of f.
inline GridMax grid_maximize(const std::function<double(double)>& f, double a,
                             double b, int n) {
  GridMax best;
  best.arg = a;
  best.value = f(a);
  double h = (b - a) / (n - 1);
  std::vector<double> vals(n);
  vals[0] = best.value;
  for (int i = 1; i < n; ++i) {
    double x = (i == n - 1) ? b : a + i * h;
    vals[i] = f(x);
    if (vals[i] > best.value) {
      best.value = vals[i];
      best.arg = x;
    }
  }
  int i = int(std::lround((best.arg - a) / h));
  if (i > 0 && i < n - 1) {
    double y0 = vals[i - 1], y1 = vals[i], y2 = vals[i + 1];
    double denom = y0 - 2 * y1 + y2;
    if (denom < 0) {
      double dx = 0.5 * (y0 - y2) / denom;
      if (std::abs(dx) <= 1.0) {
        double x = std::min(b, std::max(a, a + (i + dx) * h));
        double v = f(x);
        if (v > best.value) {
          best.value = v;
          best.arg = x;
        }
      }
    }
  }
  return best;
}

// ---- quadrature -------------------------------------------------------------

// adaptive Simpson on [a,b]
inline double simpson(const std::function<double(double)>& f, double a,
                      double b, double fa, double fm, double fb, double eps,
                      int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double whole = (b - a) / 6.0 * (fa + 4 * fm + fb);
  double left = (m - a) / 6.0 * (fa + 4 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15 * eps)
    return left + right + (left + right - whole) / 15.0;
  return simpson(f, a, m, fa, flm, fm, eps / 2, depth - 1) +
         simpson(f, m, b, fm, frm, fb, eps / 2, depth - 1);
}

inline double integrate(const std::function<double(double)>& f, double a,
                        double b, double eps = 1e-12) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  // keep the tolerance above the rounding noise of the integrand, otherwise
  // large integrands drive the refinement to the depth limit everywhere
  double scale =
      (std::abs(fa) + std::abs(fm) + std::abs(fb)) * std::abs(b - a) + 1.0;
  return simpson(f, a, b, fa, fm, fb, std::max(eps, scale * 1e-15), 30);
}

// ---- reflecting half-line heat kernel ---------------------------------------

// transition density of reflecting Brownian motion on [0,inf):
// p_t(x,y) = phi_t(x-y) + phi_t(x+y)
inline double reflecting_kernel(double t, double x, double y) {
  double c = 1.0 / std::sqrt(2.0 * M_PI * t);
  return c * (std::exp(-(x - y) * (x - y) / (2 * t)) +
              std::exp(-(x + y) * (x + y) / (2 * t)));
}

inline double reflecting_expectation(const std::function<double(double)>& g,
                                     double t, double x) {
  double hi = x + 12.0 * std::sqrt(t);
  return integrate([&](double y) { return g(y) * reflecting_kernel(t, x, y); },
                   0.0, hi, 1e-13);
}

// ---- Gauss-Hermite ----------------------------------------------------------

struct GaussHermite {
  std::vector<double> node, weight;  // for integral against e^{-x^2}
};

// Golub-Welsch from the Jacobi matrix of the (physicists') Hermite family
inline GaussHermite gauss_hermite(int n) {
  Eigen::MatrixXd J = Eigen::MatrixXd::Zero(n, n);
  for (int i = 1; i < n; ++i) {
    double b = std::sqrt(i / 2.0);
    J(i, i - 1) = J(i - 1, i) = b;
  }
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(J);
  GaussHermite gh;
  gh.node.resize(n);
  gh.weight.resize(n);
  const double mu0 = std::sqrt(M_PI);
  for (int i = 0; i < n; ++i) {
    gh.node[i] = es.eigenvalues()[i];
    double v = es.eigenvectors()(0, i);
    gh.weight[i] = mu0 * v * v;
  }
  return gh;
}

// E[h(Z)] for Z ~ N(0, sigma^2)
inline double gaussian_expectation(const std::function<double(double)>& h,
                                   double sigma, int n = 96) {
  GaussHermite gh = gauss_hermite(n);
  double s = 0;
  for (int i = 0; i < n; ++i)
    s += gh.weight[i] * h(std::sqrt(2.0) * sigma * gh.node[i]);
  return s / std::sqrt(M_PI);
}

}  // namespace oracles
