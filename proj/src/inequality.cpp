#include "pathspace/inequality.hpp"

#include <cmath>
#include <stdexcept>

#include "pathspace/damped.hpp"

namespace pathspace {

namespace {

constexpr uint64_t kEntropySeedSalt = 0x656e74726f7079ULL;

void require(bool ok, const char* what) {
  if (!ok) throw std::invalid_argument(what);
}

// stated bounds must be implied by the model's exact curvature, otherwise the
// Monte Carlo answer says nothing about the theorem
void check_bounds_consistency(const ManifoldModel& m,
                              const CurvatureBounds& b) {
  const ExactBounds e = exact_curvature_bounds(m);
  const double tol = 1e-9;
  require(b.K2 <= e.ric_lo + tol, "bounds: K2 must lower-bound the curvature");
  require(b.K1 >= e.ric_hi - tol, "bounds: K1 must upper-bound the curvature");
  if (m.has_boundary()) {
    require(b.sigma2 <= e.sff_lo + tol,
            "bounds: sigma2 must lower-bound the shape operator");
    require(b.sigma1 >= e.sff_hi - tol,
            "bounds: sigma1 must upper-bound the shape operator");
  }
}

void check_scenario(const ScenarioConfig& cfg, const CylinderPointwise& F) {
  require(cfg.n_paths >= 2, "scenario: need at least two paths");
  require(cfg.grid.n_steps >= 1 && cfg.grid.T > 0, "scenario: bad grid");
  require(cfg.rhs_multiplier > 0, "scenario: rhs multiplier must be positive");
  require(F.n_times() >= 1, "scenario: function needs an evaluation time");
  require(in_domain(cfg.model, cfg.x0), "scenario: start point outside domain");
  check_bounds_consistency(cfg.model, cfg.bounds);
}

void run_paths(const ScenarioConfig& cfg, const PathConsumer& consume) {
  if (cfg.parallel) {
    for_each_path_parallel(cfg.model, cfg.x0, cfg.sampler(), cfg.n_paths,
                           consume);
  } else {
    for_each_path_serial(cfg.model, cfg.x0, cfg.sampler(), cfg.n_paths,
                         consume);
  }
}

EstimateWithError scaled(const EstimateWithError& e, double c) {
  return EstimateWithError{c * e.value, c * e.std_error, e.n_samples};
}

void finish_report(InequalityReport& r) {
  r.margin = r.rhs.value - r.lhs.value;
  r.combined_se = std::hypot(r.lhs.std_error, r.rhs.std_error);
  r.verdict = classify_margin(r.margin, r.combined_se);
}

}  // namespace

std::string verdict_name(Verdict v) {
  switch (v) {
    case Verdict::Holds:
      return "holds";
    case Verdict::HoldsWithinError:
      return "holds-within-error";
    case Verdict::Violated:
      return "violated";
  }
  return "unknown";
}

Verdict classify_margin(double margin, double combined_se) {
  if (margin < -3.0 * combined_se) return Verdict::Violated;
  if (margin >= 3.0 * combined_se) return Verdict::Holds;
  return Verdict::HoldsWithinError;
}

InequalityReport verify_lsi(const ScenarioConfig& cfg,
                            const CylinderPointwise& F) {
  check_scenario(cfg, F);
  const int n = cfg.grid.n_steps;
  const double dt = cfg.grid.dt();
  const std::vector<int> idx = F.grid_indices(n);

  std::vector<double> f_vals(cfg.n_paths), form_vals(cfg.n_paths),
      damped_vals(cfg.n_paths), plain_vals(cfg.n_paths);

  run_paths(cfg, [&](uint64_t i, const PathSample& path) {
    thread_local GradientField mal, dam;
    f_vals[i] = eval_pointwise(path, F, idx);

    malliavin_gradient_into(cfg.model, path, F, idx, mal);
    const PathWeights w = compute_weights(path, cfg.bounds);
    double form = 0, plain = 0;
    for (int k = 0; k < n; ++k) {
      const double s = mal.g[size_t(k)].squaredNorm();
      form += s * w.A[size_t(k)] * dt;
      plain += s * dt;
    }
    for (int k = 1; k <= n; ++k) {
      if (path.dl[size_t(k)] > 0)
        form += mal.g[size_t(k)].squaredNorm() * w.B[size_t(k)] *
                path.dl[size_t(k)];
    }
    form_vals[i] = form;
    plain_vals[i] = plain;

    damped_gradient_into(cfg.model, path, F, idx, cfg.q_projection, dam);
    double dform = 0;
    for (int k = 0; k < n; ++k)
      dform += dam.g[size_t(k)].squaredNorm() * dt;
    damped_vals[i] = 2.0 * dform;
  });

  InequalityReport r;
  r.kind = "lsi";
  r.function_name = F.name;
  r.lhs = estimate_entropy(f_vals, cfg.base_seed ^ kEntropySeedSalt);
  r.form = mean_with_error(form_vals);
  r.constant = (cfg.factor2 ? 2.0 : 1.0) * cfg.rhs_multiplier;
  r.rhs = scaled(r.form, r.constant);
  r.damped_form = mean_with_error(damped_vals);
  r.plain_form = mean_with_error(plain_vals);
  finish_report(r);
  return r;
}

InequalityReport verify_poincare(const ScenarioConfig& cfg,
                                 const CylinderPointwise& F) {
  check_scenario(cfg, F);
  const int n = cfg.grid.n_steps;
  const double dt = cfg.grid.dt();
  const std::vector<int> idx = F.grid_indices(n);

  std::vector<double> f_vals(cfg.n_paths), plain_vals(cfg.n_paths);

  run_paths(cfg, [&](uint64_t i, const PathSample& path) {
    thread_local GradientField mal;
    f_vals[i] = eval_pointwise(path, F, idx);
    malliavin_gradient_into(cfg.model, path, F, idx, mal);
    double plain = 0;
    for (int k = 0; k < n; ++k)
      plain += mal.g[size_t(k)].squaredNorm() * dt;
    plain_vals[i] = plain;
  });

  const SupResult sup =
      sup_lambda(cfg.grid.T, cfg.bounds.K1, cfg.bounds.K2);

  InequalityReport r;
  r.kind = "poincare";
  r.function_name = F.name;
  r.lhs = variance_with_error(f_vals);
  r.form = mean_with_error(plain_vals);
  r.plain_form = r.form;
  r.constant = sup.value * cfg.rhs_multiplier;
  r.rhs = scaled(r.form, r.constant);
  r.constant_grid_fallback = sup.grid_fallback;
  finish_report(r);
  return r;
}

}  // namespace pathspace
