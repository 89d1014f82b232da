// End-to-end acceptance gate. Each numbered check prints one PASS/FAIL line;
// the process exits 0 only if every check passes.
#include <sys/wait.h>
#include <unistd.h>

#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "pathspace/heat.hpp"
#include "pathspace/inequality.hpp"
#include "pathspace/runner.hpp"

using namespace pathspace;
namespace fs = std::filesystem;

namespace {

int g_failures = 0;

void report(int num, const char* name, bool ok, const std::string& detail) {
  std::printf("[%d/9] %s  %s (%s)\n", num, ok ? "PASS" : "FAIL", name,
              detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

double draw_k2(std::mt19937& rng) {
  std::uniform_real_distribution<double> uk(-3.0, 3.0);
  double k = uk(rng);
  while (std::abs(k) < 1e-3) k = uk(rng);
  return k;
}

// --- 1: endpoint identity of the decay weight -------------------------------

void check_endpoint_identity() {
  std::mt19937 rng(101);
  std::uniform_real_distribution<double> uk(-3.0, 3.0), uT(1e-3, 5.0);
  double worst = 0;
  for (int i = 0; i < 1000; ++i) {
    const double K1 = uk(rng), K2 = draw_k2(rng), T = uT(rng);
    const double end = lambda_fn(T, T, K1, K2);
    const double start = lambda_fn(0.0, T, K1, K2);
    const double want = 0.5 + 0.5 * start * start;
    worst = std::max(worst,
                     std::abs(end - want) / std::max(1.0, std::abs(want)));
  }
  std::ostringstream d;
  d << "max relative error " << worst;
  report(1, "endpoint identity of the decay weight", worst <= 1e-12, d.str());
}

// --- 2: closed-form supremum of the decay weight ----------------------------

void check_supremum() {
  std::mt19937 rng(202);
  std::uniform_real_distribution<double> uk(-3.0, 3.0), uT(0.05, 5.0);
  double worst_gap = 0, worst_deriv = 0;
  bool shape_ok = true;
  for (int i = 0; i < 1000; ++i) {
    const double K1 = uk(rng), K2 = draw_k2(rng), T = uT(rng);
    const SupResult sup = sup_lambda(T, K1, K2);
    const auto grid = oracles::grid_maximize(
        [&](double t) { return lambda_fn(t, T, K1, K2); }, 0.0, T, 100001);
    worst_gap = std::max(worst_gap, std::abs(sup.value - grid.value) /
                                        std::max(1.0, std::abs(grid.value)));
    if (K2 < 0) {
      // supremum must sit at the horizon and the weight must increase
      shape_ok = shape_ok && sup.t_star == T;
      double prev = lambda_fn(0.0, T, K1, K2);
      for (int j = 1; j <= 100; ++j) {
        const double cur = lambda_fn(j == 100 ? T : T * j / 100, T, K1, K2);
        shape_ok = shape_ok && cur > prev;
        prev = cur;
      }
    } else {
      shape_ok = shape_ok && sup.t_star > 0 && sup.t_star < T;
      const double h = 1e-6 * T;
      const double d = oracles::central_diff(
          [&](double t) { return lambda_fn(t, T, K1, K2); }, sup.t_star, h);
      worst_deriv = std::max(
          worst_deriv, std::abs(d) / std::max(1.0, sup.value / T));
    }
  }
  std::ostringstream d;
  d << "max gap vs grid " << worst_gap << ", scaled stationarity residual "
    << worst_deriv << (shape_ok ? "" : ", shape violated");
  report(2, "closed-form supremum of the decay weight",
         worst_gap <= 1e-8 && worst_deriv <= 1e-5 && shape_ok, d.str());
}

// --- 3: heat decay integral -------------------------------------------------

void check_heat_integral() {
  std::mt19937 rng(303);
  std::uniform_real_distribution<double> uk(-2.5, 2.5), uT(0.1, 3.0),
      us(0.0, 1.0);
  double worst = 0;
  for (int i = 0; i < 200; ++i) {
    double K = uk(rng);
    if (std::abs(K) < 1e-2) K = 0.5;
    const double T = uT(rng), s = us(rng) * T;
    const double direct = oracles::integrate(
        [&](double u) { return heat_phi(u, T, K) * std::exp(-K * (s - u)); },
        0.0, s);
    worst = std::max(worst, std::abs(heat_A(s, T, K) - direct) /
                                std::max(1.0, std::abs(direct)));
  }
  double worst_res = 0;
  for (double K : {0.3, 1.0, 2.5})
    for (double T : {0.5, 1.0, 3.0}) {
      const double s = heat_A_stationary(T, K);
      worst_res = std::max(worst_res,
                           std::abs(std::exp(2 * K * s) -
                                    (2 * std::exp(K * T) - 1)) /
                               (2 * std::exp(K * T) - 1));
    }
  bool increasing = true;
  for (double K : {-2.0, -0.5}) {
    double prev = heat_A(0.0, 1.5, K);
    for (int j = 1; j <= 150; ++j) {
      const double cur = heat_A(1.5 * j / 150, 1.5, K);
      increasing = increasing && cur >= prev;
      prev = cur;
    }
  }
  std::ostringstream d;
  d << "max quadrature gap " << worst << ", stationarity residual "
    << worst_res << (increasing ? "" : ", not increasing for K<0");
  report(3, "heat decay integral against quadrature",
         worst <= 1e-8 && worst_res <= 1e-10 && increasing, d.str());
}

// --- 4: damping flow decay and gradient identity -----------------------------

void check_damping_flow() {
  std::ostringstream d;
  bool ok = true;

  // exponential contraction at fine steps on the curved model
  {
    const ManifoldModel m = make_sphere(2);
    Vec x0 = Vec::Zero(3);
    x0[2] = 1.0;
    SamplerConfig cfg{{1.0, 1000}, 404};
    const PathSample p = simulate_path(m, x0, cfg, 0);
    const QProcess Q = q_evolve(m, p, 0);
    double worst = 0;
    for (int k = 0; k <= 1000; ++k)
      worst = std::max(worst, (Q.at(k) - std::exp(-cfg.grid.time(k)) *
                                             Mat::Identity(2, 2))
                                  .norm());
    ok = ok && worst <= 1e-2;
    d << "contraction gap " << worst;
  }

  // decay bound on reflecting paths in the ball
  {
    const ManifoldModel m = make_ball(2, 1.0);
    const Vec x0{{0.9, 0.0}};
    SamplerConfig cfg{{1.0, 512}, 405};
    const double dt = cfg.grid.dt();
    int hits = 0;
    double worst = 0;
    for (uint64_t pi = 0; pi < 1000; ++pi) {
      const PathSample p = simulate_path(m, x0, cfg, pi);
      if (p.l[512] > 0) ++hits;
      worst = std::max(worst, q_norm_ratio(m, p, 0, 0.0, 1.0));
    }
    ok = ok && worst <= 1.0 + 10 * dt && hits >= 500;
    d << ", decay ratio " << worst << " over " << hits << " reflecting paths";
  }

  // gradient identity: at the rounding floor on flat models, first order in
  // the step on the curved one
  {
    const CylinderPointwise F = pointwise_tanh_of_sum(0, 0.7, {1.0});
    const CylinderPointwise G = pointwise_coord_sum(0, {1.0});
    const double gate = std::pow(2.0, 0.9);
    double worst_flat = 0;
    for (uint64_t pi = 0; pi < 5; ++pi) {
      const ManifoldModel hl = make_half_line();
      const PathSample p = simulate_path(hl, Vec{{0.2}}, {{1.0, 128}, 406}, pi);
      worst_flat =
          std::max(worst_flat, check_identity_2_4(hl, p, F, F.grid_indices(128)));
      const ManifoldModel bl = make_ball(2, 1.0);
      const PathSample q = simulate_path(bl, Vec{{0.6, 0.0}}, {{1.0, 128}, 407}, pi);
      worst_flat =
          std::max(worst_flat, check_identity_2_4(bl, q, F, F.grid_indices(128)));
    }
    double worst_ratio = 1e300;
    const ManifoldModel sp = make_sphere(2);
    Vec x0 = Vec::Zero(3);
    x0[2] = 1.0;
    for (uint64_t pi = 0; pi < 5; ++pi) {
      const PathSample fine = simulate_path(sp, x0, {{1.0, 128}, 408}, pi);
      std::vector<Vec> dwc(65, Vec::Zero(2));
      for (int k = 1; k <= 64; ++k)
        dwc[size_t(k)] = fine.dw[size_t(2 * k - 1)] + fine.dw[size_t(2 * k)];
      PathSample coarse;
      rebuild_path_from_increments(sp, x0, {1.0, 64}, dwc, coarse);
      const double rf = check_identity_2_4(sp, fine, G, G.grid_indices(128));
      const double rc = check_identity_2_4(sp, coarse, G, G.grid_indices(64));
      if (rf > 1e-10) worst_ratio = std::min(worst_ratio, rc / rf);
    }
    ok = ok && worst_flat <= 1e-10 && worst_ratio >= gate;
    d << "; identity floor " << worst_flat << ", refinement ratio "
      << worst_ratio;
  }

  report(4, "damping flow decay and gradient identity", ok, d.str());
}

// --- 5: reflecting walk laws -------------------------------------------------

void check_walk_laws() {
  const ManifoldModel m = make_half_line();
  const uint64_t n_paths = 100000;
  SamplerConfig cfg{{1.0, 512}, 505};

  std::vector<double> lt(n_paths), ex(n_paths);
  for_each_path_parallel(m, Vec{{0.0}}, cfg, n_paths,
                         [&](uint64_t pi, const PathSample& p) {
                           lt[pi] = p.l[512];
                         });
  cfg.base_seed = 506;
  for_each_path_parallel(m, Vec{{1.0}}, cfg, n_paths,
                         [&](uint64_t pi, const PathSample& p) {
                           ex[pi] = std::exp(-p.points[512][0]);
                         });

  const EstimateWithError lt_est = mean_with_error(lt);
  const double lt_want = std::sqrt(2.0 / M_PI);
  const double lt_err = std::abs(lt_est.value - lt_want);
  const bool lt_ok = lt_err <= 3 * lt_est.std_error + 0.05;

  const EstimateWithError ex_est = mean_with_error(ex);
  const double ex_want = oracles::reflecting_expectation(
      [](double y) { return std::exp(-y); }, 1.0, 1.0);
  const double ex_err = std::abs(ex_est.value - ex_want);
  const bool ex_ok = ex_err <= 3 * ex_est.std_error + 0.02;

  std::ostringstream d;
  d << "occupation error " << lt_err << " (se " << lt_est.std_error
    << "), exponential-moment error " << ex_err << " (se "
    << ex_est.std_error << ")";
  report(5, "reflecting walk laws on the half-line", lt_ok && ex_ok, d.str());
}

// --- 6: entropy bound across the model zoo -----------------------------------

ScenarioConfig zoo_scenario(const ManifoldModel& m, const Vec& x0, double K1,
                            double K2, double s1, double s2, uint64_t seed) {
  ScenarioConfig cfg;
  cfg.model = m;
  cfg.x0 = x0;
  cfg.grid.T = 1.0;
  cfg.grid.n_steps = 128;
  cfg.n_paths = 100000;
  cfg.base_seed = seed;
  cfg.bounds.K1 = K1;
  cfg.bounds.K2 = K2;
  cfg.bounds.sigma1 = s1;
  cfg.bounds.sigma2 = s2;
  return cfg;
}

void check_entropy_zoo() {
  std::ostringstream d;
  bool ok = true;

  struct Case {
    const char* label;
    ScenarioConfig cfg;
    CylinderPointwise F;
  };
  Vec pole = Vec::Zero(3);
  pole[2] = 1.0;
  std::vector<Case> cases;
  cases.push_back({"half-space",
                   zoo_scenario(make_half_space(1), Vec{{0.5}}, 0, 0, 0, 0, 601),
                   pointwise_tanh_of_sum(0, 1.0, {0.5, 1.0})});
  cases.push_back({"sphere",
                   zoo_scenario(make_sphere(2), pole, 1, 1, 0, 0, 602),
                   pointwise_coord_sum(0, {1.0})});
  cases.push_back({"hyperbolic",
                   zoo_scenario(make_hyperbolic_plane(), Vec::Zero(2), -1, -1,
                                0, 0, 603),
                   pointwise_tanh_of_sum(0, 1.0, {1.0})});
  cases.push_back({"ball",
                   zoo_scenario(make_ball(2, 1.0), Vec::Zero(2), 0, 0, 1, 1,
                                604),
                   pointwise_tanh_of_sum(0, 1.0, {1.0})});

  for (const Case& c : cases) {
    const InequalityReport r = verify_lsi(c.cfg, c.F);
    ok = ok && r.verdict != Verdict::Violated;
    d << c.label << " " << verdict_name(r.verdict) << " (margin " << r.margin
      << "), ";
  }

  ScenarioConfig forced = cases[0].cfg;
  forced.n_paths = 20000;
  forced.rhs_multiplier = 1e-3;
  const InequalityReport fr = verify_lsi(forced, cases[0].F);
  ok = ok && fr.verdict == Verdict::Violated;
  d << "forced failure " << verdict_name(fr.verdict);

  report(6, "entropy bound across the model zoo", ok, d.str());
}

// --- 7: entropy bound for integral functionals --------------------------------

void check_heat_bound() {
  ScenarioConfig cfg;
  cfg.model = make_half_space(1);
  cfg.x0 = Vec{{0.5}};
  cfg.grid.T = 1.0;
  cfg.grid.n_steps = 128;
  cfg.n_paths = 100000;
  cfg.base_seed = 707;
  const CylinderIntegral F = integral_tanh(1.0, integral_g_coord(0));
  const HeatReport r = verify_heat_lsi(cfg, F);
  const double dt = cfg.grid.dt();
  const bool ok = r.verdict_theorem != Verdict::Violated &&
                  r.verdict_constant != Verdict::Violated &&
                  r.max_pathwise_ratio <= 1.0 + 10 * dt;
  std::ostringstream d;
  d << "time-weighted " << verdict_name(r.verdict_theorem) << " (margin "
    << r.margin_theorem << "), uniform-constant "
    << verdict_name(r.verdict_constant) << " (margin " << r.margin_constant
    << "), envelope ratio " << r.max_pathwise_ratio;
  report(7, "entropy bound for integral functionals", ok, d.str());
}

// --- 8: difference quotients against both gradient flavors --------------------

void check_difference_quotients() {
  const ManifoldModel m = make_half_space(2);
  PathGrid grid{1.0, 64};

  const auto fd_pair = [&](const Vec& x0, const PathSample& base, int j,
                           const Vec& e, const CylinderPointwise& F,
                           const std::vector<int>& idx, bool& stable) {
    const double eps = 1e-7;
    std::vector<Vec> dw = base.dw;
    PathSample plus, minus;
    dw[size_t(j)] = base.dw[size_t(j)] + eps * e;
    rebuild_path_from_increments(m, x0, grid, dw, plus);
    dw[size_t(j)] = base.dw[size_t(j)] - eps * e;
    rebuild_path_from_increments(m, x0, grid, dw, minus);
    stable = plus.on_bd == base.on_bd && minus.on_bd == base.on_bd;
    return (eval_pointwise(plus, F, idx) - eval_pointwise(minus, F, idx)) /
           (2 * eps);
  };

  // interior paths, plain flavor
  const Vec deep{{0.0, 5.0}};
  const CylinderPointwise Fm = pointwise_tanh_of_sum(0, 0.7, {0.5, 1.0});
  const std::vector<int> im = Fm.grid_indices(64);
  int ok_m = 0, stable_m = 0;
  double worst_m = 0;
  for (uint64_t pi = 0; pi < 100; ++pi) {
    const PathSample p = simulate_path(m, deep, {grid, 808}, pi);
    const GradientField g = malliavin_gradient(m, p, Fm, im);
    const int j = 1 + int(pi % 64);
    Vec e = Vec::Zero(2);
    e[pi % 2] = 1.0;
    bool stable = false;
    const double fd = fd_pair(deep, p, j, e, Fm, im, stable);
    if (!stable) continue;
    ++stable_m;
    const double diff = std::abs(fd - g.g[size_t(j - 1)].dot(e));
    worst_m = std::max(worst_m, diff);
    if (diff <= 1e-3) ++ok_m;
  }

  // reflecting paths, damped flavor
  const Vec shallow{{0.0, 0.15}};
  const CylinderPointwise Fd = pointwise_tanh_of_sum(1, 0.8, {1.0});
  const std::vector<int> id = Fd.grid_indices(64);
  int ok_d = 0, stable_d = 0;
  double worst_d = 0;
  for (uint64_t pi = 0; pi < 100; ++pi) {
    const PathSample p = simulate_path(m, shallow, {grid, 809}, pi);
    const GradientField g =
        damped_gradient(m, p, Fd, id, ProjectionVariant::EveryEvent);
    // perturb an increment that starts from an interior point: at boundary
    // indices the field carries the predictable own-index projection, which
    // a two-sided quotient cannot see
    int j = 1 + int(pi % 64);
    while (p.on_bd[size_t(j - 1)]) j = 1 + j % 64;
    Vec e = Vec::Zero(2);
    e[pi % 2] = 1.0;
    bool stable = false;
    const double fd = fd_pair(shallow, p, j, e, Fd, id, stable);
    if (!stable) continue;
    ++stable_d;
    const double diff = std::abs(fd - g.g[size_t(j - 1)].dot(e));
    worst_d = std::max(worst_d, diff);
    if (diff <= 1e-3) ++ok_d;
  }

  const bool ok = stable_m >= 90 && ok_m == stable_m && stable_d >= 90 &&
                  ok_d == stable_d;
  std::ostringstream d;
  d << "plain " << ok_m << "/" << stable_m << " stable (worst " << worst_m
    << "), damped " << ok_d << "/" << stable_d << " stable (worst " << worst_d
    << ")";
  report(8, "difference quotients match both gradient flavors", ok, d.str());
}

// --- 9: command-line pipeline determinism --------------------------------------

void check_cli_determinism() {
  const fs::path root =
      fs::temp_directory_path() /
      ("acceptance_cli_" + std::to_string(::getpid()));
  fs::remove_all(root);
  fs::create_directories(root);
  const fs::path cfg = root / "run.json";
  std::ofstream(cfg) << R"({
    "scenario": "lsi",
    "model": {"kind": "half_space", "dim": 1},
    "initial_point": [0.5],
    "grid": {"T": 1.0, "n_steps": 32},
    "paths": {"n_paths": 500, "base_seed": 5},
    "bounds": {"K1": 0, "K2": 0, "sigma1": 0, "sigma2": 0},
    "function": {"type": "pointwise", "name": "tanh_of_sum", "coord": 0,
                 "scale": 1.0, "times": [1.0]}
  })";

  const auto run = [&](const std::string& out) {
    const std::string cmd = std::string(PATHSPACE_CLI_PATH) +
                            " verify --config " + cfg.string() + " --out " +
                            (root / out).string() + " > /dev/null 2>&1";
    const int rc = std::system(cmd.c_str());
    return rc != -1 && WIFEXITED(rc) ? WEXITSTATUS(rc) : -1;
  };
  const int rc1 = run("a");
  const int rc2 = run("b");
  const std::string r1 = slurp(root / "a" / "report.json");
  const std::string r2 = slurp(root / "b" / "report.json");
  const bool ok = rc1 == 0 && rc2 == 0 && !r1.empty() && r1 == r2;
  std::ostringstream d;
  d << "exit codes " << rc1 << "/" << rc2 << ", reports "
    << (r1 == r2 ? "identical" : "differ") << " (" << r1.size() << " bytes)";
  fs::remove_all(root);
  report(9, "command-line pipeline determinism", ok, d.str());
}

}  // namespace

int main() {
  check_endpoint_identity();
  check_supremum();
  check_heat_integral();
  check_damping_flow();
  check_walk_laws();
  check_entropy_zoo();
  check_heat_bound();
  check_difference_quotients();
  check_cli_determinism();
  std::printf("acceptance: %d/9 criteria passed\n", 9 - g_failures);
  return g_failures == 0 ? 0 : 1;
}
