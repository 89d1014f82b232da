#include "pathspace/runner.hpp"

#include <cmath>
#include <filesystem>
#include <fstream>
#include <utility>
#include <vector>

#include "pathspace/heat.hpp"
#include "pathspace/report.hpp"
#include "pathspace/svg.hpp"

namespace pathspace {

namespace {

[[noreturn]] void fail(const std::string& msg) { throw ConfigError(msg); }

Json load_json(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) fail("cannot read config file: " + path);
  Json j;
  try {
    j = Json::parse(in);
  } catch (const std::exception& e) {
    fail("config is not valid JSON: " + std::string(e.what()));
  }
  if (!j.is_object()) fail("config root must be a JSON object");
  return j;
}

void check_keys(const Json& j, const std::string& where,
                std::initializer_list<const char*> allowed) {
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : allowed)
      if (it.key() == k) {
        ok = true;
        break;
      }
    if (!ok) fail("unknown key \"" + it.key() + "\" in " + where);
  }
}

const Json& need(const Json& j, const std::string& where, const char* key) {
  auto it = j.find(key);
  if (it == j.end()) fail(where + " is missing \"" + key + "\"");
  return *it;
}

double as_double(const Json& v, const std::string& what) {
  if (!v.is_number()) fail(what + " must be a number");
  return v.get<double>();
}

long long as_int(const Json& v, const std::string& what) {
  if (!v.is_number_integer()) fail(what + " must be an integer");
  return v.get<long long>();
}

uint64_t as_seed(const Json& v, const std::string& what) {
  if (v.is_number_unsigned()) return v.get<uint64_t>();
  if (v.is_number_integer() && v.get<long long>() >= 0)
    return uint64_t(v.get<long long>());
  fail(what + " must be a nonnegative integer");
}

bool as_bool(const Json& v, const std::string& what) {
  if (!v.is_boolean()) fail(what + " must be a boolean");
  return v.get<bool>();
}

std::string as_string(const Json& v, const std::string& what) {
  if (!v.is_string()) fail(what + " must be a string");
  return v.get<std::string>();
}

Vec as_vector(const Json& v, const std::string& what) {
  if (!v.is_array() || v.empty()) fail(what + " must be a nonempty array");
  Vec out(v.size());
  for (size_t i = 0; i < v.size(); ++i)
    out[Eigen::Index(i)] = as_double(v[i], what + " entry");
  return out;
}

ManifoldModel parse_model(const Json& j) {
  if (!j.is_object()) fail("\"model\" must be an object");
  const std::string kind = as_string(need(j, "model", "kind"), "model.kind");
  if (kind == "half_line") {
    check_keys(j, "model", {"kind"});
    return make_half_line();
  }
  if (kind == "half_space") {
    check_keys(j, "model", {"kind", "dim", "drift"});
    const int dim = int(as_int(need(j, "model", "dim"), "model.dim"));
    if (dim < 1) fail("model.dim must be >= 1");
    Vec drift;
    if (j.contains("drift")) {
      drift = as_vector(j["drift"], "model.drift");
      if (drift.size() != dim) fail("model.drift must have dim entries");
    }
    return make_half_space(dim, std::move(drift));
  }
  if (kind == "ball") {
    check_keys(j, "model", {"kind", "dim", "radius"});
    const int dim = int(as_int(need(j, "model", "dim"), "model.dim"));
    const double radius =
        as_double(need(j, "model", "radius"), "model.radius");
    if (dim < 1) fail("model.dim must be >= 1");
    if (!(radius > 0)) fail("model.radius must be positive");
    return make_ball(dim, radius);
  }
  if (kind == "sphere") {
    check_keys(j, "model", {"kind", "dim"});
    const int dim = int(as_int(need(j, "model", "dim"), "model.dim"));
    if (dim < 1) fail("model.dim must be >= 1");
    return make_sphere(dim);
  }
  if (kind == "hyperbolic_plane") {
    check_keys(j, "model", {"kind"});
    return make_hyperbolic_plane();
  }
  fail("unknown model.kind \"" + kind + "\"");
}

Vec default_initial_point(const ManifoldModel& m) {
  Vec x0 = Vec::Zero(m.chart_dim());
  switch (m.kind) {
    case ModelKind::HalfLine:
      x0[0] = 1.0;
      break;
    case ModelKind::HalfSpace:
      x0[m.dim - 1] = 1.0;
      break;
    case ModelKind::Sphere:
      x0[m.chart_dim() - 1] = 1.0;
      break;
    default:
      break;  // ball and hyperbolic plane start at the origin
  }
  return x0;
}

PathGrid parse_grid(const Json& j, bool need_steps) {
  if (!j.is_object()) fail("\"grid\" must be an object");
  check_keys(j, "grid", {"T", "n_steps"});
  PathGrid g;
  g.T = as_double(need(j, "grid", "T"), "grid.T");
  if (!(g.T > 0)) fail("grid.T must be positive");
  if (j.contains("n_steps")) {
    g.n_steps = int(as_int(j["n_steps"], "grid.n_steps"));
    if (g.n_steps < 1) fail("grid.n_steps must be >= 1");
  } else if (need_steps) {
    fail("grid is missing \"n_steps\"");
  }
  return g;
}

struct Parsed {
  std::string scenario;
  ScenarioConfig cfg;
  Json function;  // raw spec, built per scenario kind
  bool svg = true;
  bool bounds_exact = false;
  Json sweep;  // object; empty when absent
};

CurvatureBounds resolve_bounds(const Json& j, const ManifoldModel& m,
                               bool* exact_out) {
  if (!j.is_object()) fail("\"bounds\" must be an object");
  CurvatureBounds b;
  if (j.contains("exact_from_model")) {
    check_keys(j, "bounds", {"exact_from_model"});
    if (!as_bool(j["exact_from_model"], "bounds.exact_from_model"))
      fail("bounds.exact_from_model must be true when present");
    const ExactBounds e = exact_curvature_bounds(m);
    b.K1 = e.ric_hi;
    b.K2 = e.ric_lo;
    b.sigma1 = e.sff_hi;
    b.sigma2 = e.sff_lo;
    if (exact_out) *exact_out = true;
    return b;
  }
  check_keys(j, "bounds", {"K1", "K2", "sigma1", "sigma2"});
  b.K1 = as_double(need(j, "bounds", "K1"), "bounds.K1");
  b.K2 = as_double(need(j, "bounds", "K2"), "bounds.K2");
  b.sigma1 = as_double(need(j, "bounds", "sigma1"), "bounds.sigma1");
  b.sigma2 = as_double(need(j, "bounds", "sigma2"), "bounds.sigma2");
  if (b.K1 < b.K2) fail("bounds: K1 must be >= K2");
  if (b.sigma1 < b.sigma2) fail("bounds: sigma1 must be >= sigma2");
  if (exact_out) *exact_out = false;
  return b;
}

std::vector<double> parse_times(const Json& f) {
  std::vector<double> times{1.0};
  if (f.contains("times")) {
    const Json& tj = f["times"];
    if (!tj.is_array() || tj.empty())
      fail("function.times must be a nonempty array");
    times.clear();
    for (const auto& t : tj) {
      const double v = as_double(t, "function.times entry");
      if (!(v > 0 && v <= 1))
        fail("function.times entries are fractions of T in (0, 1]");
      times.push_back(v);
    }
  }
  return times;
}

int parse_coord(const Json& f, const ManifoldModel& m) {
  const int coord = int(as_int(need(f, "function", "coord"), "function.coord"));
  if (coord < 0 || coord >= m.chart_dim())
    fail("function.coord out of range for the model chart");
  return coord;
}

CylinderPointwise build_pointwise(const Json& f, const ManifoldModel& m) {
  if (!f.is_object()) fail("\"function\" must be an object");
  const std::string type = as_string(need(f, "function", "type"),
                                     "function.type");
  if (type != "pointwise")
    fail("this scenario needs a pointwise cylinder function");
  const std::string name = as_string(need(f, "function", "name"),
                                     "function.name");
  if (name == "constant") {
    check_keys(f, "function", {"type", "name", "c", "times"});
    const double c = f.contains("c") ? as_double(f["c"], "function.c") : 1.0;
    return pointwise_constant(c, parse_times(f));
  }
  if (name == "coord_sum") {
    check_keys(f, "function", {"type", "name", "coord", "times"});
    return pointwise_coord_sum(parse_coord(f, m), parse_times(f));
  }
  if (name == "tanh_of_sum") {
    check_keys(f, "function", {"type", "name", "coord", "scale", "times"});
    const double scale =
        f.contains("scale") ? as_double(f["scale"], "function.scale") : 1.0;
    if (!(scale > 0)) fail("function.scale must be positive");
    return pointwise_tanh_of_sum(parse_coord(f, m), scale, parse_times(f));
  }
  fail("unknown pointwise function \"" + name + "\"");
}

IntegralComponent build_integral_component(const Json& gj,
                                           const ManifoldModel& m) {
  if (!gj.is_object()) fail("function.g entries must be objects");
  const std::string name = as_string(need(gj, "function.g", "name"),
                                     "function.g name");
  if (name == "one") {
    check_keys(gj, "function.g", {"name"});
    return integral_g_one();
  }
  if (name == "coord") {
    check_keys(gj, "function.g", {"name", "coord"});
    return integral_g_coord(parse_coord(gj, m));
  }
  if (name == "coord_times_time") {
    check_keys(gj, "function.g", {"name", "coord"});
    return integral_g_coord_times_time(parse_coord(gj, m));
  }
  fail("unknown integrand \"" + name + "\"");
}

CylinderIntegral build_integral(const Json& f, const ManifoldModel& m) {
  if (!f.is_object()) fail("\"function\" must be an object");
  const std::string type = as_string(need(f, "function", "type"),
                                     "function.type");
  if (type != "integral")
    fail("the heat scenario needs an integral cylinder function");
  check_keys(f, "function", {"type", "f", "scale", "g"});
  const std::string outer = as_string(need(f, "function", "f"), "function.f");
  const Json& gj = need(f, "function", "g");
  if (!gj.is_array() || gj.empty())
    fail("function.g must be a nonempty array");
  std::vector<IntegralComponent> comps;
  for (const auto& c : gj) comps.push_back(build_integral_component(c, m));
  if (outer == "identity") {
    if (comps.size() != 1) fail("function.f identity takes one integrand");
    return integral_identity(comps[0]);
  }
  if (outer == "tanh") {
    if (comps.size() != 1) fail("function.f tanh takes one integrand");
    const double scale =
        f.contains("scale") ? as_double(f["scale"], "function.scale") : 1.0;
    if (!(scale > 0)) fail("function.scale must be positive");
    return integral_tanh(scale, comps[0]);
  }
  if (outer == "sum") return integral_sum(std::move(comps));
  fail("unknown outer function \"" + outer + "\"");
}

ProjectionVariant parse_projection(const Json& v) {
  const std::string s = as_string(v, "q_projection");
  if (s == "every_event") return ProjectionVariant::EveryEvent;
  if (s == "terminal_only") return ProjectionVariant::TerminalOnly;
  fail("q_projection must be \"every_event\" or \"terminal_only\"");
}

Parsed parse_config(const Json& root) {
  check_keys(root, "config",
             {"scenario", "model", "initial_point", "grid", "paths", "bounds",
              "function", "factor2", "rhs_multiplier", "q_projection", "svg",
              "sweep"});
  Parsed p;
  p.scenario = as_string(need(root, "config", "scenario"), "scenario");
  if (root.contains("svg")) p.svg = as_bool(root["svg"], "svg");
  if (root.contains("sweep")) {
    if (!root["sweep"].is_object()) fail("\"sweep\" must be an object");
    p.sweep = root["sweep"];
  }

  if (p.scenario == "constants-table") {
    check_keys(root, "constants-table config",
               {"scenario", "grid", "bounds", "svg", "sweep"});
    p.cfg.grid = parse_grid(need(root, "config", "grid"), false);
    const Json& bj = need(root, "config", "bounds");
    if (bj.is_object() && bj.contains("exact_from_model"))
      fail("constants-table needs explicit bounds, it has no model");
    p.cfg.bounds = resolve_bounds(
        bj, ManifoldModel{ModelKind::HalfLine, 1, 1.0, Vec()}, nullptr);
    return p;
  }

  if (p.scenario != "lsi" && p.scenario != "poincare" &&
      p.scenario != "heat-lsi")
    fail("unknown scenario \"" + p.scenario + "\"");

  p.cfg.model = parse_model(need(root, "config", "model"));
  p.cfg.grid = parse_grid(need(root, "config", "grid"), true);

  const Json& paths = need(root, "config", "paths");
  if (!paths.is_object()) fail("\"paths\" must be an object");
  check_keys(paths, "paths", {"n_paths", "base_seed"});
  const long long np = as_int(need(paths, "paths", "n_paths"),
                              "paths.n_paths");
  if (np < 2) fail("paths.n_paths must be >= 2");
  p.cfg.n_paths = uint64_t(np);
  p.cfg.base_seed =
      as_seed(need(paths, "paths", "base_seed"), "paths.base_seed");

  p.cfg.bounds = resolve_bounds(need(root, "config", "bounds"), p.cfg.model,
                                &p.bounds_exact);

  if (root.contains("initial_point")) {
    p.cfg.x0 = as_vector(root["initial_point"], "initial_point");
    if (p.cfg.x0.size() != p.cfg.model.chart_dim())
      fail("initial_point must have one entry per chart coordinate");
  } else {
    p.cfg.x0 = default_initial_point(p.cfg.model);
  }
  if (!in_domain(p.cfg.model, p.cfg.x0))
    fail("initial_point lies outside the model domain");

  p.function = need(root, "config", "function");
  if (root.contains("factor2"))
    p.cfg.factor2 = as_bool(root["factor2"], "factor2");
  if (root.contains("rhs_multiplier")) {
    p.cfg.rhs_multiplier = as_double(root["rhs_multiplier"], "rhs_multiplier");
    if (!(p.cfg.rhs_multiplier > 0)) fail("rhs_multiplier must be positive");
  }
  if (root.contains("q_projection"))
    p.cfg.q_projection = parse_projection(root["q_projection"]);
  return p;
}

void apply_overrides(Parsed& p, const CliOptions& opt) {
  if (opt.has_seed) p.cfg.base_seed = opt.seed;
  if (opt.factor2_override == 0) p.cfg.factor2 = false;
  if (opt.factor2_override == 1) p.cfg.factor2 = true;
  if (opt.paths_override > 0) {
    if (opt.paths_override < 2) fail("--paths must be >= 2");
    p.cfg.n_paths = uint64_t(opt.paths_override);
  }
  if (opt.steps_override > 0) p.cfg.grid.n_steps = opt.steps_override;
}

struct OutputFile {
  std::string name, body;
};

void write_outputs(const std::string& out_dir,
                   const std::vector<OutputFile>& files) {
  std::filesystem::create_directories(out_dir);
  for (const auto& f : files)
    write_text_file((std::filesystem::path(out_dir) / f.name).string(),
                    f.body);
}

std::string scenario_title(const Parsed& p) {
  return model_kind_name(p.cfg.model.kind) + " d=" +
         std::to_string(p.cfg.model.dim) +
         ", T=" + format_number(p.cfg.grid.T);
}

// runs one verify-scenario cell; fills row (and optionally full report
// outputs) and reports whether the verdict chain is clean
struct CellResult {
  bool violated = false;
  std::string csv_row;
  Json report;
  std::vector<std::pair<std::string, double>> bars;  // label, value
  std::vector<double> bar_errors;
  std::string title;
};

CellResult run_verify_cell(const Parsed& p) {
  CellResult out;
  if (p.scenario == "lsi" || p.scenario == "poincare") {
    const CylinderPointwise F = build_pointwise(p.function, p.cfg.model);
    try {
      const InequalityReport r = p.scenario == "lsi"
                                     ? verify_lsi(p.cfg, F)
                                     : verify_poincare(p.cfg, F);
      out.violated = r.verdict == Verdict::Violated;
      out.csv_row = inequality_csv_row(r, p.cfg);
      out.report = report_json(r, p.cfg);
      if (p.scenario == "lsi") {
        out.bars = {{"entropy", r.lhs.value},
                    {"damped form", r.damped_form.value},
                    {"rhs", r.rhs.value}};
        out.bar_errors = {r.lhs.std_error, r.damped_form.std_error,
                          r.rhs.std_error};
        out.title = "Entropy bound: " + scenario_title(p);
      } else {
        out.bars = {{"variance", r.lhs.value}, {"rhs", r.rhs.value}};
        out.bar_errors = {r.lhs.std_error, r.rhs.std_error};
        out.title = "Spectral-gap bound: " + scenario_title(p);
      }
    } catch (const std::invalid_argument& e) {
      fail(std::string("scenario rejected: ") + e.what());
    }
    return out;
  }
  if (p.scenario == "heat-lsi") {
    const CylinderIntegral F = build_integral(p.function, p.cfg.model);
    try {
      const HeatReport r = verify_heat_lsi(p.cfg, F);
      out.violated = r.verdict_theorem == Verdict::Violated ||
                     r.verdict_constant == Verdict::Violated;
      out.csv_row = heat_csv_row(r, p.cfg);
      out.report = report_json(r, p.cfg);
      out.bars = {{"entropy", r.lhs.value},
                  {"exact form", r.exact_form.value},
                  {"theorem rhs", r.rhs_theorem.value},
                  {"constant rhs", r.rhs_constant.value}};
      out.bar_errors = {r.lhs.std_error, r.exact_form.std_error,
                        r.rhs_theorem.std_error, r.rhs_constant.std_error};
      out.title = "Heat entropy bound: " + scenario_title(p);
    } catch (const std::invalid_argument& e) {
      fail(std::string("scenario rejected: ") + e.what());
    }
    return out;
  }
  fail("scenario \"" + p.scenario + "\" cannot be verified");
}

std::string verify_csv_header(const std::string& scenario) {
  return scenario == "heat-lsi" ? heat_csv_header() : inequality_csv_header();
}

// ---- sweep support ----------------------------------------------------------

struct SweepAxis {
  std::string key;
  std::vector<Json> values;
};

std::vector<SweepAxis> parse_sweep_axes(const Parsed& p) {
  const bool constants = p.scenario == "constants-table";
  std::vector<SweepAxis> axes;
  for (auto it = p.sweep.begin(); it != p.sweep.end(); ++it) {
    const std::string& key = it.key();
    const bool bound_key = key == "K1" || key == "K2" || key == "sigma1" ||
                           key == "sigma2";
    bool ok = key == "T" || bound_key;
    if (!constants) ok = ok || key == "n_steps" || key == "n_paths";
    if (!ok) fail("sweep key \"" + key + "\" is not sweepable here");
    if (bound_key && p.bounds_exact)
      fail("sweep over bounds conflicts with bounds.exact_from_model");
    if (!it->is_array() || it->empty())
      fail("sweep." + key + " must be a nonempty array");
    SweepAxis ax{key, {}};
    for (const auto& v : *it) {
      if (!v.is_number()) fail("sweep." + key + " entries must be numbers");
      ax.values.push_back(v);
    }
    axes.push_back(std::move(ax));
  }
  if (axes.empty()) fail("sweep needs at least one nonempty axis");
  return axes;
}

long long sweep_cell_count(const std::vector<SweepAxis>& axes) {
  long long n = 1;
  for (const auto& ax : axes) n *= (long long)ax.values.size();
  return n;
}

// cell index decomposed row-major, last axis fastest
Parsed sweep_cell(const Parsed& base, const std::vector<SweepAxis>& axes,
                  long long cell) {
  Parsed p = base;
  long long rem = cell;
  for (size_t i = axes.size(); i-- > 0;) {
    const SweepAxis& ax = axes[i];
    const long long idx = rem % (long long)ax.values.size();
    rem /= (long long)ax.values.size();
    const Json& v = ax.values[size_t(idx)];
    if (ax.key == "T") {
      const double t = v.get<double>();
      if (!(t > 0)) fail("sweep.T values must be positive");
      p.cfg.grid.T = t;
    } else if (ax.key == "n_steps") {
      const long long n = as_int(v, "sweep.n_steps value");
      if (n < 1) fail("sweep.n_steps values must be >= 1");
      p.cfg.grid.n_steps = int(n);
    } else if (ax.key == "n_paths") {
      const long long n = as_int(v, "sweep.n_paths value");
      if (n < 2) fail("sweep.n_paths values must be >= 2");
      p.cfg.n_paths = uint64_t(n);
    } else if (ax.key == "K1") {
      p.cfg.bounds.K1 = v.get<double>();
    } else if (ax.key == "K2") {
      p.cfg.bounds.K2 = v.get<double>();
    } else if (ax.key == "sigma1") {
      p.cfg.bounds.sigma1 = v.get<double>();
    } else if (ax.key == "sigma2") {
      p.cfg.bounds.sigma2 = v.get<double>();
    }
  }
  // per-cell seeds: documented derivation from (base_seed, cell index)
  p.cfg.base_seed = base.cfg.base_seed + uint64_t(cell);
  return p;
}

std::string lambda_curve_svg(double K1, double K2, double T) {
  SvgSeries s;
  s.label = "Lambda(t, T)";
  const int n = 256;
  for (int i = 0; i <= n; ++i) {
    const double t = T * i / n;
    s.x.push_back(t);
    s.y.push_back(lambda_fn(t, T, K1, K2));
  }
  return line_chart_svg("Deterministic weight, K1=" + format_number(K1) +
                            ", K2=" + format_number(K2) +
                            ", T=" + format_number(T),
                        "t", "Lambda", {s});
}

}  // namespace

int run_verify(const CliOptions& opt) {
  Parsed p = parse_config(load_json(opt.config_path));
  if (p.scenario == "constants-table")
    fail("verify does not take a constants-table config; use constants");
  if (!p.sweep.empty())
    fail("config has a sweep section; use the sweep subcommand");
  apply_overrides(p, opt);

  const CellResult cell = run_verify_cell(p);
  std::vector<OutputFile> files;
  files.push_back({"report.json", cell.report.dump(2) + "\n"});
  files.push_back(
      {"summary.csv", verify_csv_header(p.scenario) + cell.csv_row});
  if (p.svg) {
    std::vector<std::string> labels;
    std::vector<double> values;
    for (const auto& b : cell.bars) {
      labels.push_back(b.first);
      values.push_back(b.second);
    }
    files.push_back(
        {"plot.svg",
         bar_chart_svg(cell.title, labels, values, cell.bar_errors)});
  }
  write_outputs(opt.out_dir, files);
  return cell.violated ? 1 : 0;
}

namespace {

std::vector<std::string> constants_rows(const Parsed& base,
                                        const std::vector<SweepAxis>& axes) {
  const long long n_cells = sweep_cell_count(axes);
  std::vector<std::string> rows(static_cast<size_t>(n_cells));
  // cells are independent pure evaluations; rows land in preallocated slots
#ifdef PATHSPACE_HAVE_OPENMP
#pragma omp parallel for schedule(static)
#endif
  for (long long c = 0; c < n_cells; ++c) {
    const Parsed cell = sweep_cell(base, axes, c);
    rows[size_t(c)] = constants_csv_row(make_constants_row(
        cell.cfg.bounds.K1, cell.cfg.bounds.K2, cell.cfg.bounds.sigma1,
        cell.cfg.bounds.sigma2, cell.cfg.grid.T));
  }
  return rows;
}

}  // namespace

int run_constants(const CliOptions& opt) {
  Parsed p = parse_config(load_json(opt.config_path));
  if (p.scenario != "constants-table")
    fail("constants needs a constants-table config");
  apply_overrides(p, opt);

  std::string csv = constants_csv_header();
  double svg_K1 = p.cfg.bounds.K1, svg_K2 = p.cfg.bounds.K2,
         svg_T = p.cfg.grid.T;
  if (p.sweep.empty()) {
    csv += constants_csv_row(make_constants_row(
        p.cfg.bounds.K1, p.cfg.bounds.K2, p.cfg.bounds.sigma1,
        p.cfg.bounds.sigma2, p.cfg.grid.T));
  } else {
    const std::vector<SweepAxis> axes = parse_sweep_axes(p);
    for (const auto& row : constants_rows(p, axes)) csv += row;
    const Parsed first = sweep_cell(p, axes, 0);
    svg_K1 = first.cfg.bounds.K1;
    svg_K2 = first.cfg.bounds.K2;
    svg_T = first.cfg.grid.T;
  }

  std::vector<OutputFile> files;
  files.push_back({"constants.csv", csv});
  if (p.svg)
    files.push_back({"lambda.svg", lambda_curve_svg(svg_K1, svg_K2, svg_T)});
  write_outputs(opt.out_dir, files);
  return 0;
}

int run_sweep(const CliOptions& opt) {
  Parsed p = parse_config(load_json(opt.config_path));
  apply_overrides(p, opt);
  if (p.sweep.empty()) fail("sweep needs a nonempty \"sweep\" section");
  const std::vector<SweepAxis> axes = parse_sweep_axes(p);
  const long long n_cells = sweep_cell_count(axes);

  std::vector<OutputFile> files;
  bool violated = false;
  if (p.scenario == "constants-table") {
    std::string csv = constants_csv_header();
    for (const auto& row : constants_rows(p, axes)) csv += row;
    files.push_back({"sweep.csv", csv});
  } else {
    // verification cells run serially; the Monte Carlo inside each cell is
    // already parallel over paths
    std::string csv = verify_csv_header(p.scenario);
    for (long long c = 0; c < n_cells; ++c) {
      const Parsed cell = sweep_cell(p, axes, c);
      const CellResult r = run_verify_cell(cell);
      violated = violated || r.violated;
      csv += r.csv_row;
    }
    files.push_back({"sweep.csv", csv});
  }
  write_outputs(opt.out_dir, files);
  return violated ? 1 : 0;
}

int run_dump_paths(const CliOptions& opt) {
  Parsed p = parse_config(load_json(opt.config_path));
  if (p.scenario == "constants-table")
    fail("dump-paths needs a scenario with a model");
  apply_overrides(p, opt);

  const int cd = p.cfg.model.chart_dim();
  std::string csv = "path,k,t";
  for (int c = 0; c < cd; ++c) csv += ",x" + std::to_string(c);
  csv += ",dl,l,on_bd\n";

  for_each_path_serial(
      p.cfg.model, p.cfg.x0, p.cfg.sampler(), p.cfg.n_paths,
      [&](uint64_t i, const PathSample& path) {
        for (int k = 0; k <= path.n_steps; ++k) {
          csv += std::to_string(i);
          csv += ',';
          csv += std::to_string(k);
          csv += ',';
          csv += format_number(k * path.dt);
          for (int c = 0; c < cd; ++c) {
            csv += ',';
            csv += format_number(path.points[size_t(k)][c]);
          }
          csv += ',';
          csv += format_number(path.dl[size_t(k)]);
          csv += ',';
          csv += format_number(path.l[size_t(k)]);
          csv += ',';
          csv += path.on_bd[size_t(k)] ? '1' : '0';
          csv += '\n';
        }
      });

  write_outputs(opt.out_dir, {{"paths.csv", csv}});
  return 0;
}

}  // namespace pathspace
