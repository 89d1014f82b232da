#include "pathspace/report.hpp"

#include <charconv>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace pathspace {

std::string format_number(double x) {
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof(buf), x);
  if (res.ec != std::errc())
    throw std::runtime_error("number formatting failed");
  return std::string(buf, res.ptr);
}

std::string projection_variant_name(ProjectionVariant v) {
  return v == ProjectionVariant::EveryEvent ? "every_event" : "terminal_only";
}

Json json_of(const EstimateWithError& e) {
  return Json{{"value", e.value},
              {"std_error", e.std_error},
              {"n_samples", e.n_samples}};
}

Json json_of(const ManifoldModel& m) {
  Json j{{"kind", model_kind_name(m.kind)}, {"dim", m.dim}};
  if (m.kind == ModelKind::Ball) j["radius"] = m.radius;
  if (m.drift.size() > 0) {
    Json d = Json::array();
    for (int i = 0; i < m.drift.size(); ++i) d.push_back(m.drift[i]);
    j["drift"] = d;
  }
  return j;
}

Json json_of(const CurvatureBounds& b) {
  return Json{{"K1", b.K1},
              {"K2", b.K2},
              {"sigma1", b.sigma1},
              {"sigma2", b.sigma2}};
}

Json scenario_json(const ScenarioConfig& cfg) {
  Json x0 = Json::array();
  for (int i = 0; i < cfg.x0.size(); ++i) x0.push_back(cfg.x0[i]);
  return Json{{"model", json_of(cfg.model)},
              {"initial_point", x0},
              {"grid", Json{{"T", cfg.grid.T}, {"n_steps", cfg.grid.n_steps}}},
              {"paths", Json{{"n_paths", cfg.n_paths},
                             {"base_seed", cfg.base_seed}}},
              {"bounds", json_of(cfg.bounds)},
              {"factor2", cfg.factor2},
              {"rhs_multiplier", cfg.rhs_multiplier},
              {"q_projection", projection_variant_name(cfg.q_projection)}};
}

Json report_json(const InequalityReport& r, const ScenarioConfig& cfg) {
  Json j{{"schema_version", kSchemaVersion}, {"task", r.kind}};
  j["scenario"] = scenario_json(cfg);
  j["function"] = r.function_name;
  Json res{{"lhs", json_of(r.lhs)},
           {"form", json_of(r.form)},
           {"constant", r.constant},
           {"rhs", json_of(r.rhs)},
           {"plain_form", json_of(r.plain_form)},
           {"margin", r.margin},
           {"combined_se", r.combined_se},
           {"verdict", verdict_name(r.verdict)}};
  if (r.kind == "lsi") res["damped_form"] = json_of(r.damped_form);
  if (r.kind == "poincare")
    res["constant_grid_fallback"] = r.constant_grid_fallback;
  j["results"] = res;
  return j;
}

Json report_json(const HeatReport& r, const ScenarioConfig& cfg) {
  Json j{{"schema_version", kSchemaVersion}, {"task", "heat-lsi"}};
  j["scenario"] = scenario_json(cfg);
  j["function"] = r.function_name;
  j["results"] =
      Json{{"lhs", json_of(r.lhs)},
           {"exact_form", json_of(r.exact_form)},
           {"weighted_form", json_of(r.weighted_form)},
           {"plain_grad_form", json_of(r.plain_grad_form)},
           {"rhs_theorem", json_of(r.rhs_theorem)},
           {"rhs_constant", json_of(r.rhs_constant)},
           {"constant_two_sup_a", r.constant_two_sup_a},
           {"constant_published", r.constant_published},
           {"max_pathwise_ratio", r.max_pathwise_ratio},
           {"margin_theorem", r.margin_theorem},
           {"margin_constant", r.margin_constant},
           {"combined_se_theorem", r.combined_se_theorem},
           {"combined_se_constant", r.combined_se_constant},
           {"verdict_theorem", verdict_name(r.verdict_theorem)},
           {"verdict_constant", verdict_name(r.verdict_constant)}};
  return j;
}

namespace {

std::string csv_escape(const std::string& s) {
  if (s.find_first_of(",\"\n") == std::string::npos) return s;
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += '"';
    out += c;
  }
  out += '"';
  return out;
}

std::vector<std::string> scenario_cells(const ScenarioConfig& cfg) {
  return {model_kind_name(cfg.model.kind),
          std::to_string(cfg.model.dim),
          format_number(cfg.model.radius),
          format_number(cfg.grid.T),
          std::to_string(cfg.grid.n_steps),
          std::to_string(cfg.n_paths),
          std::to_string(cfg.base_seed),
          format_number(cfg.bounds.K1),
          format_number(cfg.bounds.K2),
          format_number(cfg.bounds.sigma1),
          format_number(cfg.bounds.sigma2)};
}

const char* kScenarioHeader =
    "model,dim,radius,T,n_steps,n_paths,base_seed,K1,K2,sigma1,sigma2";

}  // namespace

std::string csv_row(const std::vector<std::string>& cells) {
  std::string out;
  for (size_t i = 0; i < cells.size(); ++i) {
    if (i) out += ',';
    out += csv_escape(cells[i]);
  }
  out += '\n';
  return out;
}

std::string inequality_csv_header() {
  return std::string("task,") + kScenarioHeader +
         ",function,factor2,rhs_multiplier,constant,lhs,lhs_se,form,form_se,"
         "rhs,rhs_se,margin,combined_se,verdict\n";
}

std::string inequality_csv_row(const InequalityReport& r,
                               const ScenarioConfig& cfg) {
  std::vector<std::string> cells{r.kind};
  for (auto& c : scenario_cells(cfg)) cells.push_back(c);
  cells.insert(cells.end(),
               {r.function_name, cfg.factor2 ? "1" : "0",
                format_number(cfg.rhs_multiplier), format_number(r.constant),
                format_number(r.lhs.value), format_number(r.lhs.std_error),
                format_number(r.form.value), format_number(r.form.std_error),
                format_number(r.rhs.value), format_number(r.rhs.std_error),
                format_number(r.margin), format_number(r.combined_se),
                verdict_name(r.verdict)});
  return csv_row(cells);
}

std::string heat_csv_header() {
  return std::string("task,") + kScenarioHeader +
         ",function,rhs_multiplier,lhs,lhs_se,exact_form,exact_form_se,"
         "rhs_theorem,rhs_theorem_se,rhs_constant,rhs_constant_se,"
         "two_sup_a,published_c,max_pathwise_ratio,margin_theorem,"
         "margin_constant,verdict_theorem,verdict_constant\n";
}

std::string heat_csv_row(const HeatReport& r, const ScenarioConfig& cfg) {
  std::vector<std::string> cells{"heat-lsi"};
  for (auto& c : scenario_cells(cfg)) cells.push_back(c);
  cells.insert(
      cells.end(),
      {r.function_name, format_number(cfg.rhs_multiplier),
       format_number(r.lhs.value), format_number(r.lhs.std_error),
       format_number(r.exact_form.value),
       format_number(r.exact_form.std_error),
       format_number(r.rhs_theorem.value),
       format_number(r.rhs_theorem.std_error),
       format_number(r.rhs_constant.value),
       format_number(r.rhs_constant.std_error),
       format_number(r.constant_two_sup_a),
       format_number(r.constant_published),
       format_number(r.max_pathwise_ratio), format_number(r.margin_theorem),
       format_number(r.margin_constant), verdict_name(r.verdict_theorem),
       verdict_name(r.verdict_constant)});
  return csv_row(cells);
}

ConstantsRow make_constants_row(double K1, double K2, double sigma1,
                                double sigma2, double T) {
  ConstantsRow row;
  row.K1 = K1;
  row.K2 = K2;
  row.sigma1 = sigma1;
  row.sigma2 = sigma2;
  row.T = T;
  const SupResult sup = sup_lambda(T, K1, K2);
  row.lambda_sup = sup.value;
  row.t_star = sup.t_star;
  row.grid_fallback = sup.grid_fallback;
  row.spectral_bound = spectral_gap_bound(T, K1, K2);
  row.heat_c = heat_C(T, K2);
  return row;
}

std::string constants_csv_header() {
  return "K1,K2,sigma1,sigma2,T,lambda_sup,t_star,spectral_bound,heat_C,"
         "grid_fallback\n";
}

std::string constants_csv_row(const ConstantsRow& row) {
  return csv_row({format_number(row.K1), format_number(row.K2),
                  format_number(row.sigma1), format_number(row.sigma2),
                  format_number(row.T), format_number(row.lambda_sup),
                  format_number(row.t_star), format_number(row.spectral_bound),
                  format_number(row.heat_c), row.grid_fallback ? "1" : "0"});
}

void write_text_file(const std::string& path, const std::string& body) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw std::runtime_error("cannot open for writing: " + path);
  out << body;
  if (!out) throw std::runtime_error("write failed: " + path);
}

}  // namespace pathspace
