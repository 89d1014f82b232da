#pragma once

#include <string>
#include <vector>

#include "json.hpp"

#include "pathspace/heat.hpp"
#include "pathspace/inequality.hpp"
#include "pathspace/scenario.hpp"

namespace pathspace {

// insertion-ordered JSON keeps reports byte-stable across runs
using Json = nlohmann::ordered_json;

inline constexpr int kSchemaVersion = 1;

// shortest decimal that round-trips the double (std::to_chars)
std::string format_number(double x);

std::string projection_variant_name(ProjectionVariant v);

Json json_of(const EstimateWithError& e);
Json json_of(const ManifoldModel& m);
Json json_of(const CurvatureBounds& b);
Json scenario_json(const ScenarioConfig& cfg);

// full report documents; deterministic fields only, no timestamps or paths
Json report_json(const InequalityReport& r, const ScenarioConfig& cfg);
Json report_json(const HeatReport& r, const ScenarioConfig& cfg);

// CSV: RFC-style quoting, one schema per task kind
std::string csv_row(const std::vector<std::string>& cells);
std::string inequality_csv_header();
std::string inequality_csv_row(const InequalityReport& r,
                               const ScenarioConfig& cfg);
std::string heat_csv_header();
std::string heat_csv_row(const HeatReport& r, const ScenarioConfig& cfg);

// one row of the constants table, derived entirely from (bounds, T)
struct ConstantsRow {
  double K1 = 0, K2 = 0, sigma1 = 0, sigma2 = 0, T = 0;
  double lambda_sup = 0, t_star = 0, spectral_bound = 0, heat_c = 0;
  bool grid_fallback = false;
};
ConstantsRow make_constants_row(double K1, double K2, double sigma1,
                                double sigma2, double T);
std::string constants_csv_header();
std::string constants_csv_row(const ConstantsRow& row);

void write_text_file(const std::string& path, const std::string& body);

}  // namespace pathspace
