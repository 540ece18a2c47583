#pragma once

#include <nlohmann/json.hpp>
#include <span>
#include <string>
#include <vector>

#include "amortis/calibration.hpp"
#include "amortis/market.hpp"
#include "amortis/scenario.hpp"

namespace amortis {

struct GapSummary {
  double first_difference = 0.0;
  double last_difference = 0.0;
  double first_ratio = 0.0;
  double last_ratio = 0.0;
  bool any_balanced = false;
  bool ratio_increasing = false;  // strictly, across the whole sweep
};

struct Headline {
  double cost_increase_at_max_term = 0.0;  // percent
  double payment_at_min_term = 0.0;
  double payment_at_max_term = 0.0;
  // Growth from the first to the last sweep point, percent.
  double demand_total_growth = 0.0;
  double supply_total_growth = 0.0;
};

struct Report {
  Scenario scenario;
  std::vector<MarketPoint> market;
  std::vector<MetricsRow> metrics;
  GapSummary gap;
  Headline headline;
};

/// Market sweep over scenario.years and a yearly metrics table over the same
/// span.
std::vector<MarketPoint> run_market(const Scenario& scenario);
std::vector<MetricsRow> run_metrics(const Scenario& scenario);
Report build_report(const Scenario& scenario);

// CSV at the reference tables' printed precision; JSON at full precision.
std::string market_csv(std::span<const MarketPoint> points);
std::string metrics_csv(std::span<const MetricsRow> rows);
std::string verification_csv(const VerificationReport& report, const ColumnTolerances& tolerances);
std::string calibration_csv(const CalibrationReport& report);
std::string summary_csv(const Report& report);

nlohmann::ordered_json to_json(std::span<const MarketPoint> points);
nlohmann::ordered_json to_json(std::span<const MetricsRow> rows);
nlohmann::ordered_json to_json(const VerificationReport& report, const ColumnTolerances& tolerances);
nlohmann::ordered_json to_json(const CalibrationReport& report);
nlohmann::ordered_json to_json(const Report& report);

/// Serialises JSON with a trailing newline.
std::string dump(const nlohmann::ordered_json& j);

}  // namespace amortis
