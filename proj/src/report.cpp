#include "amortis/report.hpp"

#include <fmt/core.h>

namespace amortis {

using nlohmann::ordered_json;

std::vector<MarketPoint> run_market(const Scenario& s) {
  s.validate();
  return sweep_market(s.demand_coeffs, s.supply_coeffs, s.macro_indicators(), s.household,
                      s.property_price, s.years, s.paper_compat);
}

std::vector<MetricsRow> run_metrics(const Scenario& s) {
  s.validate();
  return build_metrics_table(s.household, s.loan_rate, s.property_price, s.years.first,
                             s.years.last, s.weights, s.monthly_income_override);
}

Report build_report(const Scenario& scenario) {
  Report r;
  r.scenario = scenario;
  r.market = run_market(scenario);
  r.metrics = run_metrics(scenario);

  const MarketPoint& first = r.market.front();
  const MarketPoint& last = r.market.back();
  const MarketGap first_gap = market_gap(first);
  const MarketGap last_gap = market_gap(last);
  r.gap.first_difference = first_gap.difference;
  r.gap.first_ratio = first_gap.ratio;
  r.gap.last_difference = last_gap.difference;
  r.gap.last_ratio = last_gap.ratio;
  r.gap.ratio_increasing = true;
  for (std::size_t k = 0; k < r.market.size(); ++k) {
    r.gap.any_balanced = r.gap.any_balanced || market_gap(r.market[k]).balanced;
    if (k > 0 && !(r.market[k].gap_ratio > r.market[k - 1].gap_ratio)) {
      r.gap.ratio_increasing = false;
    }
  }

  r.headline.cost_increase_at_max_term = r.metrics.back().relative_increase;
  r.headline.payment_at_min_term = r.metrics.front().monthly_payment;
  r.headline.payment_at_max_term = r.metrics.back().monthly_payment;
  r.headline.demand_total_growth = (last.demand - first.demand) / first.demand * 100.0;
  r.headline.supply_total_growth =
      (last.supply_loans - first.supply_loans) / first.supply_loans * 100.0;
  return r;
}

namespace {

std::string optional_fixed(const std::optional<double>& v, int decimals) {
  return v ? fmt::format("{:.{}f}", *v, decimals) : std::string{};
}

ordered_json optional_json(const std::optional<double>& v) {
  return v ? ordered_json(*v) : ordered_json(nullptr);
}

}  // namespace

std::string market_csv(std::span<const MarketPoint> points) {
  std::string out = "Years,N,D,Variation_D,S_raw,S,Variation_S,Gap_Ratio\n";
  for (const MarketPoint& p : points) {
    out += fmt::format("{},{},{:.2f},{},{:.3f},{:.2f},{},{:.6f}\n", p.term_months / kMonthsPerYear,
                       p.term_months, p.demand, optional_fixed(p.demand_step_variation, 2),
                       p.supply_raw, p.supply_loans, optional_fixed(p.supply_step_variation, 2),
                       p.gap_ratio);
  }
  return out;
}

std::string metrics_csv(std::span<const MetricsRow> rows) {
  std::string out = std::string(kMetricsCsvHeader) + "\n";
  for (const MetricsRow& r : rows) {
    out += fmt::format("{},{:.4f},{:.1f},{:.6f},{:.7f},{:.6f},{:.6f}\n", r.duration_years,
                       r.monthly_payment, r.total_debt, r.relative_increase, r.debt_ratio,
                       r.repayment_capacity, r.risk_index);
  }
  return out;
}

std::string verification_csv(const VerificationReport& report,
                             const ColumnTolerances& tolerances) {
  std::string out = "Column,Max_Abs_Error,Tolerance,Pass\n";
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    const auto column = static_cast<Column>(c);
    out += fmt::format("{},{:.3e},{:.0e},{}\n", column_name(column), report.max_abs_error[c],
                       tolerances[column], report.column_pass[c] ? "true" : "false");
  }
  std::string failing;
  for (const RowCheck& row : report.rows) {
    if (!row.pass) failing += fmt::format("{}{}", failing.empty() ? "" : " ", row.duration_years);
  }
  out += fmt::format("Overall,,,{}\n", report.pass ? "true" : "false");
  out += fmt::format("Failing_Rows,,,{}\n", failing);
  return out;
}

std::string calibration_csv(const CalibrationReport& r) {
  std::string out = "Field,Value\n";
  out += fmt::format("w_debt_ratio,{:.6f}\n", r.fitted_weights.debt_ratio);
  out += fmt::format("w_relative_increase,{:.6f}\n", r.fitted_weights.relative_increase);
  out += fmt::format("w_repayment_capacity,{:.6f}\n", r.fitted_weights.repayment_capacity);
  out += fmt::format("w_term,{:.6f}\n", r.fitted_weights.term);
  out += fmt::format("max_term_months,{}\n", r.fitted_weights.max_term_months);
  out += fmt::format("weight_residual_max,{:.3e}\n", r.weight_residual_max);
  out += fmt::format("implied_monthly_income,{:.2f}\n", r.implied_monthly_income);
  out += fmt::format("income_spread,{:.4f}\n", r.income_spread);
  out += fmt::format("implied_rate,{:.6f}\n", r.implied_rate);
  out += fmt::format("rate_residual,{:.6f}\n", r.rate_residual);
  out += fmt::format("condition_number,{:.3e}\n", r.condition_number);
  return out;
}

std::string summary_csv(const Report& r) {
  std::string out = "Field,Value\n";
  out += fmt::format("scenario,{}\n", r.scenario.name);
  out += fmt::format("cost_increase_at_max_term,{:.6f}\n", r.headline.cost_increase_at_max_term);
  out += fmt::format("payment_at_min_term,{:.4f}\n", r.headline.payment_at_min_term);
  out += fmt::format("payment_at_max_term,{:.4f}\n", r.headline.payment_at_max_term);
  out += fmt::format("demand_total_growth,{:.2f}\n", r.headline.demand_total_growth);
  out += fmt::format("supply_total_growth,{:.2f}\n", r.headline.supply_total_growth);
  out += fmt::format("gap_first_difference,{:.2f}\n", r.gap.first_difference);
  out += fmt::format("gap_last_difference,{:.2f}\n", r.gap.last_difference);
  out += fmt::format("gap_first_ratio,{:.6f}\n", r.gap.first_ratio);
  out += fmt::format("gap_last_ratio,{:.6f}\n", r.gap.last_ratio);
  out += fmt::format("gap_any_balanced,{}\n", r.gap.any_balanced ? "true" : "false");
  out += fmt::format("gap_ratio_increasing,{}\n", r.gap.ratio_increasing ? "true" : "false");
  return out;
}

ordered_json to_json(std::span<const MarketPoint> points) {
  ordered_json arr = ordered_json::array();
  for (const MarketPoint& p : points) {
    arr.push_back({{"term_months", p.term_months},
                   {"demand", p.demand},
                   {"supply_raw", p.supply_raw},
                   {"supply_loans", p.supply_loans},
                   {"demand_step_variation", optional_json(p.demand_step_variation)},
                   {"supply_step_variation", optional_json(p.supply_step_variation)},
                   {"gap_ratio", p.gap_ratio}});
  }
  return arr;
}

ordered_json to_json(std::span<const MetricsRow> rows) {
  ordered_json arr = ordered_json::array();
  for (const MetricsRow& r : rows) {
    arr.push_back({{"duration_years", r.duration_years},
                   {"monthly_payment", r.monthly_payment},
                   {"total_debt", r.total_debt},
                   {"relative_increase", r.relative_increase},
                   {"debt_ratio", r.debt_ratio},
                   {"repayment_capacity", r.repayment_capacity},
                   {"risk_index", r.risk_index}});
  }
  return arr;
}

ordered_json to_json(const VerificationReport& report, const ColumnTolerances& tolerances) {
  ordered_json columns = ordered_json::object();
  for (std::size_t c = 0; c < kColumnCount; ++c) {
    const auto column = static_cast<Column>(c);
    columns[std::string(column_name(column))] = {{"max_abs_error", report.max_abs_error[c]},
                                                 {"tolerance", tolerances[column]},
                                                 {"pass", static_cast<bool>(report.column_pass[c])}};
  }
  ordered_json rows = ordered_json::array();
  for (const RowCheck& row : report.rows) {
    rows.push_back({{"duration_years", row.duration_years}, {"pass", row.pass}});
  }
  return {{"columns", columns},
          {"rows", rows},
          {"pass", report.pass},
          {"paper_compat", report.paper_compat}};
}

ordered_json to_json(const CalibrationReport& r) {
  return {{"fitted_weights",
           {{"debt_ratio", r.fitted_weights.debt_ratio},
            {"relative_increase", r.fitted_weights.relative_increase},
            {"repayment_capacity", r.fitted_weights.repayment_capacity},
            {"term", r.fitted_weights.term},
            {"max_term_months", r.fitted_weights.max_term_months}}},
          {"weight_residual_max", r.weight_residual_max},
          {"implied_monthly_income", r.implied_monthly_income},
          {"income_spread", r.income_spread},
          {"implied_rate", r.implied_rate},
          {"rate_residual", r.rate_residual},
          {"condition_number", r.condition_number},
          {"warnings", r.warnings}};
}

ordered_json to_json(const Report& r) {
  return {{"scenario", to_json(r.scenario)},
          {"market", to_json(std::span<const MarketPoint>(r.market))},
          {"metrics", to_json(std::span<const MetricsRow>(r.metrics))},
          {"gap",
           {{"first_difference", r.gap.first_difference},
            {"last_difference", r.gap.last_difference},
            {"first_ratio", r.gap.first_ratio},
            {"last_ratio", r.gap.last_ratio},
            {"any_balanced", r.gap.any_balanced},
            {"ratio_increasing", r.gap.ratio_increasing}}},
          {"headline",
           {{"cost_increase_at_max_term", r.headline.cost_increase_at_max_term},
            {"payment_at_min_term", r.headline.payment_at_min_term},
            {"payment_at_max_term", r.headline.payment_at_max_term},
            {"demand_total_growth", r.headline.demand_total_growth},
            {"supply_total_growth", r.headline.supply_total_growth}}}};
}

std::string dump(const ordered_json& j) { return j.dump(2) + "\n"; }

}  // namespace amortis
