#include "amortis/market.hpp"

#include <cmath>
#include <fmt/core.h>
#include <initializer_list>

namespace amortis {

using detail::require;

namespace {

bool all_finite(std::initializer_list<double> values) {
  for (double v : values) {
    if (!std::isfinite(v)) return false;
  }
  return true;
}

double step_variation(double current, double previous) {
  return (current - previous) / previous * 100.0;
}

}  // namespace

void DemandCoefficients::validate() const {
  require(all_finite({alpha, beta_income, beta_rate, beta_price, beta_term, c}),
          "demand coefficients must be finite");
}

void SupplyCoefficients::validate() const {
  require(all_finite({alpha, beta_rate, beta_gdp, beta_index, beta_inflation, beta_demand,
                      beta_term}),
          "supply coefficients must be finite");
}

void MacroIndicators::validate() const {
  require(std::isfinite(gdp) && gdp > 0.0, "gdp must be > 0");
  require(std::isfinite(price_index) && price_index > 0.0, "price_index must be > 0");
  require(inflation >= 0.0 && inflation < 1.0, "inflation must lie in [0, 1)");
  require(std::isfinite(market_rate), "market_rate must be finite");
}

DemandCoefficients baseline_demand_coefficients() {
  return {20000.0, 0.001, -160000.0, -0.0025, 3000.0, 0.1};
}

DemandCoefficients alternate_demand_coefficients() {
  return {24000.0, 0.005, -128000.0, -0.0010, 5000.0, 0.1};
}

SupplyCoefficients baseline_supply_coefficients() {
  return {641.777, -50.0, 0.0025, 30.0, 100.0, 0.01, 22.0};
}

MacroIndicators baseline_macro_indicators() { return {2'779'000.0, 128.9, 0.039, 0.035}; }

std::optional<double> printed_supply_demand(int term_months) {
  switch (term_months) {
    case 240:
      return 733'949.0;
    case 720:
      return 2'173'923.0;
    default:
      return std::nullopt;
  }
}

double discounted_price(double price, double contribution_rate) {
  require(std::isfinite(price) && price > 0.0, "price must be > 0");
  require(contribution_rate >= 0.0 && contribution_rate < 1.0,
          fmt::format("contribution_rate must lie in [0, 1) (got {})", contribution_rate));
  return price * (1.0 - contribution_rate);
}

double demand(const DemandCoefficients& coeffs, double income, double rate, double price,
              int term_months) {
  coeffs.validate();
  require(term_months >= 1, "term_months must be >= 1");
  return coeffs.alpha + coeffs.beta_income * income + coeffs.beta_rate * rate +
         coeffs.beta_price * price + coeffs.beta_term * term_months + coeffs.c;
}

double supply_raw(const SupplyCoefficients& coeffs, const MacroIndicators& indicators,
                  double demand, int term_months) {
  coeffs.validate();
  require(term_months >= 1, "term_months must be >= 1");
  return coeffs.alpha + coeffs.beta_rate * indicators.market_rate +
         coeffs.beta_gdp * indicators.gdp + coeffs.beta_index * indicators.price_index +
         coeffs.beta_inflation * indicators.inflation + coeffs.beta_demand * demand +
         coeffs.beta_term * term_months;
}

double supply_loans(double supply_raw, double discounted_price) {
  require(discounted_price > 0.0, "discounted price must be > 0");
  return supply_raw * 1e6 / discounted_price;
}

std::vector<MarketPoint> sweep_market(const DemandCoefficients& demand_coeffs,
                                      const SupplyCoefficients& supply_coeffs,
                                      const MacroIndicators& indicators,
                                      const HouseholdProfile& profile, double price,
                                      const YearRange& years, bool paper_compat) {
  years.validate();
  profile.validate();
  indicators.validate();
  demand_coeffs.validate();
  supply_coeffs.validate();
  const double loan_price = discounted_price(price, profile.contribution_rate);

  std::vector<MarketPoint> points;
  for (int y = years.first; y <= years.last; y += years.step) {
    MarketPoint p;
    p.term_months = y * kMonthsPerYear;
    p.demand = demand(demand_coeffs, profile.annual_income, indicators.market_rate, price,
                      p.term_months);
    p.supply_raw = supply_raw(supply_coeffs, indicators, p.demand, p.term_months);
    points.push_back(p);
  }

  if (paper_compat) {
    auto printed_input = [&](const MarketPoint& p) {
      return supply_raw(supply_coeffs, indicators,
                        printed_supply_demand(p.term_months).value_or(p.demand), p.term_months);
    };
    MarketPoint& first = points.front();
    MarketPoint& last = points.back();
    const double anchor_first = printed_input(first);
    const double anchor_last = last.supply_raw;
    const double span = last.term_months - first.term_months;
    for (std::size_t k = 1; k + 1 < points.size(); ++k) {
      const double t = (points[k].term_months - first.term_months) / span;
      points[k].supply_raw = anchor_first + t * (anchor_last - anchor_first);
    }
    first.supply_raw = anchor_first;
    if (points.size() > 1) last.supply_raw = printed_input(last);
  }

  for (std::size_t k = 0; k < points.size(); ++k) {
    MarketPoint& p = points[k];
    p.supply_loans = supply_loans(p.supply_raw, loan_price);
    p.gap_ratio = p.supply_loans != 0.0 ? p.demand / p.supply_loans : 0.0;
    if (k == 0) continue;
    const MarketPoint& prev = points[k - 1];
    if (prev.demand != 0.0) p.demand_step_variation = step_variation(p.demand, prev.demand);
    if (prev.supply_loans != 0.0) {
      p.supply_step_variation = step_variation(p.supply_loans, prev.supply_loans);
    }
  }
  return points;
}

MarketGap market_gap(const MarketPoint& point, double epsilon) {
  require(point.supply_loans != 0.0, "gap ratio is undefined when supply_loans = 0");
  const double difference = point.demand - point.supply_loans;
  return {difference, point.demand / point.supply_loans, std::abs(difference) < epsilon};
}

}  // namespace amortis
