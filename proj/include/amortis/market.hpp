#pragma once

#include <optional>
#include <vector>

#include "amortis/annuity.hpp"
#include "amortis/common.hpp"

namespace amortis {

// Linear loan-demand model, in number of loan applications:
//   D = alpha + b_income*Y + b_rate*r + b_price*P + b_term*N + c
struct DemandCoefficients {
  double alpha = 0.0;
  double beta_income = 0.0;
  double beta_rate = 0.0;
  double beta_price = 0.0;
  double beta_term = 0.0;
  double c = 0.0;

  void validate() const;
};

// Linear bank-supply model, in millions of euros:
//   S = alpha + b_rate*r + b_gdp*GDP + b_index*IN + b_inflation*INF + b_demand*D + b_term*N
struct SupplyCoefficients {
  double alpha = 0.0;
  double beta_rate = 0.0;
  double beta_gdp = 0.0;
  double beta_index = 0.0;
  double beta_inflation = 0.0;
  double beta_demand = 0.0;
  double beta_term = 0.0;

  void validate() const;
};

struct MacroIndicators {
  double gdp = 0.0;          // millions of euros
  double price_index = 0.0;  // base 100
  double inflation = 0.0;    // fraction
  double market_rate = 0.0;  // fraction

  void validate() const;
};

struct MarketPoint {
  int term_months = 0;
  double demand = 0.0;        // loans
  double supply_raw = 0.0;    // millions of euros
  double supply_loans = 0.0;  // loans
  std::optional<double> demand_step_variation;  // percent vs. previous point
  std::optional<double> supply_step_variation;
  double gap_ratio = 0.0;  // demand / supply_loans
};

struct MarketGap {
  double difference = 0.0;  // demand - supply_loans
  double ratio = 0.0;
  bool balanced = false;
};

// Reference calibration.
DemandCoefficients baseline_demand_coefficients();
DemandCoefficients alternate_demand_coefficients();
SupplyCoefficients baseline_supply_coefficients();
MacroIndicators baseline_macro_indicators();

/// Demand figures that the reference supply computations were fed at 240 and
/// 720 months, which differ from the model's own demand by a digit slip.
/// Returns nothing for any other term.
std::optional<double> printed_supply_demand(int term_months);

double discounted_price(double price, double contribution_rate);

double demand(const DemandCoefficients& coeffs, double income, double rate, double price,
              int term_months);

double supply_raw(const SupplyCoefficients& coeffs, const MacroIndicators& indicators,
                  double demand, int term_months);

/// Converts a supply volume in millions of euros into a number of loans.
double supply_loans(double supply_raw, double discounted_price);

/// Demand and supply for terms of 12*y months, y stepping through `years`.
///
/// Each point's supply is fed the demand at the same term. In `paper_compat`
/// mode the series reproduces the reference supply figures instead: the
/// first and last points use the printed demand values where they exist, and
/// interior supply is filled linearly between the first point's printed-input
/// value and the last point's self-consistent value.
std::vector<MarketPoint> sweep_market(const DemandCoefficients& demand_coeffs,
                                      const SupplyCoefficients& supply_coeffs,
                                      const MacroIndicators& indicators,
                                      const HouseholdProfile& profile, double price,
                                      const YearRange& years, bool paper_compat = false);

MarketGap market_gap(const MarketPoint& point, double epsilon = 1.0);

}  // namespace amortis
