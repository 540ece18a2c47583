#pragma once

#include <filesystem>
#include <nlohmann/json.hpp>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "amortis/annuity.hpp"
#include "amortis/market.hpp"

namespace amortis {

// Every input of a run: household, loan, macro context, model coefficients
// and the swept durations.
struct Scenario {
  std::string name;
  HouseholdProfile household;
  double loan_rate = 0.0;    // annuity rate
  double market_rate = 0.0;  // rate regressor of the demand and supply models
  double property_price = 0.0;
  // gdp, price_index and inflation; market_rate is mirrored from above.
  MacroIndicators macro;
  DemandCoefficients demand_coeffs;
  SupplyCoefficients supply_coeffs;
  RiskWeights weights;
  YearRange years;
  std::optional<double> monthly_income_override;
  bool paper_compat = false;

  void validate() const;
  MacroIndicators macro_indicators() const;
  double principal() const { return discounted_price(property_price, household.contribution_rate); }
  double monthly_income() const {
    return monthly_income_override.value_or(household.monthly_income());
  }
};

std::vector<std::string_view> preset_names();

/// Compiled-in scenario; throws InputError for unknown names.
Scenario preset(std::string_view name);

/// Parses and validates the JSON scenario schema. Unknown keys are rejected.
Scenario parse_scenario_json(std::string_view text, const std::string& source = "<scenario>");
Scenario load_scenario_file(const std::filesystem::path& path);

nlohmann::ordered_json to_json(const Scenario& scenario);

}  // namespace amortis
