#include "amortis/scenario.hpp"

#include <fmt/core.h>
#include <fstream>
#include <set>
#include <sstream>

namespace amortis {

using detail::require;
using nlohmann::ordered_json;

void Scenario::validate() const {
  require(!name.empty(), "scenario name must be non-empty");
  household.validate();
  require(std::isfinite(loan_rate) && loan_rate >= 0.0, "loan_rate must be >= 0");
  require(std::isfinite(market_rate), "market_rate must be finite");
  require(std::isfinite(property_price) && property_price > 0.0, "property_price must be > 0");
  macro_indicators().validate();
  demand_coeffs.validate();
  supply_coeffs.validate();
  weights.validate();
  years.validate();
  require(years.last <= 80, "years.last must be <= 80");
  require(years.last * kMonthsPerYear <= weights.max_term_months,
          fmt::format("years.last = {} exceeds weights.max_term_months = {}", years.last,
                      weights.max_term_months));
  if (monthly_income_override) {
    require(std::isfinite(*monthly_income_override) && *monthly_income_override > 0.0,
            "monthly_income_override must be > 0");
  }
}

MacroIndicators Scenario::macro_indicators() const {
  MacroIndicators m = macro;
  m.market_rate = market_rate;
  return m;
}

namespace {

Scenario baseline_scenario() {
  Scenario s;
  s.name = "paper-baseline";
  s.household = {50'000.0, 0.30};
  s.loan_rate = 0.035;
  s.market_rate = 0.035;
  s.property_price = 190'680.0;
  s.macro = baseline_macro_indicators();
  s.demand_coeffs = baseline_demand_coefficients();
  s.supply_coeffs = baseline_supply_coefficients();
  s.weights = {};
  s.years = {20, 60, 5};
  return s;
}

}  // namespace

std::vector<std::string_view> preset_names() {
  return {"paper-baseline", "paper-annexe1", "paper-text", "paper-alt-n60"};
}

Scenario preset(std::string_view name) {
  Scenario s = baseline_scenario();
  if (name == "paper-baseline") return s;
  if (name == "paper-annexe1") {
    s.name = "paper-annexe1";
    s.loan_rate = 0.039;
    // 48 636 euros a year; the only constant that reproduces every
    // Debt_Ratio and Repayment_Capacity in the reference table.
    s.monthly_income_override = 4053.0;
    s.years = {20, 60, 1};
    return s;
  }
  if (name == "paper-text") {
    s.name = "paper-text";
    s.years = {20, 60, 1};
    return s;
  }
  if (name == "paper-alt-n60") {
    s.name = "paper-alt-n60";
    s.demand_coeffs = alternate_demand_coefficients();
    s.years = {60, 60, 1};
    return s;
  }
  std::string known;
  for (auto n : preset_names()) known += fmt::format("{}{}", known.empty() ? "" : ", ", n);
  throw InputError(fmt::format("unknown preset '{}' (known: {})", name, known));
}

namespace {

// Reads a JSON object field by field, remembering which keys were consumed
// so leftovers can be reported as typos.
class ObjectReader {
 public:
  ObjectReader(const ordered_json& object, std::string path) : object_(object), path_(std::move(path)) {
    if (!object_.is_object()) throw InputError(fmt::format("{}: expected an object", path_));
  }

  double number(const std::string& key) {
    const ordered_json& v = at(key);
    if (!v.is_number()) throw InputError(fmt::format("{}: expected a number", field(key)));
    return v.get<double>();
  }

  int integer(const std::string& key) {
    const ordered_json& v = at(key);
    if (!v.is_number_integer()) {
      throw InputError(fmt::format("{}: expected an integer", field(key)));
    }
    return v.get<int>();
  }

  std::string string(const std::string& key) {
    const ordered_json& v = at(key);
    if (!v.is_string()) throw InputError(fmt::format("{}: expected a string", field(key)));
    return v.get<std::string>();
  }

  std::optional<double> optional_number(const std::string& key) {
    if (!object_.contains(key)) return std::nullopt;
    const ordered_json& v = at(key);
    if (v.is_null()) return std::nullopt;
    if (!v.is_number()) throw InputError(fmt::format("{}: expected a number or null", field(key)));
    return v.get<double>();
  }

  bool optional_bool(const std::string& key, bool fallback) {
    if (!object_.contains(key)) return fallback;
    const ordered_json& v = at(key);
    if (!v.is_boolean()) throw InputError(fmt::format("{}: expected true or false", field(key)));
    return v.get<bool>();
  }

  ObjectReader child(const std::string& key) { return ObjectReader(at(key), field(key)); }

  void finish() const {
    for (const auto& [key, value] : object_.items()) {
      if (!seen_.contains(key)) throw InputError(fmt::format("{}: unknown field", field(key)));
    }
  }

  std::string field(const std::string& key) const {
    return path_.empty() ? key : path_ + "." + key;
  }

 private:
  const ordered_json& at(const std::string& key) {
    if (!object_.contains(key)) throw InputError(fmt::format("{}: missing field", field(key)));
    seen_.insert(key);
    return object_.at(key);
  }

  const ordered_json& object_;
  std::string path_;
  std::set<std::string> seen_;
};

// Runs a component validate() and prefixes any failure with the JSON path.
template <typename T>
void validate_at(const T& value, const std::string& path) {
  try {
    value.validate();
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", path, e.what()));
  }
}

}  // namespace

Scenario parse_scenario_json(std::string_view text, const std::string& source) {
  ordered_json doc;
  try {
    doc = ordered_json::parse(text);
  } catch (const ordered_json::parse_error& e) {
    throw InputError(fmt::format("{}: {}", source, e.what()));
  }

  try {
    Scenario s;
    ObjectReader root(doc, "");
    s.name = root.string("name");

    ObjectReader household = root.child("household");
    s.household.annual_income = household.number("annual_income");
    s.household.contribution_rate = household.number("contribution_rate");
    household.finish();
    validate_at(s.household, "household");

    s.loan_rate = root.number("loan_rate");
    s.market_rate = root.number("market_rate");
    s.property_price = root.number("property_price");

    ObjectReader macro = root.child("macro");
    s.macro.gdp = macro.number("gdp");
    s.macro.price_index = macro.number("price_index");
    s.macro.inflation = macro.number("inflation");
    macro.finish();

    ObjectReader demand = root.child("demand_coeffs");
    s.demand_coeffs.alpha = demand.number("alpha");
    s.demand_coeffs.beta_income = demand.number("beta_income");
    s.demand_coeffs.beta_rate = demand.number("beta_rate");
    s.demand_coeffs.beta_price = demand.number("beta_price");
    s.demand_coeffs.beta_term = demand.number("beta_term");
    s.demand_coeffs.c = demand.number("c");
    demand.finish();

    ObjectReader supply = root.child("supply_coeffs");
    s.supply_coeffs.alpha = supply.number("alpha");
    s.supply_coeffs.beta_rate = supply.number("beta_rate");
    s.supply_coeffs.beta_gdp = supply.number("beta_gdp");
    s.supply_coeffs.beta_index = supply.number("beta_index");
    s.supply_coeffs.beta_inflation = supply.number("beta_inflation");
    s.supply_coeffs.beta_demand = supply.number("beta_demand");
    s.supply_coeffs.beta_term = supply.number("beta_term");
    supply.finish();

    ObjectReader weights = root.child("weights");
    s.weights.debt_ratio = weights.number("debt_ratio");
    s.weights.relative_increase = weights.number("relative_increase");
    s.weights.repayment_capacity = weights.number("repayment_capacity");
    s.weights.term = weights.number("term");
    s.weights.max_term_months = weights.integer("max_term_months");
    weights.finish();
    validate_at(s.weights, "weights");

    ObjectReader years = root.child("years");
    s.years.first = years.integer("first");
    s.years.last = years.integer("last");
    s.years.step = years.integer("step");
    years.finish();
    validate_at(s.years, "years");

    s.monthly_income_override = root.optional_number("monthly_income_override");
    s.paper_compat = root.optional_bool("paper_compat", false);
    root.finish();

    s.validate();
    return s;
  } catch (const InputError& e) {
    throw InputError(fmt::format("{}: {}", source, e.what()));
  }
}

Scenario load_scenario_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError(fmt::format("cannot open scenario file {}", path.string()));
  std::ostringstream buffer;
  buffer << in.rdbuf();
  return parse_scenario_json(buffer.str(), path.string());
}

ordered_json to_json(const Scenario& s) {
  ordered_json j;
  j["name"] = s.name;
  j["household"] = {{"annual_income", s.household.annual_income},
                    {"contribution_rate", s.household.contribution_rate}};
  j["loan_rate"] = s.loan_rate;
  j["market_rate"] = s.market_rate;
  j["property_price"] = s.property_price;
  j["macro"] = {{"gdp", s.macro.gdp},
                {"price_index", s.macro.price_index},
                {"inflation", s.macro.inflation}};
  j["demand_coeffs"] = {{"alpha", s.demand_coeffs.alpha},
                        {"beta_income", s.demand_coeffs.beta_income},
                        {"beta_rate", s.demand_coeffs.beta_rate},
                        {"beta_price", s.demand_coeffs.beta_price},
                        {"beta_term", s.demand_coeffs.beta_term},
                        {"c", s.demand_coeffs.c}};
  j["supply_coeffs"] = {{"alpha", s.supply_coeffs.alpha},
                        {"beta_rate", s.supply_coeffs.beta_rate},
                        {"beta_gdp", s.supply_coeffs.beta_gdp},
                        {"beta_index", s.supply_coeffs.beta_index},
                        {"beta_inflation", s.supply_coeffs.beta_inflation},
                        {"beta_demand", s.supply_coeffs.beta_demand},
                        {"beta_term", s.supply_coeffs.beta_term}};
  j["weights"] = {{"debt_ratio", s.weights.debt_ratio},
                  {"relative_increase", s.weights.relative_increase},
                  {"repayment_capacity", s.weights.repayment_capacity},
                  {"term", s.weights.term},
                  {"max_term_months", s.weights.max_term_months}};
  j["years"] = {{"first", s.years.first}, {"last", s.years.last}, {"step", s.years.step}};
  j["monthly_income_override"] =
      s.monthly_income_override ? ordered_json(*s.monthly_income_override) : ordered_json(nullptr);
  j["paper_compat"] = s.paper_compat;
  return j;
}

}  // namespace amortis
