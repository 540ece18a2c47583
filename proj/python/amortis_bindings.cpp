#include <pybind11/pybind11.h>
#include <pybind11/stl.h>
#include <pybind11/stl/filesystem.h>

#include <sstream>

#include "amortis/annuity.hpp"
#include "amortis/calibration.hpp"
#include "amortis/commands.hpp"
#include "amortis/market.hpp"
#include "amortis/report.hpp"
#include "amortis/scenario.hpp"

namespace py = pybind11;
using namespace amortis;

namespace {

// Full-precision JSON text of a report, for callers that want dicts.
std::string report_json(const Scenario& s) { return to_json(build_report(s)).dump(); }

py::tuple run_cli(const CommandOptions& options) {
  std::ostringstream out;
  std::ostringstream err;
  const int status = run_command(options, out, err);
  return py::make_tuple(status, out.str(), err.str());
}

}  // namespace

PYBIND11_MODULE(_core, m) {
  m.doc() = "Mortgage amortization and housing-credit market simulator";

  py::register_exception<InputError>(m, "InputError", PyExc_ValueError);
  py::register_exception<CalibrationError>(m, "CalibrationError", PyExc_RuntimeError);

  py::class_<LoanTerms>(m, "LoanTerms")
      .def(py::init([](double principal, double annual_rate, int payments_per_year,
                       int term_months) {
             return LoanTerms{principal, annual_rate, payments_per_year, term_months};
           }),
           py::arg("principal"), py::arg("annual_rate"), py::arg("payments_per_year") = 12,
           py::arg("term_months"))
      .def_readwrite("principal", &LoanTerms::principal)
      .def_readwrite("annual_rate", &LoanTerms::annual_rate)
      .def_readwrite("payments_per_year", &LoanTerms::payments_per_year)
      .def_readwrite("term_months", &LoanTerms::term_months);

  py::class_<HouseholdProfile>(m, "HouseholdProfile")
      .def(py::init([](double income, double contribution) {
             return HouseholdProfile{income, contribution};
           }),
           py::arg("annual_income"), py::arg("contribution_rate"))
      .def_readwrite("annual_income", &HouseholdProfile::annual_income)
      .def_readwrite("contribution_rate", &HouseholdProfile::contribution_rate);

  py::class_<RiskWeights>(m, "RiskWeights")
      .def(py::init([](double w1, double w2, double w3, double w4, int max_term) {
             return RiskWeights{w1, w2, w3, w4, max_term};
           }),
           py::arg("debt_ratio") = 0.25, py::arg("relative_increase") = 0.25,
           py::arg("repayment_capacity") = 0.25, py::arg("term") = 0.25,
           py::arg("max_term_months") = 720)
      .def_readwrite("debt_ratio", &RiskWeights::debt_ratio)
      .def_readwrite("relative_increase", &RiskWeights::relative_increase)
      .def_readwrite("repayment_capacity", &RiskWeights::repayment_capacity)
      .def_readwrite("term", &RiskWeights::term)
      .def_readwrite("max_term_months", &RiskWeights::max_term_months);

  py::class_<MetricsRow>(m, "MetricsRow")
      .def_readonly("duration_years", &MetricsRow::duration_years)
      .def_readonly("monthly_payment", &MetricsRow::monthly_payment)
      .def_readonly("total_debt", &MetricsRow::total_debt)
      .def_readonly("relative_increase", &MetricsRow::relative_increase)
      .def_readonly("debt_ratio", &MetricsRow::debt_ratio)
      .def_readonly("repayment_capacity", &MetricsRow::repayment_capacity)
      .def_readonly("risk_index", &MetricsRow::risk_index);

  py::class_<ScheduleEntry>(m, "ScheduleEntry")
      .def_readonly("period", &ScheduleEntry::period)
      .def_readonly("payment", &ScheduleEntry::payment)
      .def_readonly("interest_paid", &ScheduleEntry::interest_paid)
      .def_readonly("principal_paid", &ScheduleEntry::principal_paid)
      .def_readonly("balance", &ScheduleEntry::balance);

  m.def("monthly_payment", &monthly_payment, py::arg("terms"));
  m.def("total_debt", &total_debt, py::arg("monthly_payment"), py::arg("term_months"));
  m.def("relative_cost_increase", &relative_cost_increase, py::arg("total_debt"),
        py::arg("reference_debt"));
  m.def("debt_ratio", &debt_ratio, py::arg("monthly_payment"), py::arg("monthly_income"));
  m.def("repayment_capacity", &repayment_capacity, py::arg("debt_ratio"));
  m.def("risk_index", &risk_index, py::arg("debt_ratio"), py::arg("relative_increase"),
        py::arg("repayment_capacity"), py::arg("term_months"), py::arg("weights"));
  m.def("amortization_schedule", &amortization_schedule, py::arg("terms"));
  m.def("build_metrics_table", &build_metrics_table, py::arg("profile"), py::arg("loan_rate"),
        py::arg("price"), py::arg("first_year"), py::arg("last_year"),
        py::arg("weights") = RiskWeights{}, py::arg("monthly_income_override") = py::none());

  py::class_<YearRange>(m, "YearRange")
      .def(py::init([](int first, int last, int step) { return YearRange{first, last, step}; }),
           py::arg("first"), py::arg("last"), py::arg("step") = 1)
      .def_readwrite("first", &YearRange::first)
      .def_readwrite("last", &YearRange::last)
      .def_readwrite("step", &YearRange::step);

  py::class_<DemandCoefficients>(m, "DemandCoefficients")
      .def_readwrite("alpha", &DemandCoefficients::alpha)
      .def_readwrite("beta_income", &DemandCoefficients::beta_income)
      .def_readwrite("beta_rate", &DemandCoefficients::beta_rate)
      .def_readwrite("beta_price", &DemandCoefficients::beta_price)
      .def_readwrite("beta_term", &DemandCoefficients::beta_term)
      .def_readwrite("c", &DemandCoefficients::c);
  py::class_<SupplyCoefficients>(m, "SupplyCoefficients")
      .def_readwrite("alpha", &SupplyCoefficients::alpha)
      .def_readwrite("beta_rate", &SupplyCoefficients::beta_rate)
      .def_readwrite("beta_gdp", &SupplyCoefficients::beta_gdp)
      .def_readwrite("beta_index", &SupplyCoefficients::beta_index)
      .def_readwrite("beta_inflation", &SupplyCoefficients::beta_inflation)
      .def_readwrite("beta_demand", &SupplyCoefficients::beta_demand)
      .def_readwrite("beta_term", &SupplyCoefficients::beta_term);
  py::class_<MacroIndicators>(m, "MacroIndicators")
      .def_readwrite("gdp", &MacroIndicators::gdp)
      .def_readwrite("price_index", &MacroIndicators::price_index)
      .def_readwrite("inflation", &MacroIndicators::inflation)
      .def_readwrite("market_rate", &MacroIndicators::market_rate);
  py::class_<MarketPoint>(m, "MarketPoint")
      .def_readonly("term_months", &MarketPoint::term_months)
      .def_readonly("demand", &MarketPoint::demand)
      .def_readonly("supply_raw", &MarketPoint::supply_raw)
      .def_readonly("supply_loans", &MarketPoint::supply_loans)
      .def_readonly("demand_step_variation", &MarketPoint::demand_step_variation)
      .def_readonly("supply_step_variation", &MarketPoint::supply_step_variation)
      .def_readonly("gap_ratio", &MarketPoint::gap_ratio);
  py::class_<MarketGap>(m, "MarketGap")
      .def_readonly("difference", &MarketGap::difference)
      .def_readonly("ratio", &MarketGap::ratio)
      .def_readonly("balanced", &MarketGap::balanced);

  m.def("baseline_demand_coefficients", &baseline_demand_coefficients);
  m.def("alternate_demand_coefficients", &alternate_demand_coefficients);
  m.def("baseline_supply_coefficients", &baseline_supply_coefficients);
  m.def("baseline_macro_indicators", &baseline_macro_indicators);
  m.def("discounted_price", &discounted_price, py::arg("price"), py::arg("contribution_rate"));
  m.def("demand", &demand, py::arg("coeffs"), py::arg("income"), py::arg("rate"),
        py::arg("price"), py::arg("term_months"));
  m.def("supply_raw", &supply_raw, py::arg("coeffs"), py::arg("indicators"), py::arg("demand"),
        py::arg("term_months"));
  m.def("supply_loans", &supply_loans, py::arg("supply_raw"), py::arg("discounted_price"));
  m.def("sweep_market", &sweep_market, py::arg("demand_coeffs"), py::arg("supply_coeffs"),
        py::arg("indicators"), py::arg("profile"), py::arg("price"), py::arg("years"),
        py::arg("paper_compat") = false);
  m.def("market_gap", &market_gap, py::arg("point"), py::arg("epsilon") = 1.0);

  py::class_<GoldenTable>(m, "GoldenTable")
      .def_readonly("rows", &GoldenTable::rows)
      .def_readonly("source", &GoldenTable::source);
  py::class_<WeightFit>(m, "WeightFit")
      .def_readonly("weights", &WeightFit::weights)
      .def_readonly("max_residual", &WeightFit::max_residual)
      .def_readonly("condition_number", &WeightFit::condition_number)
      .def_readonly("warnings", &WeightFit::warnings);
  py::class_<IncomeEstimate>(m, "IncomeEstimate")
      .def_readonly("monthly_income", &IncomeEstimate::monthly_income)
      .def_readonly("spread", &IncomeEstimate::spread);
  py::class_<RateBracket>(m, "RateBracket")
      .def(py::init([](double lo, double hi) { return RateBracket{lo, hi}; }), py::arg("low"),
           py::arg("high"));
  py::class_<RateEstimate>(m, "RateEstimate")
      .def_readonly("rate", &RateEstimate::rate)
      .def_readonly("residual", &RateEstimate::residual);
  py::class_<VerificationReport>(m, "VerificationReport")
      .def_readonly("max_abs_error", &VerificationReport::max_abs_error)
      .def_readonly("pass_", &VerificationReport::pass)
      .def_readonly("paper_compat", &VerificationReport::paper_compat);

  m.def("annexe1_table", &annexe1_table, py::return_value_policy::copy);
  m.def("load_golden_csv", &load_golden_csv, py::arg("path"));
  m.def("fit_risk_weights", &fit_risk_weights, py::arg("table"), py::arg("max_term_months") = 720);
  m.def("infer_monthly_income", &infer_monthly_income, py::arg("table"));
  m.def("infer_loan_rate", &infer_loan_rate, py::arg("table"), py::arg("principal"),
        py::arg("bracket") = RateBracket{});
  m.def(
      "verify_golden",
      [](const std::vector<MetricsRow>& computed, const GoldenTable& golden, bool compat) {
        return verify_golden(computed, golden, {}, compat);
      },
      py::arg("computed"), py::arg("golden"), py::arg("paper_compat") = false);

  py::class_<Scenario>(m, "Scenario")
      .def_readwrite("name", &Scenario::name)
      .def_readwrite("household", &Scenario::household)
      .def_readwrite("loan_rate", &Scenario::loan_rate)
      .def_readwrite("market_rate", &Scenario::market_rate)
      .def_readwrite("property_price", &Scenario::property_price)
      .def_readwrite("weights", &Scenario::weights)
      .def_readwrite("years", &Scenario::years)
      .def_readwrite("monthly_income_override", &Scenario::monthly_income_override)
      .def_readwrite("paper_compat", &Scenario::paper_compat)
      .def("validate", &Scenario::validate)
      .def("to_json", [](const Scenario& s) { return to_json(s).dump(); });
  m.def("preset", [](const std::string& name) { return preset(name); }, py::arg("name"));
  m.def("preset_names", [] {
    std::vector<std::string> names;
    for (auto n : preset_names()) names.emplace_back(n);
    return names;
  });
  m.def("parse_scenario_json",
        [](const std::string& text) { return parse_scenario_json(text); }, py::arg("text"));
  m.def("run_market", &run_market, py::arg("scenario"));
  m.def("run_metrics", &run_metrics, py::arg("scenario"));
  m.def("report_json", &report_json, py::arg("scenario"));

  py::class_<CommandOptions>(m, "CommandOptions")
      .def(py::init<>())
      .def_readwrite("command", &CommandOptions::command)
      .def_readwrite("scenario_path", &CommandOptions::scenario_path)
      .def_readwrite("preset", &CommandOptions::preset)
      .def_readwrite("format", &CommandOptions::format)
      .def_readwrite("out_dir", &CommandOptions::out_dir)
      .def_readwrite("plot", &CommandOptions::plot)
      .def_readwrite("paper_compat", &CommandOptions::paper_compat)
      .def_readwrite("fixture_path", &CommandOptions::fixture_path);
  m.def("run_command", &run_cli, py::arg("options"),
        "Runs a CLI command in-process; returns (exit_status, stdout, stderr).");
}
