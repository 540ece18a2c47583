// End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
// exits non-zero if any criterion fails.

#include <chrono>
#include <cmath>
#include <filesystem>
#include <fmt/core.h>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "amortis/annuity.hpp"
#include "amortis/calibration.hpp"
#include "amortis/commands.hpp"
#include "amortis/market.hpp"
#include "amortis/report.hpp"
#include "amortis/scenario.hpp"

using namespace amortis;
namespace fs = std::filesystem;

namespace {

constexpr double kMaxSeconds = 1.0;

// Collects failed sub-checks for one criterion.
struct Checker {
  std::vector<std::string> failures;

  void near(const std::string& what, double actual, double expected, double tolerance) {
    const double error = std::abs(actual - expected);
    if (!(error <= tolerance)) {
      failures.push_back(fmt::format("{}: got {:.9g}, expected {:.9g} +/- {:g} (error {:.3g})",
                                     what, actual, expected, tolerance, error));
    }
  }
  void that(const std::string& what, bool ok) {
    if (!ok) failures.push_back(what);
  }
};

struct Criterion {
  std::string id;
  std::string title;
  std::function<void(Checker&)> body;
};

int run_cli(CommandOptions options, std::string* out = nullptr) {
  std::ostringstream o;
  std::ostringstream e;
  const int status = run_command(options, o, e);
  if (out) *out = o.str();
  return status;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

std::vector<MarketPoint> baseline_sweep(bool compat) {
  Scenario s = preset("paper-baseline");
  s.paper_compat = compat;
  return run_market(s);
}

void annexe1_reproduction(Checker& c) {
  CommandOptions o;
  o.command = "verify";
  o.preset = "paper-annexe1";
  c.that("verify --preset paper-annexe1 exits 0", run_cli(o) == kExitSuccess);

  const ColumnTolerances tol;
  const double stated[] = {0.0005, 0.1, 1e-4, 1e-6, 1e-5, 1e-5};
  for (std::size_t k = 0; k < kColumnCount; ++k) {
    c.that(fmt::format("{} tolerance pinned", column_name(static_cast<Column>(k))),
           tol.values[k] == stated[k]);
  }
  const auto rows = run_metrics(preset("paper-annexe1"));
  const VerificationReport report = verify_golden(rows, annexe1_table(), tol);
  c.that("41 reference rows", annexe1_table().rows.size() == 41 && report.rows.size() == 41);
  for (std::size_t k = 0; k < kColumnCount; ++k) {
    c.near(fmt::format("max error {}", column_name(static_cast<Column>(k))),
           report.max_abs_error[k], 0.0, stated[k]);
  }
  for (const RowCheck& row : report.rows) {
    c.that(fmt::format("row {} within tolerance", row.duration_years), row.pass);
  }
}

void headline_cost(Checker& c) {
  const auto rows = run_metrics(preset("paper-annexe1"));
  c.near("A at 60 years (%)", rows.back().relative_increase, 79.677898, 1e-4);
  c.near("M at 20 years", rows.front().monthly_payment, 801.82, 0.01);
  c.near("M at 60 years", rows.back().monthly_payment, 480.23, 0.01);
}

void baseline_market_point(Checker& c) {
  const auto dc = baseline_demand_coefficients();
  const auto sc = baseline_supply_coefficients();
  const auto macro = baseline_macro_indicators();
  const double d = demand(dc, 50000.0, 0.035, 190680.0, 240);
  c.near("D at 240 months", d, 733973.40, 0.01);

  const auto compat = baseline_sweep(true).front();
  c.near("compat S_raw (millions)", compat.supply_raw, 24077.917, 0.001);
  c.near("compat S_loans", compat.supply_loans, 180391.39, 0.5);
  c.near("compat S_raw via injected D", supply_raw(sc, macro, *printed_supply_demand(240), 240),
         24077.917, 0.001);

  const auto fresh = baseline_sweep(false).front();
  c.near("default S_raw (millions)", fresh.supply_raw, 24078.161, 0.001);
}

void table1_sweep(Checker& c) {
  const double demand_col[] = {733973.40,  913973.40,  1093973.40, 1273973.40, 1453973.40,
                               1633973.40, 1813973.40, 1993973.40, 2173973.40};
  const double supply_col[] = {180391.39, 203766.60, 227141.82, 250517.03, 273892.24,
                               297267.46, 320642.67, 344017.88, 367389.35};
  for (bool compat : {false, true}) {
    const std::string mode = compat ? "compat" : "default";
    const auto points = baseline_sweep(compat);
    c.that(mode + ": nine points", points.size() == 9);
    if (points.size() != 9) return;
    for (std::size_t k = 0; k < 9; ++k) {
      c.near(fmt::format("{} D at {}y", mode, 20 + 5 * k), points[k].demand, demand_col[k],
             0.01);
    }
    c.near(mode + " D variation at 25y (pp)", points[1].demand_step_variation.value_or(NAN),
           24.52, 0.01);
    c.near(mode + " S variation at 25y (pp)", points[1].supply_step_variation.value_or(NAN),
           12.96, 0.01);
    if (compat) {
      for (std::size_t k = 0; k < 8; ++k) {
        c.near(fmt::format("compat S at {}y", 20 + 5 * k), points[k].supply_loans,
               supply_col[k], 0.5);
      }
    }
    c.near(mode + " S at 60y", points[8].supply_loans, supply_col[8], compat ? 0.5 : 5.0);
  }
}

void alternate_demand(Checker& c) {
  const auto points = run_market(preset("paper-alt-n60"));
  c.that("single point", points.size() == 1);
  c.that("term 720", points.front().term_months == 720);
  c.near("alternate D at 720 months", points.front().demand, 3619579.42, 0.01);
}

void calibration_recovery(Checker& c) {
  const WeightFit fit = fit_risk_weights(annexe1_table(), 720);
  c.near("w debt_ratio", fit.weights.debt_ratio, 0.25, 1e-3);
  c.near("w relative_increase", fit.weights.relative_increase, 0.25, 1e-3);
  c.near("w repayment_capacity", fit.weights.repayment_capacity, 0.25, 1e-3);
  c.near("w term", fit.weights.term, 0.25, 1e-3);
  c.that(fmt::format("weight residual {:.3g} < 1e-3", fit.max_residual), fit.max_residual < 1e-3);
  const IncomeEstimate income = infer_monthly_income(annexe1_table());
  c.near("implied monthly income", income.monthly_income, 4052.99, 0.05);
  c.that(fmt::format("income spread {:.3g} < 0.05", income.spread), income.spread < 0.05);
  const RateEstimate rate = infer_loan_rate(annexe1_table(), 133476.0, {0.001, 0.2});
  c.near("implied loan rate", rate.rate, 0.039, 1e-4);
}

void oracle_properties(Checker& c) {
  std::mt19937_64 rng(1729);
  std::uniform_real_distribution<double> rate(0.0, 0.2);
  std::uniform_int_distribution<int> months(1, 960);
  std::uniform_real_distribution<double> principal(1e3, 1e7);
  double worst_balance = 0.0;
  double worst_total = 0.0;
  for (int k = 0; k < 1000; ++k) {
    const LoanTerms terms{principal(rng), rate(rng), 12, months(rng)};
    const auto schedule = amortization_schedule(terms);
    long double paid = 0.0L;
    for (const auto& e : schedule) {
      paid += static_cast<long double>(e.interest_paid) + e.principal_paid;
    }
    const double closed = total_debt(monthly_payment(terms), terms.term_months);
    worst_balance = std::max(worst_balance, std::abs(schedule.back().balance));
    worst_total = std::max(worst_total, std::abs(static_cast<double>(paid) - closed));
  }
  c.that(fmt::format("worst final balance {:.3g} < 0.01", worst_balance), worst_balance < 0.01);
  c.that(fmt::format("worst payment-total gap {:.3g} < 0.01", worst_total), worst_total < 0.01);

  c.that("zero-rate payment is P/N exactly",
         monthly_payment({133476.0, 0.0, 12, 240}) == 133476.0 / 240);
  const auto zero = amortization_schedule({133476.0, 0.0, 12, 240});
  bool equal_principal = true;
  for (const auto& e : zero) equal_principal = equal_principal && e.principal_paid == 133476.0 / 240;
  c.that("zero-rate schedule repays P/N each month", equal_principal);
  c.near("zero-rate final balance", zero.back().balance, 0.0, 1e-9);
  const auto one = amortization_schedule({100.0, 0.12, 12, 1});
  c.near("one-period payment", one.front().payment, 101.0, 1e-12);
  c.near("one-period final balance", one.front().balance, 0.0, 1e-12);
}

void model_properties(Checker& c) {
  const auto dc = baseline_demand_coefficients();
  const auto sc = baseline_supply_coefficients();
  const auto macro = baseline_macro_indicators();
  double worst_demand = 0.0;
  double worst_supply = 0.0;
  for (int n = 1; n <= 960; ++n) {
    for (int delta : {1, 5, 60, 480}) {
      const double d0 = demand(dc, 50000.0, 0.035, 190680.0, n);
      const double d1 = demand(dc, 50000.0, 0.035, 190680.0, n + delta);
      worst_demand = std::max(worst_demand, std::abs((d1 - d0) - dc.beta_term * delta) /
                                                std::max(1.0, std::abs(d1)));
      const double s0 = supply_raw(sc, macro, d0, n);
      const double s1 = supply_raw(sc, macro, d1, n + delta);
      const double expected = sc.beta_term * delta + sc.beta_demand * (d1 - d0);
      worst_supply = std::max(worst_supply, std::abs((s1 - s0) - expected) /
                                                std::max(1.0, std::abs(s1)));
    }
  }
  // Relative to the magnitude of the evaluated model: a few ulps.
  c.that(fmt::format("demand linearity residual {:.3g} <= 1e-15", worst_demand),
         worst_demand <= 1e-15);
  c.that(fmt::format("supply linearity residual {:.3g} <= 1e-15", worst_supply),
         worst_supply <= 1e-15);

  for (bool compat : {false, true}) {
    Scenario s = preset("paper-baseline");
    s.years.step = 1;
    s.paper_compat = compat;
    const auto points = run_market(s);
    bool increasing = true;
    for (std::size_t k = 1; k < points.size(); ++k) {
      increasing = increasing && points[k].gap_ratio > points[k - 1].gap_ratio;
    }
    c.that(fmt::format("gap ratio strictly increasing ({})", compat ? "compat" : "default"),
           increasing);
  }

  for (auto name : preset_names()) {
    for (const MetricsRow& row : run_metrics(preset(name))) {
      c.near(fmt::format("{} row {} R_d*C_r", name, row.duration_years),
             row.debt_ratio * row.repayment_capacity, 1.0, 1e-12);
    }
  }
}

void determinism(Checker& c) {
  const fs::path root = fs::temp_directory_path() / "amortis_acceptance_determinism";
  fs::remove_all(root);
  for (const char* format : {"csv", "json"}) {
    std::vector<fs::path> dirs;
    for (int run = 0; run < 2; ++run) {
      const fs::path dir = root / fmt::format("{}_{}", format, run);
      fs::create_directories(dir);
      CommandOptions o;
      o.command = "report";
      o.preset = "paper-annexe1";
      o.format = format;
      o.out_dir = dir;
      o.plot = true;
      c.that(fmt::format("report {} run {} exits 0", format, run), run_cli(o) == kExitSuccess);
      dirs.push_back(dir);
    }
    std::size_t files = 0;
    for (const auto& entry : fs::directory_iterator(dirs[0])) {
      ++files;
      const fs::path twin = dirs[1] / entry.path().filename();
      c.that(fmt::format("{} identical across runs", entry.path().filename().string()),
             fs::exists(twin) && slurp(entry.path()) == slurp(twin));
    }
    c.that(fmt::format("{} report emitted files", format), files > 0);
  }
  fs::remove_all(root);
}

}  // namespace

int main() {
  const std::vector<Criterion> criteria = {
      {"AC1", "reference metrics table reproduction", annexe1_reproduction},
      {"AC2", "headline cost increase and payment drop", headline_cost},
      {"AC3", "baseline market point", baseline_market_point},
      {"AC4", "market sweep 20..60 years", table1_sweep},
      {"AC5", "alternate demand point", alternate_demand},
      {"AC6", "calibration recovery", calibration_recovery},
      {"AC7", "schedule oracle property suite", oracle_properties},
      {"AC8", "model properties", model_properties},
      {"AC9", "report determinism", determinism},
  };

  int failed = 0;
  for (const Criterion& criterion : criteria) {
    Checker checker;
    const auto start = std::chrono::steady_clock::now();
    try {
      criterion.body(checker);
    } catch (const std::exception& e) {
      checker.failures.push_back(fmt::format("exception: {}", e.what()));
    }
    const double seconds =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    if (seconds > kMaxSeconds) {
      checker.failures.push_back(fmt::format("took {:.3f} s (limit {:.0f} s)", seconds, kMaxSeconds));
    }
    const bool pass = checker.failures.empty();
    failed += pass ? 0 : 1;
    fmt::print("[{}] {} {} ({:.3f} s)\n", pass ? "PASS" : "FAIL", criterion.id, criterion.title,
               seconds);
    for (const std::string& f : checker.failures) fmt::print("       - {}\n", f);
  }
  fmt::print("{} of {} criteria passed\n", criteria.size() - failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
