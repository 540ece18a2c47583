#pragma once

#include <array>
#include <filesystem>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "amortis/annuity.hpp"

namespace amortis {

inline constexpr std::string_view kMetricsCsvHeader =
    "Duration,Monthly_Payment,Total_Debt,Relative_Increase,Debt_Ratio,Repayment_Capacity,"
    "Risk_Index";

inline constexpr int kAnnexe1Rows = 41;

// A reference metrics table. Durations increase by exactly one year per row.
struct GoldenTable {
  std::vector<MetricsRow> rows;
  std::string source;

  void validate() const;
};

/// Parses the metrics CSV layout (header must match kMetricsCsvHeader).
/// Errors carry the offending line number.
GoldenTable parse_golden_csv(std::string_view text, std::string source);
GoldenTable load_golden_csv(const std::filesystem::path& path);

/// The committed 41-row reference table, compiled into the library.
const GoldenTable& annexe1_table();

struct WeightFit {
  RiskWeights weights;
  double max_residual = 0.0;
  // Estimated condition number of the normal matrix X^T X.
  double condition_number = 0.0;
  std::vector<std::string> warnings;
};

/// Least-squares fit of I_r = w . [R_d, A, C_r, N/max(N)] over every row.
/// Throws CalibrationError when the regressors are rank deficient.
WeightFit fit_risk_weights(const GoldenTable& table, int max_term_months);

struct IncomeEstimate {
  double monthly_income = 0.0;  // mean of M / R_d
  double spread = 0.0;          // max - min of M / R_d
};

IncomeEstimate infer_monthly_income(const GoldenTable& table);

struct RateBracket {
  double low = 0.001;
  double high = 0.2;
};

struct RateEstimate {
  double rate = 0.0;
  double residual = 0.0;  // max |M(rate) - table M| over all rows, euros
};

/// Bisects for the annual rate whose installment reproduces the first row.
RateEstimate infer_loan_rate(const GoldenTable& table, double principal,
                             RateBracket bracket = {});

struct CalibrationReport {
  RiskWeights fitted_weights;
  double weight_residual_max = 0.0;
  double implied_monthly_income = 0.0;
  double income_spread = 0.0;
  double implied_rate = 0.0;
  double rate_residual = 0.0;
  double condition_number = 0.0;
  std::vector<std::string> warnings;
};

CalibrationReport calibrate(const GoldenTable& table, double principal, int max_term_months,
                            RateBracket bracket = {});

enum class Column : std::size_t {
  MonthlyPayment,
  TotalDebt,
  RelativeIncrease,
  DebtRatio,
  RepaymentCapacity,
  RiskIndex,
};
inline constexpr std::size_t kColumnCount = 6;
std::string_view column_name(Column column);
double column_value(const MetricsRow& row, Column column);

// Absolute tolerances, one per metrics column, at the reference table's
// printed precision.
struct ColumnTolerances {
  std::array<double, kColumnCount> values{5e-4, 0.1, 1e-4, 1e-6, 1e-5, 1e-5};

  double operator[](Column c) const { return values[static_cast<std::size_t>(c)]; }
};

struct RowCheck {
  int duration_years = 0;
  std::array<bool, kColumnCount> column_pass{};
  bool pass = true;
};

struct VerificationReport {
  std::array<double, kColumnCount> max_abs_error{};
  std::array<bool, kColumnCount> column_pass{};
  std::vector<RowCheck> rows;
  bool pass = true;
  bool paper_compat = false;
};

VerificationReport verify_golden(std::span<const MetricsRow> computed, const GoldenTable& golden,
                                 const ColumnTolerances& tolerances = {},
                                 bool paper_compat = false);

}  // namespace amortis
