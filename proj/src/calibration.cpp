#include "amortis/calibration.hpp"

#include <algorithm>
#include <cmath>
#include <fmt/core.h>
#include <limits>

namespace amortis {

using detail::require;

namespace {

constexpr std::size_t kUnknowns = 4;
constexpr double kConditionWarning = 1e8;
constexpr double kRankTolerance = 1e-10;

using Square = std::array<std::array<double, kUnknowns>, kUnknowns>;

double norm1(const Square& m) {
  double best = 0.0;
  for (std::size_t j = 0; j < kUnknowns; ++j) {
    double sum = 0.0;
    for (std::size_t i = 0; i < kUnknowns; ++i) sum += std::abs(m[i][j]);
    best = std::max(best, sum);
  }
  return best;
}

// Inverse of an upper-triangular matrix with non-zero diagonal.
Square invert_upper(const Square& r) {
  Square inv{};
  for (std::size_t j = 0; j < kUnknowns; ++j) {
    inv[j][j] = 1.0 / r[j][j];
    for (std::size_t i = j; i-- > 0;) {
      double sum = 0.0;
      for (std::size_t k = i + 1; k <= j; ++k) sum += r[i][k] * inv[k][j];
      inv[i][j] = -sum / r[i][i];
    }
  }
  return inv;
}

std::array<double, kUnknowns> regressors(const MetricsRow& row, int max_term_months) {
  const double normalized_term =
      static_cast<double>(row.duration_years * kMonthsPerYear) / max_term_months;
  return {row.debt_ratio, row.relative_increase, row.repayment_capacity, normalized_term};
}

}  // namespace

WeightFit fit_risk_weights(const GoldenTable& table, int max_term_months) {
  require(max_term_months >= 1, "max_term_months must be >= 1");
  const std::size_t n = table.rows.size();
  if (n < kUnknowns) {
    throw CalibrationError(fmt::format("need at least {} rows to fit risk weights, got {}",
                                       kUnknowns, n));
  }

  // Column-equilibrated Householder QR of the n x 4 design matrix.
  std::vector<std::array<double, kUnknowns>> x(n);
  std::vector<double> y(n);
  std::array<double, kUnknowns> scale{};
  for (std::size_t i = 0; i < n; ++i) {
    x[i] = regressors(table.rows[i], max_term_months);
    y[i] = table.rows[i].risk_index;
    for (std::size_t j = 0; j < kUnknowns; ++j) scale[j] = std::max(scale[j], std::abs(x[i][j]));
  }
  for (std::size_t j = 0; j < kUnknowns; ++j) {
    if (scale[j] == 0.0) throw CalibrationError("risk-index regressors are rank deficient");
  }
  for (auto& row : x) {
    for (std::size_t j = 0; j < kUnknowns; ++j) row[j] /= scale[j];
  }

  std::vector<double> v(n);
  for (std::size_t k = 0; k < kUnknowns; ++k) {
    double norm = 0.0;
    for (std::size_t i = k; i < n; ++i) norm = std::hypot(norm, x[i][k]);
    if (norm == 0.0) continue;
    const double alpha = x[k][k] > 0.0 ? -norm : norm;
    for (std::size_t i = k; i < n; ++i) v[i] = x[i][k];
    v[k] -= alpha;
    double vnorm2 = 0.0;
    for (std::size_t i = k; i < n; ++i) vnorm2 += v[i] * v[i];
    if (vnorm2 == 0.0) continue;
    for (std::size_t j = k; j < kUnknowns; ++j) {
      double dot = 0.0;
      for (std::size_t i = k; i < n; ++i) dot += v[i] * x[i][j];
      const double f = 2.0 * dot / vnorm2;
      for (std::size_t i = k; i < n; ++i) x[i][j] -= f * v[i];
    }
    double dot = 0.0;
    for (std::size_t i = k; i < n; ++i) dot += v[i] * y[i];
    const double f = 2.0 * dot / vnorm2;
    for (std::size_t i = k; i < n; ++i) y[i] -= f * v[i];
  }

  Square r{};
  double largest_pivot = 0.0;
  for (std::size_t i = 0; i < kUnknowns; ++i) {
    for (std::size_t j = i; j < kUnknowns; ++j) r[i][j] = x[i][j];
    largest_pivot = std::max(largest_pivot, std::abs(r[i][i]));
  }
  for (std::size_t i = 0; i < kUnknowns; ++i) {
    if (std::abs(r[i][i]) <= kRankTolerance * largest_pivot) {
      throw CalibrationError("risk-index regressors are rank deficient");
    }
  }

  std::array<double, kUnknowns> z{};
  for (std::size_t i = kUnknowns; i-- > 0;) {
    double sum = y[i];
    for (std::size_t j = i + 1; j < kUnknowns; ++j) sum -= r[i][j] * z[j];
    z[i] = sum / r[i][i];
  }

  WeightFit fit;
  fit.weights = {z[0] / scale[0], z[1] / scale[1], z[2] / scale[2], z[3] / scale[3],
                 max_term_months};
  for (const MetricsRow& row : table.rows) {
    const auto reg = regressors(row, max_term_months);
    const double predicted = fit.weights.debt_ratio * reg[0] +
                             fit.weights.relative_increase * reg[1] +
                             fit.weights.repayment_capacity * reg[2] + fit.weights.term * reg[3];
    fit.max_residual = std::max(fit.max_residual, std::abs(predicted - row.risk_index));
  }

  // cond(X^T X) = cond(X)^2; estimate cond(X) from the unscaled R factor.
  Square r_unscaled = r;
  for (std::size_t i = 0; i < kUnknowns; ++i) {
    for (std::size_t j = i; j < kUnknowns; ++j) r_unscaled[i][j] *= scale[j];
  }
  const double cond_r = norm1(r_unscaled) * norm1(invert_upper(r_unscaled));
  fit.condition_number = cond_r * cond_r;
  if (fit.condition_number > kConditionWarning) {
    fit.warnings.push_back(fmt::format(
        "normal matrix condition number {:.3e} exceeds {:.0e}; weights may be sensitive to "
        "rounding in the table",
        fit.condition_number, kConditionWarning));
  }
  return fit;
}

IncomeEstimate infer_monthly_income(const GoldenTable& table) {
  require(!table.rows.empty(), "cannot infer income from an empty table");
  double sum = 0.0;
  double lo = std::numeric_limits<double>::infinity();
  double hi = -lo;
  for (const MetricsRow& row : table.rows) {
    require(row.debt_ratio > 0.0, fmt::format("debt ratio of the {}-year row must be > 0",
                                              row.duration_years));
    const double income = row.monthly_payment / row.debt_ratio;
    sum += income;
    lo = std::min(lo, income);
    hi = std::max(hi, income);
  }
  return {sum / static_cast<double>(table.rows.size()), hi - lo};
}

RateEstimate infer_loan_rate(const GoldenTable& table, double principal, RateBracket bracket) {
  require(!table.rows.empty(), "cannot infer a rate from an empty table");
  require(principal > 0.0, "principal must be > 0");
  require(bracket.low >= 0.0 && bracket.low < bracket.high, "rate bracket must satisfy 0 <= low < high");

  const MetricsRow& target = table.rows.front();
  const int term = target.duration_years * kMonthsPerYear;
  auto f = [&](double rate) {
    return monthly_payment({principal, rate, kMonthsPerYear, term}) - target.monthly_payment;
  };

  double lo = bracket.low;
  double hi = bracket.high;
  double f_lo = f(lo);
  const double f_hi = f(hi);
  if (f_lo == 0.0) hi = lo;
  if (f_hi == 0.0) lo = hi;
  if (f_lo * f_hi > 0.0) {
    throw CalibrationError(fmt::format(
        "no sign change for the {}-year installment in rate bracket [{}, {}]",
        target.duration_years, bracket.low, bracket.high));
  }
  while (hi - lo > 1e-10) {
    const double mid = 0.5 * (lo + hi);
    const double f_mid = f(mid);
    if ((f_mid < 0.0) == (f_lo < 0.0)) {
      lo = mid;
      f_lo = f_mid;
    } else {
      hi = mid;
    }
  }

  RateEstimate estimate;
  estimate.rate = 0.5 * (lo + hi);
  for (const MetricsRow& row : table.rows) {
    const double m = monthly_payment(
        {principal, estimate.rate, kMonthsPerYear, row.duration_years * kMonthsPerYear});
    estimate.residual = std::max(estimate.residual, std::abs(m - row.monthly_payment));
  }
  return estimate;
}

CalibrationReport calibrate(const GoldenTable& table, double principal, int max_term_months,
                            RateBracket bracket) {
  const WeightFit weights = fit_risk_weights(table, max_term_months);
  const IncomeEstimate income = infer_monthly_income(table);
  const RateEstimate rate = infer_loan_rate(table, principal, bracket);
  return {weights.weights,        weights.max_residual, income.monthly_income,
          income.spread,          rate.rate,            rate.residual,
          weights.condition_number, weights.warnings};
}

std::string_view column_name(Column column) {
  switch (column) {
    case Column::MonthlyPayment:
      return "Monthly_Payment";
    case Column::TotalDebt:
      return "Total_Debt";
    case Column::RelativeIncrease:
      return "Relative_Increase";
    case Column::DebtRatio:
      return "Debt_Ratio";
    case Column::RepaymentCapacity:
      return "Repayment_Capacity";
    case Column::RiskIndex:
      return "Risk_Index";
  }
  return "?";
}

double column_value(const MetricsRow& row, Column column) {
  switch (column) {
    case Column::MonthlyPayment:
      return row.monthly_payment;
    case Column::TotalDebt:
      return row.total_debt;
    case Column::RelativeIncrease:
      return row.relative_increase;
    case Column::DebtRatio:
      return row.debt_ratio;
    case Column::RepaymentCapacity:
      return row.repayment_capacity;
    case Column::RiskIndex:
      return row.risk_index;
  }
  return 0.0;
}

VerificationReport verify_golden(std::span<const MetricsRow> computed, const GoldenTable& golden,
                                 const ColumnTolerances& tolerances, bool paper_compat) {
  require(computed.size() == golden.rows.size(),
          fmt::format("row count mismatch: computed {} vs reference {}", computed.size(),
                      golden.rows.size()));
  VerificationReport report;
  report.paper_compat = paper_compat;
  report.column_pass.fill(true);
  for (std::size_t i = 0; i < computed.size(); ++i) {
    const MetricsRow& a = computed[i];
    const MetricsRow& b = golden.rows[i];
    require(a.duration_years == b.duration_years,
            fmt::format("duration mismatch at row {}: {} vs {}", i + 1, a.duration_years,
                        b.duration_years));
    RowCheck check;
    check.duration_years = a.duration_years;
    for (std::size_t c = 0; c < kColumnCount; ++c) {
      const auto column = static_cast<Column>(c);
      const double error = std::abs(column_value(a, column) - column_value(b, column));
      report.max_abs_error[c] = std::max(report.max_abs_error[c], error);
      check.column_pass[c] = error <= tolerances[column];
      if (!check.column_pass[c]) {
        check.pass = false;
        report.column_pass[c] = false;
        report.pass = false;
      }
    }
    report.rows.push_back(check);
  }
  return report;
}

}  // namespace amortis
