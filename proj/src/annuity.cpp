#include "amortis/annuity.hpp"

#include <cmath>
#include <fmt/core.h>

#include "amortis/market.hpp"

namespace amortis {

using detail::require;

void YearRange::validate() const {
  require(step >= 1, fmt::format("year range step must be >= 1 (got {})", step));
  require(first >= 1 && first <= last,
          fmt::format("year range [{}, {}] is empty or starts below 1", first, last));
}

void LoanTerms::validate() const {
  require(std::isfinite(principal) && principal > 0.0, "loan principal must be > 0");
  require(std::isfinite(annual_rate) && annual_rate >= 0.0, "annual_rate must be >= 0");
  require(payments_per_year >= 1, "payments_per_year must be >= 1");
  require(term_months >= 1, "term_months must be >= 1");
}

void HouseholdProfile::validate() const {
  require(std::isfinite(annual_income) && annual_income > 0.0, "annual_income must be > 0");
  require(contribution_rate >= 0.0 && contribution_rate < 1.0,
          fmt::format("contribution_rate must lie in [0, 1) (got {})", contribution_rate));
}

void RiskWeights::validate() const {
  require(std::isfinite(debt_ratio) && std::isfinite(relative_increase) &&
              std::isfinite(repayment_capacity) && std::isfinite(term),
          "risk weights must be finite");
  require(max_term_months >= 1, "max_term_months must be >= 1");
}

double monthly_payment(const LoanTerms& terms) {
  terms.validate();
  const long double periodic =
      static_cast<long double>(terms.annual_rate) / terms.payments_per_year;
  if (periodic < 1e-12L) return terms.principal / terms.term_months;
  // 1 - (1+i)^-N, written to keep precision for small i.
  const long double discount = -std::expm1(-terms.term_months * std::log1p(periodic));
  return static_cast<double>(terms.principal * periodic / discount);
}

double total_debt(double monthly_payment, int term_months) {
  require(std::isfinite(monthly_payment) && monthly_payment >= 0.0,
          "monthly payment must be >= 0");
  require(term_months >= 1, "term_months must be >= 1");
  return monthly_payment * term_months;
}

double relative_cost_increase(double total_debt, double reference_debt) {
  require(reference_debt > 0.0, "reference debt must be > 0");
  return (total_debt - reference_debt) / reference_debt * 100.0;
}

double debt_ratio(double monthly_payment, double monthly_income) {
  require(monthly_income > 0.0, "monthly income must be > 0");
  require(monthly_payment >= 0.0, "monthly payment must be >= 0");
  return monthly_payment / monthly_income;
}

double repayment_capacity(double debt_ratio) {
  require(debt_ratio > 0.0, "debt ratio must be > 0 to invert");
  return 1.0 / debt_ratio;
}

double risk_index(double debt_ratio, double relative_increase, double repayment_capacity,
                  int term_months, const RiskWeights& weights) {
  weights.validate();
  require(term_months >= 0 && term_months <= weights.max_term_months,
          fmt::format("term of {} months exceeds max_term_months = {}", term_months,
                      weights.max_term_months));
  const double normalized_term = static_cast<double>(term_months) / weights.max_term_months;
  return weights.debt_ratio * debt_ratio + weights.relative_increase * relative_increase +
         weights.repayment_capacity * repayment_capacity + weights.term * normalized_term;
}

std::vector<ScheduleEntry> amortization_schedule(const LoanTerms& terms) {
  const double payment = monthly_payment(terms);
  const long double periodic =
      static_cast<long double>(terms.annual_rate) / terms.payments_per_year;

  std::vector<ScheduleEntry> schedule;
  schedule.reserve(static_cast<std::size_t>(terms.term_months));
  long double balance = terms.principal;
  for (int period = 1; period <= terms.term_months; ++period) {
    const long double interest = balance * periodic;
    const long double principal_paid = payment - interest;
    balance = balance + interest - payment;
    schedule.push_back({period, payment, static_cast<double>(interest),
                        static_cast<double>(principal_paid), static_cast<double>(balance)});
  }
  return schedule;
}

std::vector<MetricsRow> build_metrics_table(const HouseholdProfile& profile, double loan_rate,
                                            double price, int first_year, int last_year,
                                            const RiskWeights& weights,
                                            std::optional<double> monthly_income_override) {
  profile.validate();
  weights.validate();
  require(first_year <= last_year, "metrics table needs a non-empty year range");
  require(first_year >= 1 && last_year <= 80, "metrics table years must lie within [1, 80]");
  if (monthly_income_override) {
    require(*monthly_income_override > 0.0, "monthly income override must be > 0");
  }

  const double principal = discounted_price(price, profile.contribution_rate);
  const double income = monthly_income_override.value_or(profile.monthly_income());

  std::vector<MetricsRow> rows;
  rows.reserve(static_cast<std::size_t>(last_year - first_year + 1));
  double reference_debt = 0.0;
  for (int years = first_year; years <= last_year; ++years) {
    const int term = years * kMonthsPerYear;
    MetricsRow row;
    row.duration_years = years;
    row.monthly_payment = monthly_payment({principal, loan_rate, kMonthsPerYear, term});
    row.total_debt = total_debt(row.monthly_payment, term);
    if (rows.empty()) reference_debt = row.total_debt;
    row.relative_increase = relative_cost_increase(row.total_debt, reference_debt);
    row.debt_ratio = debt_ratio(row.monthly_payment, income);
    row.repayment_capacity = repayment_capacity(row.debt_ratio);
    row.risk_index = risk_index(row.debt_ratio, row.relative_increase, row.repayment_capacity,
                                term, weights);
    rows.push_back(row);
  }
  return rows;
}

}  // namespace amortis
