#pragma once

#include <optional>
#include <vector>

#include "amortis/common.hpp"

namespace amortis {

// Fixed-rate amortizing loan.
struct LoanTerms {
  double principal = 0.0;    // euros, > 0
  double annual_rate = 0.0;  // fraction per year, >= 0
  int payments_per_year = kMonthsPerYear;
  int term_months = 0;  // total number of payments

  void validate() const;
};

struct HouseholdProfile {
  double annual_income = 0.0;      // euros per year
  double contribution_rate = 0.0;  // share of the price paid up front, [0, 1)

  void validate() const;
  double monthly_income() const { return annual_income / kMonthsPerYear; }
};

// Weights of the composite risk index. The normalising term is
// term_months / max_term_months.
struct RiskWeights {
  double debt_ratio = 0.25;
  double relative_increase = 0.25;
  double repayment_capacity = 0.25;
  double term = 0.25;
  int max_term_months = 720;

  void validate() const;
};

// One loan duration's household metrics.
struct MetricsRow {
  int duration_years = 0;
  double monthly_payment = 0.0;     // euros
  double total_debt = 0.0;          // euros
  double relative_increase = 0.0;   // percent vs. the shortest duration
  double debt_ratio = 0.0;          // payment / monthly income
  double repayment_capacity = 0.0;  // 1 / debt_ratio
  double risk_index = 0.0;
};

struct ScheduleEntry {
  int period = 0;  // 1-based
  double payment = 0.0;
  double interest_paid = 0.0;
  double principal_paid = 0.0;
  double balance = 0.0;  // outstanding after this payment
};

/// Constant installment of an amortizing loan. Falls back to
/// principal / term_months when the periodic rate is below 1e-12.
double monthly_payment(const LoanTerms& terms);

/// Sum of all installments: payment x number of payments.
double total_debt(double monthly_payment, int term_months);

/// Percentage increase of `total_debt` over `reference_debt`.
double relative_cost_increase(double total_debt, double reference_debt);

double debt_ratio(double monthly_payment, double monthly_income);

double repayment_capacity(double debt_ratio);

/// w1*R_d + w2*A + w3*C_r + w4*N/max(N).
double risk_index(double debt_ratio, double relative_increase, double repayment_capacity,
                  int term_months, const RiskWeights& weights);

/// Month-by-month balance recursion using the closed-form installment:
///   balance_{t+1} = balance_t * (1 + r/n) - M
/// Accumulated in extended precision; the closed form is not consulted for
/// anything but M, so the final balance checks it independently.
std::vector<ScheduleEntry> amortization_schedule(const LoanTerms& terms);

/// Metrics for every whole year in [first_year, last_year]. The principal is
/// `price` net of the household contribution; relative increases are taken
/// against the first row. Monthly income is `monthly_income_override` when
/// set, else annual_income / 12.
std::vector<MetricsRow> build_metrics_table(const HouseholdProfile& profile, double loan_rate,
                                            double price, int first_year, int last_year,
                                            const RiskWeights& weights,
                                            std::optional<double> monthly_income_override = {});

}  // namespace amortis
