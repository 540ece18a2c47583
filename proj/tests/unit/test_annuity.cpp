#include <doctest.h>

#include <cmath>
#include <random>

#include "amortis/annuity.hpp"

using namespace amortis;

namespace {

// Test-only oracle: the installment that drives the month-by-month balance
// to zero, found by bisection on the recursion itself (no closed form).
double payment_by_schedule_bisection(double principal, double annual_rate, int months) {
  const long double i = static_cast<long double>(annual_rate) / 12;
  auto final_balance = [&](long double payment) {
    long double b = principal;
    for (int t = 0; t < months; ++t) b = b * (1 + i) - payment;
    return b;
  };
  long double lo = 0.0L;
  long double hi = principal * (1 + i);
  for (int iter = 0; iter < 200; ++iter) {
    const long double mid = 0.5L * (lo + hi);
    (final_balance(mid) > 0 ? lo : hi) = mid;
  }
  return static_cast<double>(0.5L * (lo + hi));
}

const LoanTerms kAnnexeLoan{133476.0, 0.039, 12, 240};

}  // namespace

TEST_CASE("monthly payment reproduces the reference installments") {
  CHECK(std::abs(monthly_payment(kAnnexeLoan) - 801.8224) < 5e-4);
  CHECK(std::abs(monthly_payment({133476.0, 0.039, 12, 720}) - 480.2325) < 5e-4);
}

TEST_CASE("monthly payment zero-rate limit is principal over term") {
  CHECK(monthly_payment({133476.0, 0.0, 12, 240}) == 556.15);
  CHECK(monthly_payment({1000.0, 1e-14, 12, 10}) == 100.0);
}

TEST_CASE("monthly payment at the text rate agrees with the schedule oracle") {
  const double oracle = payment_by_schedule_bisection(133476.0, 0.035, 240);
  // Frozen from the oracle above.
  CHECK(std::abs(oracle - 774.1070) < 5e-4);
  CHECK(std::abs(monthly_payment({133476.0, 0.035, 12, 240}) - oracle) < 1e-8);
}

TEST_CASE("monthly payment rejects invalid terms") {
  CHECK_THROWS_AS(monthly_payment({0.0, 0.03, 12, 240}), InputError);
  CHECK_THROWS_AS(monthly_payment({1000.0, 0.03, 12, 0}), InputError);
  CHECK_THROWS_AS(monthly_payment({1000.0, -0.01, 12, 12}), InputError);
  CHECK_THROWS_AS(monthly_payment({1000.0, 0.03, 0, 12}), InputError);
}

TEST_CASE("monthly payment is decreasing and bounded below by interest-only") {
  for (double rate : {0.005, 0.039, 0.2}) {
    const double floor = 133476.0 * rate / 12;
    double previous = monthly_payment({133476.0, rate, 12, 1});
    for (int n = 2; n <= 960; ++n) {
      const double m = monthly_payment({133476.0, rate, 12, n});
      REQUIRE(m < previous);
      REQUIRE(m > floor);
      REQUIRE(total_debt(m, n) > total_debt(previous, n - 1));
      previous = m;
    }
  }
  CHECK(133476.0 * 0.039 / 12 == doctest::Approx(433.797));
}

TEST_CASE("total debt") {
  CHECK(std::abs(total_debt(801.8224, 240) - 192437.4) < 0.05);
  CHECK(std::abs(total_debt(480.2325, 720) - 345767.4) < 0.05);
  CHECK(total_debt(1.0, 1) == 1.0);
  CHECK_THROWS_AS(total_debt(1.0, 0), InputError);
}

TEST_CASE("relative cost increase") {
  CHECK(std::abs(relative_cost_increase(345767.4, 192437.4) - 79.677898) < 1e-4);
  CHECK(std::abs(relative_cost_increase(195718.3, 192437.4) - 1.704924) < 1e-4);
  CHECK(relative_cost_increase(192437.4, 192437.4) == 0.0);
  CHECK_THROWS_AS(relative_cost_increase(1.0, 0.0), InputError);
}

TEST_CASE("debt ratio and repayment capacity") {
  CHECK(std::abs(debt_ratio(801.8224, 4052.99) - 0.1978343) < 1e-6);
  // Y = 50000 does not reproduce the reference 0.1978343.
  CHECK(std::abs(debt_ratio(801.8224, 50000.0 / 12) - 0.1924374) < 1e-6);
  CHECK(debt_ratio(0.0, 3000.0) == 0.0);
  CHECK_THROWS_AS(debt_ratio(800.0, 0.0), InputError);

  CHECK(std::abs(repayment_capacity(0.1978343) - 5.054736) < 1e-5);
  CHECK(std::abs(repayment_capacity(0.1184882) - 8.439662) < 1e-5);
  CHECK(repayment_capacity(1.0) == 1.0);
  CHECK_THROWS_AS(repayment_capacity(0.0), InputError);
  CHECK_THROWS_AS(repayment_capacity(-0.2), InputError);
}

TEST_CASE("debt ratio times repayment capacity is one") {
  std::mt19937_64 rng(7);
  std::uniform_real_distribution<double> payment(1.0, 1e5);
  std::uniform_real_distribution<double> income(1.0, 1e5);
  for (int k = 0; k < 1000; ++k) {
    const double rd = debt_ratio(payment(rng), income(rng));
    REQUIRE(std::abs(repayment_capacity(rd) * rd - 1.0) < 1e-12);
  }
}

TEST_CASE("risk index") {
  const RiskWeights quarter{};
  CHECK(std::abs(risk_index(0.1553328, 17.774937, 6.437790, 360, quarter) - 6.217015) < 1e-5);
  CHECK(std::abs(risk_index(0.1978343, 0.0, 5.054736, 240, quarter) - 1.396476) < 1e-5);
  CHECK(risk_index(0.3, 12.0, 3.3, 480, RiskWeights{0, 0, 0, 0, 720}) == 0.0);
  CHECK_THROWS_AS(risk_index(0.2, 1.0, 5.0, 721, quarter), InputError);
  CHECK_THROWS_AS(risk_index(0.2, 1.0, 5.0, 240, RiskWeights{NAN, 0, 0, 0, 720}), InputError);

  SUBCASE("linear in the weights") {
    const RiskWeights w{0.1, 0.2, 0.3, 0.4, 720};
    const RiskWeights doubled{0.2, 0.4, 0.6, 0.8, 720};
    const double base = risk_index(0.15, 17.7, 6.4, 360, w);
    CHECK(risk_index(0.15, 17.7, 6.4, 360, doubled) == 2.0 * base);
  }
}

TEST_CASE("amortization schedule") {
  SUBCASE("reference loan pays off") {
    const auto schedule = amortization_schedule(kAnnexeLoan);
    REQUIRE(schedule.size() == 240);
    CHECK(std::abs(schedule.back().balance) < 0.01);
  }
  SUBCASE("zero rate repays equal principal") {
    const auto schedule = amortization_schedule({133476.0, 0.0, 12, 240});
    for (const auto& e : schedule) {
      REQUIRE(e.principal_paid == doctest::Approx(556.15).epsilon(1e-12));
      REQUIRE(e.interest_paid == 0.0);
    }
    CHECK(std::abs(schedule.back().balance) < 1e-8);
  }
  SUBCASE("one period") {
    const auto schedule = amortization_schedule({100.0, 0.12, 12, 1});
    REQUIRE(schedule.size() == 1);
    CHECK(schedule[0].payment == doctest::Approx(101.0).epsilon(1e-14));
    CHECK(std::abs(schedule[0].balance) < 1e-12);
  }
}

TEST_CASE("schedule oracle agrees with the closed forms on random loans") {
  std::mt19937_64 rng(20240518);
  std::uniform_real_distribution<double> rate(0.0, 0.2);
  std::uniform_int_distribution<int> months(1, 960);
  std::uniform_real_distribution<double> log_principal(std::log(1e3), std::log(1e7));
  for (int k = 0; k < 1000; ++k) {
    const LoanTerms terms{std::exp(log_principal(rng)), rate(rng), 12, months(rng)};
    const auto schedule = amortization_schedule(terms);
    long double paid = 0.0L;
    for (const auto& e : schedule) paid += static_cast<long double>(e.interest_paid) + e.principal_paid;
    const double expected_total = total_debt(monthly_payment(terms), terms.term_months);
    INFO("P=" << terms.principal << " r=" << terms.annual_rate << " N=" << terms.term_months);
    REQUIRE(std::abs(schedule.back().balance) < 0.01);
    REQUIRE(std::abs(static_cast<double>(paid) - expected_total) < 0.01);
  }
}

TEST_CASE("metrics table") {
  const HouseholdProfile household{50000.0, 0.30};
  SUBCASE("single year") {
    const auto rows = build_metrics_table(household, 0.039, 190680.0, 20, 20, {}, 4053.0);
    REQUIRE(rows.size() == 1);
    CHECK(rows[0].relative_increase == 0.0);
  }
  SUBCASE("stated income diverges from the reference ratio") {
    const auto rows = build_metrics_table(household, 0.039, 190680.0, 20, 60, {});
    REQUIRE(rows.size() == 41);
    CHECK(std::abs(rows[0].debt_ratio - 0.192437) < 1e-6);
  }
  SUBCASE("self-consistency") {
    const auto rows = build_metrics_table(household, 0.039, 190680.0, 20, 60, {}, 4053.0);
    CHECK(rows.front().relative_increase == 0.0);
    for (std::size_t k = 0; k < rows.size(); ++k) {
      const auto& r = rows[k];
      CHECK(std::abs(r.debt_ratio * r.repayment_capacity - 1.0) < 1e-9);
      CHECK(std::abs(r.total_debt - r.monthly_payment * r.duration_years * 12) <=
            1e-6 * r.total_debt);
      if (k > 0) CHECK(r.relative_increase > rows[k - 1].relative_increase);
    }
  }
  SUBCASE("rejects bad input") {
    CHECK_THROWS_AS(build_metrics_table(household, 0.039, 190680.0, 30, 20, {}), InputError);
    CHECK_THROWS_AS(build_metrics_table(household, 0.039, 190680.0, 20, 81, {}), InputError);
    CHECK_THROWS_AS(build_metrics_table(household, 0.039, -1.0, 20, 30, {}), InputError);
    CHECK_THROWS_AS(build_metrics_table({50000.0, 1.0}, 0.039, 190680.0, 20, 30, {}),
                    InputError);
  }
}
