#pragma once

#include <optional>
#include <string>
#include <vector>

#include "ucast/series.hpp"

namespace ucast::stats {

enum class Conclusion {
  trend,
  no_trend,
  seasonal,
  no_seasonality,
  stationary,
  non_stationary,
  random,
  non_random,
};
const char* to_string(Conclusion c);

struct TestResult {
  std::string test_name;
  double statistic = 0.0;
  std::optional<double> p_value;        // absent for critical-value-only tests
  double alpha = 0.05;
  Conclusion conclusion = Conclusion::no_trend;
  std::optional<double> critical_value; // comparison threshold, when one is used
  std::string detail;
};

struct Correlogram {
  std::vector<int> lags;
  std::vector<double> coefficients;
  double confidence_band = 0.0;  // +-1.96/sqrt(n)
};

// Wald-Wolfowitz run test around the median; values equal to the median are
// dropped. Normal approximation, two-sided.
TestResult runs_test(const std::vector<double>& series, double alpha = 0.05);

// Mann-Kendall S with tie-corrected variance and continuity correction.
TestResult mann_kendall(const std::vector<double>& series, double alpha = 0.05);

// Cox-Stuart sign test on pairs (x_i, x_{i+ceil(n/2)}); exact binomial p.
TestResult cox_stuart(const std::vector<double>& series, double alpha = 0.05);

// Kruskal-Wallis on explicit groups (tie-corrected H, chi-square p).
TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups, double alpha = 0.05);

// Groups a monthly series by calendar month; months with fewer than two
// observations are dropped before testing.
TestResult kruskal_wallis_seasonality(const MonthlySeries& series, double alpha = 0.05);

// Augmented Dickey-Fuller, constant-only specification. Lag order defaults
// to the Schwert rule floor(12*(n/100)^0.25). Conclusion comes from the
// tabulated critical value at `alpha` (one of 0.01/0.05/0.10).
TestResult adf_test(const std::vector<double>& series, std::optional<int> max_lag = {},
                    double alpha = 0.05);

// KPSS level-stationarity statistic with a Bartlett-kernel long-run variance
// and the Newey-West style automatic bandwidth; tabulated critical values.
TestResult kpss_test(const std::vector<double>& series, std::optional<int> bandwidth = {},
                     double alpha = 0.05);

// Sample autocorrelations with the 1/n normalization, lags 0..max_lag.
Correlogram acf(const std::vector<double>& series, int max_lag);

// Partial autocorrelations via Durbin-Levinson on the ACF, lags 1..max_lag.
Correlogram pacf(const std::vector<double>& series, int max_lag);

// Probability helpers (classical series / continued-fraction evaluations).
double normal_sf(double z);
double chi_squared_sf(double x, double df);
double binomial_two_sided_p(int min_count, int trials);

}  // namespace ucast::stats
