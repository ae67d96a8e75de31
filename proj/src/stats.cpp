#include "ucast/stats.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <map>
#include <numeric>
#include <stdexcept>

namespace ucast::stats {

const char* to_string(Conclusion c) {
  switch (c) {
    case Conclusion::trend: return "trend";
    case Conclusion::no_trend: return "no-trend";
    case Conclusion::seasonal: return "seasonal";
    case Conclusion::no_seasonality: return "no-seasonality";
    case Conclusion::stationary: return "stationary";
    case Conclusion::non_stationary: return "non-stationary";
    case Conclusion::random: return "random";
    case Conclusion::non_random: return "non-random";
  }
  return "?";
}

double normal_sf(double z) { return 0.5 * std::erfc(z / 1.4142135623730950488); }

namespace {

// Regularized lower incomplete gamma P(a, x); series for x < a+1, otherwise
// 1 - continued fraction for Q.
double gamma_p(double a, double x) {
  if (a <= 0.0 || x < 0.0) throw std::invalid_argument("gamma_p domain");
  if (x == 0.0) return 0.0;
  const double log_prefactor = -x + a * std::log(x) - std::lgamma(a);
  if (x < a + 1.0) {
    double ap = a;
    double term = 1.0 / a;
    double sum = term;
    for (int i = 0; i < 1000; ++i) {
      ap += 1.0;
      term *= x / ap;
      sum += term;
      if (std::fabs(term) < std::fabs(sum) * 1e-16) break;
    }
    return sum * std::exp(log_prefactor);
  }
  double b = x + 1.0 - a;
  double c = 1e300;
  double d = 1.0 / b;
  double h = d;
  for (int i = 1; i <= 1000; ++i) {
    const double an = -static_cast<double>(i) * (static_cast<double>(i) - a);
    b += 2.0;
    d = an * d + b;
    if (std::fabs(d) < 1e-290) d = 1e-290;
    c = b + an / c;
    if (std::fabs(c) < 1e-290) c = 1e-290;
    d = 1.0 / d;
    const double delta = d * c;
    h *= delta;
    if (std::fabs(delta - 1.0) < 1e-16) break;
  }
  return 1.0 - std::exp(log_prefactor) * h;
}

double clamp_p(double p) { return std::min(1.0, std::max(0.0, p)); }

double median_of(std::vector<double> values) {
  std::sort(values.begin(), values.end());
  const std::size_t n = values.size();
  return n % 2 == 1 ? values[n / 2] : 0.5 * (values[n / 2 - 1] + values[n / 2]);
}

}  // namespace

double chi_squared_sf(double x, double df) {
  if (df <= 0.0) throw std::invalid_argument("chi_squared_sf df");
  if (x <= 0.0) return 1.0;
  return clamp_p(1.0 - gamma_p(df / 2.0, x / 2.0));
}

double binomial_two_sided_p(int min_count, int trials) {
  if (trials <= 0 || min_count < 0) throw std::invalid_argument("binomial_two_sided_p domain");
  // Exact two-sided sign-test p: 2 * P(X <= min_count) with X ~ Bin(n, 1/2).
  double pmf = std::exp2(-static_cast<double>(trials));
  double cdf = 0.0;
  for (int i = 0; i <= min_count && i <= trials; ++i) {
    cdf += pmf;
    pmf *= static_cast<double>(trials - i) / static_cast<double>(i + 1);
  }
  return clamp_p(2.0 * cdf);
}

TestResult runs_test(const std::vector<double>& series, double alpha) {
  if (!series.empty() &&
      std::all_of(series.begin(), series.end(), [&](double v) { return v == series.front(); })) {
    throw std::invalid_argument("runs test: degenerate series (all values equal)");
  }
  if (series.size() < 10) throw std::invalid_argument("runs test: need at least 10 observations");

  const double median = median_of(series);
  std::vector<int> signs;
  signs.reserve(series.size());
  for (double v : series) {
    if (v > median) signs.push_back(1);
    else if (v < median) signs.push_back(-1);
  }
  std::int64_t n1 = std::count(signs.begin(), signs.end(), 1);
  std::int64_t n2 = static_cast<std::int64_t>(signs.size()) - n1;
  if (n1 == 0 || n2 == 0) {
    throw std::invalid_argument("runs test: degenerate series (one-sided around median)");
  }
  int runs = 1;
  for (std::size_t i = 1; i < signs.size(); ++i) {
    if (signs[i] != signs[i - 1]) ++runs;
  }
  const double m = static_cast<double>(n1 + n2);
  const double mu = 2.0 * static_cast<double>(n1) * static_cast<double>(n2) / m + 1.0;
  const double var = 2.0 * static_cast<double>(n1) * static_cast<double>(n2) *
                     (2.0 * static_cast<double>(n1) * static_cast<double>(n2) - m) /
                     (m * m * (m - 1.0));
  const double z = (runs - mu) / std::sqrt(var);
  const double p = clamp_p(2.0 * normal_sf(std::fabs(z)));

  TestResult r;
  r.test_name = "wald-wolfowitz";
  r.statistic = z;
  r.p_value = p;
  r.alpha = alpha;
  r.conclusion = p < alpha ? Conclusion::non_random : Conclusion::random;
  r.detail = "runs=" + std::to_string(runs) + " n1=" + std::to_string(n1) +
             " n2=" + std::to_string(n2);
  return r;
}

TestResult mann_kendall(const std::vector<double>& series, double alpha) {
  const std::size_t n = series.size();
  if (n < 8) throw std::invalid_argument("mann-kendall: need at least 8 observations");

  std::int64_t s = 0;
  for (std::size_t i = 0; i + 1 < n; ++i) {
    for (std::size_t j = i + 1; j < n; ++j) {
      const double d = series[j] - series[i];
      s += d > 0 ? 1 : (d < 0 ? -1 : 0);
    }
  }
  std::map<double, std::int64_t> ties;
  for (double v : series) ++ties[v];
  const double nd = static_cast<double>(n);
  double var = nd * (nd - 1.0) * (2.0 * nd + 5.0);
  for (const auto& [value, t] : ties) {
    const double td = static_cast<double>(t);
    var -= td * (td - 1.0) * (2.0 * td + 5.0);
  }
  var /= 18.0;

  double z = 0.0;
  if (s != 0) {
    if (var <= 0.0) throw std::invalid_argument("mann-kendall: zero variance");
    z = (static_cast<double>(s) - (s > 0 ? 1.0 : -1.0)) / std::sqrt(var);
  }
  const double p = clamp_p(2.0 * normal_sf(std::fabs(z)));

  TestResult r;
  r.test_name = "mann-kendall";
  r.statistic = static_cast<double>(s);
  r.p_value = p;
  r.alpha = alpha;
  r.conclusion = p < alpha ? Conclusion::trend : Conclusion::no_trend;
  r.detail = "z=" + std::to_string(z);
  return r;
}

TestResult cox_stuart(const std::vector<double>& series, double alpha) {
  const std::size_t n = series.size();
  if (n < 6) throw std::invalid_argument("cox-stuart: need at least 6 observations");

  const std::size_t c = (n + 1) / 2;  // middle element dropped when n is odd
  int pos = 0;
  int neg = 0;
  for (std::size_t i = 0; i + c < n; ++i) {
    const double d = series[i + c] - series[i];
    if (d > 0) ++pos;
    else if (d < 0) ++neg;
  }
  const int m = pos + neg;
  if (m == 0) throw std::invalid_argument("cox-stuart: all pairs tied");
  const double p = binomial_two_sided_p(std::min(pos, neg), m);

  TestResult r;
  r.test_name = "cox-stuart";
  r.statistic = static_cast<double>(pos);
  r.p_value = p;
  r.alpha = alpha;
  r.conclusion = p < alpha ? Conclusion::trend : Conclusion::no_trend;
  r.detail = "pairs=" + std::to_string(m) + " positive=" + std::to_string(pos);
  return r;
}

TestResult kruskal_wallis(const std::vector<std::vector<double>>& groups, double alpha) {
  if (groups.size() < 2) throw std::invalid_argument("kruskal-wallis: need at least 2 groups");

  struct Obs {
    double value;
    std::size_t group;
  };
  std::vector<Obs> all;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    if (groups[g].empty()) throw std::invalid_argument("kruskal-wallis: empty group");
    for (double v : groups[g]) all.push_back({v, g});
  }
  const std::size_t n = all.size();
  std::sort(all.begin(), all.end(), [](const Obs& a, const Obs& b) { return a.value < b.value; });

  // Average ranks over ties; collect tie sizes for the correction factor.
  std::vector<double> rank_sum(groups.size(), 0.0);
  double tie_term = 0.0;
  std::size_t i = 0;
  while (i < n) {
    std::size_t j = i;
    while (j < n && all[j].value == all[i].value) ++j;
    const double rank = 0.5 * (static_cast<double>(i + 1) + static_cast<double>(j));
    const double t = static_cast<double>(j - i);
    tie_term += t * t * t - t;
    for (std::size_t k = i; k < j; ++k) rank_sum[all[k].group] += rank;
    i = j;
  }

  const double nd = static_cast<double>(n);
  double h = 0.0;
  for (std::size_t g = 0; g < groups.size(); ++g) {
    h += rank_sum[g] * rank_sum[g] / static_cast<double>(groups[g].size());
  }
  h = 12.0 / (nd * (nd + 1.0)) * h - 3.0 * (nd + 1.0);
  const double correction = 1.0 - tie_term / (nd * nd * nd - nd);
  if (correction <= 0.0) {
    throw std::invalid_argument("kruskal-wallis: degenerate (all observations identical)");
  }
  h /= correction;

  const double df = static_cast<double>(groups.size() - 1);
  const double p = chi_squared_sf(h, df);

  TestResult r;
  r.test_name = "kruskal-wallis";
  r.statistic = h;
  r.p_value = p;
  r.alpha = alpha;
  r.conclusion = p < alpha ? Conclusion::seasonal : Conclusion::no_seasonality;
  r.detail = "groups=" + std::to_string(groups.size()) + " df=" + std::to_string(groups.size() - 1);
  return r;
}

TestResult kruskal_wallis_seasonality(const MonthlySeries& series, double alpha) {
  std::map<int, std::vector<double>> by_month;
  for (std::size_t i = 0; i < series.size(); ++i) {
    by_month[series.month_at(i).month].push_back(series.values[i]);
  }
  std::vector<std::vector<double>> groups;
  for (auto& [month, values] : by_month) {
    if (values.size() >= 2) groups.push_back(std::move(values));
  }
  if (groups.size() < 2) {
    throw std::invalid_argument(
        "kruskal-wallis: need at least 2 calendar months with 2+ observations");
  }
  return kruskal_wallis(groups, alpha);
}

namespace {

struct CriticalValues {
  double cv01, cv05, cv10;
  double at(double alpha) {
    if (alpha == 0.01) return cv01;
    if (alpha == 0.05) return cv05;
    if (alpha == 0.10) return cv10;
    throw std::invalid_argument("alpha must be one of 0.01, 0.05, 0.10");
  }
};

// MacKinnon response-surface critical values for the constant-only
// Dickey-Fuller distribution, evaluated at the effective sample size.
CriticalValues adf_critical_values(int t_eff) {
  const double t = static_cast<double>(t_eff);
  const auto surface = [t](double b0, double b1, double b2, double b3) {
    return b0 + b1 / t + b2 / (t * t) + b3 / (t * t * t);
  };
  return {surface(-3.43035, -6.5393, -16.786, -79.433),
          surface(-2.86154, -2.8903, -4.234, -40.04),
          surface(-2.56677, -1.5384, -2.809, 0.0)};
}

}  // namespace

TestResult adf_test(const std::vector<double>& series, std::optional<int> max_lag, double alpha) {
  const int n = static_cast<int>(series.size());
  if (n < 20) throw std::invalid_argument("adf: need at least 20 observations");

  int lags = max_lag ? *max_lag
                     : static_cast<int>(std::floor(12.0 * std::pow(n / 100.0, 0.25)));
  // Keep enough residual degrees of freedom for the t statistic.
  lags = std::max(0, std::min(lags, (n - 1) / 3));

  const int rows = n - 1 - lags;
  const int cols = lags + 2;  // constant, level, lagged differences
  std::vector<double> dx(static_cast<std::size_t>(n) - 1);
  for (int t = 1; t < n; ++t) dx[t - 1] = series[t] - series[t - 1];

  Eigen::MatrixXd x(rows, cols);
  Eigen::VectorXd y(rows);
  for (int r = 0; r < rows; ++r) {
    const int t = lags + 1 + r;  // index into the original series
    x(r, 0) = 1.0;
    x(r, 1) = series[t - 1];
    for (int k = 1; k <= lags; ++k) x(r, 1 + k) = dx[t - 1 - k];
    y(r) = dx[t - 1];
  }

  Eigen::ColPivHouseholderQR<Eigen::MatrixXd> qr(x);
  if (qr.rank() < cols) throw std::runtime_error("adf: singular regression matrix");
  const Eigen::VectorXd beta = qr.solve(y);
  const Eigen::VectorXd resid = y - x * beta;
  const double sigma2 = resid.squaredNorm() / static_cast<double>(rows - cols);
  const Eigen::MatrixXd xtx_inv =
      (x.transpose() * x).ldlt().solve(Eigen::MatrixXd::Identity(cols, cols));
  const double se = std::sqrt(sigma2 * xtx_inv(1, 1));
  const double stat = beta(1) / se;

  CriticalValues cvs = adf_critical_values(rows);
  const double cv = cvs.at(alpha);

  TestResult r;
  r.test_name = "adf";
  r.statistic = stat;
  r.alpha = alpha;
  r.critical_value = cv;
  r.conclusion = stat < cv ? Conclusion::stationary : Conclusion::non_stationary;
  r.detail = "lags=" + std::to_string(lags);
  return r;
}

TestResult kpss_test(const std::vector<double>& series, std::optional<int> bandwidth,
                     double alpha) {
  const int n = static_cast<int>(series.size());
  if (n < 20) throw std::invalid_argument("kpss: need at least 20 observations");

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  std::vector<double> e(series.size());
  for (int t = 0; t < n; ++t) e[t] = series[t] - mean;

  const auto autocov_sum = [&](int j) {
    double s = 0.0;
    for (int t = j; t < n; ++t) s += e[t] * e[t - j];
    return s;
  };

  int l;
  if (bandwidth) {
    l = *bandwidth;
    if (l < 0) throw std::invalid_argument("kpss: bandwidth must be >= 0");
  } else {
    // Data-dependent bandwidth (Hobijn et al. variant of Newey-West).
    const int covlags = static_cast<int>(std::pow(static_cast<double>(n), 2.0 / 9.0));
    double s0 = autocov_sum(0) / n;
    double s1 = 0.0;
    for (int i = 1; i <= covlags; ++i) {
      const double prod = autocov_sum(i) / (n / 2.0);
      s0 += prod;
      s1 += i * prod;
    }
    if (s0 == 0.0) throw std::runtime_error("kpss: zero long-run variance");
    const double s_hat = s1 / s0;
    const double gamma_hat = 1.1447 * std::pow(s_hat * s_hat, 1.0 / 3.0);
    l = static_cast<int>(gamma_hat * std::pow(static_cast<double>(n), 1.0 / 3.0));
  }
  l = std::min(l, n - 1);

  double lrv = autocov_sum(0) / n;
  for (int j = 1; j <= l; ++j) {
    const double w = 1.0 - static_cast<double>(j) / (l + 1.0);
    lrv += 2.0 * w * autocov_sum(j) / n;
  }
  if (lrv <= 0.0) throw std::runtime_error("kpss: zero long-run variance");

  double partial = 0.0;
  double stat = 0.0;
  for (int t = 0; t < n; ++t) {
    partial += e[t];
    stat += partial * partial;
  }
  stat /= static_cast<double>(n) * static_cast<double>(n) * lrv;

  CriticalValues cvs{0.739, 0.463, 0.347};
  const double cv = cvs.at(alpha);

  TestResult r;
  r.test_name = "kpss";
  r.statistic = stat;
  r.alpha = alpha;
  r.critical_value = cv;
  r.conclusion = stat < cv ? Conclusion::stationary : Conclusion::non_stationary;
  r.detail = "bandwidth=" + std::to_string(l);
  return r;
}

Correlogram acf(const std::vector<double>& series, int max_lag) {
  const int n = static_cast<int>(series.size());
  if (max_lag < 0 || max_lag >= n) throw std::invalid_argument("acf: max_lag must be < length");

  const double mean = std::accumulate(series.begin(), series.end(), 0.0) / n;
  double c0 = 0.0;
  for (double v : series) c0 += (v - mean) * (v - mean);
  if (c0 == 0.0) throw std::invalid_argument("acf: zero-variance series");

  Correlogram out;
  out.confidence_band = 1.96 / std::sqrt(static_cast<double>(n));
  for (int k = 0; k <= max_lag; ++k) {
    double ck = 0.0;
    for (int t = k; t < n; ++t) ck += (series[t] - mean) * (series[t - k] - mean);
    out.lags.push_back(k);
    out.coefficients.push_back(ck / c0);
  }
  return out;
}

Correlogram pacf(const std::vector<double>& series, int max_lag) {
  const int n = static_cast<int>(series.size());
  if (max_lag < 1 || max_lag >= n / 2) {
    throw std::invalid_argument("pacf: max_lag must be in [1, length/2)");
  }
  const Correlogram r = acf(series, max_lag);

  Correlogram out;
  out.confidence_band = 1.96 / std::sqrt(static_cast<double>(n));
  std::vector<double> phi_prev;
  for (int k = 1; k <= max_lag; ++k) {
    double num = r.coefficients[k];
    double den = 1.0;
    for (int j = 1; j < k; ++j) {
      num -= phi_prev[j - 1] * r.coefficients[k - j];
      den -= phi_prev[j - 1] * r.coefficients[j];
    }
    if (std::fabs(den) < 1e-14) throw std::runtime_error("pacf: degenerate autocorrelation");
    const double phi_kk = num / den;
    std::vector<double> phi(k);
    for (int j = 1; j < k; ++j) phi[j - 1] = phi_prev[j - 1] - phi_kk * phi_prev[k - j - 1];
    phi[k - 1] = phi_kk;
    phi_prev = std::move(phi);
    out.lags.push_back(k);
    out.coefficients.push_back(phi_kk);
  }
  return out;
}

}  // namespace ucast::stats
