#include "ucast/features.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

namespace ucast {

std::vector<TimedRecord> aggregate_hourly_to_daily(const std::vector<TimedRecord>& records) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");
  struct DayKey {
    std::string series;
    int year, month, day;
    auto operator<=>(const DayKey&) const = default;
  };
  std::map<DayKey, std::pair<double, int>> buckets;  // sum, count
  for (const auto& rec : records) {
    const DayKey key{rec.series_id, rec.timestamp.year, rec.timestamp.month, rec.timestamp.day};
    auto& [sum, count] = buckets[key];
    sum += rec.value;
    ++count;
  }
  std::vector<TimedRecord> out;
  out.reserve(buckets.size());
  for (const auto& [key, agg] : buckets) {
    TimedRecord rec;
    rec.timestamp = DateTime{key.year, key.month, key.day, 0, 0};
    rec.value = agg.first / agg.second;
    rec.series_id = key.series;
    out.push_back(std::move(rec));
  }
  std::sort(out.begin(), out.end(), [](const TimedRecord& a, const TimedRecord& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.series_id < b.series_id;
  });
  return out;
}

MonthlySeries aggregate_daily_to_monthly(const std::vector<TimedRecord>& records, MonthlyAgg agg,
                                         const std::string& unit, const std::string& name) {
  if (records.empty()) throw std::invalid_argument("no records to aggregate");
  const std::string& series_id = records.front().series_id;
  std::map<int, std::pair<double, int>> buckets;  // month index -> (sum, count)
  for (const auto& rec : records) {
    if (rec.series_id != series_id) {
      throw std::invalid_argument("aggregate_daily_to_monthly expects a single series, got '" +
                                  series_id + "' and '" + rec.series_id + "'");
    }
    auto& [sum, count] = buckets[rec.timestamp.year_month().index()];
    sum += rec.value;
    ++count;
  }

  const int first = buckets.begin()->first;
  const int last = buckets.rbegin()->first;
  std::string missing;
  for (int idx = first; idx <= last; ++idx) {
    if (!buckets.count(idx)) {
      if (!missing.empty()) missing += ", ";
      missing += YearMonth::from_index(idx).str();
    }
  }
  if (!missing.empty()) {
    throw std::runtime_error("series '" + series_id + "' has gap months: " + missing);
  }

  MonthlySeries series;
  series.start = YearMonth::from_index(first);
  series.unit = unit;
  series.name = name.empty() ? series_id : name;
  series.values.reserve(buckets.size());
  for (const auto& [idx, bucket] : buckets) {
    series.values.push_back(agg == MonthlyAgg::sum ? bucket.first
                                                   : bucket.first / bucket.second);
  }
  series.validate();
  return series;
}

std::vector<FeatureColumn> build_time_features(const std::vector<YearMonth>& months) {
  if (months.empty()) throw std::invalid_argument("no months");
  static const char* kWeekdayNames[7] = {"mon", "tue", "wed", "thu", "fri", "sat", "sun"};

  std::vector<FeatureColumn> cols(8);
  cols[0].name = "month_of_year";
  cols[0].kind = FeatureKind::time;
  for (int w = 0; w < 7; ++w) {
    cols[1 + w].name = std::string("wd_") + kWeekdayNames[w];
    cols[1 + w].kind = FeatureKind::time;
  }
  for (const YearMonth ym : months) {
    cols[0].values.push_back(ym.month);
    int counts[7] = {0, 0, 0, 0, 0, 0, 0};
    for (int d = 1; d <= days_in_month(ym.year, ym.month); ++d) ++counts[weekday(ym.year, ym.month, d)];
    for (int w = 0; w < 7; ++w) cols[1 + w].values.push_back(counts[w]);
  }
  return cols;
}

FeatureTable add_lag_features(const FeatureTable& table, int lags) {
  if (lags < 0 || lags > 20) throw std::invalid_argument("lags must be within 0..20");
  if (lags == 0) return table;
  const std::size_t n = table.rows();
  if (static_cast<std::size_t>(lags) >= n) {
    throw std::invalid_argument("lags (" + std::to_string(lags) + ") >= series length (" +
                                std::to_string(n) + ")");
  }

  const std::size_t L = static_cast<std::size_t>(lags);
  FeatureTable out;
  out.months.assign(table.months.begin() + static_cast<std::ptrdiff_t>(L), table.months.end());
  out.target.assign(table.target.begin() + static_cast<std::ptrdiff_t>(L), table.target.end());
  for (const auto& col : table.columns) {
    FeatureColumn trimmed;
    trimmed.name = col.name;
    trimmed.kind = col.kind;
    trimmed.values.assign(col.values.begin() + static_cast<std::ptrdiff_t>(L), col.values.end());
    out.columns.push_back(std::move(trimmed));
  }
  for (std::size_t k = 1; k <= L; ++k) {
    FeatureColumn lag_col;
    lag_col.name = "lag_" + std::to_string(k);
    lag_col.kind = FeatureKind::lag;
    lag_col.values.reserve(n - L);
    for (std::size_t t = L; t < n; ++t) lag_col.values.push_back(table.target[t - k]);
    out.columns.push_back(std::move(lag_col));
  }
  out.validate();
  return out;
}

DatasetSplit train_test_split(const FeatureTable& table, int horizon) {
  if (horizon < 1) throw std::invalid_argument("horizon must be positive");
  const std::size_t n = table.rows();
  if (static_cast<std::size_t>(horizon) >= n) {
    throw std::invalid_argument("horizon (" + std::to_string(horizon) +
                                ") >= table length (" + std::to_string(n) + ")");
  }
  const std::size_t cut = n - static_cast<std::size_t>(horizon);
  const auto slice = [&](std::size_t from, std::size_t to) {
    FeatureTable part;
    part.months.assign(table.months.begin() + static_cast<std::ptrdiff_t>(from),
                       table.months.begin() + static_cast<std::ptrdiff_t>(to));
    part.target.assign(table.target.begin() + static_cast<std::ptrdiff_t>(from),
                       table.target.begin() + static_cast<std::ptrdiff_t>(to));
    for (const auto& col : table.columns) {
      FeatureColumn c;
      c.name = col.name;
      c.kind = col.kind;
      c.values.assign(col.values.begin() + static_cast<std::ptrdiff_t>(from),
                      col.values.begin() + static_cast<std::ptrdiff_t>(to));
      part.columns.push_back(std::move(c));
    }
    return part;
  };
  DatasetSplit split;
  split.train = slice(0, cut);
  split.test = slice(cut, n);
  split.horizon = horizon;
  return split;
}

FeatureTable join_exogenous(const MonthlySeries& target, const std::vector<TaggedSeries>& exogenous,
                            bool include_climate) {
  target.validate();
  FeatureTable table;
  table.target = target.values;
  table.months.reserve(target.size());
  for (std::size_t i = 0; i < target.size(); ++i) table.months.push_back(target.month_at(i));

  const YearMonth first = target.start;
  const YearMonth last = target.last_month();
  for (const auto& tagged : exogenous) {
    if (tagged.kind == FeatureKind::climate && !include_climate) continue;
    const MonthlySeries& s = tagged.series;
    s.validate();
    if (!s.covers(first, last)) {
      std::string missing;
      for (const YearMonth ym : table.months) {
        if (months_between(s.start, ym) < 0 || ym > s.last_month()) {
          if (!missing.empty()) missing += ", ";
          missing += ym.str();
        }
      }
      throw std::runtime_error("exogenous series '" + s.name + "' does not cover months: " +
                               missing);
    }
    FeatureColumn col;
    col.name = s.name;
    col.kind = tagged.kind;
    col.values.reserve(target.size());
    for (const YearMonth ym : table.months) col.values.push_back(s.value_at(ym));
    table.columns.push_back(std::move(col));
  }

  // Activity then climate then time, stable within each group.
  std::stable_sort(table.columns.begin(), table.columns.end(),
                   [](const FeatureColumn& a, const FeatureColumn& b) {
                     return static_cast<int>(a.kind) < static_cast<int>(b.kind);
                   });
  for (auto& col : build_time_features(table.months)) table.columns.push_back(std::move(col));
  table.validate();
  return table;
}

FeatureTable strip_lag_columns(const FeatureTable& table) {
  FeatureTable out;
  out.months = table.months;
  out.target = table.target;
  for (const auto& col : table.columns) {
    if (col.kind != FeatureKind::lag) out.columns.push_back(col);
  }
  return out;
}

}  // namespace ucast
