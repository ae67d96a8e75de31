#pragma once

#include <vector>

#include "ucast/csv.hpp"
#include "ucast/series.hpp"

namespace ucast {

// Collapses minute/hour records into one record per calendar day (per
// series), valued at the arithmetic mean of that day's observations.
std::vector<TimedRecord> aggregate_hourly_to_daily(const std::vector<TimedRecord>& records);

// Rolls daily records of a single series into a gap-free monthly series.
// A missing month between the first and last is an error naming the gaps.
MonthlySeries aggregate_daily_to_monthly(const std::vector<TimedRecord>& records,
                                         MonthlyAgg agg = MonthlyAgg::sum,
                                         const std::string& unit = "",
                                         const std::string& name = "");

// Month-of-year (1..12) plus seven weekday-count columns, all kind = time.
std::vector<FeatureColumn> build_time_features(const std::vector<YearMonth>& months);

// Appends lag_1..lag_L columns (lag_k at month t = target at t-k) and drops
// the first L rows. lags == 0 returns the table unchanged.
FeatureTable add_lag_features(const FeatureTable& table, int lags);

// Last `horizon` rows become the test set, the rest the train set.
DatasetSplit train_test_split(const FeatureTable& table, int horizon);

struct TaggedSeries {
  MonthlySeries series;
  FeatureKind kind = FeatureKind::climate;
};

// Aligns exogenous series on the target's months and appends the time
// features. Climate-tagged columns are dropped when include_climate is off.
FeatureTable join_exogenous(const MonthlySeries& target,
                            const std::vector<TaggedSeries>& exogenous, bool include_climate);

FeatureTable strip_lag_columns(const FeatureTable& table);

}  // namespace ucast
