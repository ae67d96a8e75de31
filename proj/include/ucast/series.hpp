#pragma once

#include <string>
#include <vector>

#include "ucast/calendar.hpp"

namespace ucast {

// One raw observation as read from an input file.
struct TimedRecord {
  DateTime timestamp;
  double value = 0.0;
  std::string series_id;
};

// Gap-free monthly series; values[i] belongs to start.plus(i).
struct MonthlySeries {
  YearMonth start{};
  std::vector<double> values;
  std::string unit;
  std::string name;

  std::size_t size() const { return values.size(); }
  YearMonth month_at(std::size_t i) const { return start.plus(static_cast<int>(i)); }
  YearMonth last_month() const { return start.plus(static_cast<int>(values.size()) - 1); }
  bool covers(YearMonth first, YearMonth last) const;
  double value_at(YearMonth m) const;  // throws when m is outside the series

  void validate() const;
};

enum class FeatureKind { activity, climate, time, lag };
const char* to_string(FeatureKind kind);
FeatureKind feature_kind_from_string(const std::string& text);

struct FeatureColumn {
  std::string name;
  FeatureKind kind = FeatureKind::time;
  std::vector<double> values;
};

// Aligned design matrix: one row per month, plus the target vector.
struct FeatureTable {
  std::vector<YearMonth> months;
  std::vector<FeatureColumn> columns;
  std::vector<double> target;

  std::size_t rows() const { return months.size(); }
  std::size_t width() const { return columns.size(); }
  std::vector<double> row(std::size_t i) const;
  std::vector<std::vector<double>> matrix() const;
  std::vector<std::string> column_names() const;
  const FeatureColumn& column(const std::string& name) const;

  void validate() const;
};

struct DatasetSplit {
  FeatureTable train;
  FeatureTable test;
  int horizon = 12;
};

}  // namespace ucast
