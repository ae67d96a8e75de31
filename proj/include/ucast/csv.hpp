#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <vector>

#include "ucast/series.hpp"

namespace ucast {

enum class DecimalLocale { period, comma };
DecimalLocale locale_from_string(const std::string& text);
const char* to_string(DecimalLocale locale);

// Column mapping for an input file: which column holds the timestamp and
// which value columns to read. Empty value_columns means every other column.
struct CsvSchema {
  std::string timestamp_column = "timestamp";
  std::vector<std::string> value_columns;
};

// Parses a numeric field honoring the decimal separator. Thousands
// separators are not supported.
double parse_decimal(const std::string& text, DecimalLocale locale);

// Loads a header-ful CSV into one TimedRecord per (row, value column), with
// series_id = column name. Records come back sorted by timestamp; a repeated
// timestamp within one series is an error, as is any malformed row (reported
// with its line number).
std::vector<TimedRecord> load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                                  DecimalLocale locale);

enum class MonthlyAgg { sum, mean };

// Per-column declarations from the metadata sidecar.
struct ColumnMeta {
  std::string unit;
  FeatureKind kind = FeatureKind::climate;
  MonthlyAgg monthly = MonthlyAgg::sum;
};

struct FileMeta {
  std::string frequency;  // hourly | daily | monthly
  std::map<std::string, ColumnMeta> columns;
};

// Reads "<csv path>.meta", a plain key-value sidecar:
//   frequency = daily
//   kind.tmin = climate
//   unit.tmin = C
//   monthly.tmin = mean
FileMeta load_sidecar(const std::filesystem::path& csv_path);

std::map<std::string, std::vector<TimedRecord>> split_by_series(
    const std::vector<TimedRecord>& records);

}  // namespace ucast
