#include "ucast/csv.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <stdexcept>

namespace ucast {

DecimalLocale locale_from_string(const std::string& text) {
  if (text == "period") return DecimalLocale::period;
  if (text == "comma") return DecimalLocale::comma;
  throw std::invalid_argument("unknown locale '" + text + "' (expected period or comma)");
}

const char* to_string(DecimalLocale locale) {
  return locale == DecimalLocale::period ? "period" : "comma";
}

double parse_decimal(const std::string& text, DecimalLocale locale) {
  std::string cleaned;
  cleaned.reserve(text.size());
  if (locale == DecimalLocale::comma) {
    // Comma is the decimal mark; a period is a thousands separator.
    for (char c : text) {
      if (c == '.') continue;
      cleaned.push_back(c == ',' ? '.' : c);
    }
  } else {
    cleaned = text;
  }
  double value = 0.0;
  const char* begin = cleaned.data();
  const char* end = begin + cleaned.size();
  auto [ptr, ec] = std::from_chars(begin, end, value);
  if (ec != std::errc() || ptr != end || !std::isfinite(value)) {
    throw std::invalid_argument("cannot parse number '" + text + "'");
  }
  return value;
}

namespace {

std::vector<std::string> split_fields(const std::string& line) {
  std::vector<std::string> fields;
  std::string current;
  for (char c : line) {
    if (c == ',') {
      fields.push_back(current);
      current.clear();
    } else if (c != '\r') {
      current.push_back(c);
    }
  }
  fields.push_back(current);
  return fields;
}

std::string trim(const std::string& s) {
  std::size_t a = 0;
  std::size_t b = s.size();
  while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
  while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
  return s.substr(a, b - a);
}

bool digits_only(const std::string& s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](unsigned char c) { return std::isdigit(c) != 0; });
}

bool integer_like(const std::string& s) {
  if (s.empty()) return false;
  const std::size_t start = (s[0] == '-' || s[0] == '+') ? 1 : 0;
  return s.size() > start && digits_only(s.substr(start));
}

// With a comma decimal mark a numeric field splits into two raw fields.
// Re-join surplus fields left to right: an integer-looking field followed by
// a digits-only field collapses into "<int>,<frac>". The timestamp field is
// never touched.
void merge_comma_decimals(std::vector<std::string>& fields, std::size_t expected) {
  std::size_t i = 1;
  while (fields.size() > expected && i + 1 < fields.size()) {
    if (integer_like(fields[i]) && digits_only(fields[i + 1])) {
      fields[i] += "," + fields[i + 1];
      fields.erase(fields.begin() + static_cast<std::ptrdiff_t>(i) + 1);
    }
    ++i;
  }
}

}  // namespace

std::vector<TimedRecord> load_csv(const std::filesystem::path& path, const CsvSchema& schema,
                                  DecimalLocale locale) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path.string() + "'");

  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error(path.string() + ": no records");
  const std::vector<std::string> header = split_fields(line);

  std::size_t ts_col = header.size();
  for (std::size_t i = 0; i < header.size(); ++i) {
    if (trim(header[i]) == schema.timestamp_column) ts_col = i;
  }
  if (ts_col == header.size()) {
    throw std::runtime_error(path.string() + ": no '" + schema.timestamp_column + "' column");
  }

  std::vector<std::size_t> value_cols;
  if (schema.value_columns.empty()) {
    for (std::size_t i = 0; i < header.size(); ++i) {
      if (i != ts_col) value_cols.push_back(i);
    }
  } else {
    for (const auto& wanted : schema.value_columns) {
      bool found = false;
      for (std::size_t i = 0; i < header.size(); ++i) {
        if (trim(header[i]) == wanted) {
          value_cols.push_back(i);
          found = true;
        }
      }
      if (!found) throw std::runtime_error(path.string() + ": no '" + wanted + "' column");
    }
  }
  if (value_cols.empty()) throw std::runtime_error(path.string() + ": no value columns");

  std::vector<TimedRecord> records;
  std::size_t line_no = 1;
  while (std::getline(in, line)) {
    ++line_no;
    if (trim(line).empty()) continue;
    std::vector<std::string> fields = split_fields(line);
    if (locale == DecimalLocale::comma && fields.size() > header.size()) {
      merge_comma_decimals(fields, header.size());
    }
    const auto fail = [&](const std::string& why) {
      throw std::runtime_error(path.string() + ":" + std::to_string(line_no) + ": " + why);
    };
    if (fields.size() != header.size()) fail("expected " + std::to_string(header.size()) + " fields");
    DateTime ts;
    try {
      ts = parse_timestamp(trim(fields[ts_col]));
    } catch (const std::exception& e) {
      fail(e.what());
    }
    for (std::size_t c : value_cols) {
      TimedRecord rec;
      rec.timestamp = ts;
      rec.series_id = trim(header[c]);
      try {
        rec.value = parse_decimal(trim(fields[c]), locale);
      } catch (const std::exception& e) {
        fail(e.what());
      }
      records.push_back(std::move(rec));
    }
  }
  if (records.empty()) throw std::runtime_error(path.string() + ": no records");

  std::stable_sort(records.begin(), records.end(), [](const TimedRecord& a, const TimedRecord& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    return a.series_id < b.series_id;
  });
  for (std::size_t i = 1; i < records.size(); ++i) {
    if (records[i].timestamp == records[i - 1].timestamp &&
        records[i].series_id == records[i - 1].series_id) {
      throw std::runtime_error(path.string() + ": duplicate timestamp " +
                               records[i].timestamp.str() + " in series '" +
                               records[i].series_id + "'");
    }
  }
  return records;
}

FileMeta load_sidecar(const std::filesystem::path& csv_path) {
  const std::filesystem::path meta_path = csv_path.string() + ".meta";
  std::ifstream in(meta_path);
  if (!in) throw std::runtime_error("cannot open sidecar '" + meta_path.string() + "'");

  FileMeta meta;
  std::string line;
  while (std::getline(in, line)) {
    const std::string text = trim(line);
    if (text.empty() || text[0] == '#') continue;
    const auto eq = text.find('=');
    if (eq == std::string::npos) {
      throw std::runtime_error(meta_path.string() + ": expected 'key = value', got '" + text + "'");
    }
    const std::string key = trim(text.substr(0, eq));
    const std::string value = trim(text.substr(eq + 1));
    if (key == "frequency") {
      meta.frequency = value;
      continue;
    }
    const auto dot = key.find('.');
    if (dot == std::string::npos) {
      throw std::runtime_error(meta_path.string() + ": unknown key '" + key + "'");
    }
    const std::string field = key.substr(0, dot);
    const std::string column = key.substr(dot + 1);
    ColumnMeta& cm = meta.columns[column];
    if (field == "unit") {
      cm.unit = value;
    } else if (field == "kind") {
      cm.kind = feature_kind_from_string(value);
    } else if (field == "monthly") {
      if (value == "sum") {
        cm.monthly = MonthlyAgg::sum;
      } else if (value == "mean") {
        cm.monthly = MonthlyAgg::mean;
      } else {
        throw std::runtime_error(meta_path.string() + ": monthly must be sum or mean");
      }
    } else {
      throw std::runtime_error(meta_path.string() + ": unknown key '" + key + "'");
    }
  }
  if (meta.frequency != "hourly" && meta.frequency != "daily" && meta.frequency != "monthly") {
    throw std::runtime_error(meta_path.string() + ": frequency must be hourly, daily or monthly");
  }
  return meta;
}

std::map<std::string, std::vector<TimedRecord>> split_by_series(
    const std::vector<TimedRecord>& records) {
  std::map<std::string, std::vector<TimedRecord>> out;
  for (const auto& rec : records) out[rec.series_id].push_back(rec);
  return out;
}

}  // namespace ucast
