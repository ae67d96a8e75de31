#include "ucast/series.hpp"

#include <cmath>
#include <set>
#include <stdexcept>

namespace ucast {

bool MonthlySeries::covers(YearMonth first, YearMonth last) const {
  if (values.empty()) return false;
  return start <= first && last <= last_month();
}

double MonthlySeries::value_at(YearMonth m) const {
  const int offset = months_between(start, m);
  if (offset < 0 || offset >= static_cast<int>(values.size())) {
    throw std::out_of_range("series '" + name + "' has no value for " + m.str());
  }
  return values[static_cast<std::size_t>(offset)];
}

void MonthlySeries::validate() const {
  if (values.empty()) throw std::invalid_argument("monthly series '" + name + "' is empty");
  for (double v : values) {
    if (!std::isfinite(v)) {
      throw std::invalid_argument("monthly series '" + name + "' contains a non-finite value");
    }
  }
}

const char* to_string(FeatureKind kind) {
  switch (kind) {
    case FeatureKind::activity: return "activity";
    case FeatureKind::climate: return "climate";
    case FeatureKind::time: return "time";
    case FeatureKind::lag: return "lag";
  }
  return "?";
}

FeatureKind feature_kind_from_string(const std::string& text) {
  if (text == "activity") return FeatureKind::activity;
  if (text == "climate") return FeatureKind::climate;
  if (text == "time") return FeatureKind::time;
  if (text == "lag") return FeatureKind::lag;
  throw std::invalid_argument("unknown feature kind '" + text + "'");
}

std::vector<double> FeatureTable::row(std::size_t i) const {
  std::vector<double> out(columns.size());
  for (std::size_t c = 0; c < columns.size(); ++c) out[c] = columns[c].values[i];
  return out;
}

std::vector<std::vector<double>> FeatureTable::matrix() const {
  std::vector<std::vector<double>> out(rows());
  for (std::size_t i = 0; i < rows(); ++i) out[i] = row(i);
  return out;
}

std::vector<std::string> FeatureTable::column_names() const {
  std::vector<std::string> names;
  names.reserve(columns.size());
  for (const auto& c : columns) names.push_back(c.name);
  return names;
}

const FeatureColumn& FeatureTable::column(const std::string& name) const {
  for (const auto& c : columns) {
    if (c.name == name) return c;
  }
  throw std::out_of_range("no column named '" + name + "'");
}

void FeatureTable::validate() const {
  if (target.size() != months.size()) {
    throw std::invalid_argument("feature table target length does not match months");
  }
  std::set<std::string> names;
  for (const auto& c : columns) {
    if (c.values.size() != months.size()) {
      throw std::invalid_argument("column '" + c.name + "' length does not match months");
    }
    if (!names.insert(c.name).second) {
      throw std::invalid_argument("duplicate column name '" + c.name + "'");
    }
    for (double v : c.values) {
      if (!std::isfinite(v)) {
        throw std::invalid_argument("column '" + c.name + "' contains a non-finite value");
      }
    }
  }
  for (std::size_t i = 1; i < months.size(); ++i) {
    if (months_between(months[i - 1], months[i]) != 1) {
      throw std::invalid_argument("feature table months are not consecutive");
    }
  }
  for (double v : target) {
    if (!std::isfinite(v)) throw std::invalid_argument("target contains a non-finite value");
  }
}

}  // namespace ucast
