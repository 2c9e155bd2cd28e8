#pragma once

#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <string>
#include <utility>
#include <vector>

#include "../error.hpp"
#include "../metrics.hpp"
#include "../profile.hpp"
#include "../registration.hpp"

namespace aniso::io {

/// Shortest round-trippable decimal form (17 significant digits).
inline std::string format_double(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

inline void write_text(const std::string& path, const std::string& text) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cannot open '" + path + "' for writing");
  out << text;
  if (!out) throw IoError("error while writing '" + path + "'");
}

inline std::string read_text(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw IoError("cannot open '" + path + "' for reading");
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

/// `angle_deg,value` header, one row per grid angle.
inline std::string profile_csv(const AngularProfile& profile) {
  std::string out = "angle_deg,value\n";
  for (int m = 0; m < profile.size(); ++m)
    out += format_double(profile.angle(m)) + "," + format_double(profile.values[m]) + "\n";
  return out;
}

inline AngularProfile parse_profile_csv(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  if (!std::getline(in, line) || line != "angle_deg,value")
    throw IoError("profile CSV must start with 'angle_deg,value'");
  AngularProfile p;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    const auto comma = line.find(',');
    if (comma == std::string::npos) throw IoError("malformed profile CSV row: " + line);
    try {
      p.values.push_back(std::stod(line.substr(comma + 1)));
    } catch (const std::exception&) {
      throw IoError("malformed profile CSV value: " + line);
    }
  }
  double total = 0.0;
  for (double v : p.values) total += v;
  p.normalized = std::abs(total - 1.0) <= 1e-9;
  return p;
}

/// Flat `key=value` record, one pair per line, keys in insertion order.
class KeyValueRecord {
 public:
  KeyValueRecord& set(const std::string& key, const std::string& value) {
    for (auto& kv : pairs_) {
      if (kv.first == key) {
        kv.second = value;
        return *this;
      }
    }
    pairs_.emplace_back(key, value);
    return *this;
  }
  KeyValueRecord& set(const std::string& key, double value) { return set(key, format_double(value)); }
  KeyValueRecord& set(const std::string& key, long long value) {
    return set(key, std::to_string(value));
  }
  KeyValueRecord& set(const std::string& key, int value) { return set(key, std::to_string(value)); }

  const std::string* find(const std::string& key) const {
    for (const auto& kv : pairs_)
      if (kv.first == key) return &kv.second;
    return nullptr;
  }

  const std::vector<std::pair<std::string, std::string>>& pairs() const { return pairs_; }

  std::string str() const {
    std::string out;
    for (const auto& [k, v] : pairs_) out += k + "=" + v + "\n";
    return out;
  }

  static KeyValueRecord parse(const std::string& text) {
    KeyValueRecord r;
    std::istringstream in(text);
    std::string line;
    while (std::getline(in, line)) {
      if (line.empty() || line[0] == '#') continue;
      const auto eq = line.find('=');
      if (eq == std::string::npos) throw IoError("malformed key=value line: " + line);
      r.set(line.substr(0, eq), line.substr(eq + 1));
    }
    return r;
  }

 private:
  std::vector<std::pair<std::string, std::string>> pairs_;
};

inline KeyValueRecord registration_record(const RegistrationResult& r) {
  KeyValueRecord rec;
  rec.set("gamma_deg", r.gamma)
      .set("candidate1_deg", r.candidate1)
      .set("candidate2_deg", r.candidate2)
      .set("mse1", r.mse1)
      .set("mse2", r.mse2)
      .set("theta1_deg", r.theta1)
      .set("theta2_deg", r.theta2);
  return rec;
}

inline constexpr const char* kMetricCsvHeader = "method,metric,mean,std,n,params";

inline std::string metric_csv_row(const MetricReport& m) {
  return m.method + "," + m.metric + "," + format_double(m.mean) + "," + format_double(m.stddev) +
         "," + std::to_string(m.count) + "," + m.params;
}

inline std::string metric_csv(const std::vector<MetricReport>& rows) {
  std::string out = std::string(kMetricCsvHeader) + "\n";
  for (const auto& r : rows) out += metric_csv_row(r) + "\n";
  return out;
}

}  // namespace aniso::io
