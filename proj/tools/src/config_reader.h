#pragma once

#include <optional>
#include <set>
#include <string>
#include <vector>

#include <json.hpp>

#include "qramph/units.h"

namespace qramph::cli {

/// Read-once view of a JSON object. Every key must be consumed before
/// finish(), which rejects leftovers.
class ConfigReader {
 public:
  ConfigReader(nlohmann::json obj, std::string where);

  bool has(const std::string& key) const;
  int integer(const std::string& key, int fallback);
  double number(const std::string& key, double fallback);
  bool boolean(const std::string& key, bool fallback);
  std::string text(const std::string& key, const std::string& fallback);
  Duration duration(const std::string& key, Duration fallback);
  std::optional<Duration> optional_duration(const std::string& key, std::optional<Duration> fallback);
  std::vector<double> numbers(const std::string& key, std::vector<double> fallback);
  std::vector<int> integers(const std::string& key, std::vector<int> fallback);
  std::vector<std::string> texts(const std::string& key, std::vector<std::string> fallback);
  std::vector<Duration> durations(const std::string& key, std::vector<Duration> fallback);
  /// Raw access for nested structures; marks the key consumed.
  std::optional<nlohmann::json> raw(const std::string& key);
  ConfigReader child(const std::string& key);

  void finish() const;
  const std::string& where() const { return where_; }

 private:
  const nlohmann::json* find(const std::string& key);
  [[noreturn]] void fail(const std::string& key, const std::string& what) const;

  nlohmann::json obj_;
  std::string where_;
  std::set<std::string> used_;
};

Duration duration_value(const nlohmann::json& v, const std::string& where);

}  // namespace qramph::cli
