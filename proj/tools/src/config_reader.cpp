#include "config_reader.h"

#include "qramph/errors.h"

namespace qramph::cli {

using nlohmann::json;

ConfigReader::ConfigReader(json obj, std::string where) : obj_(std::move(obj)), where_(std::move(where)) {
  if (obj_.is_null()) obj_ = json::object();
  if (!obj_.is_object()) throw InvalidParameter(where_ + ": expected a JSON object");
}

bool ConfigReader::has(const std::string& key) const { return obj_.contains(key); }

const json* ConfigReader::find(const std::string& key) {
  used_.insert(key);
  auto it = obj_.find(key);
  if (it == obj_.end() || it->is_null()) return nullptr;
  return &*it;
}

void ConfigReader::fail(const std::string& key, const std::string& what) const {
  throw InvalidParameter(where_ + "." + key + ": " + what);
}

int ConfigReader::integer(const std::string& key, int fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_number_integer()) fail(key, "expected an integer");
  return v->get<int>();
}

double ConfigReader::number(const std::string& key, double fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_number()) fail(key, "expected a number");
  return v->get<double>();
}

bool ConfigReader::boolean(const std::string& key, bool fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_boolean()) fail(key, "expected true or false");
  return v->get<bool>();
}

std::string ConfigReader::text(const std::string& key, const std::string& fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_string()) fail(key, "expected a string");
  return v->get<std::string>();
}

Duration duration_value(const json& v, const std::string& where) {
  if (!v.is_string()) throw InvalidParameter(where + ": durations need a unit, e.g. \"350ns\"");
  return parse_duration(v.get<std::string>());
}

Duration ConfigReader::duration(const std::string& key, Duration fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  return duration_value(*v, where_ + "." + key);
}

std::optional<Duration> ConfigReader::optional_duration(const std::string& key,
                                                        std::optional<Duration> fallback) {
  if (obj_.contains(key) && obj_.at(key).is_null()) {
    used_.insert(key);
    return std::nullopt;
  }
  const json* v = find(key);
  if (!v) return fallback;
  return duration_value(*v, where_ + "." + key);
}

std::vector<double> ConfigReader::numbers(const std::string& key, std::vector<double> fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array()) fail(key, "expected an array of numbers");
  std::vector<double> out;
  for (const auto& x : *v) {
    if (!x.is_number()) fail(key, "expected an array of numbers");
    out.push_back(x.get<double>());
  }
  return out;
}

std::vector<int> ConfigReader::integers(const std::string& key, std::vector<int> fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array()) fail(key, "expected an array of integers");
  std::vector<int> out;
  for (const auto& x : *v) {
    if (!x.is_number_integer()) fail(key, "expected an array of integers");
    out.push_back(x.get<int>());
  }
  return out;
}

std::vector<std::string> ConfigReader::texts(const std::string& key, std::vector<std::string> fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array()) fail(key, "expected an array of strings");
  std::vector<std::string> out;
  for (const auto& x : *v) {
    if (!x.is_string()) fail(key, "expected an array of strings");
    out.push_back(x.get<std::string>());
  }
  return out;
}

std::vector<Duration> ConfigReader::durations(const std::string& key, std::vector<Duration> fallback) {
  const json* v = find(key);
  if (!v) return fallback;
  if (!v->is_array()) fail(key, "expected an array of durations");
  std::vector<Duration> out;
  for (const auto& x : *v) out.push_back(duration_value(x, where_ + "." + key));
  return out;
}

std::optional<json> ConfigReader::raw(const std::string& key) {
  const json* v = find(key);
  if (!v) return std::nullopt;
  return *v;
}

ConfigReader ConfigReader::child(const std::string& key) {
  const json* v = find(key);
  return ConfigReader(v ? *v : json::object(), where_ + "." + key);
}

void ConfigReader::finish() const {
  for (const auto& [key, value] : obj_.items()) {
    if (!used_.contains(key)) throw InvalidParameter(where_ + ": unknown key '" + key + "'");
  }
}

}  // namespace qramph::cli
