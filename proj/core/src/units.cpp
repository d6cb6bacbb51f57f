#include "qramph/units.h"

#include <cctype>
#include <charconv>
#include <cstdio>

#include "qramph/errors.h"

namespace qramph {

namespace {

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Duration parse_duration(std::string_view text) {
  std::string_view s = trim(text);
  if (s == "inf" || s == "infinity") return Duration::infinite();

  std::size_t split = s.size();
  while (split > 0 && std::isalpha(static_cast<unsigned char>(s[split - 1]))) --split;
  std::string_view number = trim(s.substr(0, split));
  std::string_view unit = s.substr(split);
  if (unit.empty()) {
    throw InvalidParameter("duration '" + std::string(text) +
                           "' has no unit suffix (expected ns, us or s)");
  }

  double value = 0.0;
  auto [ptr, ec] = std::from_chars(number.data(), number.data() + number.size(), value);
  if (ec != std::errc() || ptr != number.data() + number.size() || number.empty()) {
    throw InvalidParameter("duration '" + std::string(text) + "' is not a number");
  }
  if (!std::isfinite(value)) {
    throw InvalidParameter("duration '" + std::string(text) + "' is not finite");
  }

  if (unit == "ns") return Duration::ns(value);
  if (unit == "us") return Duration::us(value);
  if (unit == "s") return Duration::s(value);
  throw InvalidParameter("duration '" + std::string(text) + "' has unknown unit '" +
                         std::string(unit) + "'");
}

std::string format_duration(Duration d) {
  if (d.is_infinite()) return "inf";
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.17gns", d.in_ns());
  return buf;
}

}  // namespace qramph
