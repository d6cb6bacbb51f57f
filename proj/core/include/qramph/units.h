#pragma once

#include <cmath>
#include <compare>
#include <limits>
#include <numbers>
#include <string>
#include <string_view>

namespace qramph {

/// Time span stored in nanoseconds. Construct through the named factories so
/// every literal carries its unit.
class Duration {
 public:
  constexpr Duration() = default;

  static constexpr Duration ns(double v) { return Duration(v); }
  static constexpr Duration us(double v) { return Duration(v * 1e3); }
  static constexpr Duration s(double v) { return Duration(v * 1e9); }
  static constexpr Duration infinite() {
    return Duration(std::numeric_limits<double>::infinity());
  }

  constexpr double in_ns() const { return ns_; }
  constexpr double in_us() const { return ns_ * 1e-3; }
  constexpr double in_s() const { return ns_ * 1e-9; }
  bool is_infinite() const { return std::isinf(ns_); }

  constexpr Duration operator+(Duration o) const { return Duration(ns_ + o.ns_); }
  constexpr Duration operator-(Duration o) const { return Duration(ns_ - o.ns_); }
  constexpr Duration operator*(double k) const { return Duration(ns_ * k); }
  constexpr double operator/(Duration o) const { return ns_ / o.ns_; }
  constexpr auto operator<=>(const Duration&) const = default;

 private:
  constexpr explicit Duration(double v) : ns_(v) {}
  double ns_ = 0.0;
};

constexpr Duration operator*(double k, Duration d) { return d * k; }

/// Angular rate stored in rad/s.
class AngularRate {
 public:
  constexpr AngularRate() = default;

  static constexpr AngularRate rad_per_s(double v) { return AngularRate(v); }
  /// 2*pi * f for a frequency given in MHz.
  static constexpr AngularRate two_pi_mhz(double mhz) {
    return AngularRate(2.0 * std::numbers::pi * mhz * 1e6);
  }

  constexpr double in_rad_per_s() const { return w_; }
  constexpr double in_rad_per_ns() const { return w_ * 1e-9; }
  constexpr double in_two_pi_mhz() const { return w_ / (2.0 * std::numbers::pi * 1e6); }
  constexpr auto operator<=>(const AngularRate&) const = default;

 private:
  constexpr explicit AngularRate(double v) : w_(v) {}
  double w_ = 0.0;
};

/// Parses "350ns", "100us", "2.5 us", "1s" or "inf". Unitless numbers are
/// rejected with InvalidParameter.
Duration parse_duration(std::string_view text);

/// Formats as "<value>ns" (or "inf") with full round-trip precision.
std::string format_duration(Duration d);

}  // namespace qramph
