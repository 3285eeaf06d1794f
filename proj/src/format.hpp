#pragma once

#include <charconv>
#include <cmath>
#include <string>

namespace evscurve::detail {

// Locale-independent number formatting shared by the report emitters.

inline std::string fixed(double v, int precision) {
  if (v == 0.0) v = 0.0;  // no "-0.00"
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::fixed, precision);
  std::string s(buf, res.ptr);
  if (s.find_first_not_of("-0.") == std::string::npos && s.front() == '-') s.erase(0, 1);
  return s;
}

/// At most 12 significant digits, shortest form.
inline std::string sig12(double v) {
  if (v == 0.0) return "0";
  char buf[64];
  const auto res = std::to_chars(buf, buf + sizeof buf, v, std::chars_format::general, 12);
  return std::string(buf, res.ptr);
}

/// v rounded to 12 significant digits, so that shortest round-trip printing
/// never emits more than 12.
inline double round12(double v) {
  if (v == 0.0) return 0.0;
  if (!std::isfinite(v)) return v;
  const auto s = sig12(v);
  double out = v;
  std::from_chars(s.data(), s.data() + s.size(), out);
  return out;
}

}  // namespace evscurve::detail
