#pragma once

#include <charconv>
#include <string>
#include <system_error>

namespace hforge {

/// Shortest round-trip decimal form; locale independent.
inline std::string format_shortest(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  return std::string(buf, res.ptr);
}

/// 17 significant digits, general notation; locale independent.
inline std::string format_17(double v) {
  char buf[64];
  auto res = std::to_chars(buf, buf + sizeof(buf), v, std::chars_format::general, 17);
  return std::string(buf, res.ptr);
}

}  // namespace hforge
