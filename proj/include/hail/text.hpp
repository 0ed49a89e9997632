#pragma once

// Locale-independent, round-trippable number formatting (shortest
// representation that parses back to the same double).

#include <charconv>
#include <string>

namespace hail {

inline void append_double(std::string& out, double v) {
  char buf[32];
  auto res = std::to_chars(buf, buf + sizeof(buf), v);
  out.append(buf, res.ptr);
}

inline std::string format_double(double v) {
  std::string s;
  append_double(s, v);
  return s;
}

}  // namespace hail
