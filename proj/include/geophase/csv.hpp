#pragma once

#include <charconv>
#include <cstdint>
#include <string>
#include <system_error>

namespace geophase::detail {

// Shortest round-trip decimal form, locale independent. All file output goes
// through these so that identical runs produce identical bytes.
inline void append_number(std::string& out, double v) {
  char buf[40];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline void append_number(std::string& out, std::int64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline void append_number(std::string& out, std::uint64_t v) {
  char buf[24];
  const auto res = std::to_chars(buf, buf + sizeof buf, v);
  out.append(buf, res.ptr);
}

inline std::string number_to_string(double v) {
  std::string s;
  append_number(s, v);
  return s;
}

}  // namespace geophase::detail
