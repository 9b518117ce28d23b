#pragma once

// Small string helpers shared across the library.

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace corefud {

inline std::vector<std::string> split(std::string_view s, char sep) {
  std::vector<std::string> out;
  std::size_t begin = 0;
  while (true) {
    std::size_t pos = s.find(sep, begin);
    if (pos == std::string_view::npos) {
      out.emplace_back(s.substr(begin));
      break;
    }
    out.emplace_back(s.substr(begin, pos - begin));
    begin = pos + 1;
  }
  return out;
}

inline std::string join(const std::vector<std::string>& parts, std::string_view sep) {
  std::string out;
  for (std::size_t i = 0; i < parts.size(); ++i) {
    if (i > 0) out.append(sep);
    out.append(parts[i]);
  }
  return out;
}

inline std::string_view trim(std::string_view s) {
  while (!s.empty() && (s.front() == ' ' || s.front() == '\t' || s.front() == '\r')) s.remove_prefix(1);
  while (!s.empty() && (s.back() == ' ' || s.back() == '\t' || s.back() == '\r')) s.remove_suffix(1);
  return s;
}

// Strict non-negative integer parse; rejects empty input, non-digits and
// anything longer than max_digits (overflow guard on hostile input).
inline std::optional<long long> parse_digits(std::string_view s, int max_digits = 12) {
  if (s.empty() || s.size() > static_cast<std::size_t>(max_digits)) return std::nullopt;
  long long value = 0;
  for (char c : s) {
    if (c < '0' || c > '9') return std::nullopt;
    value = value * 10 + (c - '0');
  }
  return value;
}

// 1234567 -> "1,234,567"
inline std::string with_thousands(long long v) {
  std::string digits = std::to_string(v);
  std::string out;
  std::size_t start = (!digits.empty() && digits[0] == '-') ? 1 : 0;
  if (start == 1) out.push_back('-');
  std::size_t n = digits.size() - start;
  for (std::size_t i = 0; i < n; ++i) {
    if (i > 0 && (n - i) % 3 == 0) out.push_back(',');
    out.push_back(digits[start + i]);
  }
  return out;
}

}  // namespace corefud
