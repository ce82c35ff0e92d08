#pragma once

// Minimal JSON emission helpers for trace output. Hand-rolled on purpose:
// audit traces must be byte-identical across runs and machines, which means
// fixed key order and fixed 6-decimal formatting of real numbers.

#include <cstdio>
#include <string>
#include <string_view>

namespace egret {

inline std::string fmt6(double v) {
  char buf[64];
  std::snprintf(buf, sizeof(buf), "%.6f", v);
  return buf;
}

inline std::string json_escape(std::string_view s) {
  std::string out;
  out.reserve(s.size() + 2);
  for (unsigned char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\b': out += "\\b"; break;
      case '\f': out += "\\f"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (c < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += static_cast<char>(c);
        }
    }
  }
  return out;
}

inline std::string json_str(std::string_view s) {
  return "\"" + json_escape(s) + "\"";
}

}  // namespace egret
