#pragma once

#include <iostream>
#include <mutex>
#include <sstream>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace l2::log {

enum class Level : int { Debug = 0, Info = 1, Warn = 2, Error = 3 };

inline constexpr std::string_view level_name(Level l) noexcept {
  switch (l) {
    case Level::Debug: return "debug";
    case Level::Info: return "info";
    case Level::Warn: return "warn";
    case Level::Error: return "error";
  }
  return "info";
}

namespace detail {

inline std::mutex& sink_mutex() {
  static std::mutex m;
  return m;
}

inline Level& threshold_ref() {
  static Level level = Level::Info;
  return level;
}

/// Values with spaces, quotes, or '=' are double-quoted with backslash escapes.
inline std::string quote_value(std::string_view v) {
  bool needs_quotes = v.empty();
  for (char c : v) {
    if (c == ' ' || c == '"' || c == '=' || c == '\n' || c == '\t') {
      needs_quotes = true;
      break;
    }
  }
  if (!needs_quotes) return std::string(v);
  std::string out = "\"";
  for (char c : v) {
    if (c == '"' || c == '\\') {
      out += '\\';
      out += c;
    } else if (c == '\n') {
      out += "\\n";
    } else if (c == '\t') {
      out += "\\t";
    } else {
      out += c;
    }
  }
  out += '"';
  return out;
}

}  // namespace detail

inline void set_threshold(Level level) { detail::threshold_ref() = level; }
inline Level threshold() { return detail::threshold_ref(); }

using Field = std::pair<std::string, std::string>;

inline Field field(std::string key, std::string value) {
  return {std::move(key), std::move(value)};
}

template <typename T>
Field field(std::string key, const T& value) {
  std::ostringstream os;
  os << value;
  return {std::move(key), os.str()};
}

/// One "level=... event=... k=v ..." line to stderr; no timestamps so runs
/// with identical inputs produce identical streams.
inline void emit(Level level, std::string_view event, const std::vector<Field>& fields = {}) {
  if (static_cast<int>(level) < static_cast<int>(detail::threshold_ref())) return;
  std::string line = "level=";
  line += level_name(level);
  line += " event=";
  line += detail::quote_value(event);
  for (const auto& [k, v] : fields) {
    line += ' ';
    line += k;
    line += '=';
    line += detail::quote_value(v);
  }
  line += '\n';
  std::lock_guard<std::mutex> lock(detail::sink_mutex());
  std::cerr << line;
}

inline void debug(std::string_view event, const std::vector<Field>& fields = {}) {
  emit(Level::Debug, event, fields);
}
inline void info(std::string_view event, const std::vector<Field>& fields = {}) {
  emit(Level::Info, event, fields);
}
inline void warn(std::string_view event, const std::vector<Field>& fields = {}) {
  emit(Level::Warn, event, fields);
}
inline void error(std::string_view event, const std::vector<Field>& fields = {}) {
  emit(Level::Error, event, fields);
}

}  // namespace l2::log
