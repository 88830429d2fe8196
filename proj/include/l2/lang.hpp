#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string_view>

#include "l2/detail/script_table.hpp"

namespace l2 {

/// The nine corpus languages plus Unknown. Enumerator order doubles as the
/// fixed tie-break order when counts are equal (earlier wins).
enum class LanguageCode : std::uint8_t {
  Zh, En, Fr, De, Ar, He, Ja, Ko, Ru, Unknown,
};

inline constexpr std::array<LanguageCode, 10> kAllLanguages = {
    LanguageCode::Zh, LanguageCode::En, LanguageCode::Fr, LanguageCode::De,
    LanguageCode::Ar, LanguageCode::He, LanguageCode::Ja, LanguageCode::Ko,
    LanguageCode::Ru, LanguageCode::Unknown,
};

/// The nine real languages, without Unknown.
inline constexpr std::array<LanguageCode, 9> kRealLanguages = {
    LanguageCode::Zh, LanguageCode::En, LanguageCode::Fr, LanguageCode::De,
    LanguageCode::Ar, LanguageCode::He, LanguageCode::Ja, LanguageCode::Ko,
    LanguageCode::Ru,
};

/// Two-letter code; Unknown maps to "und" (BCP-47 undetermined).
inline constexpr std::string_view to_code(LanguageCode lc) noexcept {
  switch (lc) {
    case LanguageCode::Zh: return "zh";
    case LanguageCode::En: return "en";
    case LanguageCode::Fr: return "fr";
    case LanguageCode::De: return "de";
    case LanguageCode::Ar: return "ar";
    case LanguageCode::He: return "he";
    case LanguageCode::Ja: return "ja";
    case LanguageCode::Ko: return "ko";
    case LanguageCode::Ru: return "ru";
    case LanguageCode::Unknown: return "und";
  }
  return "und";
}

inline constexpr std::optional<LanguageCode> language_from_code(std::string_view code) noexcept {
  for (LanguageCode lc : kAllLanguages) {
    if (to_code(lc) == code) return lc;
  }
  return std::nullopt;
}

/// Character script classes. The first eight identify a language script;
/// Digit and PunctSymbolSpace are language-neutral; Other covers everything
/// else (unassigned codepoints, marks, surrogates, ...).
enum class Script : std::uint8_t {
  Han, Latin, Cyrillic, Arabic, Hebrew, Hiragana, Katakana, Hangul,
  Digit, PunctSymbolSpace, Other,
};

inline constexpr std::string_view script_name(Script s) noexcept {
  switch (s) {
    case Script::Han: return "Han";
    case Script::Latin: return "Latin";
    case Script::Cyrillic: return "Cyrillic";
    case Script::Arabic: return "Arabic";
    case Script::Hebrew: return "Hebrew";
    case Script::Hiragana: return "Hiragana";
    case Script::Katakana: return "Katakana";
    case Script::Hangul: return "Hangul";
    case Script::Digit: return "Digit";
    case Script::PunctSymbolSpace: return "PunctSymbolSpace";
    case Script::Other: return "Other";
  }
  return "Other";
}

inline constexpr std::optional<Script> script_from_name(std::string_view name) noexcept {
  for (int i = 0; i <= static_cast<int>(Script::Other); ++i) {
    const Script s = static_cast<Script>(i);
    if (script_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Script class of one scalar value. Total over all of [0, 0x10FFFF];
/// anything beyond that range maps to Other.
inline constexpr Script classify_char(char32_t cp) noexcept {
  // Binary search for the last range with lo <= cp.
  std::size_t lo = 0;
  std::size_t hi = detail::kScriptRangeCount;
  while (lo < hi) {
    const std::size_t mid = (lo + hi) / 2;
    if (detail::kScriptRanges[mid].lo <= cp) {
      lo = mid + 1;
    } else {
      hi = mid;
    }
  }
  if (lo == 0) return Script::Other;
  const auto& range = detail::kScriptRanges[lo - 1];
  if (cp <= range.hi) return static_cast<Script>(range.cls);
  return Script::Other;
}

}  // namespace l2
