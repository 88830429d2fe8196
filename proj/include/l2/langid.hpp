#pragma once

#include <array>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <string>
#include <string_view>
#include <unordered_set>
#include <vector>

#include "l2/corpus.hpp"
#include "l2/error.hpp"
#include "l2/lang.hpp"
#include "l2/unicode.hpp"

namespace l2::langid {

/// Per-unit language histogram. counts sums to the number of classified
/// units; dominant maximizes counts with ties broken by the fixed order
/// zh<en<fr<de<ar<he<ja<ko<ru (Unknown loses every tie).
struct LanguageProfile {
  std::map<LanguageCode, std::uint64_t> counts;
  LanguageCode dominant = LanguageCode::Unknown;
  std::vector<std::size_t> switch_points;
};

struct SpanClass {
  LanguageCode lang = LanguageCode::Unknown;
  double confidence = 0.0;
};

struct CodeSwitch {
  std::size_t segment_index = 0;  // index of the segment the switch lands on
  LanguageCode from = LanguageCode::Unknown;
  LanguageCode to = LanguageCode::Unknown;

  bool operator==(const CodeSwitch&) const = default;
};

// ---------------------------------------------------------------------------
// Stopword tables for Latin-script disambiguation (en/fr/de).

struct StopwordTable {
  std::unordered_set<std::string> en;
  std::unordered_set<std::string> fr;
  std::unordered_set<std::string> de;

  const std::unordered_set<std::string>* for_language(LanguageCode lc) const noexcept {
    switch (lc) {
      case LanguageCode::En: return &en;
      case LanguageCode::Fr: return &fr;
      case LanguageCode::De: return &de;
      default: return nullptr;
    }
  }
};

namespace detail {

inline constexpr std::string_view kEnStopwords[] = {
    "a", "about", "above", "after", "again", "all", "also", "am", "an", "and",
    "any", "are", "as", "at", "be", "because", "been", "before", "being",
    "below", "between", "both", "but", "by", "can", "could", "did", "do",
    "does", "doing", "down", "during", "each", "few", "for", "from",
    "further", "had", "has", "have", "having", "he", "her", "here", "hers",
    "him", "his", "how", "i", "if", "in", "into", "is", "it", "its",
    "itself", "just", "let", "may", "me", "might", "more", "most", "must",
    "my", "no", "nor", "not", "now", "of", "off", "on", "once", "only",
    "or", "other", "our", "ours", "out", "over", "own", "same", "she",
    "should", "so", "some", "such", "than", "that", "the", "their",
    "theirs", "them", "then", "there", "these", "they", "this", "those",
    "through", "to", "too", "under", "until", "up", "very", "was", "we",
    "were", "what", "when", "where", "which", "while", "who", "whom",
    "why", "will", "with", "would", "you", "your", "yours"};

inline constexpr std::string_view kFrStopwords[] = {
    "à", "ai", "alors", "après", "as", "au", "aucun", "aussi", "autre",
    "autres", "aux", "avaient", "avait", "avant", "avec", "avez", "avoir",
    "avons", "bien", "c", "car", "ce", "cela", "ces", "cet", "cette",
    "ceux", "chaque", "comme", "comment", "d", "dans", "de", "déjà",
    "depuis", "des", "donc", "dont", "du", "elle", "elles", "en",
    "encore", "entre", "es", "est", "et", "étaient", "étais", "était",
    "étant", "été", "être", "êtes", "eu", "eux", "ici", "il", "ils",
    "j", "jamais", "je", "l", "la", "là", "le", "les", "leur", "leurs",
    "lui", "m", "ma", "mais", "me", "même", "mes", "moi", "mon", "n",
    "ne", "ni", "non", "nos", "notre", "nous", "on", "ont", "ou", "où",
    "oui", "par", "parce", "pas", "pendant", "peut", "plus", "pour",
    "pourquoi", "qu", "quand", "que", "quel", "quelle", "quelles",
    "quels", "qui", "sa", "sans", "se", "sera", "serait", "ses", "si",
    "sommes", "son", "sont", "sous", "suis", "sur", "t", "ta", "te",
    "tes", "toi", "ton", "toujours", "tous", "tout", "toute", "toutes",
    "très", "tu", "un", "une", "vos", "votre", "vous", "y", "ça"};

inline constexpr std::string_view kDeStopwords[] = {
    "aber", "alle", "allem", "allen", "aller", "alles", "als", "also",
    "am", "an", "andere", "anderen", "anders", "auch", "auf", "aus",
    "bei", "beim", "bin", "bis", "bist", "da", "damit", "dann", "das",
    "dass", "daß", "dein", "deine", "dem", "den", "denn", "der",
    "deren", "des", "dessen", "die", "dies", "diese", "diesem",
    "diesen", "dieser", "dieses", "doch", "dort", "durch", "ein",
    "eine", "einem", "einen", "einer", "eines", "einige", "einmal",
    "er", "es", "etwas", "euch", "euer", "eure", "für", "gegen",
    "gewesen", "hab", "habe", "haben", "hat", "hatte", "hatten",
    "hier", "hin", "hinter", "ich", "ihm", "ihn", "ihnen", "ihr",
    "ihre", "ihrem", "ihren", "ihrer", "ihres", "im", "immer", "in",
    "indem", "ins", "ist", "ja", "jede", "jedem", "jeden", "jeder",
    "jedes", "jetzt", "kann", "kein", "keine", "keinem", "keinen",
    "keiner", "keines", "können", "könnte", "machen", "man", "manche",
    "mein", "meine", "meinem", "meinen", "meiner", "meines", "mich",
    "mir", "mit", "muss", "musste", "nach", "nicht", "nichts", "noch",
    "nun", "nur", "ob", "oder", "ohne", "schon", "sehr", "sein",
    "seine", "seinem", "seinen", "seiner", "seines", "selbst", "sich",
    "sie", "sind", "so", "solche", "soll", "sollte", "sondern",
    "sonst", "über", "um", "und", "uns", "unser", "unsere", "unter",
    "viel", "vom", "von", "vor", "während", "war", "waren", "warst",
    "was", "weil", "weiter", "welche", "welchem", "welchen",
    "welcher", "welches", "wenn", "werde", "werden", "wie", "wieder",
    "will", "wir", "wird", "wirst", "wo", "wollen", "wollte",
    "würde", "würden", "zu", "zum", "zur", "zwar", "zwischen"};

/// Lowercase for the Latin repertoire the stopword lists draw from
/// (ASCII, Latin-1 Supplement, Latin Extended-A). Other scalars pass through.
inline constexpr char32_t to_lower_scalar(char32_t cp) noexcept {
  if (cp >= U'A' && cp <= U'Z') return cp + 0x20;
  if (cp >= 0xC0 && cp <= 0xDE && cp != 0xD7) return cp + 0x20;
  if (cp >= 0x100 && cp <= 0x137) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp >= 0x139 && cp <= 0x147) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp >= 0x14A && cp <= 0x177) return (cp % 2 == 0) ? cp + 1 : cp;
  if (cp == 0x178) return 0xFF;
  if (cp >= 0x179 && cp <= 0x17D) return (cp % 2 == 1) ? cp + 1 : cp;
  if (cp == 0x1E9E) return 0xDF;
  return cp;
}

}  // namespace detail

inline StopwordTable default_stopword_table() {
  StopwordTable t;
  for (std::string_view w : detail::kEnStopwords) t.en.emplace(w);
  for (std::string_view w : detail::kFrStopwords) t.fr.emplace(w);
  for (std::string_view w : detail::kDeStopwords) t.de.emplace(w);
  return t;
}

inline const StopwordTable& builtin_stopwords() {
  static const StopwordTable table = default_stopword_table();
  return table;
}

namespace detail {
inline StopwordTable& active_table_storage() {
  static StopwordTable table = default_stopword_table();
  return table;
}
}  // namespace detail

/// Table used by the table-less overloads below. Swapping it (not
/// thread-safe; do it at startup) redirects every downstream classification,
/// including validation paths that never see an explicit table.
inline const StopwordTable& active_stopwords() { return detail::active_table_storage(); }

inline void set_active_stopwords(StopwordTable table) {
  detail::active_table_storage() = std::move(table);
}

/// Load per-language stopword files "<dir>/<code>.txt" (one word per line,
/// '#' comments). Files present replace the built-in list for that language;
/// absent files keep the defaults.
inline StopwordTable load_stopwords_dir(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("langid", "stopwords dir '" + dir.string() + "' does not exist");
  }
  StopwordTable table = default_stopword_table();
  const std::array<std::pair<LanguageCode, std::unordered_set<std::string>*>, 3> slots{
      {{LanguageCode::En, &table.en}, {LanguageCode::Fr, &table.fr}, {LanguageCode::De, &table.de}}};
  for (const auto& [lc, set] : slots) {
    const auto path = dir / (std::string(to_code(lc)) + ".txt");
    if (!std::filesystem::exists(path)) continue;
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("langid", "cannot open '" + path.string() + "'");
    set->clear();
    std::string line;
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      const std::size_t hash = line.find('#');
      if (hash != std::string::npos) line.erase(hash);
      std::size_t b = line.find_first_not_of(" \t");
      std::size_t e = line.find_last_not_of(" \t");
      if (b == std::string::npos) continue;
      std::string word = line.substr(b, e - b + 1);
      std::string lowered;
      for (char32_t cp : utf8_decode(word).scalars) {
        utf8_append(lowered, detail::to_lower_scalar(cp));
      }
      set->insert(std::move(lowered));
    }
    if (set->empty()) {
      throw IoError("langid", "stopword file '" + path.string() + "' has no entries");
    }
  }
  return table;
}

// ---------------------------------------------------------------------------
// Span classification.

namespace detail {

struct ScriptHistogram {
  std::uint64_t han = 0, latin = 0, cyrillic = 0, arabic = 0, hebrew = 0;
  std::uint64_t hiragana = 0, katakana = 0, hangul = 0;

  std::uint64_t bearing_total() const noexcept {
    return han + latin + cyrillic + arabic + hebrew + hiragana + katakana + hangul;
  }
};

inline ScriptHistogram histogram(const std::u32string& scalars) noexcept {
  ScriptHistogram h;
  for (char32_t cp : scalars) {
    switch (classify_char(cp)) {
      case Script::Han: ++h.han; break;
      case Script::Latin: ++h.latin; break;
      case Script::Cyrillic: ++h.cyrillic; break;
      case Script::Arabic: ++h.arabic; break;
      case Script::Hebrew: ++h.hebrew; break;
      case Script::Hiragana: ++h.hiragana; break;
      case Script::Katakana: ++h.katakana; break;
      case Script::Hangul: ++h.hangul; break;
      default: break;
    }
  }
  return h;
}

/// Vote over maximal Latin-script runs, lowercased, against each list.
/// Ties (including zero votes everywhere) fall back to English.
inline LanguageCode latin_vote(const std::u32string& scalars, const StopwordTable& table) {
  std::uint64_t votes_en = 0, votes_fr = 0, votes_de = 0;
  std::string word;
  const auto flush = [&] {
    if (word.empty()) return;
    if (table.en.count(word)) ++votes_en;
    if (table.fr.count(word)) ++votes_fr;
    if (table.de.count(word)) ++votes_de;
    word.clear();
  };
  for (char32_t cp : scalars) {
    if (classify_char(cp) == Script::Latin) {
      utf8_append(word, to_lower_scalar(cp));
    } else {
      flush();
    }
  }
  flush();
  if (votes_fr > votes_en && votes_fr >= votes_de) return LanguageCode::Fr;
  if (votes_de > votes_en && votes_de > votes_fr) return LanguageCode::De;
  return LanguageCode::En;
}

}  // namespace detail

/// Map the span's script histogram to a language. Han text is Chinese unless
/// kana is present (then Japanese); Latin text is resolved to en/fr/de by
/// stopword vote. Confidence is the winning language's share of
/// language-bearing characters; neutral-only spans yield (Unknown, 0).
inline SpanClass classify_span(std::string_view text, const StopwordTable& table) {
  const DecodedText decoded = utf8_decode(text);
  const detail::ScriptHistogram h = detail::histogram(decoded.scalars);
  const std::uint64_t total = h.bearing_total();
  if (total == 0) return {LanguageCode::Unknown, 0.0};

  const bool kana = h.hiragana + h.katakana > 0;
  std::array<std::uint64_t, kRealLanguages.size()> counts{};
  const auto at = [&counts](LanguageCode lc) -> std::uint64_t& {
    return counts[static_cast<std::size_t>(lc)];
  };
  if (kana) {
    at(LanguageCode::Ja) = h.hiragana + h.katakana + h.han;
  } else {
    at(LanguageCode::Zh) = h.han;
  }
  at(LanguageCode::Ko) = h.hangul;
  at(LanguageCode::He) = h.hebrew;
  at(LanguageCode::Ar) = h.arabic;
  at(LanguageCode::Ru) = h.cyrillic;
  if (h.latin > 0) {
    at(detail::latin_vote(decoded.scalars, table)) = h.latin;
  }

  LanguageCode best = LanguageCode::Zh;
  std::uint64_t best_count = 0;
  for (LanguageCode lc : kRealLanguages) {
    if (at(lc) > best_count) {
      best = lc;
      best_count = at(lc);
    }
  }
  return {best, static_cast<double>(best_count) / static_cast<double>(total)};
}

inline SpanClass classify_span(std::string_view text) {
  return classify_span(text, active_stopwords());
}

// ---------------------------------------------------------------------------
// Token-level profiling.

/// Pick the count-maximizing language; ties resolve in enum order and
/// Unknown wins only when nothing else scored.
inline LanguageCode dominant_language(const std::map<LanguageCode, std::uint64_t>& counts) {
  LanguageCode best = LanguageCode::Unknown;
  std::uint64_t best_count = 0;
  for (LanguageCode lc : kRealLanguages) {
    const auto it = counts.find(lc);
    const std::uint64_t c = it == counts.end() ? 0 : it->second;
    if (c > best_count) {
      best = lc;
      best_count = c;
    }
  }
  if (const auto it = counts.find(LanguageCode::Unknown);
      it != counts.end() && it->second > best_count) {
    return LanguageCode::Unknown;
  }
  return best;
}

/// Classify each token, attributing neutral tokens to the nearest preceding
/// language-bearing token (Unknown before any). A switch point is recorded at
/// every index whose attributed language differs from its predecessor's;
/// entering the first language from leading Unknown is not a switch.
inline LanguageProfile token_language_profile(const std::vector<std::string>& tokens,
                                              const StopwordTable& table) {
  LanguageProfile profile;
  LanguageCode prev = LanguageCode::Unknown;
  for (std::size_t i = 0; i < tokens.size(); ++i) {
    LanguageCode lc = classify_span(tokens[i], table).lang;
    if (lc == LanguageCode::Unknown) lc = prev;
    ++profile.counts[lc];
    if (i > 0 && lc != prev && prev != LanguageCode::Unknown) {
      profile.switch_points.push_back(i);
    }
    prev = lc;
  }
  profile.dominant = dominant_language(profile.counts);
  return profile;
}

inline LanguageProfile token_language_profile(const std::vector<std::string>& tokens) {
  return token_language_profile(tokens, active_stopwords());
}

/// Split on whitespace scalars and profile the resulting tokens.
inline LanguageProfile text_language_profile(std::string_view text,
                                             const StopwordTable& table) {
  std::vector<std::string> tokens;
  std::string current;
  for (char32_t cp : utf8_decode(text).scalars) {
    if (is_whitespace(cp)) {
      if (!current.empty()) tokens.push_back(std::move(current));
      current.clear();
    } else {
      utf8_append(current, cp);
    }
  }
  if (!current.empty()) tokens.push_back(std::move(current));
  return token_language_profile(tokens, table);
}

inline LanguageProfile text_language_profile(std::string_view text) {
  return text_language_profile(text, active_stopwords());
}

// ---------------------------------------------------------------------------
// Segment-level code-switch detection.

/// One entry per adjacent pair of language-bearing segments whose dominant
/// languages differ; neutral-dominant segments are skipped entirely.
inline std::vector<CodeSwitch> detect_code_switch(const corpus::CoTTrace& trace,
                                                  const StopwordTable& table) {
  std::vector<CodeSwitch> switches;
  LanguageCode prev = LanguageCode::Unknown;
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    const LanguageCode lc = classify_span(trace.segments[i].text, table).lang;
    if (lc == LanguageCode::Unknown) continue;
    if (prev != LanguageCode::Unknown && lc != prev) {
      switches.push_back({i, prev, lc});
    }
    prev = lc;
  }
  return switches;
}

inline std::vector<CodeSwitch> detect_code_switch(const corpus::CoTTrace& trace) {
  return detect_code_switch(trace, active_stopwords());
}

}  // namespace l2::langid
