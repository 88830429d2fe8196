#pragma once

#include <algorithm>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include "l2/corpus.hpp"
#include "l2/error.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/unicode.hpp"

namespace l2::segmenter {

using corpus::CharSpan;
using corpus::Segment;

enum class MatchMode : std::uint8_t { WordBoundary, SentenceInitial };

struct Cue {
  std::string surface;
  MatchMode mode = MatchMode::WordBoundary;

  bool operator==(const Cue&) const = default;
};

struct CueLexicon {
  std::vector<Cue> cues;       // ordered; earlier entries win length ties
  bool case_sensitive = true;
};

inline void validate_lexicon(const CueLexicon& lexicon) {
  if (lexicon.cues.empty()) {
    throw ArgumentError("segmenter", "cue lexicon must be non-empty");
  }
  std::set<std::string> seen;
  for (const Cue& cue : lexicon.cues) {
    const DecodedText d = utf8_decode(cue.surface);
    if (d.scalars.empty() || is_whitespace(d.scalars.front()) ||
        is_whitespace(d.scalars.back())) {
      throw ArgumentError("segmenter", "cue surface '" + cue.surface +
                                           "' must be non-empty with no leading or "
                                           "trailing whitespace");
    }
    if (!seen.insert(cue.surface).second) {
      throw ArgumentError("segmenter", "duplicate cue surface '" + cue.surface + "'");
    }
  }
}

inline CueLexicon default_cue_lexicon() {
  CueLexicon lex;
  for (std::string_view s : {"Wait", "Hmm", "Alternatively", "But wait",
                             "Let me double-check", "Actually"}) {
    lex.cues.push_back({std::string(s), MatchMode::WordBoundary});
  }
  return lex;
}

/// One cue per line; '#' starts a comment; an optional TAB-separated suffix
/// "word-boundary" or "sentence-initial" selects the match mode.
inline CueLexicon load_cue_lexicon(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("segmenter", "cannot open cue file '" + path.string() + "'");
  }
  CueLexicon lex;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    const std::size_t hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    const std::size_t b = line.find_first_not_of(" \t");
    if (b == std::string::npos) continue;
    const std::size_t e = line.find_last_not_of(" \t");
    std::string entry = line.substr(b, e - b + 1);
    Cue cue;
    const std::size_t tab = entry.find('\t');
    if (tab != std::string::npos) {
      std::string mode = entry.substr(tab + 1);
      const std::size_t mb = mode.find_first_not_of(" \t");
      mode = mb == std::string::npos ? std::string() : mode.substr(mb);
      if (mode == "word-boundary") {
        cue.mode = MatchMode::WordBoundary;
      } else if (mode == "sentence-initial") {
        cue.mode = MatchMode::SentenceInitial;
      } else {
        throw SchemaError("segmenter", line_no, "mode", "unknown match mode '" + mode + "'");
      }
      const std::size_t se = entry.find_last_not_of(" \t", tab - 1);
      entry = se == std::string::npos ? std::string() : entry.substr(0, se + 1);
    }
    cue.surface = entry;
    lex.cues.push_back(std::move(cue));
  }
  validate_lexicon(lex);
  return lex;
}

namespace detail {

inline bool is_word_char(char32_t cp) noexcept {
  return classify_char(cp) != Script::PunctSymbolSpace;
}

inline bool is_sentence_terminator(char32_t cp) noexcept {
  switch (cp) {
    case U'.': case U'!': case U'?': case U';':
    case U'…':  // …
    case U'。':  // 。
    case U'！':  // ！
    case U'？':  // ？
    case U'；':  // ；
      return true;
    default:
      return false;
  }
}

inline bool is_line_break(char32_t cp) noexcept {
  return cp == U'\n' || cp == U'\r' || cp == 0x85 || cp == 0x2028 || cp == 0x2029;
}

struct PreparedCue {
  std::u32string surface;  // as matched (folded when case-insensitive)
  std::string original;
  MatchMode mode;
};

inline std::u32string fold(const std::u32string& s) {
  std::u32string out;
  out.reserve(s.size());
  for (char32_t cp : s) out.push_back(langid::detail::to_lower_scalar(cp));
  return out;
}

}  // namespace detail

/// Split text into contiguous segments at cue occurrences. Segments partition
/// the input byte-exactly: a break lands at the start of the whitespace run
/// preceding the cue, so inter-sentence whitespace belongs to the following
/// segment. Longest surface wins when several cues match at one position.
inline std::vector<Segment> segment_cot(std::string_view text, const CueLexicon& lexicon) {
  validate_lexicon(lexicon);
  const DecodedText decoded = utf8_decode(text);
  const std::u32string& s = decoded.scalars;
  const std::size_t n = s.size();
  if (n == 0) return {};

  std::vector<detail::PreparedCue> cues;
  cues.reserve(lexicon.cues.size());
  for (const Cue& cue : lexicon.cues) {
    std::u32string surface = utf8_decode(cue.surface).scalars;
    if (!lexicon.case_sensitive) surface = detail::fold(surface);
    cues.push_back({std::move(surface), cue.surface, cue.mode});
  }
  std::stable_sort(cues.begin(), cues.end(), [](const auto& a, const auto& b) {
    return a.surface.size() > b.surface.size();
  });

  const auto scalar_at = [&](std::size_t i) {
    return lexicon.case_sensitive ? s[i] : langid::detail::to_lower_scalar(s[i]);
  };
  const auto matches_at = [&](const detail::PreparedCue& cue, std::size_t i) {
    if (i + cue.surface.size() > n) return false;
    for (std::size_t k = 0; k < cue.surface.size(); ++k) {
      if (scalar_at(i + k) != cue.surface[k]) return false;
    }
    // Trailing edge must not continue a word in either mode.
    const std::size_t after = i + cue.surface.size();
    if (after < n && detail::is_word_char(s[after])) return false;
    if (cue.mode == MatchMode::WordBoundary) {
      return i == 0 || !detail::is_word_char(s[i - 1]);
    }
    // Sentence-initial: only whitespace between the cue and the text start,
    // a line break, or a sentence terminator.
    std::size_t j = i;
    bool saw_break = false;
    while (j > 0 && is_whitespace(s[j - 1])) {
      saw_break = saw_break || detail::is_line_break(s[j - 1]);
      --j;
    }
    return j == 0 || saw_break || detail::is_sentence_terminator(s[j - 1]);
  };

  struct OpenSegment {
    std::size_t start = 0;
    bool is_reflection = false;
    std::optional<std::string> cue;
  };
  std::vector<Segment> out;
  OpenSegment open;
  const auto close_open = [&](std::size_t end) {
    Segment seg;
    seg.char_span = {open.start, end};
    seg.text = std::string(text.substr(decoded.byte_offset[open.start],
                                       decoded.byte_offset[end] - decoded.byte_offset[open.start]));
    seg.is_reflection = open.is_reflection;
    seg.cue = open.cue;
    seg.lang = langid::classify_span(seg.text).lang;
    out.push_back(std::move(seg));
  };

  std::size_t i = 0;
  while (i < n) {
    const detail::PreparedCue* hit = nullptr;
    for (const auto& cue : cues) {
      if (matches_at(cue, i)) {
        hit = &cue;
        break;
      }
    }
    if (hit == nullptr) {
      ++i;
      continue;
    }
    std::size_t brk = i;
    while (brk > open.start && is_whitespace(s[brk - 1])) --brk;
    if (brk == open.start) {
      // Nothing but whitespace since the segment began: the open segment
      // itself is the reflection (covers a cue at offset 0).
      open.is_reflection = true;
      if (!open.cue) open.cue = hit->original;
    } else {
      close_open(brk);
      open = {brk, true, hit->original};
    }
    i += hit->surface.size();
  }
  close_open(n);
  return out;
}

inline std::vector<Segment> segment_cot(std::string_view text) {
  return segment_cot(text, default_cue_lexicon());
}

/// Concatenate segments back into the original text, checking span
/// contiguity. The first segment anchors the expected offsets.
inline std::string reassemble(const std::vector<Segment>& segments) {
  std::string out;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    const CharSpan span = segments[i].char_span;
    if (span.end < span.start) {
      throw ArgumentError("segmenter", "segment " + std::to_string(i) +
                                           " has inverted span [" + std::to_string(span.start) +
                                           ", " + std::to_string(span.end) + ")");
    }
    if (i > 0) {
      const std::size_t prev_end = segments[i - 1].char_span.end;
      if (span.start > prev_end) {
        throw ArgumentError("segmenter", "gap between segments " + std::to_string(i - 1) +
                                             " and " + std::to_string(i) + ": " +
                                             std::to_string(prev_end) + " < " +
                                             std::to_string(span.start));
      }
      if (span.start < prev_end) {
        throw ArgumentError("segmenter", "overlap between segments " + std::to_string(i - 1) +
                                             " and " + std::to_string(i) + ": " +
                                             std::to_string(span.start) + " < " +
                                             std::to_string(prev_end));
      }
    }
    out += segments[i].text;
  }
  return out;
}

/// Segment a trace's raw text in place.
inline void segment_trace(corpus::CoTTrace& trace, const CueLexicon& lexicon) {
  trace.segments = segment_cot(trace.raw_text, lexicon);
}

}  // namespace l2::segmenter
