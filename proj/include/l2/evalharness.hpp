#pragma once

#include <algorithm>
#include <cctype>
#include <cstdint>
#include <filesystem>
#include <fstream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

#include "l2/corpus.hpp"
#include "l2/error.hpp"
#include "l2/intervene.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/log.hpp"

namespace l2::evalharness {

enum class AnswerKind : std::uint8_t { Integer, Numeric, Choice, Expression };

inline constexpr std::string_view answer_kind_name(AnswerKind k) noexcept {
  switch (k) {
    case AnswerKind::Integer: return "integer";
    case AnswerKind::Numeric: return "numeric";
    case AnswerKind::Choice: return "choice";
    case AnswerKind::Expression: return "expression";
  }
  return "expression";
}

inline std::optional<AnswerKind> answer_kind_from_name(std::string_view name) noexcept {
  if (name == "integer") return AnswerKind::Integer;
  if (name == "numeric") return AnswerKind::Numeric;
  if (name == "choice") return AnswerKind::Choice;
  if (name == "expression") return AnswerKind::Expression;
  return std::nullopt;
}

inline constexpr std::string_view kDatasetNames[] = {"AIME24", "AIME25", "MATH500", "GPQA",
                                                     "custom"};

inline bool is_known_dataset(std::string_view name) noexcept {
  for (std::string_view d : kDatasetNames) {
    if (d == name) return true;
  }
  return false;
}

struct GoldItem {
  std::string id;
  std::string dataset;
  std::string gold_answer;
  AnswerKind answer_kind = AnswerKind::Integer;
};

// ---------------------------------------------------------------------------
// Answer extraction.

namespace detail {

inline bool is_ascii_digit(char c) noexcept { return c >= '0' && c <= '9'; }
inline bool is_ascii_alpha(char c) noexcept {
  return (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z');
}
inline bool is_ascii_alnum(char c) noexcept { return is_ascii_digit(c) || is_ascii_alpha(c); }

/// Content of the last well-formed "\boxed{...}" using balanced-brace
/// scanning with backslash escapes; malformed occurrences are skipped.
inline std::optional<std::string> last_boxed(std::string_view text) {
  constexpr std::string_view kMarker = "\\boxed{";
  std::optional<std::string> result;
  std::size_t pos = 0;
  while ((pos = text.find(kMarker, pos)) != std::string_view::npos) {
    const std::size_t content_start = pos + kMarker.size();
    std::size_t i = content_start;
    int depth = 1;
    bool closed = false;
    while (i < text.size()) {
      const char c = text[i];
      if (c == '\\' && i + 1 < text.size()) {
        i += 2;
        continue;
      }
      if (c == '{') {
        ++depth;
      } else if (c == '}') {
        --depth;
        if (depth == 0) {
          result = std::string(text.substr(content_start, i - content_start));
          closed = true;
          break;
        }
      }
      ++i;
    }
    pos = closed ? i + 1 : content_start;
  }
  return result;
}

struct NumberToken {
  std::size_t begin = 0;
  std::size_t end = 0;
};

/// Last standalone token matching the predicate-driven shape. `allow` decides
/// whether '.' or '/' may continue the token (numeric kind).
inline std::optional<std::string> last_number(std::string_view text, bool allow_decimal,
                                              bool allow_fraction) {
  std::optional<std::string> result;
  std::size_t i = 0;
  while (i < text.size()) {
    if (!is_ascii_digit(text[i])) {
      ++i;
      continue;
    }
    std::size_t begin = i;
    // Attach a directly preceding sign when it does not continue a word.
    if (begin > 0 && (text[begin - 1] == '-' || text[begin - 1] == '+')) {
      const bool sign_standalone =
          begin < 2 || (!is_ascii_alnum(text[begin - 2]) && text[begin - 2] != '.' &&
                        text[begin - 2] != ')');
      if (sign_standalone) --begin;
    }
    std::size_t end = i;
    while (end < text.size() && is_ascii_digit(text[end])) ++end;
    bool saw_tail = false;
    if (end < text.size() && ((allow_decimal && text[end] == '.') ||
                              (allow_fraction && text[end] == '/'))) {
      std::size_t tail = end + 1;
      std::size_t tail_end = tail;
      while (tail_end < text.size() && is_ascii_digit(text[tail_end])) ++tail_end;
      if (tail_end > tail) {
        end = tail_end;
        saw_tail = true;
      }
    }
    (void)saw_tail;
    const bool before_ok =
        begin == 0 || (!is_ascii_alnum(text[begin - 1]) && text[begin - 1] != '.' &&
                       text[begin - 1] != '_' && text[begin - 1] != '/');
    // A trailing '.' only disqualifies when it starts a decimal fraction;
    // a sentence-final period after the number is fine.
    const bool dot_then_digit =
        end + 1 < text.size() && text[end] == '.' && is_ascii_digit(text[end + 1]);
    const bool after_ok =
        end >= text.size() || (!is_ascii_alnum(text[end]) && text[end] != '_' &&
                               text[end] != '/' && !dot_then_digit);
    if (before_ok && after_ok) {
      result = std::string(text.substr(begin, end - begin));
    }
    i = end > i ? end : i + 1;
  }
  return result;
}

inline std::optional<std::string> last_choice_letter(std::string_view text) {
  std::optional<std::string> result;
  for (std::size_t i = 0; i < text.size(); ++i) {
    const char c = text[i];
    const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(c)));
    if (upper < 'A' || upper > 'E') continue;
    const bool before_ok = i == 0 || !is_ascii_alnum(text[i - 1]);
    const bool after_ok = i + 1 >= text.size() || !is_ascii_alnum(text[i + 1]);
    if (before_ok && after_ok) result = std::string(1, upper);
  }
  return result;
}

}  // namespace detail

/// Final-answer candidate: the last well-formed \boxed{...} content when one
/// exists, else the last standalone token of the declared kind. Expression
/// answers are accepted from \boxed only.
inline std::optional<std::string> extract_answer(std::string_view text, AnswerKind kind) {
  if (auto boxed = detail::last_boxed(text)) return boxed;
  switch (kind) {
    case AnswerKind::Integer:
      return detail::last_number(text, false, false);
    case AnswerKind::Numeric:
      return detail::last_number(text, true, true);
    case AnswerKind::Choice:
      return detail::last_choice_letter(text);
    case AnswerKind::Expression:
      return std::nullopt;
  }
  return std::nullopt;
}

// ---------------------------------------------------------------------------
// Answer normalization.

namespace detail {

/// Drop '$', '~', all whitespace, and LaTeX spacing commands
/// (\, \; \! \: \quad \qquad \left \right and backslash-space).
inline std::string strip_markup(std::string_view raw) {
  std::string out;
  out.reserve(raw.size());
  std::size_t i = 0;
  while (i < raw.size()) {
    const char c = raw[i];
    if (c == '$' || c == '~' || c == ' ' || c == '\t' || c == '\n' || c == '\r' ||
        c == '\f' || c == '\v') {
      ++i;
      continue;
    }
    if (c == '\\' && i + 1 < raw.size()) {
      const char n = raw[i + 1];
      if (n == ',' || n == ';' || n == '!' || n == ':' || n == ' ') {
        i += 2;
        continue;
      }
      const std::string_view rest = raw.substr(i + 1);
      bool skipped = false;
      for (std::string_view word : {"qquad", "quad", "left", "right"}) {
        if (rest.rfind(word, 0) == 0) {
          i += 1 + word.size();
          skipped = true;
          break;
        }
      }
      if (skipped) continue;
    }
    out += c;
    ++i;
  }
  return out;
}

/// "\frac{a}{b}" or "\dfrac{a}{b}" over integer bodies -> "a/b".
inline std::string frac_to_slash(const std::string& s) {
  for (std::string_view cmd : {"\\frac{", "\\dfrac{", "\\tfrac{"}) {
    if (s.rfind(cmd, 0) != 0) continue;
    const std::size_t a_start = cmd.size();
    const std::size_t a_end = s.find('}', a_start);
    if (a_end == std::string::npos || a_end + 1 >= s.size() || s[a_end + 1] != '{') continue;
    const std::size_t b_start = a_end + 2;
    const std::size_t b_end = s.find('}', b_start);
    if (b_end == std::string::npos || b_end + 1 != s.size()) continue;
    return s.substr(a_start, a_end - a_start) + "/" + s.substr(b_start, b_end - b_start);
  }
  return s;
}

struct ParsedInt {
  bool negative = false;
  std::string digits;  // no leading zeros; "0" for zero
};

inline std::optional<ParsedInt> parse_int(std::string_view s) {
  ParsedInt out;
  std::size_t i = 0;
  if (i < s.size() && (s[i] == '+' || s[i] == '-')) {
    out.negative = s[i] == '-';
    ++i;
  }
  if (i >= s.size()) return std::nullopt;
  std::size_t first_sig = i;
  while (first_sig < s.size() && s[first_sig] == '0') ++first_sig;
  for (std::size_t j = i; j < s.size(); ++j) {
    if (!is_ascii_digit(s[j])) return std::nullopt;
  }
  out.digits = first_sig == s.size() ? "0" : std::string(s.substr(first_sig));
  if (out.digits == "0") out.negative = false;
  return out;
}

inline std::string render_int(const ParsedInt& v) {
  return (v.negative ? "-" : "") + v.digits;
}

inline std::uint64_t gcd_u64(std::uint64_t a, std::uint64_t b) noexcept {
  while (b != 0) {
    const std::uint64_t t = a % b;
    a = b;
    b = t;
  }
  return a;
}

}  // namespace detail

/// Canonicalize an answer for comparison, or report it incomparable
/// (nullopt). Integers get canonical base-10; numerics get reduced a/b
/// fractions and trailing-zero-trimmed decimals (forms are not
/// cross-converted); choices become one uppercase letter; expressions are
/// only stripped of markup and whitespace.
inline std::optional<std::string> normalize_answer(std::string_view raw, AnswerKind kind) {
  const std::string s = detail::strip_markup(raw);
  if (s.empty()) return std::nullopt;
  switch (kind) {
    case AnswerKind::Integer: {
      const auto v = detail::parse_int(s);
      if (!v) return std::nullopt;
      return detail::render_int(*v);
    }
    case AnswerKind::Numeric: {
      const std::string t = detail::frac_to_slash(s);
      if (const std::size_t slash = t.find('/'); slash != std::string::npos) {
        const auto num = detail::parse_int(std::string_view(t).substr(0, slash));
        const auto den = detail::parse_int(std::string_view(t).substr(slash + 1));
        if (!num || !den || den->digits == "0") return std::nullopt;
        if (num->digits == "0") return "0";
        std::uint64_t a = std::stoull(num->digits);
        std::uint64_t b = std::stoull(den->digits);
        const std::uint64_t g = detail::gcd_u64(a, b);
        a /= g;
        b /= g;
        const bool negative = num->negative != den->negative;
        std::string head = (negative ? "-" : "") + std::to_string(a);
        return b == 1 ? head : head + "/" + std::to_string(b);
      }
      if (const std::size_t dot = t.find('.'); dot != std::string::npos) {
        std::string_view int_part = std::string_view(t).substr(0, dot);
        std::string_view frac_part = std::string_view(t).substr(dot + 1);
        bool negative = false;
        if (!int_part.empty() && (int_part[0] == '+' || int_part[0] == '-')) {
          negative = int_part[0] == '-';
          int_part.remove_prefix(1);
        }
        if (int_part.empty() && frac_part.empty()) return std::nullopt;
        for (char c : int_part) {
          if (!detail::is_ascii_digit(c)) return std::nullopt;
        }
        for (char c : frac_part) {
          if (!detail::is_ascii_digit(c)) return std::nullopt;
        }
        while (!frac_part.empty() && frac_part.back() == '0') frac_part.remove_suffix(1);
        std::size_t sig = 0;
        while (sig < int_part.size() && int_part[sig] == '0') ++sig;
        std::string head = sig == int_part.size() ? "0" : std::string(int_part.substr(sig));
        if (frac_part.empty()) {
          if (head == "0") return "0";
          return (negative ? "-" : "") + head;
        }
        return (negative ? "-" : "") + head + "." + std::string(frac_part);
      }
      const auto v = detail::parse_int(t);
      if (!v) return std::nullopt;
      return detail::render_int(*v);
    }
    case AnswerKind::Choice: {
      if (s.size() != 1) return std::nullopt;
      const char upper = static_cast<char>(std::toupper(static_cast<unsigned char>(s[0])));
      if (upper < 'A' || upper > 'E') return std::nullopt;
      return std::string(1, upper);
    }
    case AnswerKind::Expression:
      return s;
  }
  return std::nullopt;
}

/// Extraction plus normalization against a gold answer of the same kind.
inline bool answer_correct(std::string_view response_text, const GoldItem& gold) {
  const auto extracted = extract_answer(response_text, gold.answer_kind);
  if (!extracted) return false;
  const auto norm_response = normalize_answer(*extracted, gold.answer_kind);
  const auto norm_gold = normalize_answer(gold.gold_answer, gold.answer_kind);
  if (!norm_response || !norm_gold) {
    log::warn("incomparable_answer",
              {log::field("id", gold.id),
               log::field("extracted", *extracted),
               log::field("gold", gold.gold_answer)});
    return false;
  }
  return *norm_response == *norm_gold;
}

// ---------------------------------------------------------------------------
// Scoring.

struct ScoredInput {
  std::string id;
  std::string language;  // code, e.g. "en"
  std::string text;      // decoded output text
  std::string stop_reason = "eos";
  std::vector<std::string> token_texts;  // empty: fall back to whitespace split
};

inline ScoredInput scored_input_from_record(const intervene::GenerationRecord& record,
                                            const intervene::InterventionConfig& cfg) {
  ScoredInput in;
  in.id = record.record_id;
  in.language = std::string(to_code(cfg.target_lang));
  in.text = record.decoded_text;
  in.stop_reason = std::string(intervene::stop_reason_name(record.stop_reason));
  in.token_texts = record.token_texts;
  return in;
}

inline std::vector<std::string> whitespace_tokens(std::string_view text) {
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
  return tokens;
}

inline ScoredInput scored_input_from_trace(const corpus::CoTTrace& trace) {
  ScoredInput in;
  in.id = trace.question_id;
  in.language = std::string(to_code(trace.lang));
  in.text = trace.raw_text;
  in.stop_reason = trace.stopped_normally ? "eos" : "max_tokens";
  in.token_texts = whitespace_tokens(trace.raw_text);
  return in;
}

/// Longest repeated suffix fraction of the final window of text: the length
/// of the longest suffix that also occurs earlier, over the window length.
/// Diagnostic only; reported beside (never inside) the fixed metrics.
inline double repetition_ratio(std::string_view text, std::size_t window = 2000) {
  if (text.size() > window) text = text.substr(text.size() - window);
  const std::size_t n = text.size();
  if (n < 2) return 0.0;
  const auto repeats = [&](std::size_t len) {
    const std::string_view suffix = text.substr(n - len);
    return text.find(suffix) < n - len;
  };
  std::size_t lo = 0;
  std::size_t hi = n - 1;  // longest proper suffix
  while (lo < hi) {
    const std::size_t mid = (lo + hi + 1) / 2;
    if (repeats(mid)) {
      lo = mid;
    } else {
      hi = mid - 1;
    }
  }
  return static_cast<double>(lo) / static_cast<double>(n);
}

struct PerItem {
  std::string id;
  bool correct = false;
  std::uint64_t tokens = 0;
  std::string stop_reason;
  double repetition_ratio = 0.0;
};

/// Aggregates for one (dataset, language) group. Counts are exact integers;
/// ratios are derived views rounded only at format time.
struct EvalResult {
  std::string dataset;
  std::string language;
  std::uint64_t n_items = 0;
  std::uint64_t n_correct = 0;
  std::uint64_t n_normal_stops = 0;
  std::uint64_t total_tokens = 0;
  std::map<LanguageCode, std::uint64_t> per_language_token_totals;
  std::vector<PerItem> per_item;

  double accuracy() const noexcept {
    return n_items == 0 ? 0.0 : static_cast<double>(n_correct) / static_cast<double>(n_items);
  }
  double normal_stop_rate() const noexcept {
    return n_items == 0 ? 0.0
                        : static_cast<double>(n_normal_stops) / static_cast<double>(n_items);
  }
  double mean_output_tokens() const noexcept {
    return n_items == 0 ? 0.0 : static_cast<double>(total_tokens) / static_cast<double>(n_items);
  }
};

/// num/den rounded half-up to exactly four decimals, via integer arithmetic
/// so the string is platform-independent.
inline std::string format_ratio4(std::uint64_t num, std::uint64_t den) {
  if (den == 0) return "0.0000";
  const unsigned __int128 scaled =
      (static_cast<unsigned __int128>(num) * 20000 + den) / (static_cast<unsigned __int128>(den) * 2);
  const std::uint64_t whole = static_cast<std::uint64_t>(scaled / 10000);
  const std::uint64_t frac = static_cast<std::uint64_t>(scaled % 10000);
  char buf[48];
  std::snprintf(buf, sizeof(buf), "%llu.%04llu", static_cast<unsigned long long>(whole),
                static_cast<unsigned long long>(frac));
  return buf;
}

/// Score one homogeneous group of records against gold. Records and gold
/// must match one-to-one by id and agree on a single (dataset, language);
/// use score_grouped to split a mixed batch first.
inline EvalResult score(const std::vector<ScoredInput>& records,
                        const std::vector<GoldItem>& gold,
                        const std::set<std::string>& eos_markers = {"eos"}) {
  std::map<std::string, const GoldItem*> by_id;
  for (const GoldItem& g : gold) {
    if (!by_id.emplace(g.id, &g).second) {
      throw ArgumentError("evalharness", "duplicate gold id '" + g.id + "'");
    }
  }
  std::set<std::string> record_ids;
  std::vector<std::string> unmatched;
  for (const ScoredInput& r : records) {
    if (!record_ids.insert(r.id).second) {
      throw ArgumentError("evalharness", "duplicate record id '" + r.id + "'");
    }
    if (by_id.find(r.id) == by_id.end()) unmatched.push_back("record '" + r.id + "'");
  }
  for (const GoldItem& g : gold) {
    if (record_ids.find(g.id) == record_ids.end()) unmatched.push_back("gold '" + g.id + "'");
  }
  if (!unmatched.empty()) {
    std::string list;
    for (std::size_t i = 0; i < unmatched.size(); ++i) {
      if (i > 0) list += ", ";
      list += unmatched[i];
    }
    throw ArgumentError("evalharness", "ids without a counterpart: " + list);
  }

  EvalResult result;
  for (const ScoredInput& r : records) {
    const GoldItem& g = *by_id.at(r.id);
    if (result.n_items == 0) {
      result.dataset = g.dataset;
      result.language = r.language;
    } else {
      if (g.dataset != result.dataset) {
        throw ArgumentError("evalharness", "records span datasets '" + result.dataset +
                                               "' and '" + g.dataset + "'; group before scoring");
      }
      if (r.language != result.language) {
        throw ArgumentError("evalharness", "records span languages '" + result.language +
                                               "' and '" + r.language + "'; group before scoring");
      }
    }
    const std::vector<std::string> tokens =
        r.token_texts.empty() ? whitespace_tokens(r.text) : r.token_texts;
    const bool correct = answer_correct(r.text, g);
    const bool normal = eos_markers.count(r.stop_reason) > 0;

    PerItem item;
    item.id = r.id;
    item.correct = correct;
    item.tokens = tokens.size();
    item.stop_reason = r.stop_reason;
    item.repetition_ratio = repetition_ratio(r.text);

    result.n_items += 1;
    result.n_correct += correct ? 1 : 0;
    result.n_normal_stops += normal ? 1 : 0;
    result.total_tokens += tokens.size();
    const langid::LanguageProfile profile = langid::token_language_profile(tokens);
    for (const auto& [lc, count] : profile.counts) {
      result.per_language_token_totals[lc] += count;
    }
    result.per_item.push_back(std::move(item));
  }
  return result;
}

/// Split records by (gold dataset, record language), score each group, and
/// return results sorted by (dataset, language).
inline std::vector<EvalResult> score_grouped(const std::vector<ScoredInput>& records,
                                             const std::vector<GoldItem>& gold,
                                             const std::set<std::string>& eos_markers = {"eos"}) {
  std::map<std::string, const GoldItem*> by_id;
  for (const GoldItem& g : gold) {
    if (!by_id.emplace(g.id, &g).second) {
      throw ArgumentError("evalharness", "duplicate gold id '" + g.id + "'");
    }
  }
  std::map<std::pair<std::string, std::string>, std::vector<ScoredInput>> groups;
  std::vector<std::string> unmatched;
  for (const ScoredInput& r : records) {
    const auto it = by_id.find(r.id);
    if (it == by_id.end()) {
      unmatched.push_back("record '" + r.id + "'");
      continue;
    }
    groups[{it->second->dataset, r.language}].push_back(r);
  }
  if (!unmatched.empty()) {
    std::string list;
    for (std::size_t i = 0; i < unmatched.size(); ++i) {
      if (i > 0) list += ", ";
      list += unmatched[i];
    }
    throw ArgumentError("evalharness", "ids without a counterpart: " + list);
  }

  std::vector<EvalResult> results;
  for (const auto& [key, group] : groups) {
    std::vector<GoldItem> group_gold;
    for (const ScoredInput& r : group) group_gold.push_back(*by_id.at(r.id));
    results.push_back(score(group, group_gold, eos_markers));
  }
  return results;  // std::map iteration already sorts by (dataset, language)
}

// ---------------------------------------------------------------------------
// Gold file IO: JSONL {"id", "dataset", "gold_answer", "answer_kind"}.

inline std::vector<GoldItem> load_gold(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("evalharness", "cannot open gold file '" + path.string() + "'");
  }
  std::vector<GoldItem> items;
  std::set<std::string> ids;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError("evalharness", line_no, "", std::string("invalid JSON: ") + e.what());
    }
    GoldItem item;
    const auto require = [&](const char* field) -> std::string {
      const auto it = j.find(field);
      if (it == j.end() || !it->is_string()) {
        throw SchemaError("evalharness", line_no, field, "missing or non-string field");
      }
      return it->get<std::string>();
    };
    item.id = require("id");
    item.dataset = require("dataset");
    item.gold_answer = require("gold_answer");
    const std::string kind = require("answer_kind");
    const auto parsed = answer_kind_from_name(kind);
    if (!parsed) {
      throw SchemaError("evalharness", line_no, "answer_kind", "unknown kind '" + kind + "'");
    }
    item.answer_kind = *parsed;
    if (!is_known_dataset(item.dataset)) {
      throw SchemaError("evalharness", line_no, "dataset", "unknown dataset '" + item.dataset + "'");
    }
    if (item.gold_answer.empty()) {
      throw SchemaError("evalharness", line_no, "gold_answer", "must be non-empty");
    }
    if (!ids.insert(item.id).second) {
      throw SchemaError("evalharness", line_no, "id", "duplicate id '" + item.id + "'");
    }
    items.push_back(std::move(item));
  }
  return items;
}

/// Parse one scored record line (the generation-record JSONL schema).
inline ScoredInput scored_input_from_json(const nlohmann::json& j, std::size_t line_no = 0) {
  const auto require_string = [&](const char* field) -> std::string {
    const auto it = j.find(field);
    if (it == j.end() || !it->is_string()) {
      throw SchemaError("evalharness", line_no, field, "missing or non-string field");
    }
    return it->get<std::string>();
  };
  ScoredInput in;
  in.id = require_string("id");
  in.language = require_string("language");
  in.text = require_string("text");
  in.stop_reason = require_string("stop_reason");
  if (const auto it = j.find("token_texts"); it != j.end() && it->is_array()) {
    for (const auto& t : *it) in.token_texts.push_back(t.get<std::string>());
  }
  return in;
}

inline std::vector<ScoredInput> load_scored_inputs(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("evalharness", "cannot open records file '" + path.string() + "'");
  }
  std::vector<ScoredInput> records;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::parse_error& e) {
      throw SchemaError("evalharness", line_no, "", std::string("invalid JSON: ") + e.what());
    }
    if (j.contains("error") && !j.contains("text")) {
      log::warn("skipping_failed_record",
                {log::field("line", line_no), log::field("error", j["error"].dump())});
      continue;
    }
    records.push_back(scored_input_from_json(j, line_no));
  }
  return records;
}

// ---------------------------------------------------------------------------
// Reporting.

inline nlohmann::json eval_result_to_json(const EvalResult& r) {
  nlohmann::json per_item = nlohmann::json::array();
  for (const PerItem& item : r.per_item) {
    per_item.push_back({{"id", item.id},
                        {"correct", item.correct},
                        {"tokens", item.tokens},
                        {"stop_reason", item.stop_reason},
                        {"repetition_ratio", item.repetition_ratio}});
  }
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [lc, n] : r.per_language_token_totals) {
    counts[std::string(to_code(lc))] = n;
  }
  return nlohmann::json{{"dataset", r.dataset},
                        {"language", r.language},
                        {"n_items", r.n_items},
                        {"n_correct", r.n_correct},
                        {"n_normal_stops", r.n_normal_stops},
                        {"total_tokens", r.total_tokens},
                        {"per_language_token_totals", std::move(counts)},
                        {"per_item", std::move(per_item)}};
}

inline EvalResult eval_result_from_json(const nlohmann::json& j) {
  EvalResult r;
  r.dataset = j.at("dataset").get<std::string>();
  r.language = j.at("language").get<std::string>();
  r.n_items = j.at("n_items").get<std::uint64_t>();
  r.n_correct = j.at("n_correct").get<std::uint64_t>();
  r.n_normal_stops = j.at("n_normal_stops").get<std::uint64_t>();
  r.total_tokens = j.at("total_tokens").get<std::uint64_t>();
  for (const auto& [code, n] : j.at("per_language_token_totals").items()) {
    const auto lc = language_from_code(code);
    if (lc) r.per_language_token_totals[*lc] = n.get<std::uint64_t>();
  }
  for (const auto& item : j.at("per_item")) {
    r.per_item.push_back({item.at("id").get<std::string>(), item.at("correct").get<bool>(),
                          item.at("tokens").get<std::uint64_t>(),
                          item.at("stop_reason").get<std::string>(),
                          item.at("repetition_ratio").get<double>()});
  }
  return r;
}

/// Write report.csv (fixed columns dataset,language,accuracy,
/// normal_stop_rate,mean_tokens), per_item.csv, plot_data.json, and
/// results.json into out_dir. Rows are sorted by (dataset, language) so
/// identical inputs produce identical bytes.
inline void report(std::vector<EvalResult> results, const std::filesystem::path& out_dir) {
  std::error_code ec;
  std::filesystem::create_directories(out_dir, ec);
  if (ec || !std::filesystem::is_directory(out_dir)) {
    throw IoError("evalharness", "cannot create output dir '" + out_dir.string() + "'");
  }
  std::sort(results.begin(), results.end(), [](const EvalResult& a, const EvalResult& b) {
    if (a.dataset != b.dataset) return a.dataset < b.dataset;
    return a.language < b.language;
  });

  const auto open_out = [&](const char* name) {
    std::ofstream out(out_dir / name, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw IoError("evalharness", std::string("cannot write '") + name + "'");
    }
    return out;
  };

  {
    std::ofstream csv = open_out("report.csv");
    csv << "dataset,language,accuracy,normal_stop_rate,mean_tokens\n";
    for (const EvalResult& r : results) {
      csv << r.dataset << ',' << r.language << ','
          << format_ratio4(r.n_correct, r.n_items) << ','
          << format_ratio4(r.n_normal_stops, r.n_items) << ','
          << format_ratio4(r.total_tokens, r.n_items) << '\n';
    }
  }
  {
    std::ofstream csv = open_out("per_item.csv");
    csv << "dataset,language,id,correct,tokens,stop_reason,repetition_ratio\n";
    for (const EvalResult& r : results) {
      for (const PerItem& item : r.per_item) {
        csv << r.dataset << ',' << r.language << ',' << item.id << ','
            << (item.correct ? 1 : 0) << ',' << item.tokens << ',' << item.stop_reason << ','
            << format_ratio4(static_cast<std::uint64_t>(item.repetition_ratio * 1e6), 1000000)
            << '\n';
      }
    }
  }
  {
    // Axes mirror the pilot-study figures: accuracy per language with
    // normal-stop and token-count annotations.
    nlohmann::json datasets = nlohmann::json::array();
    std::string current;
    for (const EvalResult& r : results) {
      if (datasets.empty() || current != r.dataset) {
        datasets.push_back({{"dataset", r.dataset}, {"series", nlohmann::json::array()}});
        current = r.dataset;
      }
      nlohmann::json means = nlohmann::json::object();
      for (const auto& [lc, total] : r.per_language_token_totals) {
        means[std::string(to_code(lc))] = format_ratio4(total, r.n_items);
      }
      datasets.back()["series"].push_back(
          {{"language", r.language},
           {"accuracy", format_ratio4(r.n_correct, r.n_items)},
           {"normal_stop_rate", format_ratio4(r.n_normal_stops, r.n_items)},
           {"mean_tokens", format_ratio4(r.total_tokens, r.n_items)},
           {"per_language_token_means", std::move(means)}});
    }
    std::ofstream out = open_out("plot_data.json");
    out << nlohmann::json{{"datasets", std::move(datasets)}}.dump(2) << '\n';
  }
  {
    nlohmann::json arr = nlohmann::json::array();
    for (const EvalResult& r : results) arr.push_back(eval_result_to_json(r));
    std::ofstream out = open_out("results.json");
    out << arr.dump(2) << '\n';
  }
}

}  // namespace l2::evalharness
