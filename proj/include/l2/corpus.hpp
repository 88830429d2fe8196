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

#include <json.hpp>

#include "l2/error.hpp"
#include "l2/lang.hpp"

namespace l2::corpus {

using json = nlohmann::json;

enum class QuestionSource : std::uint8_t { O1Site, S1k, BespokeStratos, Other };

inline constexpr std::string_view source_name(QuestionSource s) noexcept {
  switch (s) {
    case QuestionSource::O1Site: return "o1-site";
    case QuestionSource::S1k: return "s1k";
    case QuestionSource::BespokeStratos: return "bespoke-stratos";
    case QuestionSource::Other: return "other";
  }
  return "other";
}

inline std::optional<QuestionSource> source_from_name(std::string_view name) noexcept {
  for (QuestionSource s : {QuestionSource::O1Site, QuestionSource::S1k,
                           QuestionSource::BespokeStratos, QuestionSource::Other}) {
    if (source_name(s) == name) return s;
  }
  return std::nullopt;
}

/// Short label used inside derived dataset names.
inline constexpr std::string_view source_label(QuestionSource s) noexcept {
  switch (s) {
    case QuestionSource::O1Site: return "o1";
    case QuestionSource::S1k: return "S1";
    case QuestionSource::BespokeStratos: return "BS";
    case QuestionSource::Other: return "custom";
  }
  return "custom";
}

struct Question {
  std::string id;
  std::string topic;
  std::string text;
  LanguageCode lang = LanguageCode::En;
  QuestionSource source = QuestionSource::Other;
};

/// Half-open span in Unicode scalar values into the parent trace text.
struct CharSpan {
  std::size_t start = 0;
  std::size_t end = 0;

  bool operator==(const CharSpan&) const = default;
};

struct Segment {
  std::string text;
  LanguageCode lang = LanguageCode::Unknown;
  bool is_reflection = false;
  std::optional<std::string> cue;
  CharSpan char_span;

  bool operator==(const Segment&) const = default;
};

struct CoTTrace {
  std::string question_id;
  LanguageCode lang = LanguageCode::En;  // dominant language of the trace
  std::vector<Segment> segments;
  std::optional<std::string> final_answer;
  std::string raw_text;
  std::uint64_t token_count = 0;
  bool stopped_normally = true;
};

enum class SampleVariant : std::uint8_t { SolutionLevel, StepMixed };

inline constexpr std::string_view variant_name(SampleVariant v) noexcept {
  return v == SampleVariant::SolutionLevel ? "solution-level" : "step-mixed";
}

inline std::optional<SampleVariant> variant_from_name(std::string_view name) noexcept {
  if (name == "solution-level") return SampleVariant::SolutionLevel;
  if (name == "step-mixed") return SampleVariant::StepMixed;
  return std::nullopt;
}

struct DatasetSpec {
  QuestionSource source = QuestionSource::Other;
  std::uint64_t n_questions = 1;
  std::vector<LanguageCode> languages;     // length l >= 1, no duplicates
  double mixture_prob = 0.3;               // per-reflection-segment translation probability
  std::uint64_t seed = 0;
};

/// Dataset name "L2-M{<label>_<n>^<l>}"; a pure function of
/// (source, n_questions, number of languages).
inline std::string derive_name(const DatasetSpec& spec) {
  std::string name = "L2-M{";
  name += source_label(spec.source);
  name += '_';
  name += std::to_string(spec.n_questions);
  name += '^';
  name += std::to_string(spec.languages.size());
  name += '}';
  return name;
}

inline void validate_spec(const DatasetSpec& spec) {
  if (spec.n_questions == 0) {
    throw ArgumentError("corpus", "n_questions must be positive");
  }
  if (spec.languages.empty()) {
    throw ArgumentError("corpus", "languages must be non-empty");
  }
  std::set<LanguageCode> seen(spec.languages.begin(), spec.languages.end());
  if (seen.size() != spec.languages.size()) {
    throw ArgumentError("corpus", "languages contains duplicates");
  }
  if (!(spec.mixture_prob >= 0.0 && spec.mixture_prob <= 1.0)) {
    throw ArgumentError("corpus", "mixture_prob must be in [0, 1]");
  }
}

struct AugmentedSample {
  Question question;
  std::string serialized_cot;
  SampleVariant variant = SampleVariant::SolutionLevel;
  std::vector<LanguageCode> language_set;
  std::string provenance;

  bool operator==(const AugmentedSample&) const = default;
};

inline bool operator==(const Question& a, const Question& b) {
  return a.id == b.id && a.topic == b.topic && a.text == b.text &&
         a.lang == b.lang && a.source == b.source;
}

// ---------------------------------------------------------------------------
// Provenance strings: "<name>;seed=<seed>" for solution-level samples,
// "<name>;seed=<seed>;translated=<k>" for step-mixed ones, where k counts the
// fragments that were actually wrapped in boundary tokens.

struct Provenance {
  std::string name;
  std::uint64_t seed = 0;
  std::optional<std::uint64_t> translated;
};

inline std::string format_provenance(const Provenance& p) {
  std::string out = p.name + ";seed=" + std::to_string(p.seed);
  if (p.translated) out += ";translated=" + std::to_string(*p.translated);
  return out;
}

inline std::optional<Provenance> parse_provenance(std::string_view s) {
  Provenance p;
  const std::size_t first = s.find(";seed=");
  if (first == std::string_view::npos) return std::nullopt;
  p.name = std::string(s.substr(0, first));
  std::string_view rest = s.substr(first + 6);
  const std::size_t second = rest.find(";translated=");
  std::string_view seed_part = second == std::string_view::npos ? rest : rest.substr(0, second);
  try {
    p.seed = std::stoull(std::string(seed_part));
    if (second != std::string_view::npos) {
      p.translated = std::stoull(std::string(rest.substr(second + 12)));
    }
  } catch (const std::exception&) {
    return std::nullopt;
  }
  return p;
}

// ---------------------------------------------------------------------------
// Language-boundary tokens: "<|lang:xx|>" ... "<|/lang:xx|>".

inline std::string open_tag(LanguageCode lc) {
  return "<|lang:" + std::string(to_code(lc)) + "|>";
}

inline std::string close_tag(LanguageCode lc) {
  return "<|/lang:" + std::string(to_code(lc)) + "|>";
}

struct BoundaryToken {
  bool closing = false;
  std::optional<LanguageCode> lang;  // nullopt: tag-shaped text with a bad code
  std::size_t byte_pos = 0;
  std::size_t byte_len = 0;
};

/// Scan text for boundary tokens in order. Anything starting with "<|lang:"
/// or "<|/lang:" is reported; a missing "|>" terminator or an unknown code
/// yields a token with lang == nullopt so validators can flag it.
inline std::vector<BoundaryToken> scan_boundary_tokens(std::string_view text) {
  std::vector<BoundaryToken> out;
  std::size_t pos = 0;
  while (pos < text.size()) {
    const std::size_t at = text.find("<|", pos);
    if (at == std::string_view::npos) break;
    std::string_view rest = text.substr(at);
    bool closing = false;
    std::size_t code_off = 0;
    if (rest.rfind("<|lang:", 0) == 0) {
      code_off = 7;
    } else if (rest.rfind("<|/lang:", 0) == 0) {
      closing = true;
      code_off = 8;
    } else {
      pos = at + 2;
      continue;
    }
    const std::size_t close = rest.find("|>", code_off);
    BoundaryToken tok;
    tok.closing = closing;
    tok.byte_pos = at;
    if (close == std::string_view::npos) {
      tok.byte_len = rest.size();
      out.push_back(tok);
      break;
    }
    tok.byte_len = close + 2;
    const std::string_view code = rest.substr(code_off, close - code_off);
    tok.lang = language_from_code(code);
    out.push_back(tok);
    pos = at + tok.byte_len;
  }
  return out;
}

inline std::size_t count_boundary_tokens(std::string_view text) {
  return scan_boundary_tokens(text).size();
}

// ---------------------------------------------------------------------------
// JSON mapping. Field names are contractually fixed.

namespace detail {

inline const json& require_field(const json& j, const char* field, std::size_t line) {
  const auto it = j.find(field);
  if (it == j.end()) {
    throw SchemaError("corpus", line, field, "missing field");
  }
  return *it;
}

inline LanguageCode parse_lang(const json& j, const char* field, std::size_t line) {
  if (!j.is_string()) throw SchemaError("corpus", line, field, "language must be a string");
  const auto lc = language_from_code(j.get<std::string>());
  if (!lc) throw SchemaError("corpus", line, field, "unknown language code '" + j.get<std::string>() + "'");
  return *lc;
}

}  // namespace detail

inline json question_to_json(const Question& q) {
  return json{{"id", q.id},
              {"topic", q.topic},
              {"text", q.text},
              {"lang", std::string(to_code(q.lang))},
              {"source", std::string(source_name(q.source))}};
}

inline Question question_from_json(const json& j, std::size_t line = 0) {
  if (!j.is_object()) throw SchemaError("corpus", line, "question", "must be an object");
  Question q;
  q.id = detail::require_field(j, "id", line).get<std::string>();
  q.topic = detail::require_field(j, "topic", line).get<std::string>();
  q.text = detail::require_field(j, "text", line).get<std::string>();
  q.lang = detail::parse_lang(detail::require_field(j, "lang", line), "lang", line);
  const std::string src = detail::require_field(j, "source", line).get<std::string>();
  const auto source = source_from_name(src);
  if (!source) throw SchemaError("corpus", line, "source", "unknown source '" + src + "'");
  q.source = *source;
  if (q.id.empty()) throw SchemaError("corpus", line, "id", "must be non-empty");
  if (q.text.empty()) throw SchemaError("corpus", line, "text", "must be non-empty");
  return q;
}

inline json segment_to_json(const Segment& s) {
  json j{{"text", s.text},
         {"lang", std::string(to_code(s.lang))},
         {"is_reflection", s.is_reflection},
         {"char_span", json::array({s.char_span.start, s.char_span.end})}};
  if (s.cue) j["cue"] = *s.cue;
  return j;
}

inline Segment segment_from_json(const json& j, std::size_t line = 0) {
  Segment s;
  s.text = detail::require_field(j, "text", line).get<std::string>();
  s.lang = detail::parse_lang(detail::require_field(j, "lang", line), "lang", line);
  s.is_reflection = detail::require_field(j, "is_reflection", line).get<bool>();
  const json& span = detail::require_field(j, "char_span", line);
  if (!span.is_array() || span.size() != 2) {
    throw SchemaError("corpus", line, "char_span", "must be a [start, end] pair");
  }
  s.char_span = {span[0].get<std::size_t>(), span[1].get<std::size_t>()};
  if (auto it = j.find("cue"); it != j.end() && !it->is_null()) {
    s.cue = it->get<std::string>();
  }
  return s;
}

inline json trace_to_json(const CoTTrace& t) {
  json segs = json::array();
  for (const auto& s : t.segments) segs.push_back(segment_to_json(s));
  json j{{"question_id", t.question_id},
         {"lang", std::string(to_code(t.lang))},
         {"segments", std::move(segs)},
         {"raw_text", t.raw_text},
         {"token_count", t.token_count},
         {"stopped_normally", t.stopped_normally}};
  j["final_answer"] = t.final_answer ? json(*t.final_answer) : json(nullptr);
  return j;
}

inline CoTTrace trace_from_json(const json& j, std::size_t line = 0) {
  CoTTrace t;
  t.question_id = detail::require_field(j, "question_id", line).get<std::string>();
  t.lang = detail::parse_lang(detail::require_field(j, "lang", line), "lang", line);
  for (const json& js : detail::require_field(j, "segments", line)) {
    t.segments.push_back(segment_from_json(js, line));
  }
  t.raw_text = detail::require_field(j, "raw_text", line).get<std::string>();
  t.token_count = detail::require_field(j, "token_count", line).get<std::uint64_t>();
  t.stopped_normally = detail::require_field(j, "stopped_normally", line).get<bool>();
  if (auto it = j.find("final_answer"); it != j.end() && !it->is_null()) {
    t.final_answer = it->get<std::string>();
  }
  return t;
}

inline json sample_to_json(const AugmentedSample& s) {
  json langs = json::array();
  for (LanguageCode lc : s.language_set) langs.push_back(std::string(to_code(lc)));
  return json{{"question", question_to_json(s.question)},
              {"serialized_cot", s.serialized_cot},
              {"variant", std::string(variant_name(s.variant))},
              {"language_set", std::move(langs)},
              {"provenance", s.provenance}};
}

inline AugmentedSample sample_from_json(const json& j, std::size_t line = 0) {
  AugmentedSample s;
  s.question = question_from_json(detail::require_field(j, "question", line), line);
  s.serialized_cot = detail::require_field(j, "serialized_cot", line).get<std::string>();
  const std::string var = detail::require_field(j, "variant", line).get<std::string>();
  const auto variant = variant_from_name(var);
  if (!variant) throw SchemaError("corpus", line, "variant", "unknown variant '" + var + "'");
  s.variant = *variant;
  const json& langs = detail::require_field(j, "language_set", line);
  if (!langs.is_array()) throw SchemaError("corpus", line, "language_set", "must be an array");
  for (const json& l : langs) {
    s.language_set.push_back(detail::parse_lang(l, "language_set", line));
  }
  s.provenance = detail::require_field(j, "provenance", line).get<std::string>();
  return s;
}

// ---------------------------------------------------------------------------
// JSONL files: one record per line, UTF-8, no BOM.

inline std::vector<AugmentedSample> load_dataset(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("corpus", "cannot open '" + path.string() + "' for reading");
  }
  std::vector<AugmentedSample> samples;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError("corpus", line_no, "", std::string("invalid JSON: ") + e.what());
    }
    try {
      samples.push_back(sample_from_json(j, line_no));
    } catch (const SchemaError&) {
      throw;
    } catch (const json::exception& e) {
      throw SchemaError("corpus", line_no, "", std::string("bad field type: ") + e.what());
    }
  }
  return samples;
}

inline void save_dataset(const std::vector<AugmentedSample>& samples,
                         const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw IoError("corpus", "parent directory '" + parent.string() + "' does not exist");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("corpus", "cannot open '" + path.string() + "' for writing");
  }
  for (const auto& s : samples) {
    out << sample_to_json(s).dump() << '\n';
  }
  out.flush();
  if (!out) {
    throw IoError("corpus", "write failed for '" + path.string() + "'");
  }
}

/// Questions file: JSONL of Question records.
inline std::vector<Question> load_questions(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("corpus", "cannot open '" + path.string() + "' for reading");
  }
  std::vector<Question> questions;
  std::string line;
  std::size_t line_no = 0;
  std::set<std::string> ids;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError("corpus", line_no, "", std::string("invalid JSON: ") + e.what());
    }
    Question q = question_from_json(j, line_no);
    if (!ids.insert(q.id).second) {
      throw SchemaError("corpus", line_no, "id", "duplicate question id '" + q.id + "'");
    }
    questions.push_back(std::move(q));
  }
  return questions;
}

inline void save_traces(const std::vector<CoTTrace>& traces,
                        const std::filesystem::path& path) {
  const auto parent = path.parent_path();
  if (!parent.empty() && !std::filesystem::is_directory(parent)) {
    throw IoError("corpus", "parent directory '" + parent.string() + "' does not exist");
  }
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) {
    throw IoError("corpus", "cannot open '" + path.string() + "' for writing");
  }
  for (const auto& t : traces) out << trace_to_json(t).dump() << '\n';
}

inline std::vector<CoTTrace> load_traces(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) {
    throw IoError("corpus", "cannot open '" + path.string() + "' for reading");
  }
  std::vector<CoTTrace> traces;
  std::string line;
  std::size_t line_no = 0;
  while (std::getline(in, line)) {
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    json j;
    try {
      j = json::parse(line);
    } catch (const json::parse_error& e) {
      throw SchemaError("corpus", line_no, "", std::string("invalid JSON: ") + e.what());
    }
    try {
      traces.push_back(trace_from_json(j, line_no));
    } catch (const SchemaError&) {
      throw;
    } catch (const json::exception& e) {
      throw SchemaError("corpus", line_no, "", std::string("bad field type: ") + e.what());
    }
  }
  return traces;
}

}  // namespace l2::corpus
