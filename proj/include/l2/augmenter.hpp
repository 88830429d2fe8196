#pragma once

#include <algorithm>
#include <atomic>
#include <cstdint>
#include <functional>
#include <numeric>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "l2/corpus.hpp"
#include "l2/error.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/log.hpp"
#include "l2/rng.hpp"
#include "l2/translator.hpp"
#include "l2/unicode.hpp"

namespace l2::augmenter {

using corpus::AugmentedSample;
using corpus::CoTTrace;
using corpus::DatasetSpec;
using corpus::Question;
using corpus::SampleVariant;

namespace detail {

inline void parallel_for(std::size_t n, std::uint32_t parallelism,
                         const std::function<void(std::size_t)>& fn) {
  if (n == 0) return;
  const std::uint32_t n_threads =
      static_cast<std::uint32_t>(std::min<std::size_t>(std::max(1u, parallelism), n));
  if (n_threads <= 1) {
    for (std::size_t i = 0; i < n; ++i) fn(i);
    return;
  }
  std::atomic<std::size_t> next{0};
  const auto worker = [&] {
    for (;;) {
      const std::size_t i = next.fetch_add(1);
      if (i >= n) return;
      fn(i);
    }
  };
  std::vector<std::thread> threads;
  threads.reserve(n_threads);
  for (std::uint32_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
  for (auto& t : threads) t.join();
}

inline std::string trim_copy(std::string_view text, std::string& leading) {
  const DecodedText d = utf8_decode(text);
  std::size_t b = 0;
  while (b < d.scalars.size() && is_whitespace(d.scalars[b])) ++b;
  std::size_t e = d.scalars.size();
  while (e > b && is_whitespace(d.scalars[e - 1])) --e;
  leading = std::string(text.substr(0, d.byte_offset[b]));
  return std::string(text.substr(d.byte_offset[b], d.byte_offset[e] - d.byte_offset[b]));
}

}  // namespace detail

/// Wrap text in language-boundary tokens. Never applied twice by builders;
/// the validator flags nesting.
inline std::string insert_language_tokens(std::string_view text, LanguageCode lang) {
  if (text.empty()) {
    throw ArgumentError("augmenter", "cannot wrap empty text in language tokens");
  }
  return corpus::open_tag(lang) + std::string(text) + corpus::close_tag(lang);
}

// ---------------------------------------------------------------------------
// Solution-level corpus: one full-language trace per (question, language).

/// Build the solution-level variant. Questions are translated into each
/// target language, annotated there, and emitted in (question-major,
/// language-minor) order. Items whose annotation permanently failed are
/// omitted and logged, so the result holds n*l minus failures samples.
inline std::vector<AugmentedSample> build_solution_level(const DatasetSpec& spec,
                                                         const std::vector<Question>& questions,
                                                         translator::GenClient& client,
                                                         std::uint32_t parallelism = 1) {
  corpus::validate_spec(spec);
  if (questions.size() != spec.n_questions) {
    throw ArgumentError("augmenter",
                        "expected " + std::to_string(spec.n_questions) + " questions, got " +
                            std::to_string(questions.size()));
  }
  const std::string name = corpus::derive_name(spec);
  const std::string provenance =
      corpus::format_provenance({name, spec.seed, std::nullopt});

  const std::size_t n_langs = spec.languages.size();
  std::vector<std::optional<AugmentedSample>> slots(questions.size() * n_langs);
  std::vector<std::string> errors(slots.size());

  detail::parallel_for(slots.size(), parallelism, [&](std::size_t idx) {
    const std::size_t qi = idx / n_langs;
    const std::size_t li = idx % n_langs;
    const Question& source = questions[qi];
    const LanguageCode target = spec.languages[li];
    try {
      Question localized = source;
      if (target != source.lang) {
        localized.text = client.translate_text(source.text, source.lang, target);
        localized.lang = target;
      }
      CoTTrace trace = client.annotate_cot(localized, target);
      AugmentedSample sample;
      sample.question = std::move(localized);
      sample.serialized_cot = trace.raw_text;
      sample.variant = SampleVariant::SolutionLevel;
      sample.language_set = {target};
      sample.provenance = provenance;
      slots[idx] = std::move(sample);
    } catch (const Error& e) {
      errors[idx] = e.what();
    }
  });

  std::vector<AugmentedSample> samples;
  samples.reserve(slots.size());
  for (std::size_t idx = 0; idx < slots.size(); ++idx) {
    if (slots[idx]) {
      samples.push_back(std::move(*slots[idx]));
    } else {
      log::warn("solution_sample_omitted",
                {log::field("question", questions[idx / n_langs].id),
                 log::field("lang", std::string(to_code(spec.languages[idx % n_langs]))),
                 log::field("error", errors[idx])});
    }
  }
  return samples;
}

// ---------------------------------------------------------------------------
// Step-mixed corpus: reflection segments independently translated with
// probability p and wrapped in boundary tokens.

/// Pure selection rule: the i-th reflection segment is selected iff the i-th
/// draw from the "mixture" stream of `seed` is below p. Draws are positional,
/// so for a fixed seed the selected set at p1 is a subset of the set at
/// p2 >= p1.
inline std::vector<bool> select_mixture_segments(const CoTTrace& trace, double p,
                                                 std::uint64_t seed) {
  if (!(p >= 0.0 && p <= 1.0)) {
    throw ArgumentError("augmenter", "mixture probability must be in [0, 1]");
  }
  SeededRng rng(derive_stream(seed, "mixture"));
  std::vector<bool> selected(trace.segments.size(), false);
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    if (!trace.segments[i].is_reflection) continue;
    selected[i] = rng.next_u01() < p;
  }
  return selected;
}

/// Build one step-mixed sample from a segmented trace. Selected reflection
/// segments are translated into target_lang and wrapped in boundary tokens;
/// everything else passes through verbatim. A failed segment translation
/// falls back to the original text (logged, not counted as translated).
inline AugmentedSample build_step_mixture(const DatasetSpec& spec, const Question& question,
                                          const CoTTrace& trace, LanguageCode target_lang,
                                          double p, std::uint64_t seed,
                                          translator::GenClient& client) {
  if (target_lang == trace.lang) {
    throw ArgumentError("augmenter", "step-mix target language equals the trace language '" +
                                         std::string(to_code(target_lang)) + "'");
  }
  if (trace.segments.empty() && !trace.raw_text.empty()) {
    throw ArgumentError("augmenter", "trace must be segmented before step mixing");
  }
  const std::vector<bool> selected = select_mixture_segments(trace, p, seed);

  std::string mixed;
  std::uint64_t wrapped = 0;
  for (std::size_t i = 0; i < trace.segments.size(); ++i) {
    const corpus::Segment& seg = trace.segments[i];
    if (!selected[i]) {
      mixed += seg.text;
      continue;
    }
    std::string leading;
    const std::string core = detail::trim_copy(seg.text, leading);
    if (core.empty()) {
      mixed += seg.text;
      continue;
    }
    try {
      const std::string translated = client.translate_text(core, trace.lang, target_lang);
      mixed += leading;
      mixed += insert_language_tokens(translated, target_lang);
      ++wrapped;
    } catch (const TransportError& e) {
      log::warn("segment_translation_failed",
                {log::field("question", trace.question_id),
                 log::field("segment", i),
                 log::field("error", e.what())});
      mixed += seg.text;
    }
  }

  AugmentedSample sample;
  sample.question = question;
  sample.serialized_cot = std::move(mixed);
  sample.variant = SampleVariant::StepMixed;
  sample.language_set = {trace.lang};
  if (wrapped > 0) sample.language_set.push_back(target_lang);
  sample.provenance =
      corpus::format_provenance({corpus::derive_name(spec), seed, wrapped});
  return sample;
}

// ---------------------------------------------------------------------------
// Mixture validation.

enum class Severity : std::uint8_t { Error, Warning };

struct Violation {
  Severity severity = Severity::Error;
  std::string message;
  std::size_t byte_pos = 0;  // position in serialized_cot where applicable
};

/// Structural and consistency checks over one sample. Structural tag
/// problems and provenance mismatches are errors; language disagreements
/// inside wrapped fragments are warnings.
inline std::vector<Violation> validate_mixture(const AugmentedSample& sample) {
  std::vector<Violation> violations;
  const auto err = [&](std::string msg, std::size_t pos = 0) {
    violations.push_back({Severity::Error, std::move(msg), pos});
  };
  const auto warn = [&](std::string msg, std::size_t pos = 0) {
    violations.push_back({Severity::Warning, std::move(msg), pos});
  };

  const std::vector<corpus::BoundaryToken> tokens =
      corpus::scan_boundary_tokens(sample.serialized_cot);

  if (sample.variant == SampleVariant::SolutionLevel) {
    if (!tokens.empty()) {
      err("solution-level sample contains boundary tokens", tokens.front().byte_pos);
    }
    if (sample.language_set.size() != 1) {
      err("solution-level sample must have exactly one language, got " +
          std::to_string(sample.language_set.size()));
    } else {
      const LanguageCode dominant = langid::classify_span(sample.serialized_cot).lang;
      if (dominant != sample.language_set[0]) {
        warn("dominant language '" + std::string(to_code(dominant)) +
             "' differs from declared '" + std::string(to_code(sample.language_set[0])) + "'");
      }
    }
    return violations;
  }

  // Step-mixed: tags must be well formed, balanced, and nested at depth <= 1.
  bool tag_open = false;
  LanguageCode open_lang = LanguageCode::Unknown;
  std::size_t open_end = 0;
  std::uint64_t pair_count = 0;
  for (const corpus::BoundaryToken& tok : tokens) {
    if (!tok.lang) {
      err("malformed boundary token", tok.byte_pos);
      continue;
    }
    if (!tok.closing) {
      if (tag_open) {
        err("nested boundary token (depth > 1)", tok.byte_pos);
        continue;
      }
      tag_open = true;
      open_lang = *tok.lang;
      open_end = tok.byte_pos + tok.byte_len;
      continue;
    }
    if (!tag_open) {
      err("closing tag without matching open tag", tok.byte_pos);
      continue;
    }
    if (open_lang != *tok.lang) {
      err("closing tag language '" + std::string(to_code(*tok.lang)) +
              "' does not match open tag '" + std::string(to_code(open_lang)) + "'",
          tok.byte_pos);
      tag_open = false;
      continue;
    }
    ++pair_count;
    const std::string_view fragment =
        std::string_view(sample.serialized_cot).substr(open_end, tok.byte_pos - open_end);
    const LanguageCode identified = langid::classify_span(fragment).lang;
    if (identified != open_lang) {
      warn("fragment tagged '" + std::string(to_code(open_lang)) + "' identified as '" +
               std::string(to_code(identified)) + "'",
           open_end);
    }
    if (std::find(sample.language_set.begin(), sample.language_set.end(), open_lang) ==
        sample.language_set.end()) {
      err("tag language '" + std::string(to_code(open_lang)) + "' missing from language_set",
          tok.byte_pos);
    }
    tag_open = false;
  }
  if (tag_open) {
    err("unclosed boundary token at end of text", sample.serialized_cot.size());
  }

  const auto provenance = corpus::parse_provenance(sample.provenance);
  if (!provenance) {
    err("provenance '" + sample.provenance + "' is unparseable");
  } else if (!provenance->translated) {
    err("step-mixed provenance lacks a translated count");
  } else if (*provenance->translated != pair_count) {
    err("provenance records " + std::to_string(*provenance->translated) +
        " translated fragments but sample has " + std::to_string(pair_count));
  }
  return violations;
}

inline bool has_errors(const std::vector<Violation>& violations) noexcept {
  return std::any_of(violations.begin(), violations.end(),
                     [](const Violation& v) { return v.severity == Severity::Error; });
}

// ---------------------------------------------------------------------------
// Oversampling.

/// Repeat samples to exactly target_count: every original appears
/// floor(target/len) or ceil(target/len) times, order shuffled by seed.
inline std::vector<AugmentedSample> oversample(const std::vector<AugmentedSample>& samples,
                                               std::uint64_t target_count, std::uint64_t seed) {
  if (samples.empty()) {
    throw ArgumentError("augmenter", "cannot oversample an empty sample list");
  }
  if (target_count < samples.size()) {
    throw ArgumentError("augmenter", "target_count " + std::to_string(target_count) +
                                         " is below the sample count " +
                                         std::to_string(samples.size()));
  }
  SeededRng rng(derive_stream(seed, "oversample"));
  const std::uint64_t base = target_count / samples.size();
  const std::uint64_t extra = target_count % samples.size();

  std::vector<std::size_t> indices(samples.size());
  std::iota(indices.begin(), indices.end(), 0);
  rng.shuffle(indices);

  std::vector<std::size_t> picks;
  picks.reserve(target_count);
  for (std::size_t i = 0; i < samples.size(); ++i) {
    const std::uint64_t copies = base + (i < extra ? 1 : 0);
    for (std::uint64_t c = 0; c < copies; ++c) picks.push_back(indices[i]);
  }
  rng.shuffle(picks);

  std::vector<AugmentedSample> out;
  out.reserve(target_count);
  for (std::size_t idx : picks) out.push_back(samples[idx]);
  return out;
}

}  // namespace l2::augmenter
