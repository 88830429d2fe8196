#pragma once

#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <map>
#include <mutex>
#include <numeric>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include <json.hpp>

#include "l2/error.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/log.hpp"
#include "l2/rng.hpp"

namespace l2::intervene {

using LogitVector = std::vector<double>;

struct InterventionConfig {
  double alpha = 0.5;        // boost probability, in [0, 1]
  double beta = 2.0;         // logit adjustment magnitude, >= 0
  std::uint32_t top_k = 4;   // candidate cutoff for triggering, >= 1
  LanguageCode target_lang = LanguageCode::Zh;
  std::vector<std::uint32_t> lang_token_ids;  // sorted ascending, unique
  double temperature = 0.7;      // > 0
  std::uint64_t max_tokens = 15000;  // >= 1
  std::uint64_t seed = 0;
  bool per_token_draws = false;  // ablation: independent draw per token
};

inline void validate_intervention(const InterventionConfig& cfg) {
  if (!(cfg.alpha >= 0.0 && cfg.alpha <= 1.0)) {
    throw ArgumentError("intervene", "alpha must be in [0, 1]");
  }
  if (!(cfg.beta >= 0.0)) {
    throw ArgumentError("intervene", "beta must be nonnegative");
  }
  if (cfg.top_k == 0) {
    throw ArgumentError("intervene", "top_k must be >= 1");
  }
  if (!(cfg.temperature > 0.0)) {
    throw ArgumentError("intervene", "temperature must be positive");
  }
  if (cfg.max_tokens == 0) {
    throw ArgumentError("intervene", "max_tokens must be >= 1");
  }
  if (!std::is_sorted(cfg.lang_token_ids.begin(), cfg.lang_token_ids.end()) ||
      std::adjacent_find(cfg.lang_token_ids.begin(), cfg.lang_token_ids.end()) !=
          cfg.lang_token_ids.end()) {
    throw ArgumentError("intervene", "lang_token_ids must be sorted and unique");
  }
}

enum class StopReason : std::uint8_t { Eos, MaxTokens, BackendError };

inline constexpr std::string_view stop_reason_name(StopReason r) noexcept {
  switch (r) {
    case StopReason::Eos: return "eos";
    case StopReason::MaxTokens: return "max_tokens";
    case StopReason::BackendError: return "backend_error";
  }
  return "backend_error";
}

inline std::optional<StopReason> stop_reason_from_name(std::string_view name) noexcept {
  if (name == "eos") return StopReason::Eos;
  if (name == "max_tokens") return StopReason::MaxTokens;
  if (name == "backend_error") return StopReason::BackendError;
  return std::nullopt;
}

struct InterventionEvent {
  std::uint64_t step = 0;
  std::uint32_t token_id = 0;
  bool boost = false;  // false: suppressed by -beta
  double u_draw = 0.0;

  bool operator==(const InterventionEvent&) const = default;
};

struct GenerationRecord {
  std::string record_id;
  std::vector<std::uint32_t> prompt;
  std::vector<std::uint32_t> output;
  StopReason stop_reason = StopReason::Eos;
  std::vector<InterventionEvent> events;
  langid::LanguageProfile per_language_tokens;
  std::vector<std::string> token_texts;  // decoded output tokens, in order
  std::string decoded_text;
  std::string error;  // non-empty when stop_reason == BackendError
};

// ---------------------------------------------------------------------------
// Backend interface.

class ModelBackend {
 public:
  virtual ~ModelBackend() = default;
  virtual std::uint32_t vocab_size() const = 0;
  /// Deterministic for a given context; entries finite.
  virtual LogitVector next_logits(const std::vector<std::uint32_t>& context) = 0;
  virtual const std::set<std::uint32_t>& eos_ids() const = 0;
  /// Special-token ids for the language (the lang_token_table row).
  virtual std::vector<std::uint32_t> lang_token_ids(LanguageCode lang) const = 0;
  virtual std::string token_text(std::uint32_t id) const = 0;
  virtual std::vector<std::uint32_t> encode(std::string_view text) const = 0;
};

// ---------------------------------------------------------------------------
// Core operations.

/// Top-k token ids by score, ties broken by lower token id first.
inline std::vector<std::uint32_t> top_k_ids(const LogitVector& logits, std::uint32_t k) {
  std::vector<std::uint32_t> ids(logits.size());
  std::iota(ids.begin(), ids.end(), 0u);
  const std::size_t take = std::min<std::size_t>(k, ids.size());
  std::partial_sort(ids.begin(), ids.begin() + static_cast<std::ptrdiff_t>(take), ids.end(),
                    [&logits](std::uint32_t a, std::uint32_t b) {
                      if (logits[a] != logits[b]) return logits[a] > logits[b];
                      return a < b;
                    });
  ids.resize(take);
  return ids;
}

struct AdjustOutcome {
  LogitVector logits;
  std::vector<InterventionEvent> events;  // step left 0; caller stamps it
};

/// Apply the intervention to one logit vector. When the top-k set intersects
/// cfg.lang_token_ids, one uniform draw decides boost (+beta, u < alpha) or
/// suppression (-beta) for every intersected id; otherwise the vector passes
/// through untouched and no draw is consumed. per_token_draws switches to an
/// independent draw per intersected id (ablation variant).
inline AdjustOutcome adjust_logits(const LogitVector& logits, const InterventionConfig& cfg,
                                   UniformSource& rng) {
  validate_intervention(cfg);
  AdjustOutcome out;
  out.logits = logits;

  std::vector<std::uint32_t> hit_ids;
  for (std::uint32_t id : top_k_ids(logits, cfg.top_k)) {
    if (std::binary_search(cfg.lang_token_ids.begin(), cfg.lang_token_ids.end(), id)) {
      hit_ids.push_back(id);
    }
  }
  if (hit_ids.empty()) return out;
  std::sort(hit_ids.begin(), hit_ids.end());

  if (cfg.per_token_draws) {
    for (std::uint32_t id : hit_ids) {
      const double u = rng.next_u01();
      const bool boost = u < cfg.alpha;
      out.logits[id] += boost ? cfg.beta : -cfg.beta;
      out.events.push_back({0, id, boost, u});
    }
    return out;
  }
  const double u = rng.next_u01();
  const bool boost = u < cfg.alpha;
  for (std::uint32_t id : hit_ids) {
    out.logits[id] += boost ? cfg.beta : -cfg.beta;
    out.events.push_back({0, id, boost, u});
  }
  return out;
}

/// Inverse-CDF sample from softmax(logits / temperature), walking token ids
/// in ascending order. Entries of -infinity carry zero weight.
inline std::uint32_t sample_token(const LogitVector& logits, double temperature,
                                  UniformSource& rng) {
  if (!(temperature > 0.0)) {
    throw ArgumentError("intervene", "temperature must be positive");
  }
  if (logits.empty()) {
    throw ArgumentError("intervene", "cannot sample from an empty logit vector");
  }
  double max_logit = -std::numeric_limits<double>::infinity();
  for (double x : logits) max_logit = std::max(max_logit, x);
  if (!std::isfinite(max_logit)) {
    throw ArgumentError("intervene", "degenerate distribution: no finite logits");
  }

  std::vector<double> weights(logits.size());
  double total = 0.0;
  for (std::size_t i = 0; i < logits.size(); ++i) {
    const double w = std::exp((logits[i] - max_logit) / temperature);
    weights[i] = w;
    total += w;
  }
  const double threshold = rng.next_u01() * total;
  double cum = 0.0;
  std::size_t last_positive = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    if (weights[i] > 0.0) last_positive = i;
    cum += weights[i];
    if (cum > threshold) return static_cast<std::uint32_t>(i);
  }
  return static_cast<std::uint32_t>(last_positive);
}

/// Run the intervention decoding loop. Two independent RNG streams are
/// derived from cfg.seed: "intervene" feeds adjust_logits and "sample" feeds
/// sample_token, so with beta = 0 the sampled sequence is identical to an
/// unintervened run regardless of how many intervention draws occur.
/// Backend failure mid-generation yields stop_reason = BackendError with the
/// partial output preserved.
inline GenerationRecord generate_with_intervention(ModelBackend& backend,
                                                   const std::vector<std::uint32_t>& prompt,
                                                   const InterventionConfig& cfg,
                                                   std::string record_id = {}) {
  validate_intervention(cfg);
  if (prompt.empty()) {
    throw ArgumentError("intervene", "prompt must be non-empty");
  }
  const std::vector<std::uint32_t> table = backend.lang_token_ids(cfg.target_lang);
  for (std::uint32_t id : cfg.lang_token_ids) {
    if (std::find(table.begin(), table.end(), id) == table.end()) {
      throw ArgumentError("intervene",
                          "lang token id " + std::to_string(id) +
                              " is not a language token for '" +
                              std::string(to_code(cfg.target_lang)) + "' in this backend");
    }
  }

  SeededRng intervene_rng(derive_stream(cfg.seed, "intervene"));
  SeededRng sample_rng(derive_stream(cfg.seed, "sample"));

  GenerationRecord record;
  record.record_id = std::move(record_id);
  record.prompt = prompt;
  record.stop_reason = StopReason::MaxTokens;

  std::vector<std::uint32_t> context = prompt;
  while (record.output.size() < cfg.max_tokens) {
    AdjustOutcome adjusted;
    std::uint32_t token = 0;
    try {
      const LogitVector logits = backend.next_logits(context);
      adjusted = adjust_logits(logits, cfg, intervene_rng);
      token = sample_token(adjusted.logits, cfg.temperature, sample_rng);
    } catch (const std::exception& e) {
      record.stop_reason = StopReason::BackendError;
      record.error = e.what();
      break;
    }
    for (InterventionEvent& ev : adjusted.events) {
      ev.step = record.output.size();
      record.events.push_back(ev);
    }
    record.output.push_back(token);
    context.push_back(token);
    if (backend.eos_ids().count(token)) {
      record.stop_reason = StopReason::Eos;
      break;
    }
  }

  record.token_texts.reserve(record.output.size());
  for (std::uint32_t id : record.output) {
    record.token_texts.push_back(backend.token_text(id));
  }
  for (const std::string& t : record.token_texts) record.decoded_text += t;
  record.per_language_tokens = langid::token_language_profile(record.token_texts);
  return record;
}

// ---------------------------------------------------------------------------
// JSON serialization of generation records (JSONL, one record per line).

inline nlohmann::json record_to_json(const GenerationRecord& record,
                                     const InterventionConfig& cfg) {
  nlohmann::json events = nlohmann::json::array();
  for (const InterventionEvent& ev : record.events) {
    events.push_back({{"step", ev.step},
                      {"token_id", ev.token_id},
                      {"direction", ev.boost ? "boost" : "suppress"},
                      {"u", ev.u_draw}});
  }
  nlohmann::json counts = nlohmann::json::object();
  for (const auto& [lc, n] : record.per_language_tokens.counts) {
    counts[std::string(to_code(lc))] = n;
  }
  nlohmann::json j{{"id", record.record_id},
                   {"language", std::string(to_code(cfg.target_lang))},
                   {"alpha", cfg.alpha},
                   {"beta", cfg.beta},
                   {"top_k", cfg.top_k},
                   {"temperature", cfg.temperature},
                   {"seed", cfg.seed},
                   {"prompt", record.prompt},
                   {"output", record.output},
                   {"stop_reason", std::string(stop_reason_name(record.stop_reason))},
                   {"events", std::move(events)},
                   {"token_texts", record.token_texts},
                   {"text", record.decoded_text},
                   {"per_language_tokens", std::move(counts)}};
  if (!record.error.empty()) j["error"] = record.error;
  return j;
}

// ---------------------------------------------------------------------------
// Parameter sweep over (prompt, alpha, k).

struct SweepCell {
  std::size_t prompt_index = 0;
  std::size_t alpha_index = 0;
  std::size_t k_index = 0;
};

struct SweepPlan {
  std::vector<std::string> prompt_ids;                 // one label per prompt
  std::vector<std::vector<std::uint32_t>> prompts;     // encoded
  std::vector<double> alphas;
  std::vector<std::uint32_t> ks;
  InterventionConfig base;  // alpha/top_k/seed overridden per cell
};

/// Evaluate the Cartesian grid (prompt-major, then alpha, then k), writing
/// one JSON line per cell to `out` in grid order. Cells run in parallel but
/// the writer releases lines strictly in order, so reruns are byte-identical.
/// Per-cell failures become {"id", "error"} lines; the sweep never aborts.
/// Returns the number of successful cells.
inline std::size_t sweep(ModelBackend& backend, const SweepPlan& plan, std::ostream& out,
                         std::uint32_t parallelism = 1) {
  if (plan.prompts.empty() || plan.alphas.empty() || plan.ks.empty()) {
    throw ArgumentError("intervene", "sweep grid must be non-empty");
  }
  if (plan.prompt_ids.size() != plan.prompts.size()) {
    throw ArgumentError("intervene", "one prompt id required per prompt");
  }
  const std::size_t n_cells = plan.prompts.size() * plan.alphas.size() * plan.ks.size();

  std::mutex write_mutex;
  std::map<std::size_t, std::string> pending;
  std::size_t next_to_write = 0;
  std::atomic<std::size_t> next_cell{0};
  std::atomic<std::size_t> ok_cells{0};

  const auto cell_id = [&plan](std::size_t idx) {
    const std::size_t per_prompt = plan.alphas.size() * plan.ks.size();
    const std::size_t pi = idx / per_prompt;
    const std::size_t ai = (idx % per_prompt) / plan.ks.size();
    const std::size_t ki = idx % plan.ks.size();
    return plan.prompt_ids[pi] + "-a" + std::to_string(ai) + "-k" + std::to_string(ki);
  };

  const auto run_cell = [&](std::size_t idx) -> std::string {
    const std::size_t per_prompt = plan.alphas.size() * plan.ks.size();
    const std::size_t pi = idx / per_prompt;
    const std::size_t ai = (idx % per_prompt) / plan.ks.size();
    const std::size_t ki = idx % plan.ks.size();
    InterventionConfig cfg = plan.base;
    cfg.alpha = plan.alphas[ai];
    cfg.top_k = plan.ks[ki];
    cfg.seed = derive_stream(plan.base.seed, idx);
    try {
      GenerationRecord record =
          generate_with_intervention(backend, plan.prompts[pi], cfg, cell_id(idx));
      ok_cells.fetch_add(1);
      return record_to_json(record, cfg).dump();
    } catch (const std::exception& e) {
      return nlohmann::json{{"id", cell_id(idx)}, {"error", e.what()}}.dump();
    }
  };

  const auto worker = [&] {
    for (;;) {
      const std::size_t idx = next_cell.fetch_add(1);
      if (idx >= n_cells) return;
      std::string line = run_cell(idx);
      std::lock_guard<std::mutex> lock(write_mutex);
      pending[idx] = std::move(line);
      while (!pending.empty() && pending.begin()->first == next_to_write) {
        out << pending.begin()->second << '\n';
        pending.erase(pending.begin());
        ++next_to_write;
      }
    }
  };

  const std::uint32_t n_threads =
      static_cast<std::uint32_t>(std::min<std::size_t>(std::max(1u, parallelism), n_cells));
  if (n_threads <= 1) {
    worker();
  } else {
    std::vector<std::thread> threads;
    threads.reserve(n_threads);
    for (std::uint32_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
    for (auto& t : threads) t.join();
  }
  out.flush();
  return ok_cells.load();
}

// ---------------------------------------------------------------------------
// Mock backend: a deterministic scripted vocabulary model, V = 32. Token 0 is
// eos; ids 1..9 are the language tokens in fixed language order; the rest are
// text fragments including digits. Each prompt induces a scripted best
// continuation ("The answer is \boxed{D1 D2}. Wait, let me check." then eos);
// off-script noise comes from a seeded hash so next_logits is a pure function
// of (seed, context). The target language token can be pinned at an exact
// rank among the candidates, which is how tests place it inside or outside
// the top-k.

class MockBackend final : public ModelBackend {
 public:
  struct Config {
    std::uint64_t seed = 0;
    LanguageCode rank_lang = LanguageCode::Zh;
    std::uint32_t lang_rank = 0;  // 0: no pinning; r >= 1: exact rank r
    bool immediate_eos = false;   // eos always outranks everything
    bool endless = false;         // script loops forever (never reaches eos)
  };

  MockBackend() : MockBackend(Config{}) {}
  explicit MockBackend(Config cfg) : cfg_(cfg) {
    vocab_ = {"<eos>"};
    for (LanguageCode lc : kRealLanguages) {
      vocab_.push_back("<|lang:" + std::string(to_code(lc)) + "|>");
    }
    for (const char* w : {"The", " answer", " is", " \\boxed{", "}", ".", " Wait", ",",
                          " let", " me", " check", "等等", "我们", "再", "算", "一",
                          "次", " yes"}) {
      vocab_.push_back(w);
    }
    for (const char* d : {"0", "1", "2", "3"}) vocab_.push_back(d);
    eos_ids_ = {0};
  }

  std::uint32_t vocab_size() const override { return static_cast<std::uint32_t>(vocab_.size()); }
  const std::set<std::uint32_t>& eos_ids() const override { return eos_ids_; }

  std::vector<std::uint32_t> lang_token_ids(LanguageCode lang) const override {
    for (std::size_t i = 0; i < kRealLanguages.size(); ++i) {
      if (kRealLanguages[i] == lang) return {static_cast<std::uint32_t>(i + 1)};
    }
    return {};
  }

  std::string token_text(std::uint32_t id) const override {
    if (id >= vocab_.size()) {
      throw ArgumentError("intervene", "token id " + std::to_string(id) + " out of range");
    }
    return vocab_[id];
  }

  /// Hash each word into the prompt id range [21, 27]. That range is
  /// disjoint from every script token, so the prompt prefix of a context is
  /// recoverable and the scripted continuation stays a pure function of the
  /// context.
  std::vector<std::uint32_t> encode(std::string_view text) const override {
    std::vector<std::uint32_t> ids;
    std::string word;
    const auto flush = [&] {
      if (word.empty()) return;
      ids.push_back(21 + static_cast<std::uint32_t>(fnv1a64(word) % 7));
      word.clear();
    };
    for (char c : std::string(text)) {
      if (c == ' ' || c == '\n' || c == '\t') {
        flush();
      } else {
        word += c;
      }
    }
    flush();
    if (ids.empty()) ids.push_back(21);
    return ids;
  }

  LogitVector next_logits(const std::vector<std::uint32_t>& context) override {
    if (context.empty()) {
      throw ArgumentError("intervene", "mock backend requires non-empty context");
    }
    const std::size_t V = vocab_.size();
    // Context hash keys the noise floor so logits depend on actual content.
    std::uint64_t ch = 0xA0761D6478BD642Full;
    for (std::uint32_t id : context) {
      ch ^= id + 0x9E3779B97F4A7C15ull + (ch << 6) + (ch >> 2);
    }
    LogitVector logits(V);
    for (std::size_t id = 0; id < V; ++id) {
      std::uint64_t s = cfg_.seed ^ ch ^ (0xD1B54A32D192ED03ull * (id + 1));
      logits[id] = static_cast<double>(splitmix64_next(s) >> 11) * 0x1.0p-53 * 10.0;
    }
    // Language tokens sit far below the candidates unless pinned.
    for (std::size_t i = 1; i <= kRealLanguages.size(); ++i) logits[i] = -50.0 - double(i);

    if (cfg_.immediate_eos) {
      logits[0] += 100.0;
    } else {
      const std::uint32_t desired = scripted_next(context);
      logits[desired] += 30.0;
    }

    if (cfg_.lang_rank >= 1) {
      const std::uint32_t lang_id = lang_token_ids(cfg_.rank_lang).front();
      std::vector<double> others;
      others.reserve(V - 1);
      for (std::size_t id = 0; id < V; ++id) {
        if (id != lang_id) others.push_back(logits[id]);
      }
      std::sort(others.begin(), others.end(), std::greater<double>());
      const std::uint32_t r = std::min<std::uint32_t>(cfg_.lang_rank,
                                                      static_cast<std::uint32_t>(others.size()));
      if (r == 1) {
        logits[lang_id] = others[0] + 1.0;
      } else {
        logits[lang_id] = (others[r - 2] + others[r - 1]) / 2.0;
      }
    }
    return logits;
  }

  /// Maximal leading run of prompt-range ids; see encode().
  static std::vector<std::uint32_t> prompt_prefix(const std::vector<std::uint32_t>& context) {
    std::vector<std::uint32_t> prefix;
    for (std::uint32_t id : context) {
      if (id < 21 || id > 27) break;
      prefix.push_back(id);
    }
    return prefix;
  }

  /// The scripted continuation for the prompt embedded in this context. The
  /// script position is the longest context suffix that is a script prefix;
  /// steps past the script end ask for eos (or loop when endless).
  std::uint32_t scripted_next(const std::vector<std::uint32_t>& context) const {
    const std::vector<std::uint32_t> script = script_for_prompt(prompt_prefix(context));
    if (script.empty()) return 0;
    // Longest suffix of context that is a prefix of the script.
    std::size_t matched = 0;
    const std::size_t max_check = std::min(context.size(), script.size());
    for (std::size_t len = max_check; len > 0; --len) {
      bool match = true;
      for (std::size_t i = 0; i < len; ++i) {
        if (context[context.size() - len + i] != script[i]) {
          match = false;
          break;
        }
      }
      if (match) {
        matched = len;
        break;
      }
    }
    if (matched < script.size()) return script[matched];
    return cfg_.endless ? script[matched % script.size()] : 0;
  }

  std::vector<std::uint32_t> script_for_prompt(const std::vector<std::uint32_t>& prompt) const {
    std::uint64_t h = cfg_.seed;
    for (std::uint32_t id : prompt) h = h * 0x100000001B3ull + id + 1;
    const std::uint32_t answer = static_cast<std::uint32_t>(splitmix_of(h) % 16);
    const std::uint32_t d1 = 28 + answer / 4;
    const std::uint32_t d2 = 28 + answer % 4;
    // "The answer is \boxed{D1D2}. Wait, let me check."
    std::vector<std::uint32_t> script = {10, 11, 12, 13, d1, d2, 14, 15,
                                         16, 17, 18, 19, 20, 15};
    if (cfg_.endless) {
      // Loop body must not be a prefix of itself shifted, which "Wait, let
      // me check." satisfies; drop the absorbing tail instead of eos.
      script = {16, 17, 18, 19, 20, 15};
    }
    return script;
  }

  /// The boxed answer text the script renders for a prompt (two digit
  /// tokens), for building gold files.
  std::string scripted_answer(const std::vector<std::uint32_t>& prompt) const {
    std::uint64_t h = cfg_.seed;
    for (std::uint32_t id : prompt) h = h * 0x100000001B3ull + id + 1;
    const std::uint32_t answer = static_cast<std::uint32_t>(splitmix_of(h) % 16);
    return std::to_string(answer / 4) + std::to_string(answer % 4);
  }

 private:
  static constexpr std::uint64_t splitmix_of(std::uint64_t x) noexcept {
    std::uint64_t s = x;
    return splitmix64_next(s);
  }

  Config cfg_;
  std::vector<std::string> vocab_;
  std::set<std::uint32_t> eos_ids_;
};

}  // namespace l2::intervene
