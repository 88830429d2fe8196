#pragma once

#include <algorithm>
#include <atomic>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <functional>
#include <memory>
#include <mutex>
#include <optional>
#include <string>
#include <string_view>
#include <thread>
#include <utility>
#include <vector>

#include <json.hpp>

#include "l2/corpus.hpp"
#include "l2/error.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/log.hpp"
#include "l2/rng.hpp"
#include "l2/segmenter.hpp"

namespace l2::translator {

struct GenClientConfig {
  std::string endpoint_url = "http://localhost:8080/v1/chat/completions";
  std::string model_name = "mock-model";
  std::string api_key_env = "L2_API_KEY";
  std::uint32_t max_retries = 3;            // <= 10
  double timeout_seconds = 60.0;            // > 0
  std::uint32_t requests_per_minute = 600;  // >= 1
  std::optional<std::filesystem::path> cache_dir;
  std::uint32_t retry_backoff_ms = 200;     // base for linear backoff; 0 in tests
};

inline void validate_config(const GenClientConfig& cfg) {
  if (cfg.max_retries > 10) {
    throw ArgumentError("translator", "max_retries must be <= 10");
  }
  if (!(cfg.timeout_seconds > 0)) {
    throw ArgumentError("translator", "timeout must be positive");
  }
  if (cfg.requests_per_minute == 0) {
    throw ArgumentError("translator", "requests_per_minute must be positive");
  }
}

enum class TaskKind : std::uint8_t { Translate, Annotate };

inline constexpr std::string_view task_name(TaskKind t) noexcept {
  return t == TaskKind::Translate ? "translate" : "annotate";
}

struct TransportRequest {
  TaskKind task = TaskKind::Translate;
  std::string prompt;
  std::string model;
  LanguageCode src = LanguageCode::En;
  LanguageCode dst = LanguageCode::En;
  std::string text;         // payload the prompt was built from
  std::string question_id;  // annotate only
};

struct TransportResponse {
  bool ok = false;
  std::string text;
  bool finished_normally = true;
  std::string error;
};

class Transport {
 public:
  virtual ~Transport() = default;
  virtual TransportResponse send(const TransportRequest& request) = 0;
};

// ---------------------------------------------------------------------------
// Prompt templates. Placeholders: {src} {dst} {text} {question}.

struct PromptTemplates {
  std::string translate =
      "Translate the following text from {src} to {dst}. "
      "Reply with the translation only.\n\n{text}";
  std::string annotate =
      "Answer the following question in {dst}. Think step by step and put the "
      "final answer in \\boxed{}.\n\nQuestion: {question}";
};

inline std::string render_template(std::string tpl,
                                   const std::vector<std::pair<std::string_view, std::string_view>>& vars) {
  for (const auto& [key, value] : vars) {
    const std::string needle = "{" + std::string(key) + "}";
    std::size_t pos = 0;
    while ((pos = tpl.find(needle, pos)) != std::string::npos) {
      tpl.replace(pos, needle.size(), value);
      pos += value.size();
    }
  }
  return tpl;
}

/// Load "<dir>/translate.txt" and "<dir>/annotate.txt"; missing files keep
/// the built-in template.
inline PromptTemplates load_prompt_templates(const std::filesystem::path& dir) {
  if (!std::filesystem::is_directory(dir)) {
    throw IoError("translator", "prompt dir '" + dir.string() + "' does not exist");
  }
  PromptTemplates tpl;
  const auto read_file = [](const std::filesystem::path& p) -> std::optional<std::string> {
    std::ifstream in(p, std::ios::binary);
    if (!in) return std::nullopt;
    std::string s((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
    while (!s.empty() && (s.back() == '\n' || s.back() == '\r')) s.pop_back();
    return s;
  };
  if (auto t = read_file(dir / "translate.txt")) tpl.translate = std::move(*t);
  if (auto t = read_file(dir / "annotate.txt")) tpl.annotate = std::move(*t);
  return tpl;
}

// ---------------------------------------------------------------------------
// Deterministic mock transport. Responses are pure functions of the request,
// so client-level behavior is reproducible and order-independent.

class MockTransport final : public Transport {
 public:
  struct Behavior {
    std::uint64_t fail_first = 0;  // fail this many sends before any succeeds
    std::function<bool(const TransportRequest&)> permanent_fail;
    std::function<bool(const TransportRequest&)> truncate;
  };

  MockTransport() = default;
  explicit MockTransport(Behavior behavior) : behavior_(std::move(behavior)) {}

  TransportResponse send(const TransportRequest& request) override {
    const std::uint64_t call = calls_.fetch_add(1) + 1;
    if (request.task == TaskKind::Translate) {
      translate_calls_.fetch_add(1);
    } else {
      annotate_calls_.fetch_add(1);
    }
    if (behavior_.permanent_fail && behavior_.permanent_fail(request)) {
      return {false, "", true, "mock: scripted permanent failure"};
    }
    if (call <= behavior_.fail_first) {
      return {false, "", true, "mock: scripted transient failure " + std::to_string(call)};
    }
    TransportResponse resp;
    resp.ok = true;
    resp.finished_normally = !(behavior_.truncate && behavior_.truncate(request));
    resp.text = request.task == TaskKind::Translate ? translation_for(request)
                                                    : annotation_for(request);
    if (!resp.finished_normally && resp.text.size() > 8) {
      resp.text.resize(resp.text.size() / 2);
    }
    return resp;
  }

  std::uint64_t calls() const noexcept { return calls_.load(); }
  std::uint64_t translate_calls() const noexcept { return translate_calls_.load(); }
  std::uint64_t annotate_calls() const noexcept { return annotate_calls_.load(); }

  /// Canned translation: a target-script sentence plus a parenthesized hash
  /// of the input so distinct inputs stay distinguishable.
  static std::string translation_for(const TransportRequest& request) {
    const std::uint64_t h = fnv1a64(request.text) ^ fnv1a64(to_code(request.dst));
    const char* pool[4] = {nullptr, nullptr, nullptr, nullptr};
    switch (request.dst) {
      case LanguageCode::Zh:
        pool[0] = "我们先计算这个数值，再检查一次结果。";
        pool[1] = "这个推理步骤需要重新核对。";
        pool[2] = "让我们换一种方法来验证答案。";
        pool[3] = "结果与前面的推导保持一致。";
        break;
      case LanguageCode::En:
        pool[0] = "Let us compute the value and check the result again.";
        pool[1] = "This reasoning step needs another verification.";
        pool[2] = "We can try a different method to confirm the answer.";
        pool[3] = "The result agrees with the earlier derivation.";
        break;
      case LanguageCode::Fr:
        pool[0] = "Nous devons calculer la valeur et vérifier encore le résultat.";
        pool[1] = "Cette étape du raisonnement doit être vérifiée de nouveau.";
        pool[2] = "Nous pouvons essayer une autre méthode pour confirmer la réponse.";
        pool[3] = "Le résultat est donc cohérent avec le calcul précédent.";
        break;
      case LanguageCode::De:
        pool[0] = "Wir müssen den Wert berechnen und das Ergebnis noch einmal prüfen.";
        pool[1] = "Dieser Schritt der Überlegung muss erneut geprüft werden.";
        pool[2] = "Wir können eine andere Methode versuchen, um die Antwort zu bestätigen.";
        pool[3] = "Das Ergebnis ist mit der früheren Rechnung konsistent.";
        break;
      case LanguageCode::Ar:
        pool[0] = "يجب أن نحسب القيمة ونتحقق من النتيجة مرة أخرى.";
        pool[1] = "هذه الخطوة من الاستدلال تحتاج إلى مراجعة.";
        pool[2] = "يمكننا تجربة طريقة أخرى لتأكيد الإجابة.";
        pool[3] = "النتيجة متسقة مع الحساب السابق.";
        break;
      case LanguageCode::He:
        pool[0] = "עלינו לחשב את הערך ולבדוק את התוצאה שוב.";
        pool[1] = "שלב זה בהיגיון דורש בדיקה נוספת.";
        pool[2] = "אפשר לנסות שיטה אחרת כדי לאשר את התשובה.";
        pool[3] = "התוצאה עקבית עם החישוב הקודם.";
        break;
      case LanguageCode::Ja:
        pool[0] = "まず値を計算して、結果をもう一度確認しましょう。";
        pool[1] = "この推論のステップは再確認が必要です。";
        pool[2] = "別の方法で答えを確かめることができます。";
        pool[3] = "結果は前の計算と一致しています。";
        break;
      case LanguageCode::Ko:
        pool[0] = "먼저 값을 계산하고 결과를 다시 확인합시다.";
        pool[1] = "이 추론 단계는 다시 검토해야 합니다.";
        pool[2] = "다른 방법으로 답을 확인할 수 있습니다.";
        pool[3] = "결과는 이전 계산과 일치합니다.";
        break;
      case LanguageCode::Ru:
        pool[0] = "Сначала вычислим значение и ещё раз проверим результат.";
        pool[1] = "Этот шаг рассуждения требует повторной проверки.";
        pool[2] = "Можно попробовать другой способ, чтобы подтвердить ответ.";
        pool[3] = "Результат согласуется с предыдущим вычислением.";
        break;
      case LanguageCode::Unknown:
        return request.text;
    }
    char suffix[16];
    std::snprintf(suffix, sizeof(suffix), " (%04x)", static_cast<unsigned>(h & 0xFFFF));
    return std::string(pool[h % 4]) + suffix;
  }

  /// Canned chain-of-thought: target-language body sentences with English
  /// reflection cues, ending in a \boxed answer derived from the question id.
  static std::string annotation_for(const TransportRequest& request) {
    const std::uint64_t answer = fnv1a64(request.question_id) % 100;
    const std::string boxed = "\\boxed{" + std::to_string(answer) + "}";
    switch (request.dst) {
      case LanguageCode::Zh:
        return "我们需要解决这个问题。首先计算所有给定的数值。Wait, "
               "我们应该再核对一遍中间步骤。Hmm, 推导看起来是正确的。Actually, "
               "这个结果可以进一步化简。所以最终答案是 " + boxed + "。";
      case LanguageCode::Fr:
        return "Nous devons résoudre ce problème. D'abord nous calculons toutes les "
               "valeurs données. Wait, nous devons vérifier encore les étapes "
               "intermédiaires. Hmm, la dérivation est correcte. Actually, le résultat "
               "se simplifie. La réponse finale est donc " + boxed + ".";
      case LanguageCode::De:
        return "Wir müssen dieses Problem lösen. Zuerst berechnen wir alle gegebenen "
               "Werte. Wait, wir sollten die Zwischenschritte noch einmal prüfen. Hmm, "
               "die Herleitung ist korrekt. Actually, das Ergebnis lässt sich "
               "vereinfachen. Die endgültige Antwort ist " + boxed + ".";
      case LanguageCode::Ar:
        return "يجب أن نحل هذه المسألة. أولاً نحسب جميع القيم المعطاة. Wait, "
               "ينبغي أن نراجع الخطوات الوسيطة مرة أخرى. Hmm, الاشتقاق صحيح. Actually, "
               "يمكن تبسيط النتيجة. الإجابة النهائية هي " + boxed + ".";
      case LanguageCode::He:
        return "עלינו לפתור את הבעיה הזו. תחילה נחשב את כל הערכים הנתונים. Wait, "
               "כדאי לבדוק שוב את שלבי הביניים. Hmm, הגזירה נכונה. Actually, "
               "אפשר לפשט את התוצאה. התשובה הסופית היא " + boxed + ".";
      case LanguageCode::Ja:
        return "この問題を解く必要があります。まず与えられた値をすべて計算します。Wait, "
               "途中のステップをもう一度確認すべきです。Hmm, 導出は正しいようです。Actually, "
               "この結果はさらに簡単になります。したがって最終的な答えは " + boxed + " です。";
      case LanguageCode::Ko:
        return "우리는 이 문제를 풀어야 합니다. 먼저 주어진 값을 모두 계산합니다. Wait, "
               "중간 단계를 다시 확인해야 합니다. Hmm, 유도 과정은 정확합니다. Actually, "
               "이 결과는 더 단순해집니다. 따라서 최종 답은 " + boxed + " 입니다.";
      case LanguageCode::Ru:
        return "Нам нужно решить эту задачу. Сначала вычислим все данные значения. Wait, "
               "стоит ещё раз проверить промежуточные шаги. Hmm, вывод верен. Actually, "
               "результат упрощается. Поэтому окончательный ответ " + boxed + ".";
      case LanguageCode::En:
      case LanguageCode::Unknown:
        return "We need to solve this problem. First we compute all the given values. "
               "Wait, we should check the intermediate steps again. Hmm, the derivation "
               "looks correct. Actually, the result simplifies further. Therefore the "
               "final answer is " + boxed + ".";
    }
    return boxed;
  }

 private:
  Behavior behavior_;
  std::atomic<std::uint64_t> calls_{0};
  std::atomic<std::uint64_t> translate_calls_{0};
  std::atomic<std::uint64_t> annotate_calls_{0};
};

// ---------------------------------------------------------------------------
// Token-bucket rate limiter: capacity and refill are both requests_per_minute.

class RateLimiter {
 public:
  explicit RateLimiter(std::uint32_t requests_per_minute)
      : rpm_(requests_per_minute),
        tokens_(static_cast<double>(requests_per_minute)),
        last_(Clock::now()) {}

  void acquire() {
    std::unique_lock<std::mutex> lock(mutex_);
    for (;;) {
      refill();
      if (tokens_ >= 1.0) {
        tokens_ -= 1.0;
        return;
      }
      const double deficit = 1.0 - tokens_;
      const double wait_s = deficit * 60.0 / static_cast<double>(rpm_);
      lock.unlock();
      std::this_thread::sleep_for(std::chrono::duration<double>(wait_s));
      lock.lock();
    }
  }

 private:
  using Clock = std::chrono::steady_clock;

  void refill() {
    const auto now = Clock::now();
    const double elapsed = std::chrono::duration<double>(now - last_).count();
    last_ = now;
    tokens_ = std::min(static_cast<double>(rpm_),
                       tokens_ + elapsed * static_cast<double>(rpm_) / 60.0);
  }

  std::uint32_t rpm_;
  double tokens_;
  Clock::time_point last_;
  std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// On-disk response cache: one file per request under cache_dir, named by a
// 128-bit content hash. The file stores the full key fields; a read whose key
// fields do not match is treated as a miss, so hash collisions cannot serve
// a wrong response.

class ResponseCache {
 public:
  explicit ResponseCache(std::filesystem::path dir) : dir_(std::move(dir)) {
    std::error_code ec;
    std::filesystem::create_directories(dir_, ec);
    if (ec) {
      throw IoError("translator", "cannot create cache dir '" + dir_.string() + "'");
    }
  }

  struct Key {
    std::string task;
    std::string text;
    std::string src;
    std::string dst;
    std::string model;
  };

  std::optional<std::string> get(const Key& key) const {
    const auto path = entry_path(key);
    std::lock_guard<std::mutex> lock(mutex_);
    std::ifstream in(path, std::ios::binary);
    if (!in) return std::nullopt;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(in);
    } catch (const nlohmann::json::exception&) {
      return std::nullopt;
    }
    if (!j.is_object() || j.value("task", "") != key.task ||
        j.value("text", "") != key.text || j.value("src", "") != key.src ||
        j.value("dst", "") != key.dst || j.value("model", "") != key.model) {
      return std::nullopt;
    }
    const auto it = j.find("response");
    if (it == j.end() || !it->is_string()) return std::nullopt;
    return it->get<std::string>();
  }

  void put(const Key& key, const std::string& response) const {
    const nlohmann::json j{{"task", key.task}, {"text", key.text}, {"src", key.src},
                           {"dst", key.dst},   {"model", key.model}, {"response", response}};
    const auto path = entry_path(key);
    const auto tmp = path.string() + ".tmp";
    std::lock_guard<std::mutex> lock(mutex_);
    {
      std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
      if (!out) {
        throw IoError("translator", "cannot write cache entry '" + tmp + "'");
      }
      out << j.dump();
    }
    std::error_code ec;
    std::filesystem::rename(tmp, path, ec);
    if (ec) {
      throw IoError("translator", "cannot finalize cache entry '" + path.string() + "'");
    }
  }

 private:
  std::filesystem::path entry_path(const Key& key) const {
    std::string blob = key.task;
    blob += '\x1f';
    blob += key.text;
    blob += '\x1f';
    blob += key.src;
    blob += '\x1f';
    blob += key.dst;
    blob += '\x1f';
    blob += key.model;
    const std::uint64_t h1 = fnv1a64(blob);
    const std::uint64_t h2 = fnv1a64(blob) ^ splitmix64_mix(h1);
    char name[40];
    std::snprintf(name, sizeof(name), "%016llx%016llx.json",
                  static_cast<unsigned long long>(h1), static_cast<unsigned long long>(h2));
    return dir_ / name;
  }

  static constexpr std::uint64_t splitmix64_mix(std::uint64_t x) noexcept {
    std::uint64_t s = x;
    return splitmix64_next(s);
  }

  std::filesystem::path dir_;
  mutable std::mutex mutex_;
};

// ---------------------------------------------------------------------------
// Generation client.

struct ItemResult {
  std::size_t question_index = 0;
  std::size_t language_index = 0;
  std::optional<corpus::CoTTrace> trace;
  std::string error;       // empty on success
  std::uint32_t attempts = 0;
};

struct BatchReport {
  std::vector<ItemResult> items;  // fixed (question-major, language-minor) order

  std::size_t ok_count() const noexcept {
    std::size_t n = 0;
    for (const auto& item : items) {
      if (item.trace) ++n;
    }
    return n;
  }
  std::size_t failed_count() const noexcept { return items.size() - ok_count(); }
};

class GenClient {
 public:
  GenClient(GenClientConfig cfg, std::shared_ptr<Transport> transport,
            PromptTemplates templates = {},
            segmenter::CueLexicon lexicon = segmenter::default_cue_lexicon())
      : cfg_(std::move(cfg)),
        transport_(std::move(transport)),
        templates_(std::move(templates)),
        lexicon_(std::move(lexicon)),
        limiter_(cfg_.requests_per_minute) {
    validate_config(cfg_);
    if (!transport_) {
      throw ArgumentError("translator", "transport must be non-null");
    }
    if (cfg_.cache_dir) cache_.emplace(*cfg_.cache_dir);
  }

  const GenClientConfig& config() const noexcept { return cfg_; }
  const segmenter::CueLexicon& lexicon() const noexcept { return lexicon_; }

  /// Translate text, serving repeats from the response cache. The cache key
  /// is (text, src, dst, model); a hit answers without touching the network.
  std::string translate_text(const std::string& text, LanguageCode src, LanguageCode dst) {
    if (src == dst) {
      throw ArgumentError("translator", "translation source and destination are both '" +
                                            std::string(to_code(src)) + "'");
    }
    const ResponseCache::Key key{"translate", text, std::string(to_code(src)),
                                 std::string(to_code(dst)), cfg_.model_name};
    if (cache_) {
      if (auto hit = cache_->get(key)) return *hit;
    }
    TransportRequest request;
    request.task = TaskKind::Translate;
    request.model = cfg_.model_name;
    request.src = src;
    request.dst = dst;
    request.text = text;
    request.prompt = render_template(templates_.translate,
                                     {{"src", to_code(src)}, {"dst", to_code(dst)}, {"text", text}});
    const TransportResponse resp = send_with_retry(request).first;
    if (cache_) cache_->put(key, resp.text);
    return resp.text;
  }

  /// Request a chain-of-thought for the question in target_lang and segment
  /// it. lang records the requested language; the identified dominant
  /// language is logged when it disagrees, never enforced.
  corpus::CoTTrace annotate_cot(const corpus::Question& question, LanguageCode target_lang) {
    auto [trace, attempts] = annotate_with_attempts(question, target_lang);
    (void)attempts;
    return trace;
  }

  std::pair<corpus::CoTTrace, std::uint32_t> annotate_with_attempts(
      const corpus::Question& question, LanguageCode target_lang) {
    if (question.text.empty()) {
      throw ArgumentError("translator", "question text must be non-empty");
    }
    TransportRequest request;
    request.task = TaskKind::Annotate;
    request.model = cfg_.model_name;
    request.src = question.lang;
    request.dst = target_lang;
    request.text = question.text;
    request.question_id = question.id;
    request.prompt = render_template(
        templates_.annotate,
        {{"dst", to_code(target_lang)}, {"question", question.text}});

    const ResponseCache::Key key{"annotate", question.id + "\x1f" + question.text,
                                 std::string(to_code(question.lang)),
                                 std::string(to_code(target_lang)), cfg_.model_name};
    std::optional<std::string> cached;
    if (cache_) cached = cache_->get(key);

    std::string raw;
    bool finished = true;
    std::uint32_t attempts = 0;
    if (cached) {
      raw = *cached;
    } else {
      const auto [resp, n] = send_with_retry(request);
      raw = resp.text;
      finished = resp.finished_normally;
      attempts = n;
      // Only naturally finished responses are cacheable: the cache stores
      // text alone, and a truncated response must not later read as normal.
      if (cache_ && finished) cache_->put(key, raw);
    }

    corpus::CoTTrace trace;
    trace.question_id = question.id;
    trace.lang = target_lang;
    trace.raw_text = raw;
    trace.segments = segmenter::segment_cot(raw, lexicon_);
    trace.token_count = whitespace_token_count(raw);
    trace.stopped_normally = finished;

    const LanguageCode dominant = langid::text_language_profile(raw).dominant;
    if (dominant != target_lang) {
      log::warn("annotate_language_mismatch",
                {log::field("question", question.id),
                 log::field("requested", std::string(to_code(target_lang))),
                 log::field("identified", std::string(to_code(dominant)))});
    }
    return {std::move(trace), attempts};
  }

  /// Annotate the full (question x language) grid. Output order is fixed
  /// (question-major, language-minor) regardless of parallelism or
  /// completion timing; failures are collected per item, never aborting
  /// the batch.
  BatchReport batch_annotate(const std::vector<corpus::Question>& questions,
                             const std::vector<LanguageCode>& languages,
                             std::uint32_t parallelism = 1) {
    if (parallelism == 0) {
      throw ArgumentError("translator", "parallelism must be >= 1");
    }
    BatchReport report;
    report.items.resize(questions.size() * languages.size());
    for (std::size_t qi = 0; qi < questions.size(); ++qi) {
      for (std::size_t li = 0; li < languages.size(); ++li) {
        auto& item = report.items[qi * languages.size() + li];
        item.question_index = qi;
        item.language_index = li;
      }
    }

    std::atomic<std::size_t> next{0};
    const auto worker = [&] {
      for (;;) {
        const std::size_t idx = next.fetch_add(1);
        if (idx >= report.items.size()) return;
        ItemResult& item = report.items[idx];
        const corpus::Question& q = questions[item.question_index];
        const LanguageCode lang = languages[item.language_index];
        try {
          auto [trace, attempts] = annotate_with_attempts(q, lang);
          item.trace = std::move(trace);
          item.attempts = attempts;
        } catch (const TransportError& e) {
          item.error = e.what();
          item.attempts = static_cast<std::uint32_t>(e.attempts().size());
        } catch (const Error& e) {
          item.error = e.what();
        }
      }
    };

    const std::uint32_t n_threads =
        static_cast<std::uint32_t>(std::min<std::size_t>(parallelism, report.items.size()));
    if (n_threads <= 1) {
      worker();
    } else {
      std::vector<std::thread> threads;
      threads.reserve(n_threads);
      for (std::uint32_t t = 0; t < n_threads; ++t) threads.emplace_back(worker);
      for (auto& t : threads) t.join();
    }
    return report;
  }

  static std::uint64_t whitespace_token_count(std::string_view text) {
    std::uint64_t count = 0;
    bool in_token = false;
    for (char32_t cp : utf8_decode(text).scalars) {
      if (is_whitespace(cp)) {
        in_token = false;
      } else if (!in_token) {
        in_token = true;
        ++count;
      }
    }
    return count;
  }

 private:
  /// At most max_retries + 1 attempts with linear backoff; throws
  /// TransportError carrying the per-attempt error log on exhaustion.
  std::pair<TransportResponse, std::uint32_t> send_with_retry(const TransportRequest& request) {
    std::vector<std::string> attempt_log;
    const std::uint32_t max_attempts = cfg_.max_retries + 1;
    for (std::uint32_t attempt = 1; attempt <= max_attempts; ++attempt) {
      limiter_.acquire();
      TransportResponse resp = transport_->send(request);
      if (resp.ok) {
        return {std::move(resp), attempt};
      }
      attempt_log.push_back("attempt " + std::to_string(attempt) + ": " + resp.error);
      log::warn("transport_attempt_failed",
                {log::field("task", task_name(request.task)),
                 log::field("attempt", attempt),
                 log::field("error", resp.error)});
      if (attempt < max_attempts && cfg_.retry_backoff_ms > 0) {
        std::this_thread::sleep_for(std::chrono::milliseconds(
            static_cast<std::uint64_t>(cfg_.retry_backoff_ms) * attempt));
      }
    }
    throw TransportError("translator",
                         "request failed after " + std::to_string(max_attempts) + " attempts",
                         std::move(attempt_log));
  }

  GenClientConfig cfg_;
  std::shared_ptr<Transport> transport_;
  PromptTemplates templates_;
  segmenter::CueLexicon lexicon_;
  RateLimiter limiter_;
  std::optional<ResponseCache> cache_;
};

}  // namespace l2::translator
