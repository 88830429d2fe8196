// Acceptance checks for the full toolkit: each test case is one numbered
// criterion and a registered listener prints exactly one PASS/FAIL line per
// criterion, so a run reads as a ten-line scorecard. Tolerances and budgets
// are pinned here as code.

#include <doctest.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdint>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "l2/l2.hpp"

using namespace l2;

namespace {

// Expected warn-level events (mock annotations, incomparable answers) would
// drown the ten-line scorecard; only genuine errors may interleave.
const bool kQuietLogs = [] {
  log::set_threshold(log::Level::Error);
  return true;
}();

// Prints "criterion N (name): PASS|FAIL" after each criterion test case.
struct CriterionReporter : public doctest::IReporter {
  const doctest::TestCaseData* current = nullptr;

  explicit CriterionReporter(const doctest::ContextOptions&) {}

  void test_case_start(const doctest::TestCaseData& in) override { current = &in; }
  void test_case_end(const doctest::CurrentTestCaseStats& st) override {
    if (current == nullptr) return;
    std::cout << current->m_name << ": " << (st.testCaseSuccess ? "PASS" : "FAIL")
              << std::endl;
    current = nullptr;
  }

  void report_query(const doctest::QueryData&) override {}
  void test_run_start() override {}
  void test_run_end(const doctest::TestRunStats&) override {}
  void test_case_reenter(const doctest::TestCaseData&) override {}
  void test_case_exception(const doctest::TestCaseException&) override {}
  void subcase_start(const doctest::SubcaseSignature&) override {}
  void subcase_end() override {}
  void log_assert(const doctest::AssertData&) override {}
  void log_message(const doctest::MessageData&) override {}
  void test_case_skipped(const doctest::TestCaseData&) override {}
};

REGISTER_LISTENER("criteria", 1, CriterionReporter);

class Stopwatch {
 public:
  double seconds() const {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
  }

 private:
  std::chrono::steady_clock::time_point start_ = std::chrono::steady_clock::now();
};

class CountingRng final : public UniformSource {
 public:
  explicit CountingRng(std::uint64_t seed) : inner_(seed) {}
  double next_u01() override {
    ++draws_;
    return inner_.next_u01();
  }
  std::uint64_t draws() const noexcept { return draws_; }

 private:
  SeededRng inner_;
  std::uint64_t draws_ = 0;
};

translator::GenClientConfig fast_config() {
  translator::GenClientConfig cfg;
  cfg.retry_backoff_ms = 0;
  cfg.requests_per_minute = 1000000;
  return cfg;
}

translator::GenClient mock_client() {
  return translator::GenClient(fast_config(), std::make_shared<translator::MockTransport>());
}

corpus::Question make_question(const std::string& id, const std::string& text) {
  corpus::Question q;
  q.id = id;
  q.topic = "Math";
  q.text = text;
  q.lang = LanguageCode::En;
  q.source = corpus::QuestionSource::O1Site;
  return q;
}

std::filesystem::path temp_dir(const std::string& leaf) {
  const auto dir = std::filesystem::temp_directory_path() / ("l2_acceptance_" + leaf);
  std::filesystem::remove_all(dir);
  std::filesystem::create_directories(dir);
  return dir;
}

std::string read_file(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(static_cast<bool>(in), "missing file ", path.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

std::vector<std::pair<std::string, std::string>> load_tsv(const std::filesystem::path& path) {
  std::ifstream in(path, std::ios::binary);
  REQUIRE_MESSAGE(static_cast<bool>(in), "fixture missing: ", path.string());
  std::vector<std::pair<std::string, std::string>> rows;
  std::string line;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty() || line[0] == '#') continue;
    const std::size_t tab = line.find('\t');
    REQUIRE(tab != std::string::npos);
    rows.emplace_back(line.substr(0, tab), line.substr(tab + 1));
  }
  return rows;
}

// Counts (rather than asserts) partition and cue-soundness violations so
// high-volume loops report one aggregate check.
std::size_t roundtrip_violations(const std::string& text,
                                 const std::vector<corpus::Segment>& segments) {
  std::size_t bad = 0;
  const std::size_t n = utf8_decode(text).scalars.size();
  if (n == 0) return segments.empty() ? 0 : 1;
  if (segments.empty()) return 1;
  if (segments.front().char_span.start != 0) ++bad;
  if (segments.back().char_span.end != n) ++bad;
  std::string joined;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    if (segments[i].char_span.start >= segments[i].char_span.end) ++bad;
    if (i > 0 && segments[i].char_span.start != segments[i - 1].char_span.end) ++bad;
    joined += segments[i].text;
  }
  if (joined != text) ++bad;
  if (segmenter::reassemble(segments) != text) ++bad;
  for (const corpus::Segment& seg : segments) {
    if (!seg.cue.has_value()) {
      if (seg.is_reflection) ++bad;
      continue;
    }
    if (!seg.is_reflection) ++bad;
    const std::size_t head = seg.text.find_first_not_of(" \t\n\r");
    if (head == std::string::npos || seg.text.compare(head, seg.cue->size(), *seg.cue) != 0) {
      ++bad;
    }
  }
  return bad;
}

int run_cli(const std::string& args, const std::filesystem::path& log) {
  const std::string cmd =
      std::string("\"") + L2_CLI_PATH + "\" " + args + " >> \"" + log.string() + "\" 2>&1";
  return std::system(cmd.c_str());
}

}  // namespace

TEST_CASE("criterion 1 (intervention exactness)") {
  Stopwatch clock;
  const std::vector<double> alphas = {0.0, 0.5, 1.0};
  const std::vector<double> betas = {0.0, 2.0, 5.0};
  const std::vector<std::uint32_t> ks = {2, 4, 6};
  std::size_t violations = 0;
  std::size_t cells = 0;

  for (std::uint32_t rank : {1u, 3u, 5u}) {
    intervene::MockBackend::Config mc;
    mc.rank_lang = LanguageCode::Zh;
    mc.lang_rank = rank;
    intervene::MockBackend backend(mc);
    const std::vector<std::uint32_t> lang_ids = backend.lang_token_ids(LanguageCode::Zh);
    REQUIRE(lang_ids == std::vector<std::uint32_t>{1});
    const intervene::LogitVector base = backend.next_logits(backend.encode("check the grid"));

    for (double alpha : alphas) {
      for (double beta : betas) {
        for (std::uint32_t k : ks) {
          ++cells;
          intervene::InterventionConfig cfg;
          cfg.alpha = alpha;
          cfg.beta = beta;
          cfg.top_k = k;
          cfg.target_lang = LanguageCode::Zh;
          cfg.lang_token_ids = lang_ids;
          CountingRng rng(777);
          const intervene::AdjustOutcome out = intervene::adjust_logits(base, cfg, rng);

          const auto top = intervene::top_k_ids(base, k);
          const bool inside = std::find(top.begin(), top.end(), 1u) != top.end();
          if (inside != (rank <= k)) ++violations;  // pinning places the token exactly
          if (!inside) {
            if (rng.draws() != 0) ++violations;
            if (!out.events.empty()) ++violations;
            if (out.logits != base) ++violations;
            continue;
          }
          if (rng.draws() != 1) ++violations;
          if (out.events.size() != 1) ++violations;
          const bool boost = out.events.empty() ? false : out.events[0].boost;
          if (alpha == 0.0 && boost) ++violations;
          if (alpha == 1.0 && !boost) ++violations;
          for (std::size_t id = 0; id < base.size(); ++id) {
            const double expected =
                id == 1u ? base[id] + (boost ? beta : -beta) : base[id];
            if (out.logits[id] != expected) ++violations;  // exact, not approximate
          }
        }
      }
    }
  }
  CHECK(cells == 81);
  CHECK(violations == 0);
  CHECK(clock.seconds() < 1.0);
}

TEST_CASE("criterion 2 (boost rate statistics)") {
  Stopwatch clock;
  intervene::MockBackend::Config mc;
  mc.rank_lang = LanguageCode::Zh;
  mc.lang_rank = 1;
  intervene::MockBackend backend(mc);
  const intervene::LogitVector base = backend.next_logits(backend.encode("rate check"));

  // Three-sigma binomial bounds at n = 10,000 draws.
  const std::vector<std::pair<double, double>> grid = {
      {0.5, 0.015}, {0.1, 0.009}, {0.9, 0.009}};
  for (const auto& [alpha, bound] : grid) {
    intervene::InterventionConfig cfg;
    cfg.alpha = alpha;
    cfg.beta = 1.0;
    cfg.top_k = 4;
    cfg.target_lang = LanguageCode::Zh;
    cfg.lang_token_ids = backend.lang_token_ids(LanguageCode::Zh);
    SeededRng rng(2024);
    const std::size_t n = 10000;
    std::size_t boosts = 0;
    std::size_t events = 0;
    for (std::size_t i = 0; i < n; ++i) {
      const auto out = intervene::adjust_logits(base, cfg, rng);
      events += out.events.size();
      if (!out.events.empty() && out.events[0].boost) ++boosts;
    }
    CHECK(events == n);
    const double rate = static_cast<double>(boosts) / static_cast<double>(n);
    CHECK_MESSAGE(std::abs(rate - alpha) <= bound, "alpha ", alpha, " rate ", rate);
  }
  CHECK(clock.seconds() < 5.0);
}

TEST_CASE("criterion 3 (segmentation round trip)") {
  Stopwatch clock;
  const std::vector<std::string> words = {
      "compute", "the", "result", "x", "carefully.", "fin",
      "\xE7\xAD\x89\xE7\xAD\x89", "\xE5\x86\x8D", "\xE4\xB8\x80\xE6\xAC\xA1",
      "\xE7\xAD\x94\xE3\x81\x88", "\xD0\x9E\xD1\x82\xD0\xB2\xD0\xB5\xD1\x82", "42",
  };
  const std::vector<std::string> cues = {"Wait", "Hmm", "Alternatively",
                                         "But wait", "Let me double-check", "Actually"};
  const std::vector<std::string> seps = {" ", " ", " ", "\n", "  ", "\t"};
  std::mt19937 gen(424242);
  std::size_t violations = 0;
  for (std::size_t iter = 0; iter < 10000; ++iter) {
    std::string text;
    const std::size_t tokens = 1 + gen() % 30;
    for (std::size_t t = 0; t < tokens; ++t) {
      if (t > 0) text += seps[gen() % seps.size()];
      if (gen() % 100 < 15) {
        text += cues[gen() % cues.size()];
      } else {
        text += words[gen() % words.size()];
      }
    }
    violations += roundtrip_violations(text, segmenter::segment_cot(text));
  }
  CHECK(violations == 0);
  CHECK(clock.seconds() < 10.0);
}

TEST_CASE("criterion 4 (mixture rate concentration)") {
  Stopwatch clock;
  std::string text = "Start here.";
  for (std::size_t i = 0; i < 10000; ++i) {
    text += " Wait check " + std::to_string(i) + ".";
  }
  corpus::CoTTrace trace;
  trace.question_id = "m1";
  trace.lang = LanguageCode::En;
  trace.raw_text = text;
  trace.segments = segmenter::segment_cot(text);
  REQUIRE(trace.segments.size() == 10001);

  corpus::DatasetSpec spec;
  spec.source = corpus::QuestionSource::O1Site;
  spec.n_questions = 1;
  spec.languages = {LanguageCode::En, LanguageCode::Zh};
  spec.mixture_prob = 0.5;
  spec.seed = 7;
  auto client = mock_client();
  const corpus::AugmentedSample sample = augmenter::build_step_mixture(
      spec, make_question("m1", "mix question"), trace, LanguageCode::Zh, 0.5, 7, client);
  const auto prov = corpus::parse_provenance(sample.provenance);
  REQUIRE(prov.has_value());
  REQUIRE(prov->translated.has_value());
  const double fraction = static_cast<double>(*prov->translated) / 10000.0;
  CHECK_MESSAGE(std::abs(fraction - 0.5) <= 0.03, "translated fraction ", fraction);

  // Shared per-segment draws nest the selections as p grows.
  const std::vector<double> ps = {0.1, 0.3, 0.5, 0.9};
  std::vector<std::vector<bool>> picks;
  for (double p : ps) picks.push_back(augmenter::select_mixture_segments(trace, p, 7));
  std::size_t nesting_breaks = 0;
  for (std::size_t level = 0; level + 1 < picks.size(); ++level) {
    for (std::size_t i = 0; i < trace.segments.size(); ++i) {
      if (picks[level][i] && !picks[level + 1][i]) ++nesting_breaks;
    }
  }
  CHECK(nesting_breaks == 0);
  CHECK(clock.seconds() < 10.0);
}

TEST_CASE("criterion 5 (corpus cardinality)") {
  std::vector<corpus::Question> questions;
  for (char c : {'a', 'b', 'c', 'd', 'e', 'f'}) {
    questions.push_back(make_question(std::string("q") + c,
                                      std::string("question about ") + c));
  }
  auto client = mock_client();

  const std::vector<std::vector<LanguageCode>> language_sets = {
      {LanguageCode::En},
      {LanguageCode::En, LanguageCode::Zh, LanguageCode::Fr, LanguageCode::De},
      std::vector<LanguageCode>(kRealLanguages.begin(), kRealLanguages.end()),
  };
  const std::vector<std::size_t> expected_counts = {6, 24, 54};
  const std::vector<std::string> expected_names = {"L2-M{o1_6^1}", "L2-M{o1_6^4}",
                                                   "L2-M{o1_6^9}"};
  for (std::size_t i = 0; i < language_sets.size(); ++i) {
    corpus::DatasetSpec spec;
    spec.source = corpus::QuestionSource::O1Site;
    spec.n_questions = questions.size();
    spec.languages = language_sets[i];
    spec.mixture_prob = 0.3;
    spec.seed = 42;
    CHECK(corpus::derive_name(spec) == expected_names[i]);
    const auto samples = augmenter::build_solution_level(spec, questions, client, 4);
    CHECK(samples.size() == expected_counts[i]);
    for (const auto& s : samples) {
      if (s.provenance.rfind(expected_names[i] + ";seed=42", 0) != 0) {
        FAIL_CHECK("bad provenance: ", s.provenance);
        break;
      }
    }
  }
}

TEST_CASE("criterion 6 (boundary token validity)") {
  Stopwatch clock;
  auto client = mock_client();
  std::size_t structural_errors = 0;
  corpus::DatasetSpec spec;
  spec.source = corpus::QuestionSource::O1Site;
  spec.n_questions = 1;
  spec.languages = {LanguageCode::En, LanguageCode::Zh};
  spec.mixture_prob = 0.5;

  for (std::size_t i = 0; i < 1000; ++i) {
    const corpus::Question q =
        make_question("q" + std::to_string(i), "prove statement " + std::to_string(i));
    const corpus::CoTTrace trace = client.annotate_cot(q, LanguageCode::En);
    spec.seed = i;
    const corpus::AugmentedSample sample =
        augmenter::build_step_mixture(spec, q, trace, LanguageCode::Zh, 0.5, i, client);
    for (const auto& v : augmenter::validate_mixture(sample)) {
      if (v.severity == augmenter::Severity::Error) ++structural_errors;
    }
  }
  CHECK(structural_errors == 0);

  // Corrupted-tag fuzzing: every mutated sample must be flagged.
  const corpus::Question q = make_question("fuzz", "prove the base statement");
  const corpus::CoTTrace trace = client.annotate_cot(q, LanguageCode::En);
  spec.seed = 99;
  spec.mixture_prob = 1.0;
  const corpus::AugmentedSample base =
      augmenter::build_step_mixture(spec, q, trace, LanguageCode::Zh, 1.0, 99, client);
  const auto tags = corpus::scan_boundary_tokens(base.serialized_cot);
  std::vector<corpus::BoundaryToken> opens;
  std::vector<corpus::BoundaryToken> closes;
  for (const auto& t : tags) (t.closing ? closes : opens).push_back(t);
  REQUIRE(opens.size() >= 2);
  REQUIRE(closes.size() >= 2);

  std::size_t flagged = 0;
  for (std::size_t m = 0; m < 100; ++m) {
    corpus::AugmentedSample mutated = base;
    std::string& text = mutated.serialized_cot;
    const std::size_t pick = m / 5;
    switch (m % 5) {
      case 0: {  // drop a closing tag
        const auto& t = closes[pick % closes.size()];
        text.erase(t.byte_pos, t.byte_len);
        break;
      }
      case 1: {  // close with the wrong language
        const auto& t = closes[pick % closes.size()];
        text.replace(t.byte_pos, t.byte_len, "<|/lang:ja|>");
        break;
      }
      case 2: {  // stray closing tag
        const auto& t = tags[pick % tags.size()];
        text.insert(t.byte_pos, "<|/lang:zh|>");
        break;
      }
      case 3: {  // nested opening tag
        const auto& t = opens[pick % opens.size()];
        text.insert(t.byte_pos + t.byte_len, "<|lang:ru|>");
        break;
      }
      default: {  // unknown language code
        const auto& t = opens[pick % opens.size()];
        text.replace(t.byte_pos, t.byte_len, "<|lang:qq|>");
        break;
      }
    }
    bool has_error = false;
    for (const auto& v : augmenter::validate_mixture(mutated)) {
      if (v.severity == augmenter::Severity::Error) has_error = true;
    }
    if (has_error) ++flagged;
  }
  CHECK(flagged == 100);
  CHECK(clock.seconds() < 30.0);
}

TEST_CASE("criterion 7 (language identification)") {
  const auto script_rows = load_tsv(L2_FIXTURES_DIR "/script_samples.tsv");
  REQUIRE(script_rows.size() == 5000);
  std::size_t script_mismatches = 0;
  for (const auto& [hex, name] : script_rows) {
    const char32_t cp = static_cast<char32_t>(std::stoul(hex, nullptr, 16));
    const auto expected = script_from_name(name);
    REQUIRE(expected.has_value());
    if (classify_char(cp) != *expected) ++script_mismatches;
  }
  CHECK(script_mismatches == 0);

  const auto sentences = load_tsv(L2_FIXTURES_DIR "/sentences_9lang.tsv");
  REQUIRE(sentences.size() == 100);
  std::size_t correct = 0;
  for (const auto& [code, sentence] : sentences) {
    const auto expected = language_from_code(code);
    REQUIRE(expected.has_value());
    if (langid::classify_span(sentence).lang == *expected) ++correct;
  }
  CHECK(correct >= 95);
}

TEST_CASE("criterion 8 (answer scoring oracle)") {
  std::ifstream in(std::filesystem::path(L2_FIXTURES_DIR) / "answer_cases.tsv");
  REQUIRE(static_cast<bool>(in));
  std::string line;
  std::size_t rows = 0;
  std::size_t disagreements = 0;
  while (std::getline(in, line)) {
    if (line.empty() || line[0] == '#') continue;
    std::vector<std::string> fields;
    std::size_t start = 0;
    for (std::size_t tab = line.find('\t'); tab != std::string::npos;
         tab = line.find('\t', start)) {
      fields.push_back(line.substr(start, tab - start));
      start = tab + 1;
    }
    fields.push_back(line.substr(start));
    REQUIRE(fields.size() == 4);
    const auto kind = evalharness::answer_kind_from_name(fields[0]);
    REQUIRE(kind.has_value());
    evalharness::GoldItem g;
    g.id = "case";
    g.dataset = "custom";
    g.gold_answer = fields[1];
    g.answer_kind = *kind;
    const bool expected = fields[3] == "1";
    if (evalharness::answer_correct(fields[2], g) != expected) {
      ++disagreements;
      MESSAGE("disagreement: ", line);
    }
    ++rows;
  }
  CHECK(rows == 50);
  CHECK(disagreements == 0);
}

TEST_CASE("criterion 9 (metrics exactness)") {
  const auto scored = [](const std::string& id, const std::string& text,
                         const std::string& stop) {
    evalharness::ScoredInput in;
    in.id = id;
    in.language = "en";
    in.text = text;
    in.stop_reason = stop;
    return in;
  };
  const std::vector<evalharness::ScoredInput> records = {
      scored("t1", "We check the result again. \\boxed{4}", "eos"),
      scored("t2",
             "\xE7\xAD\x89\xE7\xAD\x89 \xE6\x88\x91\xE4\xBB\xAC \xE5\x86\x8D "
             "\xE7\xAE\x97 \xE4\xB8\x80\xE6\xAC\xA1 Wait yes \\boxed{7}",
             "max_tokens"),
      scored("t3",
             "\xD0\x9E\xD1\x82\xD0\xB2\xD0\xB5\xD1\x82 "
             "\xD1\x80\xD0\xB0\xD0\xB2\xD0\xB5\xD0\xBD 42 . \\boxed{42}",
             "eos"),
      scored("t4",
             "123 \xE6\xAC\xA1\xE3\x81\xAB \xE7\xAD\x94\xE3\x81\x88 "
             "\xE3\x81\xAF \\boxed{9}",
             "eos"),
      scored("t5",
             "\xD7\x94\xD7\xAA\xD7\xA9\xD7\x95\xD7\x91\xD7\x94 "
             "\xD7\x94\xD7\x99\xD7\x90 10 "
             "\xD9\x88\xD8\xA7\xD9\x84\xD8\xAC\xD9\x88\xD8\xA7\xD8\xA8 "
             "\xD8\xB9\xD8\xB4\xD8\xB1\xD8\xA9",
             "eos"),
  };
  std::vector<evalharness::GoldItem> gold;
  const auto add_gold = [&](const std::string& id, const std::string& answer) {
    evalharness::GoldItem g;
    g.id = id;
    g.dataset = "custom";
    g.gold_answer = answer;
    g.answer_kind = evalharness::AnswerKind::Integer;
    gold.push_back(g);
  };
  add_gold("t1", "4");
  add_gold("t2", "7");
  add_gold("t3", "42");
  add_gold("t4", "8");
  add_gold("t5", "10");

  const evalharness::EvalResult r = evalharness::score(records, gold);
  CHECK(r.n_items == 5);
  CHECK(r.n_correct == 4);
  CHECK(r.n_normal_stops == 4);
  CHECK(r.total_tokens == 29);
  const std::map<LanguageCode, std::uint64_t> expected_tokens = {
      {LanguageCode::En, 11}, {LanguageCode::Zh, 5}, {LanguageCode::Ru, 4},
      {LanguageCode::Ja, 3},  {LanguageCode::He, 3}, {LanguageCode::Ar, 2},
      {LanguageCode::Unknown, 1},
  };
  CHECK(r.per_language_token_totals == expected_tokens);

  const auto dir_a = temp_dir("metrics_a");
  const auto dir_b = temp_dir("metrics_b");
  evalharness::report({r}, dir_a);
  evalharness::report({r}, dir_b);
  CHECK(read_file(dir_a / "report.csv") ==
        "dataset,language,accuracy,normal_stop_rate,mean_tokens\n"
        "custom,en,0.8000,0.8000,5.8000\n");
  for (const char* name : {"report.csv", "per_item.csv", "plot_data.json", "results.json"}) {
    CHECK_MESSAGE(read_file(dir_a / name) == read_file(dir_b / name), name);
  }
}

TEST_CASE("criterion 10 (end-to-end determinism)") {
  Stopwatch clock;
  const std::string questions = std::string(L2_DATA_DIR) + "/demo/questions.jsonl";
  const std::string gold = std::string(L2_DATA_DIR) + "/demo/gold.jsonl";

  const auto run_pipeline = [&](const std::filesystem::path& dir) {
    const auto log = dir / "log.txt";
    const auto path = [&](const char* leaf) { return (dir / leaf).string(); };
    CHECK(run_cli("--seed 42 annotate --questions \"" + questions + "\" --out \"" +
                      path("traces.jsonl") + "\" --languages en,zh",
                  log) == 0);
    CHECK(run_cli("--seed 42 augment --questions \"" + questions + "\" --out \"" +
                      path("solution.jsonl") + "\" --variant solution --languages en,zh",
                  log) == 0);
    CHECK(run_cli("--seed 42 augment --questions \"" + questions + "\" --out \"" +
                      path("mixed.jsonl") + "\" --variant mixed --languages zh --p 0.5",
                  log) == 0);
    CHECK(run_cli("segment --in \"" + path("traces.jsonl") + "\" --out \"" +
                      path("segments.jsonl") + "\"",
                  log) == 0);
    CHECK(run_cli("--seed 42 intervene --questions \"" + questions + "\" --out \"" +
                      path("records.jsonl") + "\" --target-lang zh",
                  log) == 0);
    CHECK(run_cli("--seed 42 --parallelism 4 sweep --questions \"" + questions +
                      "\" --out \"" + path("sweep.jsonl") +
                      "\" --alphas 0,0.5,1 --ks 2,4,6 --target-lang zh --max-tokens 64",
                  log) == 0);
    CHECK(run_cli("score --gold \"" + gold + "\" --records \"" + path("records.jsonl") +
                      "\" --out \"" + path("report") + "\"",
                  log) == 0);
  };

  const auto dir_a = temp_dir("pipeline_a");
  const auto dir_b = temp_dir("pipeline_b");
  run_pipeline(dir_a);
  run_pipeline(dir_b);

  for (const char* leaf :
       {"traces.jsonl", "solution.jsonl", "mixed.jsonl", "segments.jsonl", "records.jsonl",
        "sweep.jsonl", "report/report.csv", "report/per_item.csv", "report/plot_data.json",
        "report/results.json"}) {
    const std::string a = read_file(dir_a / leaf);
    CHECK_MESSAGE(!a.empty(), leaf, " is empty");
    CHECK_MESSAGE(a == read_file(dir_b / leaf), leaf, " differs between runs");
  }
  CHECK(clock.seconds() < 60.0);
}
