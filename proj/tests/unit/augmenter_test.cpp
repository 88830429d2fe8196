#include <doctest.h>

#include <algorithm>
#include <map>
#include <memory>

#include "l2/augmenter.hpp"

using namespace l2;
using namespace l2::augmenter;

namespace {

translator::GenClientConfig test_config() {
  translator::GenClientConfig cfg;
  cfg.retry_backoff_ms = 0;
  cfg.requests_per_minute = 1000000;
  return cfg;
}

corpus::Question make_question(const std::string& id) {
  corpus::Question q;
  q.id = id;
  q.topic = "Math";
  q.text = "What is 2+2 for case " + id + "?";
  q.lang = LanguageCode::En;
  q.source = corpus::QuestionSource::O1Site;
  return q;
}

corpus::DatasetSpec make_spec(std::uint64_t n, std::vector<LanguageCode> langs,
                              std::uint64_t seed = 42) {
  corpus::DatasetSpec spec;
  spec.source = corpus::QuestionSource::O1Site;
  spec.n_questions = n;
  spec.languages = std::move(langs);
  spec.seed = seed;
  return spec;
}

// English trace with three reflection cues, produced by the mock transport.
corpus::CoTTrace english_trace(translator::GenClient& client, const std::string& qid) {
  return client.annotate_cot(make_question(qid), LanguageCode::En);
}

std::size_t reflection_count(const corpus::CoTTrace& trace) {
  return static_cast<std::size_t>(
      std::count_if(trace.segments.begin(), trace.segments.end(),
                    [](const corpus::Segment& s) { return s.is_reflection; }));
}

}  // namespace

TEST_SUITE("augmenter") {

TEST_CASE("insert_language_tokens wraps text in matching tags") {
  CHECK(insert_language_tokens("text", LanguageCode::Zh) == "<|lang:zh|>text<|/lang:zh|>");
  CHECK_THROWS_AS(insert_language_tokens("", LanguageCode::Zh), ArgumentError);
}

TEST_CASE("build_solution_level emits the full grid in fixed order") {
  const auto spec = make_spec(2, {LanguageCode::En, LanguageCode::Zh});
  const std::vector<corpus::Question> questions = {make_question("a"), make_question("b")};
  translator::GenClient client(test_config(), std::make_shared<translator::MockTransport>());

  const auto samples = build_solution_level(spec, questions, client);
  REQUIRE(samples.size() == 4);
  const LanguageCode expected_langs[4] = {LanguageCode::En, LanguageCode::Zh,
                                          LanguageCode::En, LanguageCode::Zh};
  for (std::size_t i = 0; i < 4; ++i) {
    const auto& s = samples[i];
    CHECK(s.question.id == questions[i / 2].id);
    CHECK(s.question.lang == expected_langs[i]);
    CHECK(s.variant == corpus::SampleVariant::SolutionLevel);
    REQUIRE(s.language_set.size() == 1);
    CHECK(s.language_set[0] == expected_langs[i]);
    CHECK(s.provenance == "L2-M{o1_2^2};seed=42");
    CHECK(corpus::scan_boundary_tokens(s.serialized_cot).empty());
    CHECK_FALSE(has_errors(validate_mixture(s)));
  }

  SUBCASE("question count must match the spec") {
    CHECK_THROWS_AS(build_solution_level(spec, {make_question("a")}, client), ArgumentError);
  }
  SUBCASE("parallelism does not change the output") {
    translator::GenClient other(test_config(), std::make_shared<translator::MockTransport>());
    const auto parallel = build_solution_level(spec, questions, other, 4);
    REQUIRE(parallel.size() == samples.size());
    for (std::size_t i = 0; i < samples.size(); ++i) {
      CHECK(parallel[i].serialized_cot == samples[i].serialized_cot);
      CHECK(parallel[i].question.id == samples[i].question.id);
    }
  }
  SUBCASE("failed items are omitted, not fatal") {
    translator::MockTransport::Behavior behavior;
    behavior.permanent_fail = [](const translator::TransportRequest& r) {
      return r.question_id == "b" || r.text.find("case b") != std::string::npos;
    };
    auto cfg = test_config();
    cfg.max_retries = 0;
    translator::GenClient failing(cfg, std::make_shared<translator::MockTransport>(behavior));
    const auto partial = build_solution_level(spec, questions, failing);
    REQUIRE(partial.size() == 2);
    CHECK(partial[0].question.id == "a");
    CHECK(partial[1].question.id == "a");
  }
}

TEST_CASE("select_mixture_segments draws positionally per reflection segment") {
  translator::GenClient client(test_config(), std::make_shared<translator::MockTransport>());
  const corpus::CoTTrace trace = english_trace(client, "sel");
  REQUIRE(reflection_count(trace) == 3);

  SUBCASE("p=0 selects nothing") {
    const auto sel = select_mixture_segments(trace, 0.0, 7);
    CHECK(std::count(sel.begin(), sel.end(), true) == 0);
  }
  SUBCASE("p=1 selects every reflection segment and nothing else") {
    const auto sel = select_mixture_segments(trace, 1.0, 7);
    REQUIRE(sel.size() == trace.segments.size());
    for (std::size_t i = 0; i < sel.size(); ++i) {
      CHECK(sel[i] == trace.segments[i].is_reflection);
    }
  }
  SUBCASE("selection nests monotonically in p at a fixed seed") {
    const double ps[4] = {0.1, 0.3, 0.5, 0.9};
    std::vector<std::vector<bool>> sets;
    for (double p : ps) sets.push_back(select_mixture_segments(trace, p, 99));
    for (std::size_t k = 1; k < sets.size(); ++k) {
      for (std::size_t i = 0; i < sets[k].size(); ++i) {
        if (sets[k - 1][i]) CHECK(sets[k][i]);
      }
    }
  }
  SUBCASE("out-of-range p is rejected") {
    CHECK_THROWS_AS(select_mixture_segments(trace, -0.1, 7), ArgumentError);
    CHECK_THROWS_AS(select_mixture_segments(trace, 1.1, 7), ArgumentError);
  }
}

TEST_CASE("build_step_mixture wraps selected reflections in boundary tokens") {
  translator::GenClient client(test_config(), std::make_shared<translator::MockTransport>());
  const auto spec = make_spec(1, {LanguageCode::En, LanguageCode::Zh}, 42);
  const corpus::Question q = make_question("mix");
  const corpus::CoTTrace trace = english_trace(client, "mix");

  SUBCASE("target language must differ from the trace language") {
    CHECK_THROWS_AS(
        build_step_mixture(spec, q, trace, LanguageCode::En, 0.5, 42, client),
        ArgumentError);
  }
  SUBCASE("unsegmented traces are rejected") {
    corpus::CoTTrace raw = trace;
    raw.segments.clear();
    CHECK_THROWS_AS(build_step_mixture(spec, q, raw, LanguageCode::Zh, 0.5, 42, client),
                    ArgumentError);
  }
  SUBCASE("p=1 wraps every reflection segment") {
    const auto sample = build_step_mixture(spec, q, trace, LanguageCode::Zh, 1.0, 42, client);
    CHECK(sample.variant == corpus::SampleVariant::StepMixed);
    CHECK(sample.language_set ==
          std::vector<LanguageCode>{LanguageCode::En, LanguageCode::Zh});
    CHECK(sample.provenance == "L2-M{o1_1^2};seed=42;translated=3");
    const auto tokens = corpus::scan_boundary_tokens(sample.serialized_cot);
    CHECK(tokens.size() == 6);
    CHECK_FALSE(has_errors(validate_mixture(sample)));
    CHECK(sample.serialized_cot.rfind(trace.segments[0].text, 0) == 0);
    CHECK(sample.serialized_cot.find(" <|lang:zh|>") != std::string::npos);
  }
  SUBCASE("p=0 passes the trace through verbatim") {
    const auto sample = build_step_mixture(spec, q, trace, LanguageCode::Zh, 0.0, 42, client);
    CHECK(sample.serialized_cot == trace.raw_text);
    CHECK(sample.language_set == std::vector<LanguageCode>{LanguageCode::En});
    CHECK(sample.provenance == "L2-M{o1_1^2};seed=42;translated=0");
    CHECK_FALSE(has_errors(validate_mixture(sample)));
  }
  SUBCASE("failed segment translations fall back to the original text") {
    translator::MockTransport::Behavior behavior;
    behavior.permanent_fail = [](const translator::TransportRequest& r) {
      return r.task == translator::TaskKind::Translate;
    };
    auto cfg = test_config();
    cfg.max_retries = 0;
    translator::GenClient failing(cfg, std::make_shared<translator::MockTransport>(behavior));
    const auto sample =
        build_step_mixture(spec, q, trace, LanguageCode::Zh, 1.0, 42, failing);
    CHECK(sample.serialized_cot == trace.raw_text);
    CHECK(sample.language_set == std::vector<LanguageCode>{LanguageCode::En});
    CHECK(sample.provenance == "L2-M{o1_1^2};seed=42;translated=0");
    CHECK_FALSE(has_errors(validate_mixture(sample)));
  }
  SUBCASE("the same seed reproduces the same sample") {
    const auto a = build_step_mixture(spec, q, trace, LanguageCode::Zh, 0.5, 7, client);
    const auto b = build_step_mixture(spec, q, trace, LanguageCode::Zh, 0.5, 7, client);
    CHECK(a.serialized_cot == b.serialized_cot);
    CHECK(a.provenance == b.provenance);
  }
}

TEST_CASE("validate_mixture flags structural defects as errors") {
  translator::GenClient client(test_config(), std::make_shared<translator::MockTransport>());
  const auto spec = make_spec(1, {LanguageCode::En, LanguageCode::Zh}, 42);
  const corpus::Question q = make_question("val");
  const corpus::CoTTrace trace = english_trace(client, "val");
  const auto clean = build_step_mixture(spec, q, trace, LanguageCode::Zh, 1.0, 42, client);
  REQUIRE_FALSE(has_errors(validate_mixture(clean)));

  SUBCASE("removing one closing tag") {
    auto bad = clean;
    const auto pos = bad.serialized_cot.find("<|/lang:zh|>");
    REQUIRE(pos != std::string::npos);
    bad.serialized_cot.erase(pos, 12);
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("mismatched closing language") {
    auto bad = clean;
    const auto pos = bad.serialized_cot.find("<|/lang:zh|>");
    bad.serialized_cot.replace(pos, 12, "<|/lang:ja|>");
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("stray closing tag") {
    auto bad = clean;
    bad.serialized_cot += "<|/lang:zh|>";
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("nested open tag") {
    auto bad = clean;
    const auto pos = bad.serialized_cot.find("<|lang:zh|>");
    bad.serialized_cot.insert(pos + 11, "<|lang:zh|>");
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("unknown language code in a tag") {
    auto bad = clean;
    bad.serialized_cot += "<|lang:qq|>";
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("provenance translated-count mismatch") {
    auto bad = clean;
    bad.provenance = "L2-M{o1_1^2};seed=42;translated=7";
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("unparseable provenance") {
    auto bad = clean;
    bad.provenance = "garbage";
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("tag language missing from language_set") {
    auto bad = clean;
    bad.language_set = {LanguageCode::En};
    CHECK(has_errors(validate_mixture(bad)));
  }
  SUBCASE("solution-level samples must not contain tags") {
    corpus::AugmentedSample sol;
    sol.question = q;
    sol.serialized_cot = "plain <|lang:zh|>x<|/lang:zh|>";
    sol.variant = corpus::SampleVariant::SolutionLevel;
    sol.language_set = {LanguageCode::En};
    sol.provenance = "L2-M{o1_1^2};seed=42";
    CHECK(has_errors(validate_mixture(sol)));
  }
  SUBCASE("language disagreement inside a wrapped fragment is only a warning") {
    corpus::AugmentedSample odd;
    odd.question = q;
    odd.serialized_cot = "head <|lang:zh|>plain English inside<|/lang:zh|> tail";
    odd.variant = corpus::SampleVariant::StepMixed;
    odd.language_set = {LanguageCode::En, LanguageCode::Zh};
    odd.provenance = "L2-M{o1_1^2};seed=42;translated=1";
    const auto violations = validate_mixture(odd);
    CHECK_FALSE(has_errors(violations));
    CHECK(std::any_of(violations.begin(), violations.end(), [](const Violation& v) {
      return v.severity == Severity::Warning;
    }));
  }
}

TEST_CASE("oversample repeats samples with balanced multiplicities") {
  translator::GenClient client(test_config(), std::make_shared<translator::MockTransport>());
  const auto spec = make_spec(3, {LanguageCode::En});
  const std::vector<corpus::Question> questions = {make_question("a"), make_question("b"),
                                                   make_question("c")};
  const auto samples = build_solution_level(spec, questions, client);
  REQUIRE(samples.size() == 3);

  SUBCASE("uneven target gives floor or ceil copies of each original") {
    const auto out = oversample(samples, 7, 5);
    REQUIRE(out.size() == 7);
    std::map<std::string, int> copies;
    for (const auto& s : out) ++copies[s.question.id];
    REQUIRE(copies.size() == 3);
    int ceils = 0;
    for (const auto& [id, n] : copies) {
      CHECK((n == 2 || n == 3));
      if (n == 3) ++ceils;
    }
    CHECK(ceils == 1);
  }
  SUBCASE("an exact multiple copies every sample equally") {
    const auto out = oversample(samples, 6, 5);
    std::map<std::string, int> copies;
    for (const auto& s : out) ++copies[s.question.id];
    for (const auto& [id, n] : copies) CHECK(n == 2);
  }
  SUBCASE("the same seed reproduces the same order") {
    const auto a = oversample(samples, 7, 5);
    const auto b = oversample(samples, 7, 5);
    REQUIRE(a.size() == b.size());
    for (std::size_t i = 0; i < a.size(); ++i) {
      CHECK(a[i].question.id == b[i].question.id);
    }
  }
  SUBCASE("a target below the sample count is rejected") {
    CHECK_THROWS_AS(oversample(samples, 2, 5), ArgumentError);
  }
  SUBCASE("empty input is rejected") {
    CHECK_THROWS_AS(oversample({}, 2, 5), ArgumentError);
  }
}

}  // TEST_SUITE
