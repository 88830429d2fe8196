#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "l2/corpus.hpp"

using namespace l2;
using namespace l2::corpus;

namespace {

Question make_question(const std::string& id = "q1") {
  Question q;
  q.id = id;
  q.topic = "Math";
  q.text = "What is 2+2?";
  q.lang = LanguageCode::En;
  q.source = QuestionSource::O1Site;
  return q;
}

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "l2_corpus_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

}  // namespace

TEST_SUITE("corpus") {

TEST_CASE("derive_name follows the source_count^languages scheme") {
  DatasetSpec spec;
  spec.source = QuestionSource::O1Site;
  spec.n_questions = 6;
  spec.languages = {LanguageCode::Zh, LanguageCode::En, LanguageCode::Fr, LanguageCode::De};
  spec.seed = 1;
  CHECK(derive_name(spec) == "L2-M{o1_6^4}");

  spec.source = QuestionSource::S1k;
  spec.n_questions = 1;
  spec.languages = {LanguageCode::En};
  CHECK(derive_name(spec) == "L2-M{S1_1^1}");

  spec.source = QuestionSource::BespokeStratos;
  spec.n_questions = 100;
  spec.languages = {LanguageCode::En, LanguageCode::Ja};
  CHECK(derive_name(spec) == "L2-M{BS_100^2}");

  SUBCASE("name ignores the seed") {
    DatasetSpec a = spec, b = spec;
    a.seed = 1;
    b.seed = 999;
    CHECK(derive_name(a) == derive_name(b));
  }
}

TEST_CASE("validate_spec rejects malformed specifications") {
  DatasetSpec spec;
  spec.source = QuestionSource::O1Site;
  spec.n_questions = 6;
  spec.languages = {LanguageCode::En, LanguageCode::Zh};
  spec.seed = 7;
  CHECK_NOTHROW(validate_spec(spec));

  SUBCASE("zero questions") {
    spec.n_questions = 0;
    CHECK_THROWS_AS(validate_spec(spec), ArgumentError);
  }
  SUBCASE("empty language list") {
    spec.languages.clear();
    CHECK_THROWS_AS(validate_spec(spec), ArgumentError);
  }
  SUBCASE("duplicate language") {
    spec.languages.push_back(LanguageCode::En);
    CHECK_THROWS_AS(validate_spec(spec), ArgumentError);
  }
  SUBCASE("mixture probability out of range") {
    spec.mixture_prob = 1.5;
    CHECK_THROWS_AS(validate_spec(spec), ArgumentError);
  }
}

TEST_CASE("provenance strings round-trip") {
  Provenance p;
  p.name = "L2-M{o1_6^4}";
  p.seed = 42;
  CHECK(format_provenance(p) == "L2-M{o1_6^4};seed=42");

  p.translated = 3;
  const std::string text = format_provenance(p);
  CHECK(text == "L2-M{o1_6^4};seed=42;translated=3");

  const auto parsed = parse_provenance(text);
  REQUIRE(parsed.has_value());
  CHECK(parsed->name == p.name);
  CHECK(parsed->seed == 42);
  REQUIRE(parsed->translated.has_value());
  CHECK(*parsed->translated == 3);

  CHECK_FALSE(parse_provenance("no-seed-here").has_value());
  CHECK_FALSE(parse_provenance("name;seed=abc").has_value());
  CHECK_FALSE(parse_provenance("").has_value());
}

TEST_CASE("boundary token surfaces are exact") {
  CHECK(open_tag(LanguageCode::Zh) == "<|lang:zh|>");
  CHECK(close_tag(LanguageCode::Zh) == "<|/lang:zh|>");
  CHECK(open_tag(LanguageCode::He) == "<|lang:he|>");
}

TEST_CASE("scan_boundary_tokens finds tags with byte positions") {
  const std::string text = "plain <|lang:zh|>中文<|/lang:zh|> tail";
  const auto tokens = scan_boundary_tokens(text);
  REQUIRE(tokens.size() == 2);
  CHECK_FALSE(tokens[0].closing);
  REQUIRE(tokens[0].lang.has_value());
  CHECK(*tokens[0].lang == LanguageCode::Zh);
  CHECK(tokens[0].byte_pos == 6);
  CHECK(tokens[0].byte_len == std::string("<|lang:zh|>").size());
  CHECK(tokens[1].closing);
  CHECK(text.substr(tokens[1].byte_pos, tokens[1].byte_len) == "<|/lang:zh|>");

  SUBCASE("unknown language code yields a token without a language") {
    const auto bad = scan_boundary_tokens("<|lang:qq|>");
    REQUIRE(bad.size() == 1);
    CHECK_FALSE(bad[0].lang.has_value());
  }
  SUBCASE("unterminated tag yields a token without a language") {
    const auto bad = scan_boundary_tokens("<|lang:zh oops");
    REQUIRE(bad.size() == 1);
    CHECK_FALSE(bad[0].lang.has_value());
  }
  SUBCASE("no tags yields nothing") {
    CHECK(scan_boundary_tokens("just text").empty());
  }
}

TEST_CASE("question JSON round-trips and serializes with sorted keys") {
  const Question q = make_question();
  const auto j = question_to_json(q);
  CHECK(j.dump() ==
        R"({"id":"q1","lang":"en","source":"o1-site","text":"What is 2+2?","topic":"Math"})");
  const Question back = question_from_json(j);
  CHECK(back.id == q.id);
  CHECK(back.topic == q.topic);
  CHECK(back.text == q.text);
  CHECK(back.lang == q.lang);
  CHECK(back.source == q.source);
}

TEST_CASE("trace JSON round-trips including optional answer") {
  CoTTrace t;
  t.question_id = "q9";
  t.lang = LanguageCode::Zh;
  t.raw_text = "先算。 Wait 再算。";
  t.token_count = 3;
  t.stopped_normally = true;
  Segment s;
  s.text = t.raw_text;
  s.lang = LanguageCode::Zh;
  s.is_reflection = false;
  s.char_span = {0, 10};
  t.segments.push_back(s);

  SUBCASE("without final answer") {
    const CoTTrace back = trace_from_json(trace_to_json(t));
    CHECK(back.question_id == t.question_id);
    CHECK(back.raw_text == t.raw_text);
    CHECK_FALSE(back.final_answer.has_value());
    REQUIRE(back.segments.size() == 1);
    CHECK(back.segments[0].char_span.start == 0);
    CHECK(back.segments[0].char_span.end == 10);
  }
  SUBCASE("with final answer and cue") {
    t.final_answer = "4";
    t.segments[0].cue = "Wait";
    const CoTTrace back = trace_from_json(trace_to_json(t));
    REQUIRE(back.final_answer.has_value());
    CHECK(*back.final_answer == "4");
    REQUIRE(back.segments[0].cue.has_value());
    CHECK(*back.segments[0].cue == "Wait");
  }
}

TEST_CASE("sample JSON uses the fixed field names") {
  AugmentedSample s;
  s.question = make_question();
  s.serialized_cot = "body";
  s.variant = SampleVariant::StepMixed;
  s.language_set = {LanguageCode::En, LanguageCode::Zh};
  s.provenance = "L2-M{o1_1^2};seed=7;translated=1";
  const auto j = sample_to_json(s);
  CHECK(j.contains("question"));
  CHECK(j.contains("serialized_cot"));
  CHECK(j.contains("variant"));
  CHECK(j.contains("language_set"));
  CHECK(j.contains("provenance"));
  CHECK(j["variant"] == "step-mixed");
  CHECK(j["language_set"] == nlohmann::json::array({"en", "zh"}));

  const AugmentedSample back = sample_from_json(j);
  CHECK(back.variant == SampleVariant::StepMixed);
  CHECK(back.language_set == s.language_set);
  CHECK(back.provenance == s.provenance);
}

TEST_CASE("variant names parse both directions") {
  CHECK(variant_name(SampleVariant::SolutionLevel) == "solution-level");
  CHECK(variant_name(SampleVariant::StepMixed) == "step-mixed");
  CHECK(*variant_from_name("solution-level") == SampleVariant::SolutionLevel);
  CHECK(*variant_from_name("step-mixed") == SampleVariant::StepMixed);
  CHECK_FALSE(variant_from_name("other").has_value());
}

TEST_CASE("dataset save and load are inverse") {
  std::vector<AugmentedSample> samples;
  for (int i = 0; i < 3; ++i) {
    AugmentedSample s;
    s.question = make_question("q" + std::to_string(i));
    s.serialized_cot = "cot body 中文 " + std::to_string(i);
    s.variant = SampleVariant::SolutionLevel;
    s.language_set = {LanguageCode::Zh};
    s.provenance = "L2-M{o1_3^1};seed=5";
    samples.push_back(s);
  }
  const auto path = temp_file("dataset.jsonl");
  save_dataset(samples, path);
  const auto back = load_dataset(path);
  REQUIRE(back.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(back[i].question.id == samples[i].question.id);
    CHECK(back[i].serialized_cot == samples[i].serialized_cot);
    CHECK(back[i].language_set == samples[i].language_set);
  }
}

TEST_CASE("loaders report schema violations with line numbers") {
  const auto path = temp_file("bad.jsonl");

  SUBCASE("duplicate question id") {
    std::ofstream(path, std::ios::binary)
        << R"({"id":"a","topic":"t","text":"x","lang":"en","source":"o1-site"})" << '\n'
        << R"({"id":"a","topic":"t","text":"y","lang":"en","source":"o1-site"})" << '\n';
    CHECK_THROWS_WITH_AS(load_questions(path), doctest::Contains("line 2"), SchemaError);
  }
  SUBCASE("missing field") {
    std::ofstream(path, std::ios::binary) << R"({"id":"a","topic":"t","lang":"en"})" << '\n';
    CHECK_THROWS_WITH_AS(load_questions(path), doctest::Contains("text"), SchemaError);
  }
  SUBCASE("unknown language code") {
    std::ofstream(path, std::ios::binary)
        << R"({"id":"a","topic":"t","text":"x","lang":"xx","source":"o1-site"})" << '\n';
    CHECK_THROWS_AS(load_questions(path), SchemaError);
  }
  SUBCASE("invalid JSON") {
    std::ofstream(path, std::ios::binary) << "{not json\n";
    CHECK_THROWS_AS(load_questions(path), SchemaError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_questions(temp_file("does_not_exist.jsonl")), IoError);
  }
}

TEST_CASE("loader skips blank lines and strips carriage returns") {
  const auto path = temp_file("crlf.jsonl");
  std::ofstream(path, std::ios::binary)
      << R"({"id":"a","topic":"t","text":"x","lang":"en","source":"o1-site"})" << "\r\n"
      << "\n"
      << R"({"id":"b","topic":"t","text":"y","lang":"zh","source":"s1k"})" << '\n';
  const auto questions = load_questions(path);
  REQUIRE(questions.size() == 2);
  CHECK(questions[0].id == "a");
  CHECK(questions[1].lang == LanguageCode::Zh);
  CHECK(questions[1].source == QuestionSource::S1k);
}

TEST_CASE("source names map both directions") {
  CHECK(source_name(QuestionSource::O1Site) == "o1-site");
  CHECK(source_name(QuestionSource::S1k) == "s1k");
  CHECK(source_name(QuestionSource::BespokeStratos) == "bespoke-stratos");
  CHECK(source_name(QuestionSource::Other) == "other");
  CHECK(source_label(QuestionSource::O1Site) == "o1");
  CHECK(source_label(QuestionSource::S1k) == "S1");
  CHECK(source_label(QuestionSource::BespokeStratos) == "BS");
  CHECK(source_label(QuestionSource::Other) == "custom");
  CHECK(*source_from_name("o1-site") == QuestionSource::O1Site);
  CHECK_FALSE(source_from_name("nope").has_value());
}

TEST_CASE("language codes cover all nine languages plus unknown") {
  CHECK(to_code(LanguageCode::Zh) == "zh");
  CHECK(to_code(LanguageCode::Ru) == "ru");
  CHECK(to_code(LanguageCode::Unknown) == "und");
  CHECK(*language_from_code("ja") == LanguageCode::Ja);
  CHECK(*language_from_code("und") == LanguageCode::Unknown);
  CHECK_FALSE(language_from_code("en-US").has_value());
  CHECK(kRealLanguages.size() == 9);
}

}  // TEST_SUITE
