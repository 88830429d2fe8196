#include <doctest.h>

#include <filesystem>
#include <fstream>
#include <random>

#include "l2/segmenter.hpp"
#include "l2/unicode.hpp"

using namespace l2;
using namespace l2::segmenter;

namespace {

std::filesystem::path temp_file(const std::string& name) {
  const auto dir = std::filesystem::temp_directory_path() / "l2_segmenter_test";
  std::filesystem::create_directories(dir);
  return dir / name;
}

// Splitting partitions the text: spans are contiguous from 0 to the scalar
// count and the concatenated segment texts reproduce the input byte-exactly.
void check_partition(std::string_view text, const std::vector<Segment>& segments) {
  const std::size_t n = utf8_decode(text).scalars.size();
  if (n == 0) {
    CHECK(segments.empty());
    return;
  }
  REQUIRE_FALSE(segments.empty());
  CHECK(segments.front().char_span.start == 0);
  CHECK(segments.back().char_span.end == n);
  std::string joined;
  for (std::size_t i = 0; i < segments.size(); ++i) {
    CHECK(segments[i].char_span.start < segments[i].char_span.end);
    if (i > 0) CHECK(segments[i].char_span.start == segments[i - 1].char_span.end);
    joined += segments[i].text;
  }
  CHECK(joined == text);
  CHECK(reassemble(segments) == text);
}

// Every reported cue is visible at the head of its segment (after leading
// whitespace), and only reflection segments carry cues.
void check_cue_soundness(const std::vector<Segment>& segments) {
  for (const Segment& seg : segments) {
    if (!seg.cue.has_value()) {
      CHECK_FALSE(seg.is_reflection);
      continue;
    }
    CHECK(seg.is_reflection);
    const std::size_t head = seg.text.find_first_not_of(" \t\n\r");
    REQUIRE(head != std::string::npos);
    CHECK(seg.text.compare(head, seg.cue->size(), *seg.cue) == 0);
  }
}

}  // namespace

TEST_SUITE("segmenter") {

TEST_CASE("a two-cue chain splits into three segments") {
  const std::string text = "First, compute x. Wait, that is wrong. Hmm, retry.";
  const auto segments = segment_cot(text);
  REQUIRE(segments.size() == 3);
  CHECK(segments[0].text == "First, compute x.");
  CHECK(segments[1].text == " Wait, that is wrong.");
  CHECK(segments[2].text == " Hmm, retry.");
  CHECK_FALSE(segments[0].cue.has_value());
  CHECK(*segments[1].cue == "Wait");
  CHECK(*segments[2].cue == "Hmm");
  CHECK_FALSE(segments[0].is_reflection);
  CHECK(segments[1].is_reflection);
  CHECK(segments[2].is_reflection);
  check_partition(text, segments);
}

TEST_CASE("empty input yields no segments") {
  CHECK(segment_cot("").empty());
}

TEST_CASE("text without cues is a single non-reflection segment") {
  const auto segments = segment_cot("await the result");
  REQUIRE(segments.size() == 1);
  CHECK(segments[0].text == "await the result");
  CHECK_FALSE(segments[0].is_reflection);
  CHECK_FALSE(segments[0].cue.has_value());
}

TEST_CASE("word boundaries block matches inside longer words") {
  SUBCASE("cue is a prefix of a longer word") {
    const auto segments = segment_cot("Waiting for results is fine.");
    REQUIRE(segments.size() == 1);
    CHECK_FALSE(segments[0].is_reflection);
  }
  SUBCASE("cue glued to a preceding word") {
    const auto segments = segment_cot("NoWait is one token here.");
    REQUIRE(segments.size() == 1);
    CHECK_FALSE(segments[0].is_reflection);
  }
}

TEST_CASE("a cue at offset zero marks the first segment as reflection") {
  const auto segments = segment_cot("Wait, this is all reflection.");
  REQUIRE(segments.size() == 1);
  CHECK(segments[0].is_reflection);
  CHECK(*segments[0].cue == "Wait");
}

TEST_CASE("the longest matching cue wins at a position") {
  CueLexicon lex;
  lex.cues.push_back({"Wait", MatchMode::WordBoundary});
  lex.cues.push_back({"Wait a moment", MatchMode::WordBoundary});
  const auto segments = segment_cot("x. Wait a moment, rethink.", lex);
  REQUIRE(segments.size() == 2);
  CHECK(*segments[1].cue == "Wait a moment");
}

TEST_CASE("whitespace before a cue belongs to the reflection segment") {
  const auto segments = segment_cot("Done.\n\n  Wait again.");
  REQUIRE(segments.size() == 2);
  CHECK(segments[0].text == "Done.");
  CHECK(segments[1].text == "\n\n  Wait again.");
  check_partition("Done.\n\n  Wait again.", segments);
}

TEST_CASE("consecutive cues split pairwise") {
  const auto segments = segment_cot("Wait Wait x");
  REQUIRE(segments.size() == 2);
  CHECK(segments[0].text == "Wait");
  CHECK(segments[1].text == " Wait x");
  check_cue_soundness(segments);
}

TEST_CASE("multibyte text round-trips byte-exactly with scalar spans") {
  const std::string text = "计算一下。 Wait,再想一次。";
  const auto segments = segment_cot(text);
  REQUIRE(segments.size() == 2);
  CHECK(segments[0].text == "计算一下。");
  CHECK(segments[1].text == " Wait,再想一次。");
  CHECK(segments[0].char_span == CharSpan{0, 5});
  CHECK(segments[1].char_span.start == 5);
  check_partition(text, segments);
}

TEST_CASE("randomized texts satisfy partition and cue soundness") {
  const std::vector<std::string> words = {"alpha", "beta",  "计算", "result", "x=3",
                                          "Ответ", "答え",  "so",   "check",  "…",
                                          "7/2",   "done."};
  const std::vector<std::string> cues = {"Wait", "Hmm", "Alternatively", "But wait",
                                         "Let me double-check", "Actually"};
  std::mt19937 rng(12345);
  for (int iter = 0; iter < 300; ++iter) {
    std::string text;
    const int parts = static_cast<int>(rng() % 40);
    for (int k = 0; k < parts; ++k) {
      if (!text.empty()) text += (rng() % 5 == 0) ? "\n" : " ";
      if (rng() % 4 == 0) {
        text += cues[rng() % cues.size()];
      } else {
        text += words[rng() % words.size()];
      }
    }
    const auto segments = segment_cot(text);
    check_partition(text, segments);
    check_cue_soundness(segments);
  }
}

TEST_CASE("reassemble rejects span defects") {
  Segment a;
  a.text = "ab";
  a.char_span = {0, 2};
  Segment b;
  b.text = "cd";
  b.char_span = {3, 5};
  SUBCASE("gap") {
    CHECK_THROWS_AS(reassemble({a, b}), ArgumentError);
  }
  SUBCASE("overlap") {
    b.char_span = {1, 3};
    CHECK_THROWS_AS(reassemble({a, b}), ArgumentError);
  }
  SUBCASE("inverted span") {
    a.char_span = {2, 0};
    CHECK_THROWS_AS(reassemble({a}), ArgumentError);
  }
  SUBCASE("empty list reassembles to empty text") {
    CHECK(reassemble({}).empty());
  }
}

TEST_CASE("sentence-initial cues require a sentence start") {
  CueLexicon lex;
  lex.cues.push_back({"So", MatchMode::SentenceInitial});
  SUBCASE("matches at text start and after a terminator") {
    const auto segments = segment_cot("So we begin. So it ends.", lex);
    REQUIRE(segments.size() == 2);
    CHECK(*segments[0].cue == "So");
    CHECK(*segments[1].cue == "So");
  }
  SUBCASE("does not match mid-sentence") {
    const auto segments = segment_cot("And So it goes on.", lex);
    REQUIRE(segments.size() == 1);
    CHECK_FALSE(segments[0].is_reflection);
  }
  SUBCASE("a line break licenses a match") {
    const auto segments = segment_cot("first line\nSo another thought", lex);
    REQUIRE(segments.size() == 2);
    CHECK(segments[1].text == "\nSo another thought");
  }
}

TEST_CASE("validate_lexicon rejects degenerate lexicons") {
  CueLexicon lex;
  SUBCASE("empty") {
    CHECK_THROWS_AS(validate_lexicon(lex), ArgumentError);
  }
  SUBCASE("whitespace-padded surface") {
    lex.cues.push_back({" Wait", MatchMode::WordBoundary});
    CHECK_THROWS_AS(validate_lexicon(lex), ArgumentError);
  }
  SUBCASE("duplicate surface") {
    lex.cues.push_back({"Wait", MatchMode::WordBoundary});
    lex.cues.push_back({"Wait", MatchMode::SentenceInitial});
    CHECK_THROWS_AS(validate_lexicon(lex), ArgumentError);
  }
}

TEST_CASE("load_cue_lexicon parses comments and match modes") {
  const auto path = temp_file("cues.txt");
  std::ofstream(path, std::ios::binary) << "# header comment\n"
                                        << "Wait\n"
                                        << "But wait\tword-boundary\n"
                                        << "So\tsentence-initial\n"
                                        << "  Actually  # trailing comment\n"
                                        << "\n";
  const CueLexicon lex = load_cue_lexicon(path);
  REQUIRE(lex.cues.size() == 4);
  CHECK(lex.cues[0] == Cue{"Wait", MatchMode::WordBoundary});
  CHECK(lex.cues[1] == Cue{"But wait", MatchMode::WordBoundary});
  CHECK(lex.cues[2] == Cue{"So", MatchMode::SentenceInitial});
  CHECK(lex.cues[3] == Cue{"Actually", MatchMode::WordBoundary});

  SUBCASE("unknown match mode") {
    std::ofstream(path, std::ios::binary) << "Wait\tfuzzy\n";
    CHECK_THROWS_AS(load_cue_lexicon(path), SchemaError);
  }
  SUBCASE("missing file") {
    CHECK_THROWS_AS(load_cue_lexicon(temp_file("nope.txt")), IoError);
  }
  SUBCASE("comment-only file validates as empty") {
    std::ofstream(path, std::ios::binary) << "# nothing here\n";
    CHECK_THROWS_AS(load_cue_lexicon(path), ArgumentError);
  }
}

TEST_CASE("the shipped cue file matches the built-in lexicon") {
  const CueLexicon shipped = load_cue_lexicon(L2_DATA_DIR "/cues/default_cues.txt");
  const CueLexicon builtin = default_cue_lexicon();
  REQUIRE(shipped.cues.size() == builtin.cues.size());
  for (std::size_t i = 0; i < shipped.cues.size(); ++i) {
    CHECK(shipped.cues[i] == builtin.cues[i]);
  }
}

TEST_CASE("segment_trace fills the trace segments in place") {
  corpus::CoTTrace trace;
  trace.question_id = "q1";
  trace.raw_text = "Plan. Wait, revise.";
  segment_trace(trace, default_cue_lexicon());
  REQUIRE(trace.segments.size() == 2);
  CHECK(reassemble(trace.segments) == trace.raw_text);
}

}  // TEST_SUITE
