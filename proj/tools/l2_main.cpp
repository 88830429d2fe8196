// Command-line entry point: corpus construction, decode-time language
// steering, and evaluation as subcommands over JSONL files.
//
// Exit codes: 0 success, 1 operational error (printed with the failing
// module), 2 usage error.

#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <memory>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "l2/http_transport.hpp"
#include "l2/l2.hpp"

namespace {

using namespace l2;

LanguageCode parse_lang(const std::string& code) {
  const auto lc = language_from_code(code);
  if (!lc || *lc == LanguageCode::Unknown) {
    throw ArgumentError("cli", "unknown language code '" + code + "'");
  }
  return *lc;
}

std::vector<LanguageCode> parse_lang_list(const std::string& csv) {
  std::vector<LanguageCode> langs;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (!item.empty()) langs.push_back(parse_lang(item));
  }
  if (langs.empty()) {
    throw ArgumentError("cli", "language list '" + csv + "' is empty");
  }
  return langs;
}

template <typename T>
std::vector<T> parse_csv_numbers(const std::string& csv, const char* what) {
  std::vector<T> values;
  std::stringstream ss(csv);
  std::string item;
  while (std::getline(ss, item, ',')) {
    if (item.empty()) continue;
    try {
      if constexpr (std::is_floating_point_v<T>) {
        values.push_back(std::stod(item));
      } else {
        values.push_back(static_cast<T>(std::stoull(item)));
      }
    } catch (const std::exception&) {
      throw ArgumentError("cli", std::string("cannot parse ") + what + " value '" + item + "'");
    }
  }
  if (values.empty()) {
    throw ArgumentError("cli", std::string(what) + " list '" + csv + "' is empty");
  }
  return values;
}

// Options shared by every subcommand that talks to a generation endpoint.
struct TransportOptions {
  std::string transport = "mock";
  translator::GenClientConfig cfg;
  std::string cache_dir;
  std::string prompts_dir;
};

void add_transport_options(CLI::App* sub, TransportOptions& opts) {
  sub->add_option("--transport", opts.transport, "Transport: mock or http")
      ->check(CLI::IsMember({"mock", "http"}))
      ->envname("L2_TRANSPORT");
  sub->add_option("--endpoint", opts.cfg.endpoint_url, "Chat-completions endpoint URL")
      ->envname("L2_ENDPOINT");
  sub->add_option("--model", opts.cfg.model_name, "Model name sent to the endpoint")
      ->envname("L2_MODEL");
  sub->add_option("--api-key-env", opts.cfg.api_key_env,
                  "Environment variable holding the API key");
  sub->add_option("--max-retries", opts.cfg.max_retries, "Retries per request (max 10)");
  sub->add_option("--timeout", opts.cfg.timeout_seconds, "Request timeout in seconds");
  sub->add_option("--rpm", opts.cfg.requests_per_minute, "Request rate limit per minute");
  sub->add_option("--cache-dir", opts.cache_dir, "Directory for the response cache");
  sub->add_option("--prompts-dir", opts.prompts_dir,
                  "Directory with translate.txt / annotate.txt templates");
}

translator::GenClient make_client(const TransportOptions& opts,
                                  const segmenter::CueLexicon& lexicon) {
  translator::GenClientConfig cfg = opts.cfg;
  if (!opts.cache_dir.empty()) cfg.cache_dir = opts.cache_dir;
  std::shared_ptr<translator::Transport> transport;
  if (opts.transport == "http") {
    transport = std::make_shared<transport::HttpTransport>(cfg);
  } else {
    transport = std::make_shared<translator::MockTransport>();
  }
  translator::PromptTemplates templates;
  if (!opts.prompts_dir.empty()) {
    templates = translator::load_prompt_templates(opts.prompts_dir);
  }
  return translator::GenClient(cfg, std::move(transport), templates, lexicon);
}

segmenter::CueLexicon load_lexicon(const std::string& cues_path) {
  return cues_path.empty() ? segmenter::default_cue_lexicon()
                           : segmenter::load_cue_lexicon(cues_path);
}

std::ofstream open_output(const std::string& path) {
  std::ofstream out(path, std::ios::binary | std::ios::trunc);
  if (!out) throw IoError("cli", "cannot write '" + path + "'");
  return out;
}

// Mock-backend shaping knobs (ignored by the remote backend).
struct BackendOptions {
  std::string backend = "mock";
  std::uint32_t lang_rank = 2;
  bool endless = false;
  bool immediate_eos = false;
};

void add_backend_options(CLI::App* sub, BackendOptions& opts, TransportOptions& remote) {
  sub->add_option("--backend", opts.backend, "Backend: mock or remote")
      ->check(CLI::IsMember({"mock", "remote"}))
      ->envname("L2_BACKEND");
  sub->add_option("--lang-rank", opts.lang_rank,
                  "Mock only: pin the target-language token at this rank (0 = natural)");
  sub->add_flag("--endless", opts.endless, "Mock only: never emit eos");
  sub->add_flag("--immediate-eos", opts.immediate_eos, "Mock only: rank eos first");
  sub->add_option("--endpoint", remote.cfg.endpoint_url, "Chat-completions endpoint URL")
      ->envname("L2_ENDPOINT");
  sub->add_option("--model", remote.cfg.model_name, "Model name sent to the endpoint")
      ->envname("L2_MODEL");
  sub->add_option("--api-key-env", remote.cfg.api_key_env,
                  "Environment variable holding the API key");
}

std::unique_ptr<intervene::ModelBackend> make_backend(const BackendOptions& opts,
                                                      const TransportOptions& remote,
                                                      LanguageCode target, std::uint64_t seed) {
  if (opts.backend == "remote") {
    return std::make_unique<transport::RemoteBackend>(remote.cfg);
  }
  intervene::MockBackend::Config cfg;
  cfg.seed = seed;
  cfg.rank_lang = target;
  cfg.lang_rank = opts.lang_rank;
  cfg.endless = opts.endless;
  cfg.immediate_eos = opts.immediate_eos;
  return std::make_unique<intervene::MockBackend>(cfg);
}

int run(int argc, char** argv) {
  CLI::App app{"Multilingual long-reasoning toolkit: corpus construction, "
               "decode-time language steering, and evaluation"};
  app.require_subcommand(0, 1);
  app.set_config("--config", "", "TOML config file; sections mirror subcommands")
      ->envname("L2_CONFIG");
  std::uint64_t seed = 42;
  bool verbose = false;
  std::uint32_t parallelism = 1;
  app.add_option("--seed", seed, "Root random seed")->envname("L2_SEED");
  app.add_flag("--verbose", verbose, "Enable debug logging")->envname("L2_VERBOSE");
  app.add_option("--parallelism", parallelism, "Worker threads for batch stages")
      ->envname("L2_PARALLELISM");

  // translate: rewrite question text into a target language.
  auto* translate_cmd = app.add_subcommand("translate", "Translate question files");
  std::string tr_in, tr_out, tr_dst;
  TransportOptions tr_transport;
  translate_cmd->add_option("--in", tr_in, "Input questions JSONL")->required();
  translate_cmd->add_option("--out", tr_out, "Output questions JSONL")->required();
  translate_cmd->add_option("--dst", tr_dst, "Target language code")->required();
  add_transport_options(translate_cmd, tr_transport);

  // annotate: generate reasoning traces for questions.
  auto* annotate_cmd = app.add_subcommand("annotate", "Generate reasoning traces");
  std::string an_questions, an_out, an_languages = "en", an_cues;
  TransportOptions an_transport;
  annotate_cmd->add_option("--questions", an_questions, "Questions JSONL")->required();
  annotate_cmd->add_option("--out", an_out, "Output traces JSONL")->required();
  annotate_cmd->add_option("--languages", an_languages, "Comma-separated target languages");
  annotate_cmd->add_option("--cues", an_cues, "Reflection cue lexicon file");
  add_transport_options(annotate_cmd, an_transport);

  // segment: split trace text into reflection fragments.
  auto* segment_cmd = app.add_subcommand("segment", "Segment traces into fragments");
  std::string sg_in, sg_out, sg_cues;
  segment_cmd->add_option("--in", sg_in, "Input traces JSONL")->required();
  segment_cmd->add_option("--out", sg_out, "Output segments JSONL")->required();
  segment_cmd->add_option("--cues", sg_cues, "Reflection cue lexicon file");

  // augment: build multilingual training samples.
  auto* augment_cmd = app.add_subcommand("augment", "Build multilingual corpus samples");
  std::string ag_questions, ag_out, ag_variant = "solution", ag_languages, ag_cues,
              ag_stopwords;
  double ag_p = 0.3;
  std::uint64_t ag_oversample = 0;
  TransportOptions ag_transport;
  augment_cmd->add_option("--questions", ag_questions, "Questions JSONL")->required();
  augment_cmd->add_option("--out", ag_out, "Output samples JSONL")->required();
  augment_cmd->add_option("--variant", ag_variant, "Corpus variant: solution or mixed")
      ->check(CLI::IsMember({"solution", "mixed"}));
  augment_cmd->add_option("--languages", ag_languages, "Comma-separated languages")->required();
  augment_cmd->add_option("--p", ag_p, "Per-fragment translation probability (mixed)");
  augment_cmd->add_option("--oversample-to", ag_oversample,
                          "Repeat samples up to this count (0 = off)");
  augment_cmd->add_option("--cues", ag_cues, "Reflection cue lexicon file");
  augment_cmd->add_option("--stopwords-dir", ag_stopwords,
                          "Directory with per-language stopword files");
  add_transport_options(augment_cmd, ag_transport);

  // intervene: decode with language-token steering.
  auto* intervene_cmd = app.add_subcommand("intervene", "Generate with language steering");
  std::string iv_questions, iv_out, iv_target = "zh";
  intervene::InterventionConfig iv_cfg;
  bool iv_long_budget = false;
  bool iv_per_token = false;
  BackendOptions iv_backend;
  TransportOptions iv_remote;
  intervene_cmd->add_option("--questions", iv_questions, "Questions JSONL")->required();
  intervene_cmd->add_option("--out", iv_out, "Output records JSONL")->required();
  intervene_cmd->add_option("--alpha", iv_cfg.alpha, "Boost probability in [0, 1]");
  intervene_cmd->add_option("--beta", iv_cfg.beta, "Logit adjustment magnitude");
  intervene_cmd->add_option("--top-k", iv_cfg.top_k, "Candidate window size");
  intervene_cmd->add_option("--target-lang", iv_target, "Language whose tokens are steered");
  intervene_cmd->add_option("--temperature", iv_cfg.temperature, "Sampling temperature");
  auto* iv_max_opt =
      intervene_cmd->add_option("--max-tokens", iv_cfg.max_tokens, "Token budget per record");
  intervene_cmd->add_flag("--long-budget", iv_long_budget,
                          "Raise the default token budget from 15000 to 131072");
  intervene_cmd->add_flag("--per-token-draws", iv_per_token,
                          "Draw once per intersecting token instead of once per step");
  add_backend_options(intervene_cmd, iv_backend, iv_remote);

  // sweep: grid evaluation over alpha and k.
  auto* sweep_cmd = app.add_subcommand("sweep", "Grid-evaluate alpha and top-k");
  std::string sw_questions, sw_out, sw_target = "zh", sw_alphas = "0,0.5,1",
              sw_ks = "2,4,6";
  intervene::InterventionConfig sw_cfg;
  BackendOptions sw_backend;
  TransportOptions sw_remote;
  sweep_cmd->add_option("--questions", sw_questions, "Questions JSONL")->required();
  sweep_cmd->add_option("--out", sw_out, "Output records JSONL")->required();
  sweep_cmd->add_option("--alphas", sw_alphas, "Comma-separated boost probabilities");
  sweep_cmd->add_option("--ks", sw_ks, "Comma-separated candidate window sizes");
  sweep_cmd->add_option("--beta", sw_cfg.beta, "Logit adjustment magnitude");
  sweep_cmd->add_option("--target-lang", sw_target, "Language whose tokens are steered");
  sweep_cmd->add_option("--temperature", sw_cfg.temperature, "Sampling temperature");
  sweep_cmd->add_option("--max-tokens", sw_cfg.max_tokens, "Token budget per record");
  add_backend_options(sweep_cmd, sw_backend, sw_remote);

  // score: compare generation records against gold answers.
  auto* score_cmd = app.add_subcommand("score", "Score records against gold answers");
  std::string sc_gold, sc_records, sc_out;
  score_cmd->add_option("--gold", sc_gold, "Gold answers JSONL")->required();
  score_cmd->add_option("--records", sc_records, "Generation records JSONL")->required();
  score_cmd->add_option("--out", sc_out, "Output report directory")->required();

  // report: re-render report files from saved results.
  auto* report_cmd = app.add_subcommand("report", "Render reports from saved results");
  std::string rp_results, rp_out;
  report_cmd->add_option("--results", rp_results, "results.json from a previous score run")
      ->required();
  report_cmd->add_option("--out", rp_out, "Output report directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  log::set_threshold(verbose ? log::Level::Debug : log::Level::Info);

  if (translate_cmd->parsed()) {
    const auto questions = corpus::load_questions(tr_in);
    const LanguageCode dst = parse_lang(tr_dst);
    auto client = make_client(tr_transport, segmenter::default_cue_lexicon());
    std::ofstream out = open_output(tr_out);
    for (corpus::Question q : questions) {
      if (q.lang == dst) {
        log::warn("translate_skipped_same_language", {log::field("id", q.id)});
      } else {
        q.text = client.translate_text(q.text, q.lang, dst);
        q.lang = dst;
      }
      out << corpus::question_to_json(q).dump() << '\n';
    }
    log::info("translate_done", {log::field("questions", questions.size())});
    return 0;
  }

  if (annotate_cmd->parsed()) {
    const auto questions = corpus::load_questions(an_questions);
    const auto languages = parse_lang_list(an_languages);
    auto client = make_client(an_transport, load_lexicon(an_cues));
    const auto report = client.batch_annotate(questions, languages, parallelism);
    std::vector<corpus::CoTTrace> traces;
    std::size_t failed = 0;
    for (const auto& item : report.items) {
      if (item.trace) {
        traces.push_back(*item.trace);
      } else {
        ++failed;
        log::warn("annotate_item_failed",
                  {log::field("question", questions[item.question_index].id),
                   log::field("error", item.error)});
      }
    }
    corpus::save_traces(traces, an_out);
    log::info("annotate_done",
              {log::field("traces", traces.size()), log::field("failed", failed)});
    if (failed > 0) {
      throw IoError("cli", std::to_string(failed) + " annotation items failed");
    }
    return 0;
  }

  if (segment_cmd->parsed()) {
    const auto traces = corpus::load_traces(sg_in);
    const auto lexicon = load_lexicon(sg_cues);
    std::ofstream out = open_output(sg_out);
    for (const auto& trace : traces) {
      nlohmann::json segs = nlohmann::json::array();
      for (const auto& s : segmenter::segment_cot(trace.raw_text, lexicon)) {
        segs.push_back(corpus::segment_to_json(s));
      }
      out << nlohmann::json{{"question_id", trace.question_id},
                            {"lang", std::string(to_code(trace.lang))},
                            {"segments", std::move(segs)}}
                 .dump()
          << '\n';
    }
    log::info("segment_done", {log::field("traces", traces.size())});
    return 0;
  }

  if (augment_cmd->parsed()) {
    if (!ag_stopwords.empty()) {
      langid::set_active_stopwords(langid::load_stopwords_dir(ag_stopwords));
    }
    const auto questions = corpus::load_questions(ag_questions);
    const auto languages = parse_lang_list(ag_languages);
    auto client = make_client(ag_transport, load_lexicon(ag_cues));

    std::vector<corpus::AugmentedSample> samples;
    if (ag_variant == "solution") {
      corpus::DatasetSpec spec;
      spec.source = questions.empty() ? corpus::QuestionSource::Other : questions[0].source;
      spec.n_questions = questions.size();
      spec.languages = languages;
      spec.mixture_prob = ag_p;
      spec.seed = seed;
      samples = augmenter::build_solution_level(spec, questions, client, parallelism);
    } else {
      for (const auto& q : questions) {
        const auto trace = client.annotate_cot(q, q.lang);
        for (LanguageCode target : languages) {
          if (target == q.lang) {
            log::warn("mixture_target_equals_base",
                      {log::field("id", q.id), log::field("lang", to_code(target))});
            continue;
          }
          corpus::DatasetSpec spec;
          spec.source = q.source;
          spec.n_questions = questions.size();
          spec.languages = {q.lang, target};
          spec.mixture_prob = ag_p;
          spec.seed = seed;
          const std::uint64_t item_seed =
              derive_stream(seed, q.id + ":" + std::string(to_code(target)));
          samples.push_back(augmenter::build_step_mixture(spec, q, trace, target, ag_p,
                                                          item_seed, client));
        }
      }
    }

    std::size_t structural_errors = 0;
    for (const auto& sample : samples) {
      const auto violations = augmenter::validate_mixture(sample);
      for (const auto& v : violations) {
        if (v.severity == augmenter::Severity::Error) {
          ++structural_errors;
          log::error("sample_invalid", {log::field("id", sample.question.id),
                                        log::field("message", v.message)});
        } else {
          log::warn("sample_suspect", {log::field("id", sample.question.id),
                                       log::field("message", v.message)});
        }
      }
    }
    if (structural_errors > 0) {
      throw ArgumentError("cli", std::to_string(structural_errors) +
                                     " samples failed structural validation");
    }
    if (ag_oversample > 0) {
      samples = augmenter::oversample(samples, ag_oversample, seed);
    }
    corpus::save_dataset(samples, ag_out);
    log::info("augment_done", {log::field("samples", samples.size())});
    return 0;
  }

  if (intervene_cmd->parsed()) {
    const auto questions = corpus::load_questions(iv_questions);
    iv_cfg.target_lang = parse_lang(iv_target);
    iv_cfg.per_token_draws = iv_per_token;
    if (iv_long_budget && iv_max_opt->count() == 0) iv_cfg.max_tokens = 131072;
    auto backend = make_backend(iv_backend, iv_remote, iv_cfg.target_lang, seed);
    iv_cfg.lang_token_ids = backend->lang_token_ids(iv_cfg.target_lang);
    std::ofstream out = open_output(iv_out);
    for (const auto& q : questions) {
      intervene::InterventionConfig cfg = iv_cfg;
      cfg.seed = derive_stream(seed, q.id);
      const auto record =
          intervene::generate_with_intervention(*backend, backend->encode(q.text), cfg, q.id);
      out << intervene::record_to_json(record, cfg).dump() << '\n';
      log::info("record_done",
                {log::field("id", q.id), log::field("tokens", record.output.size()),
                 log::field("stop", intervene::stop_reason_name(record.stop_reason))});
    }
    return 0;
  }

  if (sweep_cmd->parsed()) {
    const auto questions = corpus::load_questions(sw_questions);
    sw_cfg.target_lang = parse_lang(sw_target);
    sw_cfg.seed = seed;
    auto backend = make_backend(sw_backend, sw_remote, sw_cfg.target_lang, seed);
    sw_cfg.lang_token_ids = backend->lang_token_ids(sw_cfg.target_lang);
    intervene::SweepPlan plan;
    for (const auto& q : questions) {
      plan.prompt_ids.push_back(q.id);
      plan.prompts.push_back(backend->encode(q.text));
    }
    plan.alphas = parse_csv_numbers<double>(sw_alphas, "alpha");
    plan.ks = parse_csv_numbers<std::uint32_t>(sw_ks, "k");
    plan.base = sw_cfg;
    std::ofstream out = open_output(sw_out);
    const std::size_t ok = intervene::sweep(*backend, plan, out, parallelism);
    const std::size_t cells = plan.prompts.size() * plan.alphas.size() * plan.ks.size();
    log::info("sweep_done", {log::field("ok", ok), log::field("cells", cells)});
    if (ok < cells) {
      throw IoError("cli", std::to_string(cells - ok) + " sweep cells failed");
    }
    return 0;
  }

  if (score_cmd->parsed()) {
    const auto gold = evalharness::load_gold(sc_gold);
    const auto records = evalharness::load_scored_inputs(sc_records);
    const auto results = evalharness::score_grouped(records, gold);
    evalharness::report(results, sc_out);
    for (const auto& r : results) {
      log::info("scored",
                {log::field("dataset", r.dataset), log::field("language", r.language),
                 log::field("accuracy", evalharness::format_ratio4(r.n_correct, r.n_items))});
    }
    return 0;
  }

  if (report_cmd->parsed()) {
    std::ifstream in(rp_results, std::ios::binary);
    if (!in) throw IoError("cli", "cannot open results file '" + rp_results + "'");
    nlohmann::json j;
    try {
      in >> j;
    } catch (const nlohmann::json::exception& e) {
      throw SchemaError("cli", 0, "", std::string("invalid results JSON: ") + e.what());
    }
    std::vector<evalharness::EvalResult> results;
    for (const auto& item : j) results.push_back(evalharness::eval_result_from_json(item));
    evalharness::report(results, rp_out);
    log::info("report_done", {log::field("groups", results.size())});
    return 0;
  }

  std::cout << app.help();
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  try {
    return run(argc, argv);
  } catch (const l2::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
}
