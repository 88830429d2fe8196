#pragma once

// OpenAI-compatible chat-completions bindings: an HTTP Transport for the
// translation/annotation client and a ModelBackend adapter for decode-time
// steering. Only the CLI includes this header so the library itself carries
// no TLS or socket dependencies.
//
// Define CPPHTTPLIB_OPENSSL_SUPPORT before including to enable https URLs.

#include <cstdlib>
#include <map>
#include <mutex>
#include <set>
#include <string>
#include <string_view>
#include <vector>

#include <httplib.h>
#include <json.hpp>

#include "l2/error.hpp"
#include "l2/intervene.hpp"
#include "l2/lang.hpp"
#include "l2/langid.hpp"
#include "l2/log.hpp"
#include "l2/translator.hpp"

namespace l2::transport {

struct ParsedUrl {
  std::string scheme_host;  // e.g. "https://api.example.com:8443"
  std::string path;         // e.g. "/v1/chat/completions"
};

inline ParsedUrl parse_url(std::string_view url) {
  const std::size_t scheme_end = url.find("://");
  if (scheme_end == std::string_view::npos) {
    throw ArgumentError("transport", "endpoint url '" + std::string(url) +
                                         "' must start with http:// or https://");
  }
  const std::string_view scheme = url.substr(0, scheme_end);
  if (scheme != "http" && scheme != "https") {
    throw ArgumentError("transport", "unsupported url scheme '" + std::string(scheme) + "'");
  }
  const std::size_t path_start = url.find('/', scheme_end + 3);
  ParsedUrl parsed;
  if (path_start == std::string_view::npos) {
    parsed.scheme_host = std::string(url);
    parsed.path = "/v1/chat/completions";
  } else {
    parsed.scheme_host = std::string(url.substr(0, path_start));
    parsed.path = std::string(url.substr(path_start));
  }
  return parsed;
}

/// Chat-completions call shared by both adapters. Returns the raw response
/// JSON; network or HTTP failures surface as a TransportResponse error.
class ChatEndpoint {
 public:
  explicit ChatEndpoint(const translator::GenClientConfig& cfg)
      : url_(parse_url(cfg.endpoint_url)), model_(cfg.model_name),
        timeout_seconds_(cfg.timeout_seconds) {
    if (const char* key = std::getenv(cfg.api_key_env.c_str()); key != nullptr && *key != '\0') {
      api_key_ = key;
    }
  }

  /// POST `body` to the configured path. ok=false carries an error string.
  translator::TransportResponse post(const nlohmann::json& body) const {
    httplib::Client client(url_.scheme_host);
    client.set_connection_timeout(static_cast<time_t>(timeout_seconds_));
    client.set_read_timeout(static_cast<time_t>(timeout_seconds_));
    httplib::Headers headers;
    if (!api_key_.empty()) headers.emplace("Authorization", "Bearer " + api_key_);
    const auto res = client.Post(url_.path, headers, body.dump(), "application/json");

    translator::TransportResponse response;
    if (!res) {
      response.error = "network error: " + httplib::to_string(res.error());
      return response;
    }
    if (res->status < 200 || res->status >= 300) {
      response.error = "http status " + std::to_string(res->status);
      return response;
    }
    response.ok = true;
    response.text = res->body;
    return response;
  }

  const std::string& model() const noexcept { return model_; }

 private:
  ParsedUrl url_;
  std::string model_;
  std::string api_key_;
  double timeout_seconds_;
};

/// Transport that forwards prompts to a chat-completions server. The first
/// choice's message content is the response text; finish_reason "stop" marks
/// a normal finish.
class HttpTransport : public translator::Transport {
 public:
  explicit HttpTransport(const translator::GenClientConfig& cfg) : endpoint_(cfg) {}

  translator::TransportResponse send(const translator::TransportRequest& request) override {
    const nlohmann::json body{
        {"model", request.model.empty() ? endpoint_.model() : request.model},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", request.prompt}}})}};
    translator::TransportResponse raw = endpoint_.post(body);
    if (!raw.ok) return raw;

    translator::TransportResponse out;
    try {
      const nlohmann::json j = nlohmann::json::parse(raw.text);
      const auto& choice = j.at("choices").at(0);
      out.text = choice.at("message").at("content").get<std::string>();
      out.finished_normally = choice.value("finish_reason", "stop") == "stop";
      out.ok = true;
    } catch (const nlohmann::json::exception& e) {
      out.error = std::string("malformed completion response: ") + e.what();
    }
    return out;
  }

 private:
  ChatEndpoint endpoint_;
};

/// ModelBackend over a chat-completions server, reconstructed one token at a
/// time from `logprobs.top_logprobs`.
///
/// Fidelity limits, by construction of the API:
///  - only the top `top_logprobs` alternatives per step are visible, so the
///    logit vector is sparse; unseen tokens read as -inf and can never be
///    boosted into the candidate set (the local mock exposes the full vocab);
///  - token ids are assigned locally in order of first sight and do not match
///    the server's tokenizer ids;
///  - language-token ids cover only boundary tokens observed so far, so
///    steering pressure starts once the server first surfaces one;
///  - logprobs are post-temperature values renormalized over the visible
///    mass, whereas the local mock adjusts raw pre-temperature logits.
/// Results are therefore indicative, not bit-comparable with MockBackend.
class RemoteBackend : public intervene::ModelBackend {
 public:
  explicit RemoteBackend(const translator::GenClientConfig& cfg, std::uint32_t top_logprobs = 20)
      : endpoint_(cfg), top_logprobs_(top_logprobs) {
    eos_ids_.insert(intern("<eos>"));
  }

  std::uint32_t vocab_size() const override {
    std::lock_guard lock(mutex_);
    return static_cast<std::uint32_t>(texts_.size());
  }

  intervene::LogitVector next_logits(const std::vector<std::uint32_t>& context) override {
    const std::string prompt = decode(context);
    const nlohmann::json body{
        {"model", endpoint_.model()},
        {"messages", nlohmann::json::array({{{"role", "user"}, {"content", prompt}}})},
        {"max_tokens", 1},
        {"logprobs", true},
        {"top_logprobs", top_logprobs_}};
    const translator::TransportResponse raw = endpoint_.post(body);
    if (!raw.ok) {
      throw IoError("transport", "logit probe failed: " + raw.error);
    }
    std::map<std::uint32_t, double> sparse;
    bool stopped = false;
    try {
      const nlohmann::json j = nlohmann::json::parse(raw.text);
      const auto& choice = j.at("choices").at(0);
      stopped = choice.value("finish_reason", "") == "stop";
      const auto& content = choice.at("logprobs").at("content");
      if (!content.empty()) {
        for (const auto& alt : content.at(0).at("top_logprobs")) {
          const std::uint32_t id = intern(alt.at("token").get<std::string>());
          sparse[id] = alt.at("logprob").get<double>();
        }
      }
    } catch (const nlohmann::json::exception& e) {
      throw IoError("transport", std::string("malformed logprob response: ") + e.what());
    }
    std::lock_guard lock(mutex_);
    intervene::LogitVector logits(texts_.size(),
                                  -std::numeric_limits<double>::infinity());
    for (const auto& [id, logprob] : sparse) logits[id] = logprob;
    // A server-side stop has no token alternative; surface it as the
    // synthetic eos dominating the visible candidates.
    if (stopped || sparse.empty()) logits[0] = 0.0;
    return logits;
  }

  const std::set<std::uint32_t>& eos_ids() const override { return eos_ids_; }

  std::vector<std::uint32_t> lang_token_ids(LanguageCode lang) const override {
    std::lock_guard lock(mutex_);
    std::vector<std::uint32_t> ids;
    for (std::uint32_t id = 0; id < texts_.size(); ++id) {
      const auto token = corpus::scan_boundary_tokens(texts_[id]);
      if (!token.empty() && token.front().lang && *token.front().lang == lang) {
        ids.push_back(id);
      }
    }
    return ids;
  }

  std::string token_text(std::uint32_t id) const override {
    std::lock_guard lock(mutex_);
    if (id >= texts_.size()) {
      throw ArgumentError("transport", "token id " + std::to_string(id) + " out of range");
    }
    return texts_[id];
  }

  std::vector<std::uint32_t> encode(std::string_view text) const override {
    // The server tokenizer is opaque; the whole prompt becomes one local id.
    return {intern(std::string(text))};
  }

 private:
  std::uint32_t intern(const std::string& text) const {
    std::lock_guard lock(mutex_);
    if (const auto it = ids_.find(text); it != ids_.end()) return it->second;
    const auto id = static_cast<std::uint32_t>(texts_.size());
    texts_.push_back(text);
    ids_.emplace(text, id);
    return id;
  }

  std::string decode(const std::vector<std::uint32_t>& context) const {
    std::lock_guard lock(mutex_);
    std::string out;
    for (std::uint32_t id : context) {
      if (id < texts_.size()) out += texts_[id];
    }
    return out;
  }

  ChatEndpoint endpoint_;
  std::uint32_t top_logprobs_;
  std::set<std::uint32_t> eos_ids_;
  mutable std::mutex mutex_;
  mutable std::vector<std::string> texts_;
  mutable std::map<std::string, std::uint32_t> ids_;
};

}  // namespace l2::transport
