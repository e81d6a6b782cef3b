#include "campsim/backends/http_backend.hpp"

#include <httplib.h>

#include <chrono>
#include <cmath>
#include <cstdlib>
#include <thread>

#include "campsim/core/error.hpp"
#include "campsim/core/text.hpp"

namespace campsim {

namespace {

struct Endpoint {
  std::string scheme_host_port;
  std::string base_path;
};

Endpoint split_endpoint(const std::string& url) {
  const auto scheme_end = url.find("://");
  if (scheme_end == std::string::npos) throw Error(ErrorCode::Config, "endpoint must include a scheme: " + url);
  const auto path_start = url.find('/', scheme_end + 3);
  Endpoint e;
  e.scheme_host_port = url.substr(0, path_start);
  e.base_path = path_start == std::string::npos ? "" : url.substr(path_start);
  while (!e.base_path.empty() && e.base_path.back() == '/') e.base_path.pop_back();
  return e;
}

bool retryable_status(int status) { return status == 408 || status == 429 || status >= 500; }

}  // namespace

HttpBackend::HttpBackend(BackendConfig config) : config_(std::move(config)) {
  if (config_.endpoint.empty()) throw Error(ErrorCode::Config, "live backend needs an endpoint");
  if (config_.model.empty()) throw Error(ErrorCode::Config, "live backend needs a model name");
  if (config_.max_attempts < 1) throw Error(ErrorCode::Config, "max_attempts must be >= 1");
  split_endpoint(config_.endpoint);
  if (!config_.api_key_env.empty()) {
    const char* key = std::getenv(config_.api_key_env.c_str());
    if (key == nullptr || *key == '\0') {
      throw Error(ErrorCode::Config, "credential variable " + config_.api_key_env + " is not set");
    }
    credential_ = key;
  }
  sleeper_ = [](int ms) { std::this_thread::sleep_for(std::chrono::milliseconds(ms)); };
}

std::string HttpBackend::id() const { return "live:" + config_.model; }

json HttpBackend::post_with_retry(const std::string& path, const json& body) {
  const Endpoint ep = split_endpoint(config_.endpoint);
  const std::string full_path = ep.base_path + path;
  const std::string payload = body.dump();

  httplib::Headers headers;
  if (!credential_.empty()) headers.emplace(config_.auth_header, config_.auth_prefix + credential_);

  std::string last_error;
  int delay = config_.backoff_ms;
  for (int attempt = 1; attempt <= config_.max_attempts; ++attempt) {
    ++attempts_;
    httplib::Client client(ep.scheme_host_port);
    client.set_connection_timeout(std::min(config_.timeout_s, 30), 0);
    client.set_read_timeout(config_.timeout_s, 0);
    client.set_write_timeout(config_.timeout_s, 0);
    auto res = client.Post(full_path, headers, payload, "application/json");
    if (res && res->status >= 200 && res->status < 300) {
      auto parsed = json::parse(res->body, nullptr, false);
      if (parsed.is_discarded()) throw Error(ErrorCode::Parse, "backend returned a non-JSON body");
      return parsed;
    }
    if (res && !retryable_status(res->status)) {
      throw Error(ErrorCode::RequestRejected,
                  "HTTP " + std::to_string(res->status) + " from " + full_path + ": " + res->body.substr(0, 200));
    }
    last_error = res ? "HTTP " + std::to_string(res->status) : httplib::to_string(res.error());
    if (attempt < config_.max_attempts) {
      sleeper_(delay);
      delay *= 2;
    }
  }
  throw Error(ErrorCode::Transport,
              last_error + " after " + std::to_string(config_.max_attempts) + " attempts to " + full_path);
}

std::string HttpBackend::generate(const GenerationRequest& req) {
  check_request(req);
  json body{{"model", config_.model},
            {"messages",
             json::array({json{{"role", "system"}, {"content", req.system_prompt}},
                          json{{"role", "user"}, {"content", req.user_prompt}}})},
            {"temperature", req.temperature},
            {"max_tokens", req.max_length}};
  if (req.seed) body["seed"] = *req.seed;

  const json res = post_with_retry(config_.chat_path, body);
  try {
    const json& choice = res.at("choices").at(0);
    if (choice.value("finish_reason", "") == "length") {
      throw Error(ErrorCode::BudgetExceeded, "reply truncated at max_length " + std::to_string(req.max_length));
    }
    const json& content = choice.at("message").at("content");
    std::string out = content.is_string() ? content.get<std::string>() : std::string{};
    if (text::is_blank(out)) throw Error(ErrorCode::EmptyUtterance, "backend returned an empty reply");
    return out;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("unexpected chat response shape: ") + e.what());
  }
}

std::vector<EmbeddingVector> HttpBackend::embed(std::span<const std::string> texts) {
  for (const auto& t : texts) {
    if (t.empty()) throw Error(ErrorCode::EmptyText, "cannot embed empty text");
  }
  std::vector<EmbeddingVector> out;
  if (texts.empty()) return out;
  json body{{"model", config_.embed_model.empty() ? config_.model : config_.embed_model},
            {"input", std::vector<std::string>(texts.begin(), texts.end())}};
  const json res = post_with_retry(config_.embed_path, body);
  try {
    const json& data = res.at("data");
    if (data.size() != texts.size()) throw Error(ErrorCode::Parse, "embedding count does not match input count");
    out.resize(texts.size());
    for (std::size_t i = 0; i < data.size(); ++i) {
      const json& item = data.at(i);
      const auto idx = item.value("index", i);
      if (idx >= out.size()) throw Error(ErrorCode::Parse, "embedding index out of range");
      out[idx].values = item.at("embedding").get<std::vector<double>>();
      double norm = 0.0;
      for (double v : out[idx].values) norm += v * v;
      norm = std::sqrt(norm);
      if (norm > 0.0) {
        for (double& v : out[idx].values) v /= norm;
      }
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Parse, std::string("unexpected embedding response shape: ") + e.what());
  }
  return out;
}

}  // namespace campsim
