#include "campsim/backends/backend.hpp"

#include <cmath>
#include <cstdlib>

#include "campsim/backends/http_backend.hpp"
#include "campsim/backends/mock_backend.hpp"
#include "campsim/core/digest.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/text.hpp"
#include "campsim/kernels/kernels.hpp"

namespace campsim {

std::string_view to_string(RequestKind k) noexcept {
  switch (k) {
    case RequestKind::Profile: return "profile";
    case RequestKind::EventGraph: return "event_graph";
    case RequestKind::StudentTurn: return "student_turn";
    case RequestKind::CounselorTurn: return "counselor_turn";
    case RequestKind::Summary: return "summary";
    case RequestKind::Judge: return "judge";
    case RequestKind::Free: return "free";
  }
  return "free";
}

std::string GenerationRequest::prompt_digest() const {
  std::string buf;
  buf.reserve(system_prompt.size() + user_prompt.size() + 8);
  buf += system_prompt;
  buf += "\n\x1f\n";
  buf += user_prompt;
  return sha256_hex(buf);
}

void check_request(const GenerationRequest& req) {
  if (text::is_blank(req.user_prompt)) throw Error(ErrorCode::Config, "generation request has an empty user prompt");
  if (req.max_length <= 0) throw Error(ErrorCode::Config, "generation request max_length must be positive");
  if (!(req.temperature >= 0.0)) throw Error(ErrorCode::Config, "generation request temperature must be >= 0");
}

double cosine(const EmbeddingVector& a, const EmbeddingVector& b) {
  const double na = std::sqrt(kernels::dot(a.values, a.values));
  const double nb = std::sqrt(kernels::dot(b.values, b.values));
  if (na == 0.0 || nb == 0.0) return 0.0;
  return kernels::dot(a.values, b.values) / (na * nb);
}

void to_json(json& j, const BackendConfig& c) {
  j = json{{"type", c.type == BackendConfig::Type::Mock ? "mock" : "live"},
           {"temperature", c.temperature},
           {"seed", c.seed}};
  if (c.type == BackendConfig::Type::Mock) {
    j["embed_dim"] = c.embed_dim;
    return;
  }
  j["endpoint"] = c.endpoint;
  j["chat_path"] = c.chat_path;
  j["embed_path"] = c.embed_path;
  j["model"] = c.model;
  j["embed_model"] = c.embed_model;
  j["api_key_env"] = c.api_key_env;
  j["auth_header"] = c.auth_header;
  j["auth_prefix"] = c.auth_prefix;
  j["max_attempts"] = c.max_attempts;
  j["backoff_ms"] = c.backoff_ms;
  j["timeout_s"] = c.timeout_s;
}

void from_json(const json& j, BackendConfig& c) {
  c = BackendConfig{};
  const std::string type = j.value("type", "mock");
  if (type == "mock") {
    c.type = BackendConfig::Type::Mock;
  } else if (type == "live") {
    c.type = BackendConfig::Type::Live;
  } else {
    throw Error(ErrorCode::Config, "backend type must be \"mock\" or \"live\", got \"" + type + "\"");
  }
  c.endpoint = j.value("endpoint", c.endpoint);
  c.chat_path = j.value("chat_path", c.chat_path);
  c.embed_path = j.value("embed_path", c.embed_path);
  c.model = j.value("model", c.model);
  c.embed_model = j.value("embed_model", c.model);
  c.api_key_env = j.value("api_key_env", c.api_key_env);
  c.auth_header = j.value("auth_header", c.auth_header);
  c.auth_prefix = j.value("auth_prefix", c.auth_prefix);
  c.max_attempts = j.value("max_attempts", c.max_attempts);
  c.backoff_ms = j.value("backoff_ms", c.backoff_ms);
  c.timeout_s = j.value("timeout_s", c.timeout_s);
  c.temperature = j.value("temperature", c.temperature);
  c.seed = j.value("seed", c.seed);
  c.embed_dim = j.value("embed_dim", c.embed_dim);
}

std::unique_ptr<Backend> make_backend(const BackendConfig& config) {
  if (config.type == BackendConfig::Type::Mock) {
    if (config.embed_dim <= 0) throw Error(ErrorCode::Config, "mock embed_dim must be positive");
    return std::make_unique<MockBackend>(config.seed, config.embed_dim);
  }
  return std::make_unique<HttpBackend>(config);
}

}  // namespace campsim
