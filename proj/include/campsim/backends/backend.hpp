#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "campsim/core/types.hpp"

namespace campsim {

enum class RequestKind { Profile, EventGraph, StudentTurn, CounselorTurn, Summary, Judge, Free };

std::string_view to_string(RequestKind k) noexcept;

struct GenerationRequest {
  std::string system_prompt;
  std::string user_prompt;
  double temperature = 0.7;
  std::optional<std::uint64_t> seed;
  int max_length = 4096;
  RequestKind kind = RequestKind::Free;
  /// Structured context the prompt was rendered from. Remote backends ignore
  /// it; the mock uses it to emit schema-valid text.
  json hints = json::object();

  /// SHA-256 over the rendered prompts only. Two requests with the same
  /// prompt text share a digest regardless of seed or hints.
  std::string prompt_digest() const;
};

struct EmbeddingVector {
  std::vector<double> values;
};

/// Text-generation and embedding service. Implementations must tolerate
/// concurrent calls.
class Backend {
 public:
  virtual ~Backend() = default;

  /// Returns non-empty text.
  virtual std::string generate(const GenerationRequest& req) = 0;

  /// One unit-norm vector per input, same order. Throws Error(EmptyText) for
  /// any empty input.
  virtual std::vector<EmbeddingVector> embed(std::span<const std::string> texts) = 0;

  virtual std::string id() const = 0;
};

/// Throws Error(Config) if the user prompt is empty or max_length is not positive.
void check_request(const GenerationRequest& req);

double cosine(const EmbeddingVector& a, const EmbeddingVector& b);

// ---------------------------------------------------------------------------
// Configuration
// ---------------------------------------------------------------------------

struct BackendConfig {
  enum class Type { Mock, Live };
  Type type = Type::Mock;

  // live
  std::string endpoint;             // base URL, e.g. https://api.example.com/v1
  std::string chat_path = "/chat/completions";
  std::string embed_path = "/embeddings";
  std::string model;
  std::string embed_model;
  std::string api_key_env = "CAMPSIM_API_KEY";  // empty: no credential sent
  std::string auth_header = "Authorization";
  std::string auth_prefix = "Bearer ";
  int max_attempts = 3;
  int backoff_ms = 1000;            // doubled after each failed attempt
  int timeout_s = 120;

  // shared
  double temperature = 0.7;
  std::uint64_t seed = 0;

  // mock
  int embed_dim = 256;
};

void to_json(json& j, const BackendConfig& c);
void from_json(const json& j, BackendConfig& c);

/// Builds a backend from configuration. Throws Error(Config) on bad settings,
/// including a live backend whose credential variable is unset.
std::unique_ptr<Backend> make_backend(const BackendConfig& config);

}  // namespace campsim
