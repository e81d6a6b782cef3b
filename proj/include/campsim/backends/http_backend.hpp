#pragma once

#include <atomic>
#include <functional>
#include <string>

#include "campsim/backends/backend.hpp"

namespace campsim {

/// Chat-completions style JSON-over-HTTP backend.
///
/// Request body: {"model", "messages": [{"role":"system"}, {"role":"user"}],
/// "temperature", "max_tokens", "seed"?}. Response text is read from
/// choices[0].message.content; finish_reason == "length" is reported as
/// BudgetExceeded. Embeddings use {"model", "input": [...]} -> data[i].embedding.
///
/// Connection failures, 429 and 5xx are retried with exponential backoff up to
/// max_attempts; any other non-2xx status fails immediately.
class HttpBackend final : public Backend {
 public:
  explicit HttpBackend(BackendConfig config);

  std::string generate(const GenerationRequest& req) override;
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::string id() const override;

  /// Total HTTP attempts issued so far (all calls).
  int attempts_made() const noexcept { return attempts_.load(); }

  /// Replaces the sleep used between retries; tests use this to avoid waiting.
  void set_sleeper(std::function<void(int ms)> sleeper) { sleeper_ = std::move(sleeper); }

 private:
  json post_with_retry(const std::string& path, const json& body);

  BackendConfig config_;
  std::string credential_;
  std::atomic<int> attempts_{0};
  std::function<void(int)> sleeper_;
};

}  // namespace campsim
