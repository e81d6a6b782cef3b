#pragma once

#include <cstdint>

#include "campsim/backends/backend.hpp"

namespace campsim {

/// Deterministic offline backend. Every output is a pure function of the
/// global seed and the request (prompts, seed, kind, hints). For profile,
/// event-graph, summary and judge requests the output is schema-valid for the
/// downstream parser; dialogue turns are template-filled from the hints.
class MockBackend final : public Backend {
 public:
  explicit MockBackend(std::uint64_t seed, int embed_dim = 256);

  std::string generate(const GenerationRequest& req) override;
  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override;
  std::string id() const override;

 private:
  std::uint64_t seed_;
  int embed_dim_;
};

/// Feature hash of character bigrams (single characters for one-character
/// texts) into `dim` buckets, L2-normalized.
EmbeddingVector hashed_bigram_embedding(std::string_view text, std::uint64_t seed, int dim);

}  // namespace campsim
