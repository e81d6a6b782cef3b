#pragma once

#include <cstddef>
#include <span>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace campsim::analytics {

enum class Tokenizer { CharBigram, Whitespace };

/// Character bigrams over Unicode scalars within whitespace-separated
/// segments; a one-character segment contributes itself as a unigram.
/// Whitespace: the segments themselves.
std::vector<std::string> tokenize(std::string_view text, Tokenizer tokenizer);

/// Row-major dense matrix of doubles.
struct DenseMatrix {
  std::size_t rows = 0;
  std::size_t cols = 0;
  std::vector<double> data;

  DenseMatrix() = default;
  DenseMatrix(std::size_t r, std::size_t c) : rows(r), cols(c), data(r * c, 0.0) {}

  std::span<double> row(std::size_t i) { return {data.data() + i * cols, cols}; }
  std::span<const double> row(std::size_t i) const { return {data.data() + i * cols, cols}; }
};

using SparseRow = std::vector<std::pair<std::size_t, double>>;  // (column, value), column-sorted

struct TfidfMatrix {
  std::vector<std::string> vocabulary;  // sorted; column j is vocabulary[j]
  std::vector<SparseRow> counts;        // raw term counts
  std::vector<SparseRow> weights;       // tf * ln(N / df); zero weights omitted

  std::size_t rows() const noexcept { return weights.size(); }
  std::size_t cols() const noexcept { return vocabulary.size(); }
  DenseMatrix dense() const;
};

/// tf = raw count, idf = ln(N / df). Terms present in every document get
/// weight 0. Row order follows `docs`. Throws Error(EmptyDoc) for an empty
/// document and Error(TooFewDocs) for an empty list.
TfidfMatrix tfidf_vectors(std::span<const std::string> docs, Tokenizer tokenizer = Tokenizer::CharBigram);

}  // namespace campsim::analytics
