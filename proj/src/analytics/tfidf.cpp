#include "campsim/analytics/tfidf.hpp"

#include <algorithm>
#include <cmath>
#include <map>

#include "campsim/core/error.hpp"
#include "campsim/core/text.hpp"

namespace campsim::analytics {

std::vector<std::string> tokenize(std::string_view text_in, Tokenizer tokenizer) {
  const std::u32string cps = text::decode_utf8(text_in);
  std::vector<std::u32string> segments;
  std::u32string cur;
  for (char32_t c : cps) {
    if (text::is_space(c)) {
      if (!cur.empty()) segments.push_back(std::move(cur));
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) segments.push_back(std::move(cur));

  std::vector<std::string> tokens;
  for (const auto& seg : segments) {
    if (tokenizer == Tokenizer::Whitespace || seg.size() == 1) {
      tokens.push_back(text::encode_utf8(seg));
      continue;
    }
    for (std::size_t i = 0; i + 1 < seg.size(); ++i) tokens.push_back(text::encode_utf8(seg.substr(i, 2)));
  }
  return tokens;
}

DenseMatrix TfidfMatrix::dense() const {
  DenseMatrix m(rows(), cols());
  for (std::size_t i = 0; i < weights.size(); ++i) {
    auto r = m.row(i);
    for (const auto& [col, w] : weights[i]) r[col] = w;
  }
  return m;
}

TfidfMatrix tfidf_vectors(std::span<const std::string> docs, Tokenizer tokenizer) {
  if (docs.empty()) throw Error(ErrorCode::TooFewDocs, "no documents");

  std::vector<std::map<std::string, double>> bags(docs.size());
  std::map<std::string, std::size_t> df;
  for (std::size_t i = 0; i < docs.size(); ++i) {
    if (docs[i].empty()) throw Error(ErrorCode::EmptyDoc, "document " + std::to_string(i) + " is empty");
    for (auto& tok : tokenize(docs[i], tokenizer)) bags[i][std::move(tok)] += 1.0;
    for (const auto& [term, _] : bags[i]) ++df[term];
  }

  TfidfMatrix out;
  std::map<std::string, std::size_t> column;
  out.vocabulary.reserve(df.size());
  for (const auto& [term, _] : df) {
    column.emplace(term, out.vocabulary.size());
    out.vocabulary.push_back(term);
  }

  const double n = static_cast<double>(docs.size());
  out.counts.resize(docs.size());
  out.weights.resize(docs.size());
  for (std::size_t i = 0; i < docs.size(); ++i) {
    for (const auto& [term, count] : bags[i]) {
      const std::size_t col = column.at(term);
      out.counts[i].emplace_back(col, count);
      const auto d = df.at(term);
      if (d == docs.size()) continue;
      out.weights[i].emplace_back(col, count * std::log(n / static_cast<double>(d)));
    }
  }
  return out;
}

}  // namespace campsim::analytics
