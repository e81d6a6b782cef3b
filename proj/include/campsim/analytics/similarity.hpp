#pragma once

#include <map>
#include <span>
#include <string>
#include <vector>

#include "campsim/analytics/tfidf.hpp"
#include "campsim/backends/backend.hpp"
#include "campsim/core/types.hpp"

namespace campsim::analytics {

struct SimilarityStats {
  std::size_t n_pairs = 0;
  double mean = 0.0;
  double median = 0.0;
  std::map<std::string, double> per_dimension;  // profile analytics
  std::map<std::string, double> per_view;       // dialogue analytics
  std::vector<double> pairs;                    // (0,1), (0,2), ..., (n-2,n-1)
};

void to_json(json& j, const SimilarityStats& s);

/// Cosine of two rows; 0 if either is the zero vector. Clamped to [-1, 1].
double cosine(std::span<const double> a, std::span<const double> b);

/// Full symmetric cosine matrix (n x n) with unit diagonal for non-zero rows.
DenseMatrix cosine_matrix(const DenseMatrix& m);

/// All n(n-1)/2 row pairs with mean and median (median of an even count is
/// the mean of the two central values). Throws Error(TooFewDocs) below 2 rows.
SimilarityStats pairwise_cosine(const DenseMatrix& m);

/// TF-IDF cosine over texts. Pairs with identical raw term counts score 1,
/// including those whose weights vanish because every document shares them.
SimilarityStats text_pairwise(std::span<const std::string> docs, Tokenizer tokenizer = Tokenizer::CharBigram);

/// Overall stats over the concatenated profile text plus per-dimension means
/// for demographics, personality, background, core_conflict.
SimilarityStats profile_dimension_similarity(std::span<const StudentProfile> profiles,
                                             Tokenizer tokenizer = Tokenizer::CharBigram);

/// A document dropped by the redundancy filter and the earlier kept document
/// it collided with.
struct RedundantDoc {
  std::size_t index = 0;
  std::size_t kept_index = 0;
  double cosine = 0.0;
};

/// Greedy first-kept-wins over TF-IDF cosine: document i is dropped when its
/// cosine with some kept document exceeds `threshold`, or when its raw term
/// counts equal that document's. The pass is repeated over the survivors until
/// nothing more is dropped, so filtering the survivors again drops nothing.
/// Returned in the order the documents were dropped.
std::vector<RedundantDoc> redundancy_filter(std::span<const std::string> docs, double threshold,
                                            Tokenizer tokenizer = Tokenizer::CharBigram);

struct SessionViews {
  std::string full;
  std::string student_only;
  std::string counselor_only;
};

SessionViews session_views(const SessionDialogue& s);

/// Embeds the full / student-only / counselor-only view of every session in
/// the corpus and reports per-view pairwise means. mean/median/pairs describe
/// the full view.
SimilarityStats dialogue_similarity(std::span<const StudentTrajectory> corpus, Backend& embedder);

}  // namespace campsim::analytics
