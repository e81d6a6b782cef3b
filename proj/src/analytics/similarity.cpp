#include "campsim/analytics/similarity.hpp"

#include <algorithm>
#include <cmath>

#include "campsim/core/error.hpp"
#include "campsim/kernels/kernels.hpp"

namespace campsim::analytics {

namespace {

double median_of(std::vector<double> v) {
  if (v.empty()) return 0.0;
  std::sort(v.begin(), v.end());
  const std::size_t n = v.size();
  return n % 2 == 1 ? v[n / 2] : (v[n / 2 - 1] + v[n / 2]) / 2.0;
}

double mean_of(const std::vector<double>& v) {
  if (v.empty()) return 0.0;
  return kernels::sum(v) / static_cast<double>(v.size());
}

double cosine_with_norms(std::span<const double> a, std::span<const double> b, double na, double nb) {
  if (na == 0.0 || nb == 0.0) return 0.0;
  const double c = kernels::dot(a, b) / (na * nb);
  return std::clamp(c, -1.0, 1.0);
}

}  // namespace

void to_json(json& j, const SimilarityStats& s) {
  j = json{{"n_pairs", s.n_pairs}, {"mean", s.mean}, {"median", s.median}};
  if (!s.per_dimension.empty()) j["per_dimension"] = s.per_dimension;
  if (!s.per_view.empty()) j["per_view"] = s.per_view;
}

double cosine(std::span<const double> a, std::span<const double> b) {
  return cosine_with_norms(a, b, std::sqrt(kernels::dot(a, a)), std::sqrt(kernels::dot(b, b)));
}

DenseMatrix cosine_matrix(const DenseMatrix& m) {
  std::vector<double> norms(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) norms[i] = std::sqrt(kernels::dot(m.row(i), m.row(i)));
  DenseMatrix out(m.rows, m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) {
    out.row(i)[i] = norms[i] == 0.0 ? 0.0 : 1.0;
    for (std::size_t j = i + 1; j < m.rows; ++j) {
      const double c = cosine_with_norms(m.row(i), m.row(j), norms[i], norms[j]);
      out.row(i)[j] = c;
      out.row(j)[i] = c;
    }
  }
  return out;
}

SimilarityStats pairwise_cosine(const DenseMatrix& m) {
  if (m.rows < 2) throw Error(ErrorCode::TooFewDocs, "pairwise cosine needs at least 2 rows");
  std::vector<double> norms(m.rows);
  for (std::size_t i = 0; i < m.rows; ++i) norms[i] = std::sqrt(kernels::dot(m.row(i), m.row(i)));

  SimilarityStats s;
  s.pairs.reserve(m.rows * (m.rows - 1) / 2);
  for (std::size_t i = 0; i < m.rows; ++i) {
    for (std::size_t j = i + 1; j < m.rows; ++j) {
      s.pairs.push_back(cosine_with_norms(m.row(i), m.row(j), norms[i], norms[j]));
    }
  }
  s.n_pairs = s.pairs.size();
  s.mean = mean_of(s.pairs);
  s.median = median_of(s.pairs);
  return s;
}

SimilarityStats text_pairwise(std::span<const std::string> docs, Tokenizer tokenizer) {
  const auto tfidf = tfidf_vectors(docs, tokenizer);
  SimilarityStats s = pairwise_cosine(tfidf.dense());
  std::size_t k = 0;
  for (std::size_t i = 0; i < tfidf.rows(); ++i) {
    for (std::size_t j = i + 1; j < tfidf.rows(); ++j, ++k) {
      if (tfidf.counts[i] == tfidf.counts[j]) s.pairs[k] = 1.0;
    }
  }
  s.mean = mean_of(s.pairs);
  s.median = median_of(s.pairs);
  return s;
}

SimilarityStats profile_dimension_similarity(std::span<const StudentProfile> profiles, Tokenizer tokenizer) {
  if (profiles.size() < 2) throw Error(ErrorCode::TooFewDocs, "profile similarity needs at least 2 profiles");

  auto run = [&](auto field) {
    std::vector<std::string> docs;
    docs.reserve(profiles.size());
    for (const auto& p : profiles) docs.push_back(field(p));
    return text_pairwise(docs, tokenizer);
  };

  SimilarityStats overall = run([](const StudentProfile& p) { return profile_text(p); });
  overall.per_dimension["demographics"] = run([](const StudentProfile& p) { return render_demographics(p); }).mean;
  overall.per_dimension["personality"] = run([](const StudentProfile& p) { return p.personality; }).mean;
  overall.per_dimension["background"] = run([](const StudentProfile& p) { return p.background; }).mean;
  overall.per_dimension["core_conflict"] = run([](const StudentProfile& p) { return p.core_conflict; }).mean;
  return overall;
}

SessionViews session_views(const SessionDialogue& s) {
  SessionViews v;
  for (const auto& t : s.turns) {
    auto append = [&](std::string& dst) {
      if (!dst.empty()) dst.push_back('\n');
      dst += t.text;
    };
    append(v.full);
    append(t.role == Role::Student ? v.student_only : v.counselor_only);
  }
  return v;
}

SimilarityStats dialogue_similarity(std::span<const StudentTrajectory> corpus, Backend& embedder) {
  std::vector<std::string> full, student, counselor;
  for (const auto& traj : corpus) {
    for (const auto& s : traj.sessions) {
      auto v = session_views(s);
      full.push_back(std::move(v.full));
      student.push_back(std::move(v.student_only));
      counselor.push_back(std::move(v.counselor_only));
    }
  }
  if (full.size() < 2) throw Error(ErrorCode::TooFewDocs, "dialogue similarity needs at least 2 sessions");

  auto run = [&](const std::vector<std::string>& docs) {
    const auto vecs = embedder.embed(docs);
    const std::size_t dim = vecs.empty() ? 0 : vecs.front().values.size();
    DenseMatrix m(vecs.size(), dim);
    for (std::size_t i = 0; i < vecs.size(); ++i) {
      if (vecs[i].values.size() != dim) throw Error(ErrorCode::Transport, "embedding dimensions differ");
      std::copy(vecs[i].values.begin(), vecs[i].values.end(), m.row(i).begin());
    }
    return pairwise_cosine(m);
  };

  SimilarityStats out = run(full);
  out.per_view["full"] = out.mean;
  out.per_view["student_only"] = run(student).mean;
  out.per_view["counselor_only"] = run(counselor).mean;
  return out;
}

std::vector<RedundantDoc> redundancy_filter(std::span<const std::string> docs, double threshold,
                                            Tokenizer tokenizer) {
  std::vector<RedundantDoc> dropped;
  std::vector<std::size_t> alive(docs.size());
  for (std::size_t i = 0; i < alive.size(); ++i) alive[i] = i;

  while (alive.size() >= 2) {
    std::vector<std::string> subset;
    subset.reserve(alive.size());
    for (auto i : alive) subset.push_back(docs[i]);
    const auto tfidf = tfidf_vectors(subset, tokenizer);
    const auto sims = cosine_matrix(tfidf.dense());

    std::vector<std::size_t> kept;  // positions within `alive`
    std::size_t before = dropped.size();
    for (std::size_t i = 0; i < alive.size(); ++i) {
      const auto hit = std::find_if(kept.begin(), kept.end(), [&](std::size_t k) {
        return tfidf.counts[i] == tfidf.counts[k] || sims.row(i)[k] > threshold;
      });
      if (hit == kept.end()) {
        kept.push_back(i);
      } else {
        dropped.push_back({alive[i], alive[*hit], sims.row(i)[*hit]});
      }
    }
    if (dropped.size() == before) break;
    std::vector<std::size_t> next;
    for (auto k : kept) next.push_back(alive[k]);
    alive = std::move(next);
  }
  return dropped;
}

}  // namespace campsim::analytics
