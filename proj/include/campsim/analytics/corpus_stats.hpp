#pragma once

#include <cstdint>
#include <filesystem>
#include <set>
#include <span>
#include <string>

#include "campsim/core/types.hpp"

namespace campsim::analytics {

/// Character counts are Unicode scalar counts; every character counts the same.
struct CorpusStats {
  std::int64_t n_profiles = 0;
  std::int64_t n_units = 0;
  std::int64_t n_student_units = 0;
  std::int64_t n_counselor_units = 0;
  std::int64_t chars_total = 0;
  std::int64_t chars_student = 0;
  std::int64_t chars_counselor = 0;
  double avg_per_unit = 0.0;
  double avg_per_student_utt = 0.0;
  double avg_per_counselor_utt = 0.0;
};

void to_json(json& j, const CorpusStats& s);

/// Streaming accumulator; one call per utterance.
class CorpusStatsBuilder {
 public:
  void add(const std::string& student_id, Role role, std::string_view text);
  void add(const UtteranceRow& row) { add(row.student_id, row.role, row.text); }

  /// Throws Error(EmptyDataset) if nothing was added.
  CorpusStats finish() const;

 private:
  std::set<std::string> students_;
  CorpusStats acc_;
};

CorpusStats corpus_stats(std::span<const UtteranceRow> rows);

/// Reads a JSON-Lines utterance export.
CorpusStats corpus_stats_file(const std::filesystem::path& jsonl);

}  // namespace campsim::analytics
