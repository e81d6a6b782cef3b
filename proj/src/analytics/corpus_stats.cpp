#include "campsim/analytics/corpus_stats.hpp"

#include <fstream>

#include "campsim/core/error.hpp"
#include "campsim/core/text.hpp"

namespace campsim::analytics {

void to_json(json& j, const CorpusStats& s) {
  j = json{{"n_profiles", s.n_profiles},
           {"n_units", s.n_units},
           {"n_student_units", s.n_student_units},
           {"n_counselor_units", s.n_counselor_units},
           {"chars_total", s.chars_total},
           {"chars_student", s.chars_student},
           {"chars_counselor", s.chars_counselor},
           {"avg_per_unit", s.avg_per_unit},
           {"avg_per_student_utt", s.avg_per_student_utt},
           {"avg_per_counselor_utt", s.avg_per_counselor_utt}};
}

void CorpusStatsBuilder::add(const std::string& student_id, Role role, std::string_view text) {
  students_.insert(student_id);
  const auto n = static_cast<std::int64_t>(text::scalar_count(text));
  ++acc_.n_units;
  if (role == Role::Student) {
    ++acc_.n_student_units;
    acc_.chars_student += n;
  } else {
    ++acc_.n_counselor_units;
    acc_.chars_counselor += n;
  }
}

CorpusStats CorpusStatsBuilder::finish() const {
  if (acc_.n_units == 0) throw Error(ErrorCode::EmptyDataset, "no utterances");
  CorpusStats s = acc_;
  s.n_profiles = static_cast<std::int64_t>(students_.size());
  s.chars_total = s.chars_student + s.chars_counselor;
  auto avg = [](std::int64_t chars, std::int64_t count) {
    return count > 0 ? static_cast<double>(chars) / static_cast<double>(count) : 0.0;
  };
  s.avg_per_unit = avg(s.chars_total, s.n_units);
  s.avg_per_student_utt = avg(s.chars_student, s.n_student_units);
  s.avg_per_counselor_utt = avg(s.chars_counselor, s.n_counselor_units);
  return s;
}

CorpusStats corpus_stats(std::span<const UtteranceRow> rows) {
  CorpusStatsBuilder b;
  for (const auto& r : rows) b.add(r);
  return b.finish();
}

CorpusStats corpus_stats_file(const std::filesystem::path& jsonl) {
  std::ifstream in(jsonl);
  if (!in) throw Error(ErrorCode::Io, "cannot open " + jsonl.string());
  CorpusStatsBuilder b;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_blank(line)) continue;
    try {
      b.add(json::parse(line).get<UtteranceRow>());
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Parse, jsonl.string() + ":" + std::to_string(lineno) + ": " + e.what());
    }
  }
  return b.finish();
}

}  // namespace campsim::analytics
