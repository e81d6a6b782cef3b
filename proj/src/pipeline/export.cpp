#include "campsim/pipeline/export.hpp"

#include <algorithm>

#include "campsim/core/error.hpp"
#include "campsim/pipeline/storage.hpp"

namespace campsim::pipeline {

std::optional<ExportFormat> parse_export_format(std::string_view s) {
  if (s == "jsonl") return ExportFormat::Jsonl;
  if (s == "per_student_json" || s == "json") return ExportFormat::PerStudentJson;
  return std::nullopt;
}

std::vector<UtteranceRow> utterance_rows(const StudentTrajectory& traj) {
  std::vector<UtteranceRow> rows;
  const std::string id = traj.id();
  for (const auto& s : traj.sessions) {
    for (const auto& t : s.turns) rows.push_back({id, s.session_index, t.index, t.role, t.text});
  }
  return rows;
}

json trajectory_json(const StudentTrajectory& traj) {
  return json{{"profile", traj.profile ? json(*traj.profile) : json(nullptr)},
              {"graph", traj.graph ? json(*traj.graph) : json(nullptr)},
              {"sessions", traj.sessions},
              {"memory", traj.memory}};
}

std::vector<std::string> passing_students(const fs::path& root) {
  const Layout layout{root};
  const auto report = read_json(layout.qc_report());
  if (!report) throw Error(ErrorCode::StageFailure, "no QC report under " + root.string() + "; run qc first");
  std::vector<std::string> out;
  try {
    for (const auto& r : report->at("reports")) {
      if (r.at("verdict").get<std::string>() == "pass") out.push_back(r.at("trajectory_id").get<std::string>());
    }
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, "QC report is malformed: " + std::string(e.what()));
  }
  std::sort(out.begin(), out.end());
  return out;
}

ExportResult export_dataset(const fs::path& root, ExportFormat format) {
  const Layout layout{root};
  const auto ids = passing_students(root);
  if (ids.empty()) throw Error(ErrorCode::NothingToExport, "no trajectory passed QC");

  ExportResult result;
  std::error_code ec;
  fs::remove_all(layout.export_dir() / "students", ec);
  fs::remove(layout.export_dir() / "dataset.jsonl", ec);
  std::string jsonl;
  for (const auto& id : ids) {
    const StudentTrajectory traj = load_trajectory(layout.student(id));
    ++result.trajectories;
    if (format == ExportFormat::Jsonl) {
      for (const auto& row : utterance_rows(traj)) {
        jsonl += json(row).dump();
        jsonl += '\n';
        ++result.rows;
      }
    } else {
      const fs::path file = layout.export_dir() / "students" / (id + ".json");
      write_json(file, trajectory_json(traj));
      result.rows += utterance_rows(traj).size();
      result.files.push_back(file);
    }
  }
  if (format == ExportFormat::Jsonl) {
    const fs::path file = layout.export_dir() / "dataset.jsonl";
    write_text(file, jsonl);
    result.files.push_back(file);
  }
  return result;
}

}  // namespace campsim::pipeline
