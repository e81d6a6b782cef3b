#pragma once

#include <filesystem>
#include <string>
#include <vector>

#include "campsim/core/types.hpp"

namespace campsim::pipeline {

enum class ExportFormat { Jsonl, PerStudentJson };

std::optional<ExportFormat> parse_export_format(std::string_view s);

/// One row per utterance in session then turn order.
std::vector<UtteranceRow> utterance_rows(const StudentTrajectory& traj);

/// {profile, graph, sessions, memory}.
json trajectory_json(const StudentTrajectory& traj);

/// Ids the QC report marks as passing, sorted. Throws StageFailure if the
/// root has no QC report.
std::vector<std::string> passing_students(const std::filesystem::path& root);

struct ExportResult {
  std::size_t trajectories = 0;
  std::size_t rows = 0;
  std::vector<std::filesystem::path> files;
};

/// Writes export/dataset.jsonl or export/students/<id>.json for QC-passing
/// trajectories only. Throws NothingToExport when none pass.
ExportResult export_dataset(const std::filesystem::path& root, ExportFormat format);

}  // namespace campsim::pipeline
