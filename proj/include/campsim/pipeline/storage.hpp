#pragma once

#include <filesystem>
#include <optional>
#include <string>
#include <vector>

#include "campsim/core/types.hpp"
#include "campsim/sim/simulator.hpp"

namespace campsim::pipeline {

namespace fs = std::filesystem;

/// On-disk layout of one output root:
///   manifest.json
///   students/<id>/profile.json, events.json, sessions/session_<t>.json,
///                 memory.json, prompt_log.json
///   qc/qc_report.json, quarantine/<id>/...
///   analytics/stats.json, analytics/similarity.json
///   export/dataset.jsonl or export/students/<id>.json
struct Layout {
  fs::path root;

  fs::path manifest() const { return root / "manifest.json"; }
  fs::path students() const { return root / "students"; }
  fs::path student(const std::string& id) const { return students() / id; }
  fs::path rejects() const { return root / "rejects.json"; }
  fs::path qc_dir() const { return root / "qc"; }
  fs::path qc_report() const { return qc_dir() / "qc_report.json"; }
  fs::path quarantine() const { return root / "quarantine"; }
  fs::path analytics() const { return root / "analytics"; }
  fs::path export_dir() const { return root / "export"; }
};

std::string student_id_for(int ordinal);  // 1 -> "S001"

/// Writes pretty JSON plus a trailing newline through a temporary file and a
/// rename, so readers never see a half-written file.
void write_json(const fs::path& path, const json& value);
void write_text(const fs::path& path, const std::string& text);

/// nullopt when the file is absent; Error(Io) when it exists but is not JSON.
std::optional<json> read_json(const fs::path& path);

/// Student directories under `students_dir`, sorted by name.
std::vector<std::string> list_students(const fs::path& students_dir);

void save_profile(const fs::path& dir, const StudentProfile& p);
void save_graph(const fs::path& dir, const StressEventGraph& g);

/// Replaces sessions/, memory.json and prompt_log.json together.
void save_simulation(const fs::path& dir, const StudentTrajectory& traj, const sim::PromptLog& log);

/// Removes simulation outputs so a failed or stale run leaves no partial trajectory.
void clear_simulation(const fs::path& dir);

/// Reads whatever is present; absent files leave the corresponding member
/// empty. Files that exist but do not decode throw Error(Io).
StudentTrajectory load_trajectory(const fs::path& dir);
std::optional<sim::PromptLog> load_prompt_log(const fs::path& dir);

/// Recursive copy of one student directory.
void copy_student(const fs::path& from, const fs::path& to);

}  // namespace campsim::pipeline
