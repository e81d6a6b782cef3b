#include "campsim/pipeline/storage.hpp"

#include <algorithm>
#include <cstdio>
#include <fstream>
#include <sstream>

#include "campsim/core/error.hpp"

namespace campsim::pipeline {

std::string student_id_for(int ordinal) {
  char buf[16];
  std::snprintf(buf, sizeof buf, "S%03d", ordinal);
  return buf;
}

void write_text(const fs::path& path, const std::string& text) {
  std::error_code ec;
  if (path.has_parent_path()) fs::create_directories(path.parent_path(), ec);
  const fs::path tmp = path.string() + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error(ErrorCode::Io, "cannot write " + tmp.string());
    out << text;
    if (!out.flush()) throw Error(ErrorCode::Io, "short write to " + tmp.string());
  }
  fs::rename(tmp, path, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot move " + tmp.string() + " into place: " + ec.message());
}

void write_json(const fs::path& path, const json& value) { write_text(path, value.dump(2) + "\n"); }

std::optional<json> read_json(const fs::path& path) {
  std::error_code ec;
  if (!fs::is_regular_file(path, ec)) return std::nullopt;
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Io, path.string() + " is not valid JSON");
  return j;
}

std::vector<std::string> list_students(const fs::path& students_dir) {
  std::vector<std::string> out;
  std::error_code ec;
  if (!fs::is_directory(students_dir, ec)) return out;
  for (const auto& entry : fs::directory_iterator(students_dir)) {
    if (entry.is_directory()) out.push_back(entry.path().filename().string());
  }
  std::sort(out.begin(), out.end());
  return out;
}

void save_profile(const fs::path& dir, const StudentProfile& p) { write_json(dir / "profile.json", p); }

void save_graph(const fs::path& dir, const StressEventGraph& g) { write_json(dir / "events.json", g); }

void clear_simulation(const fs::path& dir) {
  std::error_code ec;
  fs::remove_all(dir / "sessions", ec);
  fs::remove(dir / "memory.json", ec);
  fs::remove(dir / "prompt_log.json", ec);
}

void save_simulation(const fs::path& dir, const StudentTrajectory& traj, const sim::PromptLog& log) {
  clear_simulation(dir);
  for (const auto& s : traj.sessions) {
    write_json(dir / "sessions" / ("session_" + std::to_string(s.session_index) + ".json"), s);
  }
  write_json(dir / "prompt_log.json", log);
  // memory.json last: its presence marks the simulation outputs complete.
  write_json(dir / "memory.json", traj.memory);
}

namespace {

template <typename T>
std::optional<T> decode(const fs::path& path) {
  const auto j = read_json(path);
  if (!j) return std::nullopt;
  try {
    return j->get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, path.string() + " does not decode: " + e.what());
  }
}

}  // namespace

StudentTrajectory load_trajectory(const fs::path& dir) {
  StudentTrajectory traj;
  traj.profile = decode<StudentProfile>(dir / "profile.json");
  traj.graph = decode<StressEventGraph>(dir / "events.json");
  if (auto memory = decode<MemoryState>(dir / "memory.json")) traj.memory = std::move(*memory);

  std::vector<std::pair<int, fs::path>> files;
  std::error_code ec;
  if (fs::is_directory(dir / "sessions", ec)) {
    for (const auto& entry : fs::directory_iterator(dir / "sessions")) {
      const std::string name = entry.path().filename().string();
      if (name.rfind("session_", 0) != 0 || entry.path().extension() != ".json") continue;
      const std::string num = entry.path().stem().string().substr(8);
      if (num.empty() || !std::all_of(num.begin(), num.end(), [](char c) { return c >= '0' && c <= '9'; })) continue;
      files.emplace_back(std::stoi(num), entry.path());
    }
  }
  std::sort(files.begin(), files.end());
  for (const auto& [_, path] : files) traj.sessions.push_back(*decode<SessionDialogue>(path));
  return traj;
}

std::optional<sim::PromptLog> load_prompt_log(const fs::path& dir) {
  return decode<sim::PromptLog>(dir / "prompt_log.json");
}

void copy_student(const fs::path& from, const fs::path& to) {
  std::error_code ec;
  fs::remove_all(to, ec);
  fs::create_directories(to.parent_path(), ec);
  fs::copy(from, to, fs::copy_options::recursive, ec);
  if (ec) throw Error(ErrorCode::Io, "cannot copy " + from.string() + " to " + to.string() + ": " + ec.message());
}

}  // namespace campsim::pipeline
