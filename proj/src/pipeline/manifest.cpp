#include "campsim/pipeline/manifest.hpp"

#include <chrono>
#include <ctime>
#include <fstream>

#include "campsim/core/error.hpp"
#include "campsim/pipeline/storage.hpp"

namespace campsim::pipeline {

std::string_view to_string(StageStatus s) noexcept {
  switch (s) {
    case StageStatus::Done: return "done";
    case StageStatus::Skipped: return "skipped";
    case StageStatus::Failed: return "failed";
  }
  return "done";
}

void to_json(json& j, const StageRecord& r) {
  j = json{{"stage", r.stage},
           {"student_id", r.student_id},
           {"status", std::string(to_string(r.status))},
           {"attempts", r.attempts},
           {"prompt_digests", r.prompt_digests},
           {"detail", r.detail},
           {"timestamp", r.timestamp}};
}

void from_json(const json& j, StageRecord& r) {
  r.stage = j.at("stage").get<std::string>();
  r.student_id = j.at("student_id").get<std::string>();
  const auto status = j.at("status").get<std::string>();
  if (status == "done") {
    r.status = StageStatus::Done;
  } else if (status == "skipped") {
    r.status = StageStatus::Skipped;
  } else if (status == "failed") {
    r.status = StageStatus::Failed;
  } else {
    throw json::other_error::create(501, "unknown stage status " + status, &j);
  }
  r.attempts = j.value("attempts", 0);
  r.prompt_digests = j.value("prompt_digests", std::vector<std::string>{});
  r.detail = j.value("detail", std::string());
  r.timestamp = j.value("timestamp", std::string());
}

Manifest Manifest::open(const std::filesystem::path& path, const std::string& config_digest) {
  Manifest m(config_digest);
  const auto existing = read_json(path);
  if (!existing) return m;
  try {
    const auto digest = existing->at("config_digest").get<std::string>();
    if (digest != config_digest) {
      throw Error(ErrorCode::Config, "output root " + path.parent_path().string() +
                                         " was produced by a different configuration (digest " + digest + ")");
    }
    m.records_ = existing->at("records").get<std::vector<StageRecord>>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Io, "manifest " + path.string() + " is malformed: " + e.what());
  }
  return m;
}

void Manifest::append(StageRecord record) {
  std::lock_guard lock(mu_);
  records_.push_back(std::move(record));
}

void Manifest::save(const std::filesystem::path& path) const {
  std::lock_guard lock(mu_);
  write_json(path, json{{"config_digest", config_digest_}, {"records", records_}});
}

std::vector<StageRecord> Manifest::records() const {
  std::lock_guard lock(mu_);
  return records_;
}

const StageRecord* Manifest::latest(const std::string& stage, const std::string& student_id) const {
  std::lock_guard lock(mu_);
  for (auto it = records_.rbegin(); it != records_.rend(); ++it) {
    if (it->stage == stage && it->student_id == student_id) return &*it;
  }
  return nullptr;
}

json Manifest::without_timestamps() const {
  std::lock_guard lock(mu_);
  json records = json::array();
  for (auto r : records_) {
    r.timestamp.clear();
    records.push_back(r);
  }
  return json{{"config_digest", config_digest_}, {"records", records}};
}

std::string utc_timestamp() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof buf, "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

}  // namespace campsim::pipeline
