#pragma once

#include <filesystem>
#include <mutex>
#include <string>
#include <vector>

#include "campsim/core/types.hpp"

namespace campsim::pipeline {

enum class StageStatus { Done, Skipped, Failed };

std::string_view to_string(StageStatus s) noexcept;

struct StageRecord {
  std::string stage;
  std::string student_id;  // "*" for corpus-level stages
  StageStatus status = StageStatus::Done;
  int attempts = 0;
  std::vector<std::string> prompt_digests;
  std::string detail;
  std::string timestamp;  // UTC, ISO 8601

  bool operator==(const StageRecord&) const = default;
};

void to_json(json& j, const StageRecord& r);
void from_json(const json& j, StageRecord& r);

/// Append-only run log bound to one configuration digest. Appends are
/// serialized; callers append a stage's records in student order after the
/// stage barrier so the file content does not depend on thread scheduling.
class Manifest {
 public:
  Manifest() = default;
  explicit Manifest(std::string config_digest) : config_digest_(std::move(config_digest)) {}
  Manifest(Manifest&& other) noexcept
      : config_digest_(std::move(other.config_digest_)), records_(std::move(other.records_)) {}
  Manifest& operator=(Manifest&& other) noexcept {
    config_digest_ = std::move(other.config_digest_);
    records_ = std::move(other.records_);
    return *this;
  }

  /// Loads `path` if present. Throws Error(Config) if it was written for a
  /// different configuration digest and Error(Io) if it cannot be parsed.
  static Manifest open(const std::filesystem::path& path, const std::string& config_digest);

  void append(StageRecord record);
  void save(const std::filesystem::path& path) const;

  const std::string& config_digest() const noexcept { return config_digest_; }
  std::vector<StageRecord> records() const;

  /// Latest record for (stage, student), if any.
  const StageRecord* latest(const std::string& stage, const std::string& student_id) const;

  /// The manifest with timestamps blanked, for reproducibility comparisons.
  json without_timestamps() const;

 private:
  std::string config_digest_;
  std::vector<StageRecord> records_;
  mutable std::mutex mu_;
};

std::string utc_timestamp();

}  // namespace campsim::pipeline
