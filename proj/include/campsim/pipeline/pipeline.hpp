#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "campsim/analytics/corpus_stats.hpp"
#include "campsim/backends/backend.hpp"
#include "campsim/pipeline/config.hpp"
#include "campsim/pipeline/export.hpp"
#include "campsim/pipeline/manifest.hpp"
#include "campsim/pipeline/storage.hpp"
#include "campsim/qc/quality_control.hpp"

namespace campsim::pipeline {

struct StageSummary {
  std::string stage;
  int done = 0;
  int skipped = 0;
  int failed = 0;
};

struct PipelineResult {
  int exit_code = 0;  // 0 success, 1 some stage recorded an unrecovered failure
  std::vector<StageSummary> stages;
};

using LogSink = std::function<void(const std::string&)>;

/// QC over every student directory under `students_dir`. Writes
/// `out_dir`/qc_report.json, and copies each rejected trajectory into
/// `quarantine_dir`/<id>/ together with its own qc_report.json. Existing
/// quarantine contents are replaced.
std::vector<qc::QCReport> qc_directory(const fs::path& students_dir, const fs::path& out_dir,
                                       const fs::path& quarantine_dir, const qc::QcOptions& options);

/// Corpus statistics over the utterances of the given trajectories.
analytics::CorpusStats trajectory_stats(std::span<const StudentTrajectory> corpus);

/// Profile-dimension TF-IDF similarity and embedding-based dialogue
/// similarity; either part is null when the corpus has fewer than two items.
json diversity_report(std::span<const StudentTrajectory> corpus, Backend& embedder);

/// Stage runner over one output root. Construction validates the
/// configuration and builds every backend before any work starts.
class Runner {
 public:
  explicit Runner(PipelineConfig config, LogSink log = {});

  StageSummary run_profiles();
  StageSummary run_graphs();
  StageSummary run_simulate();
  /// Corpus-level stages rerun when an earlier stage changed anything in this
  /// run, when their outputs are missing, or when `force` is set.
  StageSummary run_qc(bool force = false);
  StageSummary run_analytics(bool force = false);
  StageSummary run_export(ExportFormat format = ExportFormat::Jsonl, bool force = false);

  /// profiles -> graphs -> simulate -> qc -> analytics -> export.
  PipelineResult run_all();

  const Manifest& manifest() const noexcept { return manifest_; }
  const Layout& layout() const noexcept { return layout_; }
  const PipelineConfig& config() const noexcept { return config_; }
  Backend& generator() { return *generator_; }
  qc::QcOptions qc_options() const;

 private:
  void note(const std::string& msg) const;
  StageSummary commit(const std::string& stage, std::vector<StageRecord> records);
  bool corpus_stage_current(const std::string& stage, const fs::path& output) const;

  PipelineConfig config_;
  Layout layout_;
  LogSink log_;
  std::unique_ptr<Backend> generator_;
  std::unique_ptr<Backend> judge_;
  std::unique_ptr<Backend> embedder_;
  Manifest manifest_;
  bool changed_ = false;
  bool failed_ = false;
};

PipelineResult run_pipeline(const PipelineConfig& config, LogSink log = {});

}  // namespace campsim::pipeline
