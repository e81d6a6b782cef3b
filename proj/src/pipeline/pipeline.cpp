#include "campsim/pipeline/pipeline.hpp"

#include <algorithm>
#include <map>

#include "campsim/analytics/similarity.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/parallel.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/events/event_graph.hpp"
#include "campsim/profiles/profile_builder.hpp"

namespace campsim::pipeline {

namespace {

constexpr const char* kCorpus = "*";

std::vector<std::string> digests_of(const sim::PromptLog& log) {
  std::vector<std::string> out;
  out.reserve(log.size());
  for (const auto& r : log) out.push_back(r.prompt_digest);
  return out;
}

}  // namespace

// ---------------------------------------------------------------------------
// Corpus-level helpers
// ---------------------------------------------------------------------------

std::vector<qc::QCReport> qc_directory(const fs::path& students_dir, const fs::path& out_dir,
                                       const fs::path& quarantine_dir, const qc::QcOptions& options) {
  const auto ids = list_students(students_dir);
  std::vector<StudentTrajectory> corpus;
  std::vector<sim::PromptLog> logs;
  std::vector<bool> has_log;
  for (const auto& id : ids) {
    StudentTrajectory traj;
    std::optional<sim::PromptLog> log;
    try {
      traj = load_trajectory(students_dir / id);
      log = load_prompt_log(students_dir / id);
    } catch (const Error&) {
      // Undecodable files are reported as structural findings below.
    }
    corpus.push_back(std::move(traj));
    has_log.push_back(log.has_value());
    logs.push_back(log.value_or(sim::PromptLog{}));
  }

  auto reports = qc::run_qc(corpus, logs, options);
  for (std::size_t i = 0; i < reports.size(); ++i) {
    reports[i].trajectory_id = ids[i];
    if (!has_log[i] && !corpus[i].sessions.empty()) {
      reports[i].findings.push_back({qc::Family::Consistency, "PromptLogMissing",
                                     "no prompt log to audit memory causality against"});
    }
  }

  std::error_code ec;
  fs::remove_all(quarantine_dir, ec);
  json all = json::array();
  for (std::size_t i = 0; i < reports.size(); ++i) {
    all.push_back(reports[i]);
    if (reports[i].pass()) continue;
    copy_student(students_dir / ids[i], quarantine_dir / ids[i]);
    write_json(quarantine_dir / ids[i] / "qc_report.json", reports[i]);
  }
  std::size_t passed = 0;
  for (const auto& r : reports) passed += r.pass() ? 1 : 0;
  write_json(out_dir / "qc_report.json",
             json{{"n_trajectories", reports.size()}, {"n_pass", passed}, {"reports", all}});
  return reports;
}

analytics::CorpusStats trajectory_stats(std::span<const StudentTrajectory> corpus) {
  analytics::CorpusStatsBuilder builder;
  for (const auto& traj : corpus) {
    for (const auto& row : utterance_rows(traj)) builder.add(row);
  }
  return builder.finish();
}

json diversity_report(std::span<const StudentTrajectory> corpus, Backend& embedder) {
  std::vector<StudentProfile> profiles;
  for (const auto& t : corpus) {
    if (t.profile) profiles.push_back(*t.profile);
  }
  json out{{"profiles", nullptr}, {"dialogues", nullptr}};
  if (profiles.size() >= 2) {
    const auto stats = analytics::profile_dimension_similarity(profiles);
    json j = stats;
    j.erase("pairs");
    out["profiles"] = j;
  }
  std::size_t sessions = 0;
  for (const auto& t : corpus) sessions += t.sessions.size();
  if (sessions >= 2) {
    const auto stats = analytics::dialogue_similarity(corpus, embedder);
    json j = stats;
    j.erase("pairs");
    out["dialogues"] = j;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Runner
// ---------------------------------------------------------------------------

Runner::Runner(PipelineConfig config, LogSink log)
    : config_(std::move(config)), layout_{config_.output_root}, log_(std::move(log)) {
  sim::check_config(config_.simulation);
  generator_ = make_backend(config_.generator);
  if (config_.judge) judge_ = make_backend(*config_.judge);
  if (config_.embedder) embedder_ = make_backend(*config_.embedder);
  if (config_.qc.use_judge && !judge_) throw Error(ErrorCode::Config, "qc.use_judge needs a judge backend block");
  manifest_ = Manifest::open(layout_.manifest(), config_digest(config_));
}

void Runner::note(const std::string& msg) const {
  if (log_) log_(msg);
}

StageSummary Runner::commit(const std::string& stage, std::vector<StageRecord> records) {
  StageSummary s;
  s.stage = stage;
  const std::string now = utc_timestamp();
  for (auto& r : records) {
    r.stage = stage;
    r.timestamp = now;
    switch (r.status) {
      case StageStatus::Done: ++s.done; break;
      case StageStatus::Skipped: ++s.skipped; break;
      case StageStatus::Failed: ++s.failed; break;
    }
    manifest_.append(std::move(r));
  }
  if (s.done > 0 || s.failed > 0) changed_ = true;
  if (s.failed > 0) failed_ = true;
  manifest_.save(layout_.manifest());
  note(stage + ": " + std::to_string(s.done) + " done, " + std::to_string(s.skipped) + " skipped, " +
       std::to_string(s.failed) + " failed");
  return s;
}

bool Runner::corpus_stage_current(const std::string& stage, const fs::path& output) const {
  if (changed_) return false;
  std::error_code ec;
  if (!fs::exists(output, ec)) return false;
  const StageRecord* last = manifest_.latest(stage, kCorpus);
  return last && last->status != StageStatus::Failed;
}

StageSummary Runner::run_profiles() {
  const int n = config_.students;
  const auto& space = config_.attribute_space;
  const auto attrs = profiles::sample_attributes(space, n, derive_seed(config_.seed, {"attributes"}));
  const std::uint64_t profile_seed = derive_seed(config_.seed, {"profiles"});
  const int budget = config_.profiles.attempt_budget;

  std::vector<std::string> ids;
  for (int i = 0; i < n; ++i) ids.push_back(student_id_for(i + 1));
  std::vector<std::optional<StudentProfile>> current(static_cast<std::size_t>(n));
  std::vector<StageRecord> records(static_cast<std::size_t>(n));
  std::vector<bool> fresh(static_cast<std::size_t>(n), false);

  for (std::size_t i = 0; i < ids.size(); ++i) {
    records[i].student_id = ids[i];
    try {
      const auto j = read_json(layout_.student(ids[i]) / "profile.json");
      if (!j) continue;
      auto p = j->get<StudentProfile>();
      const auto& a = attrs[i];
      if (p.student_id == ids[i] && validate_profile(p, space).ok() && p.demographics.grade == a.grade &&
          p.demographics.major == a.major && p.stress_domain == a.stress_domain) {
        current[i] = std::move(p);
        records[i].status = StageStatus::Skipped;
      }
    } catch (const std::exception&) {
      // Regenerated below.
    }
  }

  auto build = [&](const std::vector<std::size_t>& which, int first_attempt) {
    parallel_for(which.size(), resolve_workers(config_.parallel), [&](std::size_t k) {
      const std::size_t i = which[k];
      try {
        auto b = profiles::build_profile(attrs[i], space, *generator_, ids[i], profile_seed, budget, first_attempt);
        records[i].attempts += b.attempts;
        records[i].prompt_digests.insert(records[i].prompt_digests.end(), b.prompt_digests.begin(),
                                         b.prompt_digests.end());
        current[i] = std::move(b.profile);
        fresh[i] = true;
        records[i].status = StageStatus::Done;
        records[i].detail.clear();
      } catch (const Error& e) {
        records[i].attempts += budget;
        current[i].reset();
        records[i].status = StageStatus::Failed;
        records[i].detail = e.what();
      }
    });
  };

  std::vector<std::size_t> missing;
  for (std::size_t i = 0; i < current.size(); ++i) {
    if (!current[i]) missing.push_back(i);
  }
  build(missing, 0);

  json rejects = json::array();
  for (int round = 0;; ++round) {
    std::vector<StudentProfile> pool;
    std::map<std::string, std::size_t> index_of;
    for (std::size_t i = 0; i < current.size(); ++i) {
      if (!current[i]) continue;
      index_of[ids[i]] = i;
      pool.push_back(*current[i]);
    }
    profiles::FilterOptions opts;
    opts.threshold = config_.profiles.threshold;
    opts.space = space;
    opts.required_keywords = config_.profiles.required_keywords;
    const auto filtered = profiles::filter_profiles(pool, opts);
    if (filtered.rejected.empty()) break;

    std::vector<std::size_t> redo;
    for (const auto& r : filtered.rejected) {
      const std::size_t i = index_of.at(r.profile.student_id);
      rejects.push_back(json{{"student_id", ids[i]},
                             {"round", round},
                             {"reason", std::string(profiles::to_string(r.reason))},
                             {"detail", r.detail},
                             {"profile", r.profile}});
      current[i].reset();
      redo.push_back(i);
    }
    if (round >= config_.profiles.regeneration_rounds) {
      for (auto i : redo) {
        records[i].status = StageStatus::Failed;
        records[i].detail = "rejected by the profile filter after " + std::to_string(round) + " regenerations";
      }
      break;
    }
    std::sort(redo.begin(), redo.end());
    build(redo, (round + 1) * budget);
  }

  for (std::size_t i = 0; i < ids.size(); ++i) {
    const fs::path dir = layout_.student(ids[i]);
    if (current[i] && fresh[i]) {
      save_profile(dir, *current[i]);
      std::error_code ec;
      fs::remove(dir / "events.json", ec);
      clear_simulation(dir);
    } else if (!current[i]) {
      std::error_code ec;
      fs::remove_all(dir, ec);
    }
  }
  if (!rejects.empty()) write_json(layout_.rejects(), rejects);
  return commit("profiles", std::move(records));
}

StageSummary Runner::run_graphs() {
  const auto ids = list_students(layout_.students());
  std::vector<std::optional<StageRecord>> records(ids.size());
  events::GraphBuildSettings settings{config_.graphs.limits, config_.graphs.semester_weeks,
                                      config_.graphs.attempt_budget};

  parallel_for(ids.size(), resolve_workers(config_.parallel), [&](std::size_t i) {
    const fs::path dir = layout_.student(ids[i]);
    StageRecord rec;
    rec.student_id = ids[i];
    std::optional<StudentProfile> profile;
    try {
      if (auto j = read_json(dir / "profile.json")) profile = j->get<StudentProfile>();
    } catch (const std::exception&) {
    }
    if (!profile) return;

    try {
      if (auto j = read_json(dir / "events.json")) {
        const auto g = j->get<StressEventGraph>();
        if (g.student_id == ids[i] && g.semester_weeks == settings.semester_weeks &&
            events::validate_event_graph(g, settings.limits).empty()) {
          rec.status = StageStatus::Skipped;
          records[i] = rec;
          return;
        }
      }
    } catch (const std::exception&) {
    }

    clear_simulation(dir);
    try {
      auto b = events::build_graph(*profile, *generator_, settings, derive_seed(config_.seed, {"graph", ids[i]}));
      save_graph(dir, b.graph);
      rec.status = StageStatus::Done;
      rec.attempts = b.attempts;
      rec.prompt_digests = std::move(b.prompt_digests);
    } catch (const Error& e) {
      std::error_code ec;
      fs::remove(dir / "events.json", ec);
      rec.status = StageStatus::Failed;
      rec.attempts = settings.attempt_budget;
      rec.detail = e.what();
    }
    records[i] = rec;
  });

  std::vector<StageRecord> out;
  for (auto& r : records) {
    if (r) out.push_back(std::move(*r));
  }
  return commit("graphs", std::move(out));
}

StageSummary Runner::run_simulate() {
  const auto ids = list_students(layout_.students());
  std::vector<std::optional<StageRecord>> records(ids.size());

  parallel_for(ids.size(), resolve_workers(config_.parallel), [&](std::size_t i) {
    const fs::path dir = layout_.student(ids[i]);
    StageRecord rec;
    rec.student_id = ids[i];
    StudentTrajectory existing;
    try {
      existing = load_trajectory(dir);
    } catch (const Error&) {
      clear_simulation(dir);
      try {
        existing = load_trajectory(dir);
      } catch (const Error&) {
        return;
      }
    }
    if (!existing.profile || !existing.graph) return;

    const auto schedule = sim::schedule_sessions(*existing.graph);
    try {
      const auto log = load_prompt_log(dir);
      if (log && !existing.sessions.empty() && existing.sessions.size() == schedule.size() &&
          validate_trajectory(existing, config_.graphs.limits).ok()) {
        rec.status = StageStatus::Skipped;
        records[i] = rec;
        return;
      }
    } catch (const Error&) {
    }

    clear_simulation(dir);
    sim::PromptLog log;
    try {
      const auto traj = sim::run_trajectory(*existing.profile, *existing.graph, *generator_, config_.simulation, &log);
      save_simulation(dir, traj, log);
      rec.status = StageStatus::Done;
      rec.attempts = static_cast<int>(log.size());
      rec.prompt_digests = digests_of(log);
    } catch (const Error& e) {
      clear_simulation(dir);
      rec.status = StageStatus::Failed;
      rec.detail = e.what();
      rec.prompt_digests = digests_of(log);
    }
    records[i] = rec;
  });

  std::vector<StageRecord> out;
  for (auto& r : records) {
    if (r) out.push_back(std::move(*r));
  }
  return commit("simulate", std::move(out));
}

qc::QcOptions Runner::qc_options() const {
  qc::QcOptions o;
  o.limits = config_.graphs.limits;
  o.theta_profile = config_.qc.theta_profile;
  o.theta_dialogue = config_.qc.theta_dialogue;
  if (config_.qc.denylist) o.denylist = *config_.qc.denylist;
  if (config_.qc.scenario_terms) o.scenario_terms = *config_.qc.scenario_terms;
  o.sim_config = config_.simulation;
  if (config_.qc.use_judge) {
    o.judge.backend = judge_.get();
    o.judge.cutoff = config_.qc.judge_cutoff;
    o.judge.seed = derive_seed(config_.seed, {"qc-judge"});
  }
  return o;
}

StageSummary Runner::run_qc(bool force) {
  StageRecord rec;
  rec.student_id = kCorpus;
  if (!force && corpus_stage_current("qc", layout_.qc_report())) {
    rec.status = StageStatus::Skipped;
    return commit("qc", {rec});
  }
  try {
    const auto reports = qc_directory(layout_.students(), layout_.qc_dir(), layout_.quarantine(), qc_options());
    std::size_t rejected = 0;
    for (const auto& r : reports) rejected += r.pass() ? 0 : 1;
    rec.status = StageStatus::Done;
    rec.detail = std::to_string(reports.size() - rejected) + " pass, " + std::to_string(rejected) + " quarantined";
  } catch (const Error& e) {
    rec.status = StageStatus::Failed;
    rec.detail = e.what();
  }
  return commit("qc", {rec});
}

StageSummary Runner::run_analytics(bool force) {
  StageRecord rec;
  rec.student_id = kCorpus;
  if (!force && corpus_stage_current("analytics", layout_.analytics() / "stats.json")) {
    rec.status = StageStatus::Skipped;
    return commit("analytics", {rec});
  }
  try {
    std::vector<StudentTrajectory> corpus;
    for (const auto& id : passing_students(layout_.root)) corpus.push_back(load_trajectory(layout_.student(id)));
    const auto stats = trajectory_stats(corpus);
    write_json(layout_.analytics() / "stats.json", stats);
    Backend& embedder = embedder_ ? *embedder_ : *generator_;
    write_json(layout_.analytics() / "similarity.json", diversity_report(corpus, embedder));
    rec.status = StageStatus::Done;
  } catch (const Error& e) {
    rec.status = StageStatus::Failed;
    rec.detail = e.what();
  }
  return commit("analytics", {rec});
}

StageSummary Runner::run_export(ExportFormat format, bool force) {
  StageRecord rec;
  rec.student_id = kCorpus;
  const fs::path marker = format == ExportFormat::Jsonl ? layout_.export_dir() / "dataset.jsonl"
                                                        : layout_.export_dir() / "students";
  if (!force && corpus_stage_current("export", marker)) {
    rec.status = StageStatus::Skipped;
    return commit("export", {rec});
  }
  try {
    const auto result = export_dataset(layout_.root, format);
    rec.status = StageStatus::Done;
    rec.detail = std::to_string(result.trajectories) + " trajectories, " + std::to_string(result.rows) + " rows";
  } catch (const Error& e) {
    rec.status = StageStatus::Failed;
    rec.detail = e.what();
  }
  return commit("export", {rec});
}

PipelineResult Runner::run_all() {
  PipelineResult result;
  result.stages.push_back(run_profiles());
  result.stages.push_back(run_graphs());
  result.stages.push_back(run_simulate());
  result.stages.push_back(run_qc());
  result.stages.push_back(run_analytics());
  result.stages.push_back(run_export());
  result.exit_code = failed_ ? 1 : 0;
  return result;
}

PipelineResult run_pipeline(const PipelineConfig& config, LogSink log) {
  Runner runner(config, std::move(log));
  return runner.run_all();
}

}  // namespace campsim::pipeline
