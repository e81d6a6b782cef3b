// campsim: command-line front end for the corpus pipeline and benchmark tools.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <regex>

#include "campsim/analytics/corpus_stats.hpp"
#include "campsim/bench/bench.hpp"
#include "campsim/core/error.hpp"
#include "campsim/pipeline/pipeline.hpp"

namespace {

using namespace campsim;
namespace fs = std::filesystem;

constexpr int kExitOk = 0;
constexpr int kExitStage = 1;
constexpr int kExitConfig = 2;

struct Globals {
  std::string config_path;
  std::optional<std::uint64_t> seed;
  std::optional<int> parallel;
  bool verbose = false;
  std::string out;
  std::optional<int> students;
};

BackendConfig load_backend(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read backend configuration " + path);
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Config, path + " is not valid JSON");
  try {
    return j.get<BackendConfig>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, path + ": " + e.what());
  }
}

pipeline::PipelineConfig resolve_config(const Globals& g) {
  pipeline::PipelineConfig c = g.config_path.empty() ? pipeline::mock_config(g.seed.value_or(0), g.students.value_or(10))
                                                     : pipeline::load_config(g.config_path);
  if (g.seed) {
    c.seed = *g.seed;
    c.simulation.seed = *g.seed;
    c.bench.seed = *g.seed;
  }
  if (g.students) c.students = *g.students;
  if (g.parallel) c.parallel = *g.parallel;
  if (!g.out.empty()) c.output_root = g.out;
  return c;
}

void parse_rounds(const std::string& spec, sim::SimulationConfig& sim) {
  static const std::regex pattern(R"((\d+)(?:\.\.(\d+))?)");
  std::smatch m;
  if (!std::regex_match(spec, m, pattern)) throw Error(ErrorCode::Config, "--rounds expects A..B, got " + spec);
  sim.rounds_min = std::stoi(m[1]);
  sim.rounds_max = m[2].matched ? std::stoi(m[2]) : sim.rounds_min;
  sim::check_config(sim);
}

pipeline::LogSink sink(const Globals& g) {
  if (!g.verbose) return {};
  return [](const std::string& msg) { std::cerr << "[campsim] " << msg << "\n"; };
}

int stage_exit(const pipeline::StageSummary& s) {
  std::cout << s.stage << ": " << s.done << " done, " << s.skipped << " skipped, " << s.failed << " failed\n";
  return s.failed > 0 ? kExitStage : kExitOk;
}

std::vector<bench::BenchInstance> read_instances(const fs::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Io, "cannot read " + path.string());
  std::vector<bench::BenchInstance> out;
  std::string line;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    out.push_back(json::parse(line).get<bench::BenchInstance>());
  }
  return out;
}

std::vector<StudentTrajectory> read_corpus(const fs::path& students_dir) {
  std::vector<StudentTrajectory> out;
  for (const auto& id : pipeline::list_students(students_dir)) out.push_back(pipeline::load_trajectory(students_dir / id));
  return out;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Campus counseling corpus simulator"};
  app.require_subcommand(1);
  Globals g;
  app.add_option("--config", g.config_path, "Pipeline configuration (JSON); offline mock settings if omitted");
  app.add_option("--seed", g.seed, "Global seed override");
  app.add_option("--parallel", g.parallel, "Worker threads (0 = hardware concurrency)");
  app.add_flag("--verbose,-v", g.verbose, "Progress on stderr");
  app.add_option("--out", g.out, "Output root override");
  app.add_option("--students", g.students, "Number of students override");

  auto* profiles = app.add_subcommand("profiles", "Sample attributes, generate and filter profiles");
  auto* graphs = app.add_subcommand("graphs", "Generate and validate stress-event graphs");
  auto* simulate = app.add_subcommand("simulate", "Run counseling sessions for every student");
  std::string rounds;
  simulate->add_option("--rounds", rounds, "Rounds per session, A..B");

  auto* qc = app.add_subcommand("qc", "Quality control with quarantine");
  std::string qc_in, qc_out, qc_quarantine, qc_judge;
  std::optional<double> theta_profile, theta_dialogue;
  qc->add_option("--in", qc_in, "Students directory (default: <root>/students)");
  qc->add_option("--out", qc_out, "Directory for qc_report.json");
  qc->add_option("--quarantine", qc_quarantine, "Quarantine directory");
  qc->add_option("--judge", qc_judge, "Judge backend configuration for semantic alignment");
  qc->add_option("--theta-profile", theta_profile, "Profile similarity cutoff");
  qc->add_option("--theta-dialogue", theta_dialogue, "Dialogue similarity cutoff");

  auto* stats = app.add_subcommand("stats", "Corpus statistics");
  std::string stats_in;
  stats->add_option("--in", stats_in, "JSON-Lines utterance file (default: run the analytics stage)");

  auto* diversity = app.add_subcommand("diversity", "Profile and dialogue similarity");
  std::string div_in, div_embedder;
  diversity->add_option("--in", div_in, "Students directory");
  diversity->add_option("--embedder", div_embedder, "Embedding backend configuration");

  auto* bench_cmd = app.add_subcommand("bench", "Benchmark construction");
  auto* bench_build = bench_cmd->add_subcommand("build", "Build SR/MR/TCR instances from held-out trajectories");
  bench_cmd->require_subcommand(1);
  std::string holdout, bench_out, exclude_file;
  std::optional<int> sr_quota, mr_quota;
  bench_build->add_option("--holdout", holdout, "Students directory of held-out trajectories")->required();
  bench_build->add_option("--out", bench_out, "Output directory")->required();
  bench_build->add_option("--sr-quota", sr_quota, "SR instances per trajectory");
  bench_build->add_option("--mr-quota", mr_quota, "MR instances per trajectory");
  bench_build->add_option("--exclude", exclude_file, "Instance ids to drop, one per line");

  auto* judge = app.add_subcommand("judge", "Score candidate outputs with a judge backend");
  std::string judge_bench, judge_outputs, judge_cfg, judge_out;
  judge->add_option("--bench", judge_bench, "Bench directory")->required();
  judge->add_option("--outputs", judge_outputs, "Candidate outputs (JSON-Lines)")->required();
  judge->add_option("--judge", judge_cfg, "Judge backend configuration")->required();
  judge->add_option("--out", judge_out, "Results file (default: <bench>/judge_results.jsonl)");

  auto* correlate = app.add_subcommand("correlate", "Per-task means and auto-vs-human correlation");
  std::string auto_file, human_file;
  correlate->add_option("--auto", auto_file, "Judge results (JSON-Lines)")->required();
  correlate->add_option("--human", human_file, "Human scores CSV");

  auto* pipeline_cmd = app.add_subcommand("pipeline", "Run every stage end to end");

  auto* export_cmd = app.add_subcommand("export", "Export QC-passing trajectories");
  std::string format = "jsonl";
  export_cmd->add_option("--format", format, "jsonl or per_student_json");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? kExitOk : kExitConfig;
  }

  try {
    if (*bench_build) {
      bench::BenchConfig cfg;
      if (!g.config_path.empty()) cfg = resolve_config(g).bench;
      if (g.seed) cfg.seed = *g.seed;
      if (sr_quota) cfg.sr_quota = *sr_quota;
      if (mr_quota) cfg.mr_quota = *mr_quota;
      if (!exclude_file.empty()) {
        std::ifstream in(exclude_file);
        if (!in) throw Error(ErrorCode::Config, "cannot read exclusion list " + exclude_file);
        cfg.exclude = bench::read_exclusion_list(in);
      }
      const auto corpus = read_corpus(holdout);
      const auto instances = bench::build_bench(corpus, cfg);
      std::string body;
      std::map<std::string, int> counts;
      for (const auto& inst : instances) {
        body += json(inst).dump() + "\n";
        ++counts[std::string(bench::to_string(inst.task))];
      }
      pipeline::write_text(fs::path(bench_out) / "instances.jsonl", body);
      pipeline::write_json(fs::path(bench_out) / "bench_config.json", cfg);
      std::cout << "SR " << counts["SR"] << ", MR " << counts["MR"] << ", TCR " << counts["TCR"] << "\n";
      return kExitOk;
    }
    if (*judge) {
      const auto instances = read_instances(fs::path(judge_bench) / "instances.jsonl");
      std::ifstream in(judge_outputs);
      if (!in) throw Error(ErrorCode::Io, "cannot read " + judge_outputs);
      const auto outputs = bench::read_candidate_outputs(in);
      auto backend = make_backend(load_backend(judge_cfg));
      const auto run = bench::judge_outputs(instances, outputs, *backend, g.seed.value_or(0), 3, g.parallel.value_or(1));
      std::string body;
      for (const auto& r : run.results) body += json(r).dump() + "\n";
      pipeline::write_text(judge_out.empty() ? fs::path(judge_bench) / "judge_results.jsonl" : fs::path(judge_out), body);
      for (const auto& f : run.failures) std::cerr << "judge failed for " << f.instance_id << ": " << f.error << "\n";
      std::cout << run.results.size() << " scored, " << run.failures.size() << " failed\n";
      return run.failures.empty() ? kExitOk : kExitStage;
    }
    if (*correlate) {
      std::ifstream in(auto_file);
      if (!in) throw Error(ErrorCode::Io, "cannot read " + auto_file);
      std::vector<bench::JudgeResult> results;
      std::vector<bench::BenchInstance> instances;
      std::string line;
      while (std::getline(in, line)) {
        if (line.empty()) continue;
        auto r = json::parse(line).get<bench::JudgeResult>();
        bench::BenchInstance inst;
        inst.instance_id = r.instance_id;
        inst.task = r.task;
        instances.push_back(std::move(inst));
        results.push_back(std::move(r));
      }
      std::vector<bench::HumanScore> human;
      if (!human_file.empty()) {
        std::ifstream hin(human_file);
        if (!hin) throw Error(ErrorCode::Io, "cannot read " + human_file);
        human = bench::read_human_csv(hin);
      }
      std::cout << json(bench::aggregate(results, instances, human)).dump(2) << "\n";
      return kExitOk;
    }
    if (*stats && !stats_in.empty()) {
      std::cout << json(analytics::corpus_stats_file(stats_in)).dump(2) << "\n";
      return kExitOk;
    }
    if (*diversity && !div_in.empty()) {
      const auto corpus = read_corpus(div_in);
      auto embedder = make_backend(div_embedder.empty() ? BackendConfig{} : load_backend(div_embedder));
      std::cout << pipeline::diversity_report(corpus, *embedder).dump(2) << "\n";
      return kExitOk;
    }
    if (*qc && !qc_in.empty()) {
      pipeline::PipelineConfig cfg = resolve_config(g);
      pipeline::Runner runner(cfg, sink(g));
      auto options = runner.qc_options();
      if (theta_profile) options.theta_profile = *theta_profile;
      if (theta_dialogue) options.theta_dialogue = *theta_dialogue;
      std::unique_ptr<Backend> judge_backend;
      if (!qc_judge.empty()) {
        judge_backend = make_backend(load_backend(qc_judge));
        options.judge.backend = judge_backend.get();
      }
      const auto reports = pipeline::qc_directory(qc_in, qc_out.empty() ? fs::path(qc_in).parent_path() / "qc" : fs::path(qc_out),
                                                  qc_quarantine.empty() ? fs::path(qc_in).parent_path() / "quarantine"
                                                                        : fs::path(qc_quarantine),
                                                  options);
      std::size_t pass = 0;
      for (const auto& r : reports) pass += r.pass() ? 1 : 0;
      std::cout << pass << " pass, " << reports.size() - pass << " quarantined\n";
      return kExitOk;
    }

    pipeline::PipelineConfig cfg = resolve_config(g);
    if (*simulate && !rounds.empty()) parse_rounds(rounds, cfg.simulation);
    if (*qc) {
      if (theta_profile) cfg.qc.theta_profile = *theta_profile;
      if (theta_dialogue) cfg.qc.theta_dialogue = *theta_dialogue;
    }
    if (*export_cmd && !pipeline::parse_export_format(format)) {
      throw Error(ErrorCode::Config, "unknown export format " + format);
    }
    pipeline::Runner runner(cfg, sink(g));
    if (*profiles) return stage_exit(runner.run_profiles());
    if (*graphs) return stage_exit(runner.run_graphs());
    if (*simulate) return stage_exit(runner.run_simulate());
    if (*qc) return stage_exit(runner.run_qc(true));
    if (*stats || *diversity) {
      const int code = stage_exit(runner.run_analytics(true));
      const auto file = runner.layout().analytics() / (*stats ? "stats.json" : "similarity.json");
      if (auto j = pipeline::read_json(file)) std::cout << j->dump(2) << "\n";
      return code;
    }
    if (*export_cmd) return stage_exit(runner.run_export(*pipeline::parse_export_format(format), true));
    if (*pipeline_cmd) {
      const auto result = runner.run_all();
      for (const auto& s : result.stages) stage_exit(s);
      return result.exit_code;
    }
  } catch (const Error& e) {
    std::cerr << "campsim: " << e.what() << "\n";
    return e.code() == ErrorCode::Config ? kExitConfig : kExitStage;
  } catch (const std::exception& e) {
    std::cerr << "campsim: " << e.what() << "\n";
    return kExitStage;
  }
  return kExitOk;
}
