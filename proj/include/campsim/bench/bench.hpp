#pragma once

#include <cstdint>
#include <iosfwd>
#include <map>
#include <optional>
#include <set>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/core/types.hpp"

namespace campsim::bench {

enum class Task { SR, MR, TCR };

std::string_view to_string(Task t) noexcept;
std::optional<Task> parse_task(std::string_view s);

/// Ordered rubric dimensions: 3 for SR, 4 for MR and TCR.
const std::vector<std::string>& rubric_for(Task t);

inline constexpr double kScoreMin = 0.0;
inline constexpr double kScoreMax = 5.0;

struct BenchInstance {
  std::string instance_id;
  Task task = Task::SR;
  std::string trajectory_id;
  json input_payload;
  /// SR: the counselor utterance. MR: {"answer", "source"} where source names
  /// the trajectory field the answer was read from. TCR: the rendered chain.
  json reference;
  std::vector<std::string> rubric;

  bool operator==(const BenchInstance&) const = default;
};

void to_json(json& j, const BenchInstance& b);
void from_json(const json& j, BenchInstance& b);

/// Next-counselor-response instances at `quota` distinct (session, round)
/// cut points chosen by the seed. Throws QuotaTooLarge.
std::vector<BenchInstance> build_sr(const StudentTrajectory& traj, int quota, std::uint64_t seed);

/// Template-derived factual questions (event week, stress level, domain,
/// unresolved issue of a session) with answers read from the trajectory.
std::vector<BenchInstance> build_mr(const StudentTrajectory& traj, int quota, std::uint64_t seed);

/// One event-chain instance per trajectory.
BenchInstance build_tcr(const StudentTrajectory& traj);

/// Week-sorted chain, one line per event with its explicit predecessor list.
std::string render_event_chain(const StressEventGraph& graph);

/// Empty if the reference can be re-derived from the trajectory; otherwise
/// one message per discrepancy.
std::vector<std::string> verify_reference(const BenchInstance& inst, const StudentTrajectory& traj);

struct BenchConfig {
  int sr_quota = 5;
  int mr_quota = 2;
  bool tcr = true;
  std::set<std::string> exclude;  // instance ids dropped after construction
  std::uint64_t seed = 0;
};

void to_json(json& j, const BenchConfig& c);
void from_json(const json& j, BenchConfig& c);

/// All instances in trajectory order, SR then MR then TCR per trajectory.
std::vector<BenchInstance> build_bench(std::span<const StudentTrajectory> held_out, const BenchConfig& config);

/// One id per line; blank lines and lines starting with '#' are skipped.
std::set<std::string> read_exclusion_list(std::istream& in);

// ---------------------------------------------------------------------------
// Judge
// ---------------------------------------------------------------------------

struct JudgeResult {
  std::string instance_id;
  Task task = Task::SR;
  std::map<std::string, double> dimension_scores;
  double mean_score = 0.0;
  std::string model;

  bool operator==(const JudgeResult&) const = default;
};

void to_json(json& j, const JudgeResult& r);
void from_json(const json& j, JudgeResult& r);

GenerationRequest render_judge_prompt(const BenchInstance& inst, std::string_view model_output);

/// Throws Parse for malformed replies or non-numeric scores, RubricMismatch
/// when the key set differs from the rubric, ScoreOutOfRange outside [0, 5].
JudgeResult parse_judge_scores(std::string_view raw, const BenchInstance& inst);

struct CandidateOutput {
  std::string instance_id;
  std::string output;
  std::string model;
};

/// JSON-Lines with instance_id, output and an optional model field.
std::vector<CandidateOutput> read_candidate_outputs(std::istream& in);

struct JudgeFailure {
  std::string instance_id;
  std::string error;
};

struct JudgeRun {
  std::vector<JudgeResult> results;  // in instance order
  std::vector<JudgeFailure> failures;
};

/// One judge call per (instance, output), re-asking on unparseable replies up
/// to `attempt_budget` times. Outputs whose instance is unknown throw
/// OrphanResult.
JudgeRun judge_outputs(std::span<const BenchInstance> instances, std::span<const CandidateOutput> outputs,
                       Backend& judge, std::uint64_t seed, int attempt_budget = 3, int parallel = 1);

// ---------------------------------------------------------------------------
// Correlation and aggregation
// ---------------------------------------------------------------------------

/// Product-moment correlation. Throws LengthMismatch when sizes differ or are
/// below 2, DegenerateSeries when either series is constant.
double pearson(std::span<const double> a, std::span<const double> b);

struct HumanScore {
  std::string instance_id;
  Task task = Task::SR;
  double score = 0.0;
  std::string model;
};

/// CSV with header instance_id,task,score[,model]. Throws Parse on bad rows.
std::vector<HumanScore> read_human_csv(std::istream& in);

struct TaskRow {
  Task task = Task::SR;
  std::size_t n = 0;
  double mean = 0.0;
  std::size_t n_human = 0;
  std::optional<double> pearson_r;  // absent with fewer than 2 pairs or a constant series
};

struct AggregateTable {
  std::map<std::string, std::vector<TaskRow>> by_model;  // model -> SR, MR, TCR rows present
  std::optional<double> overall_r;
  std::size_t overall_pairs = 0;
};

void to_json(json& j, const AggregateTable& t);

/// Per-model, per-task means of mean_score. Human scores pair with results by
/// (instance_id, model); an empty human model matches any. Throws
/// OrphanResult when a result names an unknown instance.
AggregateTable aggregate(std::span<const JudgeResult> results, std::span<const BenchInstance> instances,
                         std::span<const HumanScore> human = {});

}  // namespace campsim::bench
