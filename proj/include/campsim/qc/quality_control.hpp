#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/core/types.hpp"
#include "campsim/core/validate.hpp"
#include "campsim/sim/simulator.hpp"

namespace campsim::qc {

enum class Family { Structural, Consistency, Diversity, Safety };

std::string_view to_string(Family f) noexcept;

struct QcFinding {
  Family family = Family::Structural;
  std::string code;
  std::string detail;

  bool operator==(const QcFinding&) const = default;
};

struct QCReport {
  std::string trajectory_id;
  std::vector<QcFinding> findings;

  bool pass() const noexcept { return findings.empty(); }
};

void to_json(json& j, const QcFinding& f);
void from_json(const json& j, QcFinding& f);
void to_json(json& j, const QCReport& r);
void from_json(const json& j, QCReport& r);

/// Findings of validate_trajectory. A missing profile or graph (an absent
/// file on disk) is reported as StructuralIncomplete; every other finding
/// keeps its validator code.
std::vector<QcFinding> qc_structural(const StudentTrajectory& traj, const GraphLimits& limits = {});

struct JudgeOptions {
  Backend* backend = nullptr;
  double cutoff = 3.0;  // sessions scoring below this are flagged
  std::uint64_t seed = 0;
  int attempt_budget = 3;
};

/// Alignment prompt for one session on a 0-5 scale with a single
/// "Alignment" dimension.
GenerationRequest render_alignment_prompt(const StudentTrajectory& traj, std::size_t session_pos);

/// Rule-based cross-reference checks (ConsistencyBreak), the causal-context
/// audit when a prompt log is supplied (CausalLeak), and per-session
/// alignment scoring when a judge is supplied (SemanticMisalignment).
/// Only judge-mode transport failures throw.
std::vector<QcFinding> qc_consistency(const StudentTrajectory& traj, const sim::PromptLog* log = nullptr,
                                      const sim::SimulationConfig& sim_config = {},
                                      const JudgeOptions& judge = {});

struct DiversityRejection {
  std::size_t index = 0;  // position in the corpus
  std::string trajectory_id;
  std::string criterion;  // "profile" or "dialogue"
  std::string kept_id;
  double cosine = 0.0;
};

/// Concatenated text of every session, used for the dialogue criterion.
std::string dialogue_text(const StudentTrajectory& traj);

/// Two independent redundancy passes over the corpus (profile text against
/// θ_profile, dialogue text against θ_dialogue). A trajectory may be rejected
/// under both criteria. Thresholds outside (0, 1] throw Error(Config).
std::vector<DiversityRejection> qc_diversity(std::span<const StudentTrajectory> corpus, double theta_profile = 0.6,
                                             double theta_dialogue = 0.85);

const std::vector<std::string>& default_denylist();
const std::vector<std::string>& default_scenario_terms();

/// Substring screening. Every turn matching a denylist entry gives a
/// DenylistHit; a trajectory containing none of the scenario terms gives
/// OffScenario. An empty scenario list disables OffScenario.
std::vector<QcFinding> qc_safety(const StudentTrajectory& traj, std::span<const std::string> denylist,
                                 std::span<const std::string> scenario_terms);

struct QcOptions {
  GraphLimits limits;
  double theta_profile = 0.6;
  double theta_dialogue = 0.85;
  std::vector<std::string> denylist = default_denylist();
  std::vector<std::string> scenario_terms = default_scenario_terms();
  sim::SimulationConfig sim_config;
  JudgeOptions judge;
};

/// Per-trajectory families followed by the corpus-level diversity pass.
/// `logs` is either empty or parallel to `corpus`. Reports come back in
/// corpus order.
std::vector<QCReport> run_qc(std::span<const StudentTrajectory> corpus, std::span<const sim::PromptLog> logs,
                             const QcOptions& options);

}  // namespace campsim::qc
