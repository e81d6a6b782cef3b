#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/core/types.hpp"

namespace campsim::sim {

struct SimulationConfig {
  int rounds_min = 4;
  int rounds_max = 8;
  int memory_window = 0;  // most recent summaries shown to the agents; 0 = all
  int attempt_budget = 3;
  std::uint64_t seed = 0;
  double temperature = 0.7;
};

/// Throws Error(Config) unless 1 <= rounds_min <= rounds_max, memory_window >= 0
/// and attempt_budget >= 1.
void check_config(const SimulationConfig& config);

void to_json(json& j, const SimulationConfig& c);
void from_json(const json& j, SimulationConfig& c);

// ---------------------------------------------------------------------------
// Scheduling
// ---------------------------------------------------------------------------

enum class SchedulePolicy { OnePerEvent, MinStress };

struct ScheduleOptions {
  SchedulePolicy policy = SchedulePolicy::OnePerEvent;
  int min_stress = 7;  // MinStress only
};

/// Event ids in canonical (week, id) order, filtered by the policy.
std::vector<std::string> schedule_sessions(const StressEventGraph& graph, const ScheduleOptions& options = {});

// ---------------------------------------------------------------------------
// Prompt rendering
// ---------------------------------------------------------------------------

/// The summaries an agent sees at session time: the last `window` entries, or
/// all of them when window is 0.
std::span<const SessionSummary> memory_view(const MemoryState& memory, int window);

struct TurnContext {
  const StudentProfile& profile;
  const EventNode& event;
  std::span<const SessionSummary> memory;  // already windowed
  std::span<const Turn> history;           // completed rounds of this session
  int session_index = 1;
  int round = 1;
  int rounds = 1;
};

GenerationRequest render_student_request(const TurnContext& ctx);
GenerationRequest render_counselor_request(const TurnContext& ctx, std::string_view student_utterance);
GenerationRequest render_summary_request(const StudentProfile& profile, const SessionDialogue& dialogue,
                                         const EventNode& event, std::span<const SessionSummary> memory);

// ---------------------------------------------------------------------------
// Prompt log
// ---------------------------------------------------------------------------

/// One accepted generation call. `round` is 0 for summary calls.
struct PromptRecord {
  int session_index = 0;
  int round = 0;
  RequestKind kind = RequestKind::StudentTurn;
  std::string prompt_digest;
  std::vector<int> memory_indices;  // session indices of the summaries in the prompt

  bool operator==(const PromptRecord&) const = default;
};

void to_json(json& j, const PromptRecord& r);
void from_json(const json& j, PromptRecord& r);

using PromptLog = std::vector<PromptRecord>;

// ---------------------------------------------------------------------------
// Agents and the session loop
// ---------------------------------------------------------------------------

/// Throws Error(EmptyUtterance) on a blank reply; backend errors propagate.
Turn student_turn(const TurnContext& ctx, Backend& backend, std::uint64_t seed, double temperature,
                  PromptLog* log = nullptr);
Turn counselor_turn(const TurnContext& ctx, std::string_view student_utterance, Backend& backend,
                    std::uint64_t seed, double temperature, PromptLog* log = nullptr);

/// Round count for session t, drawn from the trajectory seed.
int session_rounds(const SimulationConfig& config, std::string_view student_id, int session_index);

/// Requires memory.size() == t - 1 (else SequenceGap). A failed turn discards
/// the whole session attempt; after the budget, GenerationExhausted. Only the
/// accepted attempt is written to the log.
SessionDialogue simulate_session(const StudentProfile& profile, const EventNode& event, const MemoryState& memory,
                                 Backend& backend, const SimulationConfig& config, int t, PromptLog* log = nullptr);

/// Parses the five summary fields, regenerating on malformed output.
SessionSummary summarize_session(const StudentProfile& profile, const SessionDialogue& dialogue,
                                 const EventNode& event, const MemoryState& memory, Backend& backend,
                                 const SimulationConfig& config, PromptLog* log = nullptr);

/// Strict parse of a summary reply; throws Error(Parse).
SessionSummary parse_summary(std::string_view raw, int session_index, std::string_view event_id);

/// Appends; throws Error(SequenceGap) unless summary.session_index == size + 1.
MemoryState update_memory(const MemoryState& memory, SessionSummary summary);

StudentTrajectory run_trajectory(const StudentProfile& profile, const StressEventGraph& graph, Backend& backend,
                                 const SimulationConfig& config, PromptLog* log = nullptr,
                                 const ScheduleOptions& schedule = {});

// ---------------------------------------------------------------------------
// Causal-context audit
// ---------------------------------------------------------------------------

struct AuditFinding {
  int session_index = 0;
  int round = 0;
  std::string detail;
};

/// Checks that every logged prompt in session t referenced only summaries with
/// index < t, that it saw the configured memory window, and that re-rendering
/// the prompt from the stored trajectory reproduces the logged digest.
std::vector<AuditFinding> audit_causal_context(const StudentTrajectory& traj, const PromptLog& log,
                                               const SimulationConfig& config);

}  // namespace campsim::sim
