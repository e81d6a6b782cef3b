#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/core/types.hpp"
#include "campsim/core/validate.hpp"

namespace campsim::events {

enum class GraphErrorCategory {
  WeekOutOfRange,
  StressOutOfRange,
  EventCountOutOfRange,
  DanglingCause,
  SelfCause,
  CausalCycle,
  TemporalViolation,
  DuplicateId,
  BadIdPattern,
};

inline constexpr int kGraphErrorCategoryCount = 9;

std::string_view to_string(GraphErrorCategory c) noexcept;

struct GraphValidationError {
  GraphErrorCategory category;
  std::vector<std::string> offending_ids;  // empty only for EventCountOutOfRange
  std::string detail;
};

inline constexpr int kStressMin = 1;
inline constexpr int kStressMax = 10;

/// Listing-style prompt for one student. Week span and event-count range come
/// from the graph settings; the defaults reproduce the 16-week, 10-15 event
/// semester.
GenerationRequest render_event_prompt(const StudentProfile& profile, const GraphLimits& limits = {},
                                      int semester_weeks = 16);

/// Accepts a bare JSON list or an object with an "events" list, optionally
/// wrapped in a Markdown code fence. Nodes come back sorted by (week, id-index).
StressEventGraph parse_event_graph(std::string_view raw, std::string_view student_id, int semester_weeks = 16);

/// Canonical node order; total, so that the result is independent of input order.
void sort_nodes(std::vector<EventNode>& nodes);

/// Reports every violation, not just the first. Edges that lie on a cycle are
/// reported once as CausalCycle and not again as TemporalViolation.
std::vector<GraphValidationError> validate_event_graph(const StressEventGraph& graph,
                                                       const GraphLimits& limits = {});

struct GraphBuildSettings {
  GraphLimits limits;
  int semester_weeks = 16;
  int attempt_budget = 3;
};

struct GraphBuild {
  StressEventGraph graph;
  int attempts = 0;
  std::vector<std::string> prompt_digests;
};

/// render -> generate -> parse -> validate, regenerating on failure. Throws
/// Error(GenerationExhausted) once the attempt budget is spent.
GraphBuild build_graph(const StudentProfile& profile, Backend& backend, const GraphBuildSettings& settings,
                       std::uint64_t seed);

/// Sign of Spearman's rank correlation between week and stress level:
/// +1, 0 or -1. Diagnostic only.
int stress_trend_sign(const StressEventGraph& graph);

}  // namespace campsim::events
