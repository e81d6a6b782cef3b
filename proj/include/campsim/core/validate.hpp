#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "campsim/core/types.hpp"
#include "campsim/profiles/attribute_space.hpp"

namespace campsim {

enum class FindingCode {
  EmptyDimension,
  AttributeOutOfSpace,
  AgeImplausible,
  MissingProfile,
  MissingGraph,
  InvalidGraph,
  SessionIndexMismatch,
  DanglingEventRef,
  TurnStructure,
  EmptyTurn,
  MissingSummary,
  OrphanSummary,
  SummaryIndexMismatch,
  SummaryEventMismatch,
  EmptySummaryField,
};

std::string_view to_string(FindingCode c) noexcept;

struct Finding {
  FindingCode code;
  std::string subject;  // field name, session tag, or event id the finding is about
  std::string detail;

  bool operator==(const Finding&) const = default;
};

struct ValidationReport {
  std::vector<Finding> findings;

  bool ok() const noexcept { return findings.empty(); }
  bool has(FindingCode c) const;
  void add(FindingCode c, std::string subject, std::string detail = {});
};

/// Event-count limits applied when a trajectory's graph is checked.
struct GraphLimits {
  int min_events = 10;
  int max_events = 15;
};

ValidationReport validate_profile(const StudentProfile& profile, const AttributeSpace& space);

/// Structural completeness of a whole trajectory: profile present and
/// populated, graph present and valid, sessions well-formed and sequential,
/// one summary per session, every cross-reference resolves.
ValidationReport validate_trajectory(const StudentTrajectory& traj, const GraphLimits& limits = {});

}  // namespace campsim
