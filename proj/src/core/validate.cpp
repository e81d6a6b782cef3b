#include "campsim/core/validate.hpp"

#include <algorithm>

#include "campsim/core/text.hpp"
#include "campsim/events/event_graph.hpp"

namespace campsim {

std::string_view to_string(FindingCode c) noexcept {
  switch (c) {
    case FindingCode::EmptyDimension: return "EmptyDimension";
    case FindingCode::AttributeOutOfSpace: return "AttributeOutOfSpace";
    case FindingCode::AgeImplausible: return "AgeImplausible";
    case FindingCode::MissingProfile: return "MissingProfile";
    case FindingCode::MissingGraph: return "MissingGraph";
    case FindingCode::InvalidGraph: return "InvalidGraph";
    case FindingCode::SessionIndexMismatch: return "SessionIndexMismatch";
    case FindingCode::DanglingEventRef: return "DanglingEventRef";
    case FindingCode::TurnStructure: return "TurnStructure";
    case FindingCode::EmptyTurn: return "EmptyTurn";
    case FindingCode::MissingSummary: return "MissingSummary";
    case FindingCode::OrphanSummary: return "OrphanSummary";
    case FindingCode::SummaryIndexMismatch: return "SummaryIndexMismatch";
    case FindingCode::SummaryEventMismatch: return "SummaryEventMismatch";
    case FindingCode::EmptySummaryField: return "EmptySummaryField";
  }
  return "Unknown";
}

bool ValidationReport::has(FindingCode c) const {
  return std::any_of(findings.begin(), findings.end(), [c](const Finding& f) { return f.code == c; });
}

void ValidationReport::add(FindingCode c, std::string subject, std::string detail) {
  findings.push_back(Finding{c, std::move(subject), std::move(detail)});
}

namespace {

void check_dimensions(const StudentProfile& p, ValidationReport& report) {
  const auto& d = p.demographics;
  if (text::is_blank(d.gender) || text::is_blank(d.grade) || text::is_blank(d.major)) {
    report.add(FindingCode::EmptyDimension, "demographics");
  }
  if (text::is_blank(p.personality)) report.add(FindingCode::EmptyDimension, "personality");
  if (text::is_blank(p.background)) report.add(FindingCode::EmptyDimension, "background");
  if (text::is_blank(p.core_conflict)) report.add(FindingCode::EmptyDimension, "core_conflict");
}

std::string session_tag(int index) { return "session " + std::to_string(index); }

}  // namespace

ValidationReport validate_profile(const StudentProfile& profile, const AttributeSpace& space) {
  ValidationReport report;
  check_dimensions(profile, report);
  const auto& d = profile.demographics;
  if (!text::is_blank(d.gender) && !space.has_gender(d.gender)) {
    report.add(FindingCode::AttributeOutOfSpace, "gender", d.gender);
  }
  if (!text::is_blank(d.grade) && !space.has_grade(d.grade)) {
    report.add(FindingCode::AttributeOutOfSpace, "grade", d.grade);
  }
  if (!text::is_blank(d.major) && !space.has_major(d.major)) {
    report.add(FindingCode::AttributeOutOfSpace, "major", d.major);
  }
  if (!space.has_domain(profile.stress_domain)) {
    report.add(FindingCode::AttributeOutOfSpace, "stress_domain", std::string(domain_key(profile.stress_domain)));
  }
  if (d.age < space.age_min || d.age > space.age_max) {
    report.add(FindingCode::AgeImplausible, "age", std::to_string(d.age));
  }
  return report;
}

ValidationReport validate_trajectory(const StudentTrajectory& traj, const GraphLimits& limits) {
  ValidationReport report;

  if (!traj.profile) {
    report.add(FindingCode::MissingProfile, "profile");
  } else {
    check_dimensions(*traj.profile, report);
  }

  if (!traj.graph) {
    report.add(FindingCode::MissingGraph, "graph");
  } else {
    for (const auto& e : events::validate_event_graph(*traj.graph, limits)) {
      report.add(FindingCode::InvalidGraph, text::join(e.offending_ids, ","),
                 std::string(events::to_string(e.category)) + ": " + e.detail);
    }
  }

  for (std::size_t k = 0; k < traj.sessions.size(); ++k) {
    const auto& s = traj.sessions[k];
    const int expected = static_cast<int>(k) + 1;
    const std::string tag = session_tag(expected);
    if (s.session_index != expected) {
      report.add(FindingCode::SessionIndexMismatch, tag, "found index " + std::to_string(s.session_index));
    }
    if (traj.graph && traj.graph->find(s.event_id) == nullptr) {
      report.add(FindingCode::DanglingEventRef, tag, s.event_id);
    }
    bool shape_ok = s.rounds >= 1 && s.turns.size() == static_cast<std::size_t>(2 * s.rounds);
    for (std::size_t i = 0; i < s.turns.size(); ++i) {
      const auto& t = s.turns[i];
      const Role expected_role = (i % 2 == 0) ? Role::Student : Role::Counselor;
      if (t.role != expected_role || t.index != static_cast<int>(i) + 1) shape_ok = false;
      if (text::is_blank(t.text)) report.add(FindingCode::EmptyTurn, tag, "turn " + std::to_string(i + 1));
    }
    if (!shape_ok) {
      report.add(FindingCode::TurnStructure, tag,
                 std::to_string(s.turns.size()) + " turns for " + std::to_string(s.rounds) + " rounds");
    }
  }

  const auto& sums = traj.memory.summaries;
  for (std::size_t k = 0; k < sums.size(); ++k) {
    const auto& m = sums[k];
    const int expected = static_cast<int>(k) + 1;
    if (m.session_index != expected) {
      report.add(FindingCode::SummaryIndexMismatch, "summary " + std::to_string(expected),
                 "found index " + std::to_string(m.session_index));
    }
    if (text::is_blank(m.stress_event) || text::is_blank(m.dominant_emotion) ||
        text::is_blank(m.core_conflict_status) || text::is_blank(m.counseling_focus) ||
        text::is_blank(m.unresolved_issues)) {
      report.add(FindingCode::EmptySummaryField, "summary " + std::to_string(expected));
    }
    if (k < traj.sessions.size()) {
      if (m.event_id != traj.sessions[k].event_id) {
        report.add(FindingCode::SummaryEventMismatch, "summary " + std::to_string(expected), m.event_id);
      }
    } else {
      report.add(FindingCode::OrphanSummary, "summary " + std::to_string(expected));
    }
  }
  for (std::size_t k = sums.size(); k < traj.sessions.size(); ++k) {
    report.add(FindingCode::MissingSummary, session_tag(static_cast<int>(k) + 1));
  }
  return report;
}

}  // namespace campsim
