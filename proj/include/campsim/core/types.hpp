#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include <json.hpp>

namespace campsim {

using json = nlohmann::json;

// ---------------------------------------------------------------------------
// Stress domains
// ---------------------------------------------------------------------------

enum class StressDomain { Academic, Interpersonal, Career, FamilyFinance, Health };

inline constexpr std::size_t kStressDomainCount = 5;

/// All five domains in canonical order.
const std::vector<StressDomain>& all_stress_domains();

/// Stable machine key, e.g. "academic".
std::string_view domain_key(StressDomain d) noexcept;
/// Chinese label used in generated corpus text, e.g. "学业压力".
std::string_view domain_label(StressDomain d) noexcept;
/// English heading as it appears in the event-graph prompt.
std::string_view domain_heading(StressDomain d) noexcept;

/// Accepts the key, the Chinese label, or the English heading (case-insensitive
/// for ASCII). Returns nullopt for anything else.
std::optional<StressDomain> parse_domain(std::string_view s);

// ---------------------------------------------------------------------------
// Student profile
// ---------------------------------------------------------------------------

struct Demographics {
  std::string gender;
  int age = 0;
  std::string grade;
  std::string major;

  bool operator==(const Demographics&) const = default;
};

struct Provenance {
  std::uint64_t seed = 0;
  std::string backend_id;
  std::string prompt_digest;

  bool operator==(const Provenance&) const = default;
};

struct StudentProfile {
  std::string student_id;
  std::string name;
  Demographics demographics;
  std::string personality;
  std::string background;
  std::string core_conflict;
  StressDomain stress_domain = StressDomain::Academic;
  Provenance provenance;

  bool operator==(const StudentProfile&) const = default;
};

/// Demographics rendered as one line of text, used both in prompts and as the
/// demographics dimension for similarity analytics.
std::string render_demographics(const StudentProfile& p);

/// The four narrative dimensions joined in fixed order.
std::string profile_text(const StudentProfile& p);

// ---------------------------------------------------------------------------
// Event graph
// ---------------------------------------------------------------------------

struct EventNode {
  std::string id;
  int week = 0;
  StressDomain domain = StressDomain::Academic;
  std::string event_content;
  std::string psychological_impact;
  int stress_level = 0;
  std::vector<std::string> caused_by;

  bool operator==(const EventNode&) const = default;
};

/// Integer k of an id of the form "E<k>" with k >= 1 and no leading zeros.
std::optional<int> event_id_index(std::string_view id);

/// Strict weak ordering by (week, id-index); ids that do not match the pattern
/// sort after well-formed ids of the same week, then by raw id.
bool event_order_less(const EventNode& a, const EventNode& b);

struct StressEventGraph {
  std::string student_id;
  std::vector<EventNode> nodes;
  int semester_weeks = 16;

  const EventNode* find(std::string_view id) const;

  bool operator==(const StressEventGraph&) const = default;
};

// ---------------------------------------------------------------------------
// Sessions and memory
// ---------------------------------------------------------------------------

enum class Role { Student, Counselor };

std::string_view role_name(Role r) noexcept;
std::optional<Role> parse_role(std::string_view s);

struct Turn {
  int index = 0;  // 1-based position within the session
  Role role = Role::Student;
  std::string text;

  bool operator==(const Turn&) const = default;
};

struct SessionDialogue {
  int session_index = 0;
  std::string event_id;
  std::vector<Turn> turns;
  int rounds = 0;

  bool operator==(const SessionDialogue&) const = default;
};

struct SessionSummary {
  int session_index = 0;
  std::string event_id;
  std::string stress_event;
  std::string dominant_emotion;
  std::string core_conflict_status;
  std::string counseling_focus;
  std::string unresolved_issues;

  bool operator==(const SessionSummary&) const = default;
};

struct MemoryState {
  std::vector<SessionSummary> summaries;

  std::size_t size() const noexcept { return summaries.size(); }
  bool operator==(const MemoryState&) const = default;
};

/// Profile and graph are optional so that a trajectory read back from an
/// incomplete directory can still be represented and reported on.
struct StudentTrajectory {
  std::optional<StudentProfile> profile;
  std::optional<StressEventGraph> graph;
  std::vector<SessionDialogue> sessions;
  MemoryState memory;

  std::string id() const;
  bool operator==(const StudentTrajectory&) const = default;
};

// ---------------------------------------------------------------------------
// JSON encoding (ADL hooks for nlohmann::json)
// ---------------------------------------------------------------------------

void to_json(json& j, StressDomain d);
void from_json(const json& j, StressDomain& d);
void to_json(json& j, Role r);
void from_json(const json& j, Role& r);
void to_json(json& j, const Demographics& v);
void from_json(const json& j, Demographics& v);
void to_json(json& j, const Provenance& v);
void from_json(const json& j, Provenance& v);
void to_json(json& j, const StudentProfile& v);
void from_json(const json& j, StudentProfile& v);
void to_json(json& j, const EventNode& v);
void from_json(const json& j, EventNode& v);
void to_json(json& j, const StressEventGraph& v);
void from_json(const json& j, StressEventGraph& v);
void to_json(json& j, const Turn& v);
void from_json(const json& j, Turn& v);
void to_json(json& j, const SessionDialogue& v);
void from_json(const json& j, SessionDialogue& v);
void to_json(json& j, const SessionSummary& v);
void from_json(const json& j, SessionSummary& v);
void to_json(json& j, const MemoryState& v);
void from_json(const json& j, MemoryState& v);

/// One JSON-Lines row of the flattened dataset export (one utterance).
struct UtteranceRow {
  std::string student_id;
  int session_index = 0;
  int turn_index = 0;
  Role role = Role::Student;
  std::string text;

  bool operator==(const UtteranceRow&) const = default;
};

void to_json(json& j, const UtteranceRow& v);
void from_json(const json& j, UtteranceRow& v);

}  // namespace campsim
