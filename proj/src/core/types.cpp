#include "campsim/core/types.hpp"

#include <algorithm>
#include <array>
#include <cctype>
#include <limits>

namespace campsim {

namespace {

struct DomainNames {
  StressDomain domain;
  std::string_view key;
  std::string_view label;
  std::string_view heading;
};

constexpr std::array<DomainNames, kStressDomainCount> kDomains{{
    {StressDomain::Academic, "academic", "学业压力", "Academic stress"},
    {StressDomain::Interpersonal, "interpersonal", "人际关系", "Interpersonal relationships"},
    {StressDomain::Career, "career", "职业发展", "Career development"},
    {StressDomain::FamilyFinance, "family_finance", "家庭与经济", "Family and finances"},
    {StressDomain::Health, "health", "身心健康", "Physical and mental health"},
}};

const DomainNames& names(StressDomain d) { return kDomains[static_cast<std::size_t>(d)]; }

bool iequals_ascii(std::string_view a, std::string_view b) {
  if (a.size() != b.size()) return false;
  for (std::size_t i = 0; i < a.size(); ++i) {
    if (std::tolower(static_cast<unsigned char>(a[i])) != std::tolower(static_cast<unsigned char>(b[i]))) return false;
  }
  return true;
}

}  // namespace

const std::vector<StressDomain>& all_stress_domains() {
  static const std::vector<StressDomain> all{StressDomain::Academic, StressDomain::Interpersonal,
                                             StressDomain::Career, StressDomain::FamilyFinance,
                                             StressDomain::Health};
  return all;
}

std::string_view domain_key(StressDomain d) noexcept { return names(d).key; }
std::string_view domain_label(StressDomain d) noexcept { return names(d).label; }
std::string_view domain_heading(StressDomain d) noexcept { return names(d).heading; }

std::optional<StressDomain> parse_domain(std::string_view s) {
  for (const auto& n : kDomains) {
    if (s == n.label || iequals_ascii(s, n.key) || iequals_ascii(s, n.heading)) return n.domain;
  }
  return std::nullopt;
}

std::string render_demographics(const StudentProfile& p) {
  const auto& d = p.demographics;
  return d.gender + "，" + std::to_string(d.age) + "岁，" + d.grade + "，" + d.major + "专业";
}

std::string profile_text(const StudentProfile& p) {
  return render_demographics(p) + "\n" + p.personality + "\n" + p.background + "\n" + p.core_conflict;
}

std::optional<int> event_id_index(std::string_view id) {
  if (id.size() < 2 || id[0] != 'E' || id[1] == '0') return std::nullopt;
  long long v = 0;
  for (std::size_t i = 1; i < id.size(); ++i) {
    if (id[i] < '0' || id[i] > '9') return std::nullopt;
    v = v * 10 + (id[i] - '0');
    if (v > std::numeric_limits<int>::max()) return std::nullopt;
  }
  return static_cast<int>(v);
}

bool event_order_less(const EventNode& a, const EventNode& b) {
  if (a.week != b.week) return a.week < b.week;
  const auto ia = event_id_index(a.id);
  const auto ib = event_id_index(b.id);
  const long long ka = ia ? *ia : std::numeric_limits<long long>::max();
  const long long kb = ib ? *ib : std::numeric_limits<long long>::max();
  if (ka != kb) return ka < kb;
  return a.id < b.id;
}

const EventNode* StressEventGraph::find(std::string_view id) const {
  const auto it = std::find_if(nodes.begin(), nodes.end(), [&](const EventNode& n) { return n.id == id; });
  return it == nodes.end() ? nullptr : &*it;
}

std::string_view role_name(Role r) noexcept { return r == Role::Student ? "student" : "counselor"; }

std::optional<Role> parse_role(std::string_view s) {
  if (s == "student") return Role::Student;
  if (s == "counselor") return Role::Counselor;
  return std::nullopt;
}

std::string StudentTrajectory::id() const {
  if (profile) return profile->student_id;
  if (graph) return graph->student_id;
  return {};
}

// ---------------------------------------------------------------------------

void to_json(json& j, StressDomain d) { j = std::string(domain_label(d)); }

void from_json(const json& j, StressDomain& d) {
  const auto parsed = parse_domain(j.get<std::string>());
  if (!parsed) throw json::other_error::create(501, "unknown stress domain: " + j.get<std::string>(), &j);
  d = *parsed;
}

void to_json(json& j, Role r) { j = std::string(role_name(r)); }

void from_json(const json& j, Role& r) {
  const auto parsed = parse_role(j.get<std::string>());
  if (!parsed) throw json::other_error::create(501, "unknown role: " + j.get<std::string>(), &j);
  r = *parsed;
}

void to_json(json& j, const Demographics& v) {
  j = json{{"gender", v.gender}, {"age", v.age}, {"grade", v.grade}, {"major", v.major}};
}

void from_json(const json& j, Demographics& v) {
  j.at("gender").get_to(v.gender);
  j.at("age").get_to(v.age);
  j.at("grade").get_to(v.grade);
  j.at("major").get_to(v.major);
}

void to_json(json& j, const Provenance& v) {
  j = json{{"seed", v.seed}, {"backend_id", v.backend_id}, {"prompt_digest", v.prompt_digest}};
}

void from_json(const json& j, Provenance& v) {
  j.at("seed").get_to(v.seed);
  j.at("backend_id").get_to(v.backend_id);
  j.at("prompt_digest").get_to(v.prompt_digest);
}

void to_json(json& j, const StudentProfile& v) {
  j = json{{"student_id", v.student_id},   {"name", v.name},
           {"demographics", v.demographics}, {"personality", v.personality},
           {"background", v.background},     {"core_conflict", v.core_conflict},
           {"stress_domain", v.stress_domain}, {"provenance", v.provenance}};
}

void from_json(const json& j, StudentProfile& v) {
  j.at("student_id").get_to(v.student_id);
  j.at("name").get_to(v.name);
  j.at("demographics").get_to(v.demographics);
  j.at("personality").get_to(v.personality);
  j.at("background").get_to(v.background);
  j.at("core_conflict").get_to(v.core_conflict);
  j.at("stress_domain").get_to(v.stress_domain);
  j.at("provenance").get_to(v.provenance);
}

void to_json(json& j, const EventNode& v) {
  j = json{{"id", v.id},
           {"week", v.week},
           {"domain", v.domain},
           {"event_content", v.event_content},
           {"psychological_impact", v.psychological_impact},
           {"stress_level", v.stress_level},
           {"caused_by", v.caused_by}};
}

void from_json(const json& j, EventNode& v) {
  j.at("id").get_to(v.id);
  j.at("week").get_to(v.week);
  j.at("domain").get_to(v.domain);
  j.at("event_content").get_to(v.event_content);
  j.at("psychological_impact").get_to(v.psychological_impact);
  j.at("stress_level").get_to(v.stress_level);
  j.at("caused_by").get_to(v.caused_by);
}

void to_json(json& j, const StressEventGraph& v) {
  j = json{{"student_id", v.student_id}, {"semester_weeks", v.semester_weeks}, {"events", v.nodes}};
}

void from_json(const json& j, StressEventGraph& v) {
  j.at("student_id").get_to(v.student_id);
  j.at("semester_weeks").get_to(v.semester_weeks);
  j.at("events").get_to(v.nodes);
}

void to_json(json& j, const Turn& v) { j = json{{"index", v.index}, {"role", v.role}, {"text", v.text}}; }

void from_json(const json& j, Turn& v) {
  j.at("index").get_to(v.index);
  j.at("role").get_to(v.role);
  j.at("text").get_to(v.text);
}

void to_json(json& j, const SessionDialogue& v) {
  j = json{{"session_index", v.session_index}, {"event_id", v.event_id}, {"rounds", v.rounds}, {"turns", v.turns}};
}

void from_json(const json& j, SessionDialogue& v) {
  j.at("session_index").get_to(v.session_index);
  j.at("event_id").get_to(v.event_id);
  j.at("rounds").get_to(v.rounds);
  j.at("turns").get_to(v.turns);
}

void to_json(json& j, const SessionSummary& v) {
  j = json{{"session_index", v.session_index},
           {"event_id", v.event_id},
           {"stress_event", v.stress_event},
           {"dominant_emotion", v.dominant_emotion},
           {"core_conflict_status", v.core_conflict_status},
           {"counseling_focus", v.counseling_focus},
           {"unresolved_issues", v.unresolved_issues}};
}

void from_json(const json& j, SessionSummary& v) {
  j.at("session_index").get_to(v.session_index);
  j.at("event_id").get_to(v.event_id);
  j.at("stress_event").get_to(v.stress_event);
  j.at("dominant_emotion").get_to(v.dominant_emotion);
  j.at("core_conflict_status").get_to(v.core_conflict_status);
  j.at("counseling_focus").get_to(v.counseling_focus);
  j.at("unresolved_issues").get_to(v.unresolved_issues);
}

void to_json(json& j, const MemoryState& v) { j = json{{"summaries", v.summaries}}; }

void from_json(const json& j, MemoryState& v) { j.at("summaries").get_to(v.summaries); }

void to_json(json& j, const UtteranceRow& v) {
  j = json{{"student_id", v.student_id},
           {"session_index", v.session_index},
           {"turn_index", v.turn_index},
           {"role", v.role},
           {"text", v.text}};
}

void from_json(const json& j, UtteranceRow& v) {
  j.at("student_id").get_to(v.student_id);
  j.at("session_index").get_to(v.session_index);
  j.at("turn_index").get_to(v.turn_index);
  j.at("role").get_to(v.role);
  j.at("text").get_to(v.text);
}

}  // namespace campsim
