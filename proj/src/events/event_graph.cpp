#include "campsim/events/event_graph.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <tuple>

#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"

namespace campsim::events {

namespace {

constexpr std::string_view kEventTemplate =
    R"(Plan the stressful events one student lives through over a term ({weeks} weeks).
Student:
{persona}
Every event belongs to one of these domains:
{domains}
Reply with a bare JSON array (no code fences) of {min_events} to {max_events} objects, each with:
- "id": string such as "E1"
- "week": integer from 1 to {weeks}
- "domain": one of the domain names above
- "event_content": what happened, with concrete detail
- "psychological_impact": how it affected the student
- "stress_level": integer from 1 to 10
- "caused_by": ids of earlier events that led to this one, or [] when none did
The events should grow out of the student's core conflict, link into causal chains, and let pressure build over the weeks.)";

std::string domain_list() {
  std::string out;
  for (const auto d : all_stress_domains()) {
    if (!out.empty()) out += "\n";
    out += "- ";
    out += domain_heading(d);
  }
  return out;
}

json parse_json_payload(std::string_view raw) {
  const std::string body = text::strip_code_fences(raw);
  auto parsed = json::parse(body, nullptr, false);
  if (!parsed.is_discarded()) return parsed;
  // Leading or trailing chatter around the payload.
  for (const auto& [open, close] : {std::pair{'[', ']'}, std::pair{'{', '}'}}) {
    const auto b = body.find(open);
    const auto e = body.rfind(close);
    if (b == std::string::npos || e == std::string::npos || e <= b) continue;
    parsed = json::parse(body.substr(b, e - b + 1), nullptr, false);
    if (!parsed.is_discarded()) return parsed;
  }
  throw Error(ErrorCode::Parse, "event graph reply is not JSON");
}

int integer_field(const json& obj, const char* field, std::size_t pos) {
  const std::string where = "event " + std::to_string(pos) + ": ";
  if (!obj.contains(field)) throw Error(ErrorCode::Parse, where + "missing " + field);
  const json& v = obj.at(field);
  if (v.is_number_integer()) {
    const auto x = v.get<long long>();
    if (x < std::numeric_limits<int>::min() || x > std::numeric_limits<int>::max()) {
      throw Error(ErrorCode::Parse, where + field + " out of integer range");
    }
    return static_cast<int>(x);
  }
  if (v.is_number_float()) {
    const double d = v.get<double>();
    if (std::isfinite(d) && d == std::floor(d) && std::abs(d) < 1e9) return static_cast<int>(d);
  }
  throw Error(ErrorCode::Parse, where + "non-integer " + field);
}

std::string string_field(const json& obj, const char* field, std::size_t pos) {
  if (!obj.contains(field) || !obj.at(field).is_string()) {
    throw Error(ErrorCode::Parse, "event " + std::to_string(pos) + ": missing or non-text " + field);
  }
  return obj.at(field).get<std::string>();
}

// (week, id-index) with malformed ids after all well-formed ones.
std::pair<int, long long> order_key(const EventNode& n) {
  const auto idx = event_id_index(n.id);
  return {n.week, idx ? *idx : std::numeric_limits<long long>::max()};
}

}  // namespace

std::string_view to_string(GraphErrorCategory c) noexcept {
  switch (c) {
    case GraphErrorCategory::WeekOutOfRange: return "WeekOutOfRange";
    case GraphErrorCategory::StressOutOfRange: return "StressOutOfRange";
    case GraphErrorCategory::EventCountOutOfRange: return "EventCountOutOfRange";
    case GraphErrorCategory::DanglingCause: return "DanglingCause";
    case GraphErrorCategory::SelfCause: return "SelfCause";
    case GraphErrorCategory::CausalCycle: return "CausalCycle";
    case GraphErrorCategory::TemporalViolation: return "TemporalViolation";
    case GraphErrorCategory::DuplicateId: return "DuplicateId";
    case GraphErrorCategory::BadIdPattern: return "BadIdPattern";
  }
  return "Unknown";
}

GenerationRequest render_event_prompt(const StudentProfile& profile, const GraphLimits& limits, int semester_weeks) {
  const std::string persona = "姓名：" + profile.name + "\n基本背景：" + render_demographics(profile) +
                              "\n家庭与社会背景：" + profile.background + "\n核心冲突：" + profile.core_conflict;
  GenerationRequest req;
  req.kind = RequestKind::EventGraph;
  req.system_prompt = "Return only the JSON list of events.";
  req.user_prompt = text::render_template(kEventTemplate, {{"persona", persona},
                                                           {"domains", domain_list()},
                                                           {"weeks", std::to_string(semester_weeks)},
                                                           {"min_events", std::to_string(limits.min_events)},
                                                           {"max_events", std::to_string(limits.max_events)}});
  req.max_length = 8192;
  req.hints = json{{"student_id", profile.student_id},
                   {"name", profile.name},
                   {"stress_domain", profile.stress_domain},
                   {"core_conflict", profile.core_conflict},
                   {"weeks", semester_weeks},
                   {"min_events", limits.min_events},
                   {"max_events", limits.max_events}};
  return req;
}

void sort_nodes(std::vector<EventNode>& nodes) {
  std::sort(nodes.begin(), nodes.end(), [](const EventNode& a, const EventNode& b) {
    if (event_order_less(a, b)) return true;
    if (event_order_less(b, a)) return false;
    // Same week and id: fall back to content so the order stays total.
    return json(a).dump() < json(b).dump();
  });
}

StressEventGraph parse_event_graph(std::string_view raw, std::string_view student_id, int semester_weeks) {
  const json payload = parse_json_payload(raw);
  const json* list = nullptr;
  if (payload.is_array()) {
    list = &payload;
  } else if (payload.is_object() && payload.contains("events") && payload.at("events").is_array()) {
    list = &payload.at("events");
  } else {
    throw Error(ErrorCode::Parse, "expected a JSON list or an object with an \"events\" list");
  }

  StressEventGraph g;
  g.student_id = std::string(student_id);
  g.semester_weeks = semester_weeks;
  std::size_t pos = 0;
  for (const auto& item : *list) {
    ++pos;
    if (!item.is_object()) throw Error(ErrorCode::Parse, "event " + std::to_string(pos) + " is not an object");
    EventNode n;
    n.id = string_field(item, "id", pos);
    n.week = integer_field(item, "week", pos);
    const auto domain = parse_domain(string_field(item, "domain", pos));
    if (!domain) {
      throw Error(ErrorCode::Parse, "event " + std::to_string(pos) + ": unknown domain " + item.at("domain").dump());
    }
    n.domain = *domain;
    n.event_content = string_field(item, "event_content", pos);
    n.psychological_impact = string_field(item, "psychological_impact", pos);
    n.stress_level = integer_field(item, "stress_level", pos);
    if (item.contains("caused_by") && !item.at("caused_by").is_null()) {
      const json& causes = item.at("caused_by");
      if (!causes.is_array()) throw Error(ErrorCode::Parse, "event " + std::to_string(pos) + ": caused_by is not a list");
      for (const auto& c : causes) {
        if (!c.is_string()) throw Error(ErrorCode::Parse, "event " + std::to_string(pos) + ": non-text caused_by id");
        n.caused_by.push_back(c.get<std::string>());
      }
    }
    g.nodes.push_back(std::move(n));
  }
  sort_nodes(g.nodes);
  return g;
}

std::vector<GraphValidationError> validate_event_graph(const StressEventGraph& graph, const GraphLimits& limits) {
  std::vector<GraphValidationError> errors;
  auto add = [&](GraphErrorCategory c, std::vector<std::string> ids, std::string detail) {
    errors.push_back(GraphValidationError{c, std::move(ids), std::move(detail)});
  };
  const auto& nodes = graph.nodes;
  const int n = static_cast<int>(nodes.size());

  if (n < limits.min_events || n > limits.max_events) {
    add(GraphErrorCategory::EventCountOutOfRange, {},
        std::to_string(n) + " events, expected " + std::to_string(limits.min_events) + "-" +
            std::to_string(limits.max_events));
  }

  std::map<std::string, int> first_index;
  std::map<std::string, int> id_count;
  for (int i = 0; i < n; ++i) {
    first_index.emplace(nodes[i].id, i);
    ++id_count[nodes[i].id];
  }
  for (const auto& [id, count] : id_count) {
    if (count > 1) add(GraphErrorCategory::DuplicateId, {id}, std::to_string(count) + " events share this id");
  }

  for (const auto& node : nodes) {
    if (!event_id_index(node.id)) add(GraphErrorCategory::BadIdPattern, {node.id}, "id must look like E<k>, k >= 1");
    if (node.week < 1 || node.week > graph.semester_weeks) {
      add(GraphErrorCategory::WeekOutOfRange, {node.id},
          "week " + std::to_string(node.week) + " outside 1-" + std::to_string(graph.semester_weeks));
    }
    if (node.stress_level < kStressMin || node.stress_level > kStressMax) {
      add(GraphErrorCategory::StressOutOfRange, {node.id}, "stress level " + std::to_string(node.stress_level));
    }
  }

  // Resolved edges cause -> effect, by node position.
  std::vector<std::vector<int>> effects_of(static_cast<std::size_t>(n));
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i < n; ++i) {
    const auto& node = nodes[i];
    std::set<std::string> seen;
    for (const auto& ref : node.caused_by) {
      if (!seen.insert(ref).second) {
        add(GraphErrorCategory::DuplicateId, {node.id, ref}, "caused_by lists " + ref + " more than once");
        continue;
      }
      if (ref == node.id) {
        add(GraphErrorCategory::SelfCause, {node.id}, "event lists itself as a cause");
        continue;
      }
      const auto it = first_index.find(ref);
      if (it == first_index.end()) {
        add(GraphErrorCategory::DanglingCause, {node.id, ref}, "cause " + ref + " does not exist");
        continue;
      }
      effects_of[static_cast<std::size_t>(it->second)].push_back(i);
      edges.emplace_back(it->second, i);
    }
  }

  // Tarjan's strongly connected components over resolved edges.
  std::vector<int> index(static_cast<std::size_t>(n), -1), low(static_cast<std::size_t>(n), 0),
      component(static_cast<std::size_t>(n), -1);
  std::vector<bool> on_stack(static_cast<std::size_t>(n), false);
  std::vector<int> stack;
  std::vector<std::vector<int>> components;
  int counter = 0;
  std::function<void(int)> strongconnect = [&](int v) {
    index[v] = low[v] = counter++;
    stack.push_back(v);
    on_stack[v] = true;
    for (int w : effects_of[v]) {
      if (index[w] < 0) {
        strongconnect(w);
        low[v] = std::min(low[v], low[w]);
      } else if (on_stack[w]) {
        low[v] = std::min(low[v], index[w]);
      }
    }
    if (low[v] == index[v]) {
      std::vector<int> members;
      int w;
      do {
        w = stack.back();
        stack.pop_back();
        on_stack[w] = false;
        component[w] = static_cast<int>(components.size());
        members.push_back(w);
      } while (w != v);
      components.push_back(std::move(members));
    }
  };
  for (int v = 0; v < n; ++v) {
    if (index[v] < 0) strongconnect(v);
  }
  for (auto& members : components) {
    if (members.size() < 2) continue;
    std::sort(members.begin(), members.end());
    std::vector<std::string> ids;
    for (int m : members) ids.push_back(nodes[m].id);
    add(GraphErrorCategory::CausalCycle, ids, "caused_by links form a cycle");
  }

  for (const auto& [cause, effect] : edges) {
    const bool cyclic = component[cause] == component[effect] && components[component[cause]].size() > 1;
    if (cyclic) continue;
    if (!(order_key(nodes[cause]) < order_key(nodes[effect]))) {
      add(GraphErrorCategory::TemporalViolation, {nodes[cause].id, nodes[effect].id},
          nodes[cause].id + " (week " + std::to_string(nodes[cause].week) + ") does not precede " +
              nodes[effect].id + " (week " + std::to_string(nodes[effect].week) + ")");
    }
  }
  return errors;
}

GraphBuild build_graph(const StudentProfile& profile, Backend& backend, const GraphBuildSettings& settings,
                       std::uint64_t seed) {
  GraphBuild build;
  std::string last_error = "no attempts";
  for (int a = 0; a < settings.attempt_budget; ++a) {
    GenerationRequest req = render_event_prompt(profile, settings.limits, settings.semester_weeks);
    req.seed = derive_seed(seed, {"event_graph", profile.student_id, std::to_string(a)});
    build.prompt_digests.push_back(req.prompt_digest());
    ++build.attempts;
    try {
      auto graph = parse_event_graph(backend.generate(req), profile.student_id, settings.semester_weeks);
      const auto errors = validate_event_graph(graph, settings.limits);
      if (!errors.empty()) {
        last_error = std::string(to_string(errors.front().category)) + ": " + errors.front().detail;
        continue;
      }
      build.graph = std::move(graph);
      return build;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::GenerationExhausted, "event graph for " + profile.student_id + " after " +
                                                  std::to_string(build.attempts) + " attempts: " + last_error);
}

int stress_trend_sign(const StressEventGraph& graph) {
  const std::size_t n = graph.nodes.size();
  if (n < 2) return 0;
  auto ranks = [&](auto value) {
    std::vector<std::size_t> order(n);
    for (std::size_t i = 0; i < n; ++i) order[i] = i;
    std::sort(order.begin(), order.end(),
              [&](std::size_t a, std::size_t b) { return value(graph.nodes[a]) < value(graph.nodes[b]); });
    std::vector<double> r(n);
    for (std::size_t i = 0; i < n;) {
      std::size_t j = i;
      while (j + 1 < n && value(graph.nodes[order[j + 1]]) == value(graph.nodes[order[i]])) ++j;
      const double avg = (static_cast<double>(i) + static_cast<double>(j)) / 2.0 + 1.0;
      for (std::size_t k = i; k <= j; ++k) r[order[k]] = avg;
      i = j + 1;
    }
    return r;
  };
  const auto rw = ranks([](const EventNode& e) { return e.week; });
  const auto rs = ranks([](const EventNode& e) { return e.stress_level; });
  const double mean = (static_cast<double>(n) + 1.0) / 2.0;
  double cov = 0.0;
  for (std::size_t i = 0; i < n; ++i) cov += (rw[i] - mean) * (rs[i] - mean);
  if (std::abs(cov) < 1e-12) return 0;
  return cov > 0 ? 1 : -1;
}

}  // namespace campsim::events
