#include "campsim/sim/simulator.hpp"

#include <algorithm>

#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"
#include "campsim/events/event_graph.hpp"

namespace campsim::sim {

void check_config(const SimulationConfig& c) {
  if (c.rounds_min < 1 || c.rounds_max < c.rounds_min) {
    throw Error(ErrorCode::Config, "rounds range must satisfy 1 <= min <= max, got " + std::to_string(c.rounds_min) +
                                       ".." + std::to_string(c.rounds_max));
  }
  if (c.memory_window < 0) throw Error(ErrorCode::Config, "memory_window must be >= 0");
  if (c.attempt_budget < 1) throw Error(ErrorCode::Config, "attempt_budget must be >= 1");
}

void to_json(json& j, const SimulationConfig& c) {
  j = json{{"rounds_min", c.rounds_min},         {"rounds_max", c.rounds_max},
           {"memory_window", c.memory_window},   {"attempt_budget", c.attempt_budget},
           {"seed", c.seed},                     {"temperature", c.temperature}};
}

void from_json(const json& j, SimulationConfig& c) {
  SimulationConfig d;
  c.rounds_min = j.value("rounds_min", d.rounds_min);
  c.rounds_max = j.value("rounds_max", d.rounds_max);
  c.memory_window = j.value("memory_window", d.memory_window);
  c.attempt_budget = j.value("attempt_budget", d.attempt_budget);
  c.seed = j.value("seed", d.seed);
  c.temperature = j.value("temperature", d.temperature);
}

void to_json(json& j, const PromptRecord& r) {
  j = json{{"session_index", r.session_index},
           {"round", r.round},
           {"kind", std::string(to_string(r.kind))},
           {"prompt_digest", r.prompt_digest},
           {"memory_indices", r.memory_indices}};
}

void from_json(const json& j, PromptRecord& r) {
  r.session_index = j.at("session_index").get<int>();
  r.round = j.at("round").get<int>();
  const auto kind = j.at("kind").get<std::string>();
  if (kind == "student_turn") {
    r.kind = RequestKind::StudentTurn;
  } else if (kind == "counselor_turn") {
    r.kind = RequestKind::CounselorTurn;
  } else if (kind == "summary") {
    r.kind = RequestKind::Summary;
  } else {
    throw json::other_error::create(501, "unknown prompt record kind " + kind, &j);
  }
  r.prompt_digest = j.at("prompt_digest").get<std::string>();
  r.memory_indices = j.at("memory_indices").get<std::vector<int>>();
}

std::vector<std::string> schedule_sessions(const StressEventGraph& graph, const ScheduleOptions& options) {
  std::vector<EventNode> nodes = graph.nodes;
  events::sort_nodes(nodes);
  std::vector<std::string> out;
  for (const auto& n : nodes) {
    if (options.policy == SchedulePolicy::MinStress && n.stress_level < options.min_stress) continue;
    out.push_back(n.id);
  }
  return out;
}

namespace {

std::vector<int> memory_indices(std::span<const SessionSummary> memory) {
  std::vector<int> out;
  for (const auto& m : memory) out.push_back(m.session_index);
  return out;
}

std::string accept_utterance(const std::string& raw, Role role) {
  std::string t = text::trim(raw);
  if (t.empty()) {
    throw Error(ErrorCode::EmptyUtterance, std::string(role_name(role)) + " agent returned a blank utterance");
  }
  return t;
}

Turn run_turn(GenerationRequest req, Role role, const TurnContext& ctx, Backend& backend, std::uint64_t seed,
              double temperature, PromptLog* log) {
  req.seed = seed;
  req.temperature = temperature;
  Turn turn;
  turn.index = 2 * (ctx.round - 1) + (role == Role::Student ? 1 : 2);
  turn.role = role;
  turn.text = accept_utterance(backend.generate(req), role);
  if (log) log->push_back({ctx.session_index, ctx.round, req.kind, req.prompt_digest(), memory_indices(ctx.memory)});
  return turn;
}

std::uint64_t call_seed(const SimulationConfig& config, std::string_view student_id, int t, int attempt,
                        std::string_view what, int round) {
  const std::string ts = std::to_string(t);
  const std::string as = std::to_string(attempt);
  const std::string rs = std::to_string(round);
  return derive_seed(config.seed, {"session", student_id, ts, as, what, rs});
}

}  // namespace

Turn student_turn(const TurnContext& ctx, Backend& backend, std::uint64_t seed, double temperature, PromptLog* log) {
  if (ctx.history.size() % 2 != 0) throw Error(ErrorCode::Config, "student turn requested out of order");
  return run_turn(render_student_request(ctx), Role::Student, ctx, backend, seed, temperature, log);
}

Turn counselor_turn(const TurnContext& ctx, std::string_view student_utterance, Backend& backend, std::uint64_t seed,
                    double temperature, PromptLog* log) {
  if (ctx.history.size() % 2 != 0) throw Error(ErrorCode::Config, "counselor turn requested out of order");
  return run_turn(render_counselor_request(ctx, student_utterance), Role::Counselor, ctx, backend, seed, temperature,
                  log);
}

int session_rounds(const SimulationConfig& config, std::string_view student_id, int session_index) {
  Rng rng(derive_seed(config.seed, {"rounds", student_id, std::to_string(session_index)}));
  return static_cast<int>(uniform_int(rng, config.rounds_min, config.rounds_max));
}

SessionDialogue simulate_session(const StudentProfile& profile, const EventNode& event, const MemoryState& memory,
                                 Backend& backend, const SimulationConfig& config, int t, PromptLog* log) {
  check_config(config);
  if (memory.size() != static_cast<std::size_t>(t - 1)) {
    throw Error(ErrorCode::SequenceGap, "session " + std::to_string(t) + " needs " + std::to_string(t - 1) +
                                            " summaries, memory holds " + std::to_string(memory.size()));
  }
  const int rounds = session_rounds(config, profile.student_id, t);
  const auto view = memory_view(memory, config.memory_window);

  std::string last_error;
  for (int attempt = 0; attempt < config.attempt_budget; ++attempt) {
    SessionDialogue d;
    d.session_index = t;
    d.event_id = event.id;
    d.rounds = rounds;
    PromptLog attempt_log;
    try {
      for (int r = 1; r <= rounds; ++r) {
        TurnContext ctx{profile, event, view, d.turns, t, r, rounds};
        Turn s = student_turn(ctx, backend, call_seed(config, profile.student_id, t, attempt, "student", r),
                              config.temperature, &attempt_log);
        Turn c = counselor_turn(ctx, s.text, backend, call_seed(config, profile.student_id, t, attempt, "counselor", r),
                                config.temperature, &attempt_log);
        d.turns.push_back(std::move(s));
        d.turns.push_back(std::move(c));
      }
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Config) throw;
      last_error = e.what();
      continue;
    }
    if (log) log->insert(log->end(), attempt_log.begin(), attempt_log.end());
    return d;
  }
  throw Error(ErrorCode::GenerationExhausted, "session " + std::to_string(t) + " of " + profile.student_id +
                                                  " failed " + std::to_string(config.attempt_budget) +
                                                  " attempts; last: " + last_error);
}

SessionSummary parse_summary(std::string_view raw, int session_index, std::string_view event_id) {
  const std::string body = text::strip_code_fences(raw);
  json obj = json::parse(body, nullptr, false);
  if (obj.is_discarded()) {
    const auto b = body.find('{');
    const auto e = body.rfind('}');
    if (b != std::string::npos && e != std::string::npos && e > b) {
      obj = json::parse(body.substr(b, e - b + 1), nullptr, false);
    }
  }
  if (obj.is_discarded() || !obj.is_object()) throw Error(ErrorCode::Parse, "summary reply is not a JSON object");

  auto field = [&](const char* name) {
    if (!obj.contains(name) || !obj.at(name).is_string()) {
      throw Error(ErrorCode::Parse, std::string("summary field missing or not a string: ") + name);
    }
    std::string v = text::trim(obj.at(name).get<std::string>());
    if (v.empty()) throw Error(ErrorCode::Parse, std::string("summary field is blank: ") + name);
    return v;
  };
  SessionSummary s;
  s.session_index = session_index;
  s.event_id = std::string(event_id);
  s.stress_event = field("stress_event");
  s.dominant_emotion = field("dominant_emotion");
  s.core_conflict_status = field("core_conflict_status");
  s.counseling_focus = field("counseling_focus");
  s.unresolved_issues = field("unresolved_issues");
  return s;
}

SessionSummary summarize_session(const StudentProfile& profile, const SessionDialogue& dialogue,
                                 const EventNode& event, const MemoryState& memory, Backend& backend,
                                 const SimulationConfig& config, PromptLog* log) {
  check_config(config);
  const auto view = memory_view(memory, config.memory_window);
  GenerationRequest req = render_summary_request(profile, dialogue, event, view);
  std::string last_error;
  for (int attempt = 0; attempt < config.attempt_budget; ++attempt) {
    req.seed = call_seed(config, profile.student_id, dialogue.session_index, attempt, "summary", 0);
    try {
      SessionSummary s = parse_summary(backend.generate(req), dialogue.session_index, dialogue.event_id);
      if (log) log->push_back({dialogue.session_index, 0, req.kind, req.prompt_digest(), memory_indices(view)});
      return s;
    } catch (const Error& e) {
      if (e.code() == ErrorCode::Config) throw;
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::GenerationExhausted, "summary of session " + std::to_string(dialogue.session_index) +
                                                  " failed " + std::to_string(config.attempt_budget) +
                                                  " attempts; last: " + last_error);
}

MemoryState update_memory(const MemoryState& memory, SessionSummary summary) {
  const auto expected = static_cast<int>(memory.size()) + 1;
  if (summary.session_index != expected) {
    throw Error(ErrorCode::SequenceGap, "summary index " + std::to_string(summary.session_index) +
                                            " does not follow memory of length " + std::to_string(memory.size()));
  }
  MemoryState next = memory;
  next.summaries.push_back(std::move(summary));
  return next;
}

StudentTrajectory run_trajectory(const StudentProfile& profile, const StressEventGraph& graph, Backend& backend,
                                 const SimulationConfig& config, PromptLog* log, const ScheduleOptions& schedule) {
  check_config(config);
  StudentTrajectory traj;
  traj.profile = profile;
  traj.graph = graph;
  int t = 0;
  for (const auto& id : schedule_sessions(graph, schedule)) {
    ++t;
    const EventNode& event = *graph.find(id);
    SessionDialogue d = simulate_session(profile, event, traj.memory, backend, config, t, log);
    SessionSummary s = summarize_session(profile, d, event, traj.memory, backend, config, log);
    traj.memory = update_memory(traj.memory, std::move(s));
    traj.sessions.push_back(std::move(d));
  }
  return traj;
}

std::vector<AuditFinding> audit_causal_context(const StudentTrajectory& traj, const PromptLog& log,
                                               const SimulationConfig& config) {
  std::vector<AuditFinding> out;
  auto report = [&](const PromptRecord& r, std::string detail) {
    out.push_back({r.session_index, r.round, std::move(detail)});
  };
  if (!traj.profile || !traj.graph) {
    out.push_back({0, 0, "trajectory lacks profile or graph"});
    return out;
  }
  for (const auto& r : log) {
    for (int k : r.memory_indices) {
      if (k >= r.session_index) report(r, "prompt references summary " + std::to_string(k));
    }
    if (r.session_index < 1 || static_cast<std::size_t>(r.session_index) > traj.sessions.size()) {
      report(r, "no such session");
      continue;
    }
    const SessionDialogue& d = traj.sessions[static_cast<std::size_t>(r.session_index - 1)];
    const EventNode* event = traj.graph->find(d.event_id);
    if (!event) {
      report(r, "session event " + d.event_id + " not in graph");
      continue;
    }
    MemoryState prior;
    prior.summaries.assign(traj.memory.summaries.begin(),
                           traj.memory.summaries.begin() +
                               std::min<std::ptrdiff_t>(r.session_index - 1,
                                                        static_cast<std::ptrdiff_t>(traj.memory.size())));
    const auto view = memory_view(prior, config.memory_window);
    if (memory_indices(view) != r.memory_indices) report(r, "memory window differs from configuration");

    GenerationRequest expected;
    if (r.kind == RequestKind::Summary) {
      expected = render_summary_request(*traj.profile, d, *event, view);
    } else {
      const auto start = static_cast<std::size_t>(2 * (r.round - 1));
      if (r.round < 1 || start + 1 >= d.turns.size() + (r.kind == RequestKind::StudentTurn ? 1 : 0)) {
        report(r, "round out of range");
        continue;
      }
      TurnContext ctx{*traj.profile, *event, view, std::span<const Turn>(d.turns).first(start),
                      r.session_index, r.round, d.rounds};
      expected = r.kind == RequestKind::StudentTurn ? render_student_request(ctx)
                                                    : render_counselor_request(ctx, d.turns[start].text);
    }
    if (expected.prompt_digest() != r.prompt_digest) report(r, "prompt digest does not match re-rendered context");
  }
  return out;
}

}  // namespace campsim::sim
