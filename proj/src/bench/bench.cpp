#include "campsim/bench/bench.hpp"

#include <algorithm>
#include <istream>
#include <tuple>

#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"
#include "campsim/events/event_graph.hpp"

namespace campsim::bench {

std::string_view to_string(Task t) noexcept {
  switch (t) {
    case Task::SR: return "SR";
    case Task::MR: return "MR";
    case Task::TCR: return "TCR";
  }
  return "SR";
}

std::optional<Task> parse_task(std::string_view s) {
  if (s == "SR") return Task::SR;
  if (s == "MR") return Task::MR;
  if (s == "TCR") return Task::TCR;
  return std::nullopt;
}

const std::vector<std::string>& rubric_for(Task t) {
  static const std::vector<std::string> sr{"Empathy", "Coherence", "Professionalism"};
  static const std::vector<std::string> mr{"Accuracy", "Completeness", "Temporal Consistency", "No Hallucination"};
  static const std::vector<std::string> tcr{"Temporal Accuracy", "Causal Coherence", "Completeness",
                                            "No Hallucination"};
  switch (t) {
    case Task::SR: return sr;
    case Task::MR: return mr;
    case Task::TCR: return tcr;
  }
  return sr;
}

void to_json(json& j, const BenchInstance& b) {
  j = json{{"instance_id", b.instance_id},     {"task", std::string(to_string(b.task))},
           {"trajectory_id", b.trajectory_id}, {"input_payload", b.input_payload},
           {"reference", b.reference},         {"rubric", b.rubric}};
}

void from_json(const json& j, BenchInstance& b) {
  b.instance_id = j.at("instance_id").get<std::string>();
  const auto task = parse_task(j.at("task").get<std::string>());
  if (!task) throw json::other_error::create(501, "unknown task " + j.at("task").dump(), &j);
  b.task = *task;
  b.trajectory_id = j.at("trajectory_id").get<std::string>();
  b.input_payload = j.at("input_payload");
  b.reference = j.at("reference");
  b.rubric = j.at("rubric").get<std::vector<std::string>>();
}

void to_json(json& j, const BenchConfig& c) {
  j = json{{"sr_quota", c.sr_quota}, {"mr_quota", c.mr_quota}, {"tcr", c.tcr}, {"exclude", c.exclude},
           {"seed", c.seed}};
}

void from_json(const json& j, BenchConfig& c) {
  BenchConfig d;
  c.sr_quota = j.value("sr_quota", d.sr_quota);
  c.mr_quota = j.value("mr_quota", d.mr_quota);
  c.tcr = j.value("tcr", d.tcr);
  c.exclude = j.value("exclude", d.exclude);
  c.seed = j.value("seed", d.seed);
}

namespace {

void require_complete(const StudentTrajectory& traj) {
  if (!traj.profile || !traj.graph) {
    throw Error(ErrorCode::Config, "bench trajectory " + traj.id() + " lacks profile or graph");
  }
}

std::string two_digit(std::size_t k) { return (k < 10 ? "0" : "") + std::to_string(k); }

std::string make_id(const StudentTrajectory& traj, Task task, std::size_t k) {
  return traj.id() + "-" + std::string(to_string(task)) + "-" + two_digit(k);
}

json history_payload(const StudentTrajectory& traj) {
  json sessions = json::array();
  for (const auto& s : traj.sessions) sessions.push_back(s);
  return sessions;
}

void check_quota(int quota, std::size_t available, std::string_view what) {
  if (quota < 1) throw Error(ErrorCode::Config, std::string(what) + " quota must be >= 1");
  if (static_cast<std::size_t>(quota) > available) {
    throw Error(ErrorCode::QuotaTooLarge, std::string(what) + " quota " + std::to_string(quota) + " exceeds " +
                                              std::to_string(available) + " available items");
  }
}

/// `quota` distinct positions from 0..n-1, returned ascending.
std::vector<std::size_t> choose(std::size_t n, int quota, std::uint64_t seed) {
  std::vector<std::size_t> idx(n);
  for (std::size_t i = 0; i < n; ++i) idx[i] = i;
  Rng rng(seed);
  seeded_shuffle(idx, rng);
  idx.resize(static_cast<std::size_t>(quota));
  std::sort(idx.begin(), idx.end());
  return idx;
}

// MR question templates. Each one reads its answer from a single trajectory field.
struct MrQuestion {
  std::string question;
  std::string answer;
  json source;
};

std::optional<MrQuestion> answer_for(const StudentTrajectory& traj, const json& source) {
  const std::string kind = source.value("kind", "");
  if (kind == "unresolved_issue") {
    const int t = source.value("session_index", 0);
    if (t < 1 || static_cast<std::size_t>(t) > traj.memory.size()) return std::nullopt;
    const auto& m = traj.memory.summaries[static_cast<std::size_t>(t - 1)];
    return MrQuestion{"第" + std::to_string(t) + "次咨询结束时，还有哪些问题尚未解决？", m.unresolved_issues, source};
  }
  const EventNode* e = traj.graph ? traj.graph->find(source.value("event_id", "")) : nullptr;
  if (!e) return std::nullopt;
  if (kind == "event_week") {
    return MrQuestion{"事件" + e->id + "发生在第几周？", "第" + std::to_string(e->week) + "周", source};
  }
  if (kind == "event_stress") {
    return MrQuestion{"事件" + e->id + "的压力水平是多少（1-10）？", std::to_string(e->stress_level), source};
  }
  if (kind == "event_domain") {
    return MrQuestion{"事件" + e->id + "属于哪一类压力领域？", std::string(domain_label(e->domain)), source};
  }
  return std::nullopt;
}

std::vector<json> mr_sources(const StudentTrajectory& traj) {
  std::vector<EventNode> nodes = traj.graph->nodes;
  events::sort_nodes(nodes);
  std::vector<json> out;
  for (const auto& n : nodes) {
    for (const char* kind : {"event_week", "event_stress", "event_domain"}) {
      out.push_back(json{{"kind", kind}, {"event_id", n.id}});
    }
  }
  for (const auto& m : traj.memory.summaries) {
    out.push_back(json{{"kind", "unresolved_issue"}, {"session_index", m.session_index}});
  }
  return out;
}

constexpr std::string_view kTcrQuestion = "请按时间顺序梳理该学生本学期的压力事件发展轨迹，并解释事件之间的因果关系。";

}  // namespace

std::vector<BenchInstance> build_sr(const StudentTrajectory& traj, int quota, std::uint64_t seed) {
  require_complete(traj);
  std::vector<std::pair<std::size_t, int>> cuts;  // (session position, round)
  for (std::size_t s = 0; s < traj.sessions.size(); ++s) {
    const int rounds = static_cast<int>(traj.sessions[s].turns.size() / 2);
    for (int r = 1; r <= rounds; ++r) cuts.emplace_back(s, r);
  }
  check_quota(quota, cuts.size(), "SR");

  std::vector<BenchInstance> out;
  std::size_t k = 0;
  for (auto c : choose(cuts.size(), quota, derive_seed(seed, {"bench-sr", traj.id()}))) {
    const auto [s, r] = cuts[c];
    const SessionDialogue& d = traj.sessions[s];
    const auto cut = static_cast<std::size_t>(2 * r - 1);  // history through the student's utterance
    json memory = json::array();
    for (const auto& m : traj.memory.summaries) {
      if (m.session_index < d.session_index) memory.push_back(m);
    }
    json history = json::array();
    for (std::size_t i = 0; i < cut; ++i) history.push_back(d.turns[i]);

    BenchInstance inst;
    inst.instance_id = make_id(traj, Task::SR, ++k);
    inst.task = Task::SR;
    inst.trajectory_id = traj.id();
    inst.input_payload = json{{"profile", *traj.profile},
                              {"memory", memory},
                              {"session_index", d.session_index},
                              {"round", r},
                              {"history", history}};
    inst.reference = d.turns[cut].text;
    inst.rubric = rubric_for(Task::SR);
    out.push_back(std::move(inst));
  }
  return out;
}

std::vector<BenchInstance> build_mr(const StudentTrajectory& traj, int quota, std::uint64_t seed) {
  require_complete(traj);
  const auto sources = mr_sources(traj);
  check_quota(quota, sources.size(), "MR");

  std::vector<BenchInstance> out;
  std::size_t k = 0;
  for (auto c : choose(sources.size(), quota, derive_seed(seed, {"bench-mr", traj.id()}))) {
    const auto q = answer_for(traj, sources[c]);
    BenchInstance inst;
    inst.instance_id = make_id(traj, Task::MR, ++k);
    inst.task = Task::MR;
    inst.trajectory_id = traj.id();
    inst.input_payload = json{{"profile", *traj.profile}, {"sessions", history_payload(traj)}, {"question", q->question}};
    inst.reference = json{{"answer", q->answer}, {"source", q->source}};
    inst.rubric = rubric_for(Task::MR);
    out.push_back(std::move(inst));
  }
  return out;
}

std::string render_event_chain(const StressEventGraph& graph) {
  std::vector<EventNode> nodes = graph.nodes;
  events::sort_nodes(nodes);
  std::string out;
  for (const auto& n : nodes) {
    out += n.id + " (week " + std::to_string(n.week) + ", " + std::string(domain_label(n.domain)) +
           "): " + n.event_content + " → " + n.psychological_impact + " | caused_by: [" +
           text::join(n.caused_by, ", ") + "]\n";
  }
  return out;
}

BenchInstance build_tcr(const StudentTrajectory& traj) {
  require_complete(traj);
  BenchInstance inst;
  inst.instance_id = make_id(traj, Task::TCR, 1);
  inst.task = Task::TCR;
  inst.trajectory_id = traj.id();
  inst.input_payload =
      json{{"profile", *traj.profile}, {"sessions", history_payload(traj)}, {"question", std::string(kTcrQuestion)}};
  inst.reference = render_event_chain(*traj.graph);
  inst.rubric = rubric_for(Task::TCR);
  return inst;
}

std::vector<std::string> verify_reference(const BenchInstance& inst, const StudentTrajectory& traj) {
  std::vector<std::string> problems;
  if (inst.trajectory_id != traj.id()) problems.push_back("instance belongs to " + inst.trajectory_id);
  if (inst.rubric != rubric_for(inst.task)) problems.push_back("rubric differs from the task rubric");
  switch (inst.task) {
    case Task::SR: {
      const int t = inst.input_payload.value("session_index", 0);
      const int r = inst.input_payload.value("round", 0);
      if (t < 1 || static_cast<std::size_t>(t) > traj.sessions.size()) {
        problems.push_back("no session " + std::to_string(t));
        break;
      }
      const auto& d = traj.sessions[static_cast<std::size_t>(t - 1)];
      const auto cut = static_cast<std::size_t>(2 * r - 1);
      if (r < 1 || cut >= d.turns.size()) {
        problems.push_back("no round " + std::to_string(r));
      } else if (d.turns[cut].role != Role::Counselor) {
        problems.push_back("reference turn is not a counselor turn");
      } else if (!inst.reference.is_string() || inst.reference.get<std::string>() != d.turns[cut].text) {
        problems.push_back("reference differs from the counselor turn at the cut");
      }
      break;
    }
    case Task::MR: {
      const auto q = answer_for(traj, inst.reference.value("source", json::object()));
      if (!q) {
        problems.push_back("reference source does not resolve");
      } else if (inst.reference.value("answer", "") != q->answer) {
        problems.push_back("answer differs from the trajectory field");
      } else if (inst.input_payload.value("question", "") != q->question) {
        problems.push_back("question differs from its template");
      }
      break;
    }
    case Task::TCR:
      if (!traj.graph || !inst.reference.is_string() || inst.reference.get<std::string>() != render_event_chain(*traj.graph)) {
        problems.push_back("event chain differs from the graph");
      }
      break;
  }
  return problems;
}

std::vector<BenchInstance> build_bench(std::span<const StudentTrajectory> held_out, const BenchConfig& config) {
  std::vector<BenchInstance> out;
  auto keep = [&](std::vector<BenchInstance> v) {
    for (auto& inst : v) {
      if (!config.exclude.contains(inst.instance_id)) out.push_back(std::move(inst));
    }
  };
  for (const auto& traj : held_out) {
    if (config.sr_quota > 0) keep(build_sr(traj, config.sr_quota, config.seed));
    if (config.mr_quota > 0) keep(build_mr(traj, config.mr_quota, config.seed));
    if (config.tcr) keep({build_tcr(traj)});
  }
  return out;
}

std::set<std::string> read_exclusion_list(std::istream& in) {
  std::set<std::string> out;
  std::string line;
  while (std::getline(in, line)) {
    const std::string id = text::trim(line);
    if (id.empty() || id.front() == '#') continue;
    out.insert(id);
  }
  return out;
}

}  // namespace campsim::bench
