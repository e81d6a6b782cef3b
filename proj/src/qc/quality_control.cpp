#include "campsim/qc/quality_control.hpp"

#include <algorithm>
#include <map>

#include "campsim/analytics/similarity.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"
#include "campsim/events/event_graph.hpp"

namespace campsim::qc {

std::string_view to_string(Family f) noexcept {
  switch (f) {
    case Family::Structural: return "structural";
    case Family::Consistency: return "consistency";
    case Family::Diversity: return "diversity";
    case Family::Safety: return "safety";
  }
  return "structural";
}

void to_json(json& j, const QcFinding& f) {
  j = json{{"family", std::string(to_string(f.family))}, {"code", f.code}, {"detail", f.detail}};
}

void from_json(const json& j, QcFinding& f) {
  const auto fam = j.at("family").get<std::string>();
  static const std::map<std::string, Family> names{{"structural", Family::Structural},
                                                   {"consistency", Family::Consistency},
                                                   {"diversity", Family::Diversity},
                                                   {"safety", Family::Safety}};
  const auto it = names.find(fam);
  if (it == names.end()) throw json::other_error::create(501, "unknown QC family " + fam, &j);
  f.family = it->second;
  f.code = j.at("code").get<std::string>();
  f.detail = j.value("detail", std::string());
}

void to_json(json& j, const QCReport& r) {
  j = json{{"trajectory_id", r.trajectory_id}, {"verdict", r.pass() ? "pass" : "reject"}, {"findings", r.findings}};
}

void from_json(const json& j, QCReport& r) {
  r.trajectory_id = j.at("trajectory_id").get<std::string>();
  r.findings = j.at("findings").get<std::vector<QcFinding>>();
}

// ---------------------------------------------------------------------------

std::vector<QcFinding> qc_structural(const StudentTrajectory& traj, const GraphLimits& limits) {
  std::vector<QcFinding> out;
  for (const auto& f : validate_trajectory(traj, limits).findings) {
    const bool missing = f.code == FindingCode::MissingProfile || f.code == FindingCode::MissingGraph;
    std::string detail = f.subject;
    if (!f.detail.empty()) detail += ": " + f.detail;
    out.push_back({Family::Structural, missing ? "StructuralIncomplete" : std::string(to_string(f.code)), detail});
  }
  return out;
}

// ---------------------------------------------------------------------------

GenerationRequest render_alignment_prompt(const StudentTrajectory& traj, std::size_t session_pos) {
  const SessionDialogue& d = traj.sessions.at(session_pos);
  const EventNode* event = traj.graph ? traj.graph->find(d.event_id) : nullptr;

  std::string body = "【学生档案】\n";
  if (traj.profile) body += profile_text(*traj.profile) + "\n";
  body += "【当前压力事件】\n";
  if (event) body += "第" + std::to_string(event->week) + "周：" + event->event_content + "\n";
  body += "【历史记忆】\n";
  for (const auto& m : traj.memory.summaries) {
    if (m.session_index >= d.session_index) break;
    body += "第" + std::to_string(m.session_index) + "次：" + m.stress_event + "；" + m.counseling_focus + "；" +
            m.unresolved_issues + "\n";
  }
  body += "【对话】\n";
  for (const auto& t : d.turns) body += (t.role == Role::Student ? "学生：" : "咨询师：") + t.text + "\n";

  GenerationRequest req;
  req.kind = RequestKind::Judge;
  req.temperature = 0.0;
  req.max_length = 256;
  req.system_prompt =
      "你是心理咨询数据质检员。请判断这段对话与学生档案、当前压力事件和历史记忆是否一致，"
      "以0到5分打分（5分为完全一致，0分为严重矛盾）。只输出JSON对象：{\"Alignment\": 分数}。";
  req.user_prompt = body;
  req.hints = json{{"rubric", json::array({"Alignment"})}};
  return req;
}

namespace {

double parse_alignment(const std::string& raw) {
  const std::string body = text::strip_code_fences(raw);
  json obj = json::parse(body, nullptr, false);
  if (obj.is_discarded()) {
    const auto b = body.find('{');
    const auto e = body.rfind('}');
    if (b != std::string::npos && e != std::string::npos && e > b) {
      obj = json::parse(body.substr(b, e - b + 1), nullptr, false);
    }
  }
  if (obj.is_discarded() || !obj.is_object() || !obj.contains("Alignment") || !obj.at("Alignment").is_number()) {
    throw Error(ErrorCode::Parse, "alignment reply lacks a numeric Alignment score");
  }
  const double v = obj.at("Alignment").get<double>();
  if (v < 0.0 || v > 5.0) throw Error(ErrorCode::ScoreOutOfRange, "alignment score " + std::to_string(v));
  return v;
}

void add_break(std::vector<QcFinding>& out, std::string detail) {
  out.push_back({Family::Consistency, "ConsistencyBreak", std::move(detail)});
}

}  // namespace

std::vector<QcFinding> qc_consistency(const StudentTrajectory& traj, const sim::PromptLog* log,
                                      const sim::SimulationConfig& sim_config, const JudgeOptions& judge) {
  std::vector<QcFinding> out;
  if (traj.profile && traj.graph && traj.profile->student_id != traj.graph->student_id) {
    add_break(out, "profile " + traj.profile->student_id + " paired with graph of " + traj.graph->student_id);
  }

  std::map<std::string, std::size_t> order;
  if (traj.graph) {
    std::vector<EventNode> nodes = traj.graph->nodes;
    events::sort_nodes(nodes);
    for (std::size_t i = 0; i < nodes.size(); ++i) order.emplace(nodes[i].id, i);
  }
  std::optional<std::size_t> prev;
  for (std::size_t i = 0; i < traj.sessions.size(); ++i) {
    const auto& s = traj.sessions[i];
    const std::string tag = "session " + std::to_string(i + 1);
    if (s.session_index != static_cast<int>(i + 1)) {
      add_break(out, tag + " carries index " + std::to_string(s.session_index));
    }
    const auto it = order.find(s.event_id);
    if (it == order.end()) {
      add_break(out, tag + " references event " + s.event_id + " absent from the graph");
    } else {
      if (prev && it->second <= *prev) add_break(out, tag + " event " + s.event_id + " breaks chronological order");
      prev = it->second;
    }
    if (i < traj.memory.summaries.size()) {
      const auto& m = traj.memory.summaries[i];
      if (m.session_index != s.session_index) {
        add_break(out, tag + " has summary indexed " + std::to_string(m.session_index));
      }
      if (m.event_id != s.event_id) {
        add_break(out, tag + " is about " + s.event_id + " but its summary is about " + m.event_id);
      }
    }
  }

  if (log) {
    for (const auto& a : sim::audit_causal_context(traj, *log, sim_config)) {
      out.push_back({Family::Consistency, "CausalLeak",
                     "session " + std::to_string(a.session_index) + " round " + std::to_string(a.round) + ": " +
                         a.detail});
    }
  }

  if (judge.backend) {
    for (std::size_t i = 0; i < traj.sessions.size(); ++i) {
      GenerationRequest req = render_alignment_prompt(traj, i);
      std::optional<double> score;
      std::string last_error;
      for (int a = 0; a < judge.attempt_budget && !score; ++a) {
        req.seed = derive_seed(judge.seed, {"qc-judge", traj.id(), std::to_string(i), std::to_string(a)});
        try {
          score = parse_alignment(judge.backend->generate(req));
        } catch (const Error& e) {
          if (e.code() == ErrorCode::Transport) throw;
          last_error = e.what();
        }
      }
      const std::string tag = "session " + std::to_string(i + 1);
      if (!score) {
        out.push_back({Family::Consistency, "JudgeUnparseable", tag + ": " + last_error});
      } else if (*score < judge.cutoff) {
        out.push_back({Family::Consistency, "SemanticMisalignment",
                       tag + " scored " + json(*score).dump() + " below cutoff " + json(judge.cutoff).dump()});
      }
    }
  }
  return out;
}

// ---------------------------------------------------------------------------

std::string dialogue_text(const StudentTrajectory& traj) {
  std::string out;
  for (const auto& s : traj.sessions) {
    for (const auto& t : s.turns) {
      out += t.text;
      out += '\n';
    }
  }
  return out;
}

std::vector<DiversityRejection> qc_diversity(std::span<const StudentTrajectory> corpus, double theta_profile,
                                             double theta_dialogue) {
  for (double t : {theta_profile, theta_dialogue}) {
    if (!(t > 0.0 && t <= 1.0)) throw Error(ErrorCode::Config, "similarity threshold must lie in (0, 1]");
  }
  std::vector<DiversityRejection> out;
  auto pass = [&](const char* criterion, double theta, auto&& text_of) {
    std::vector<std::size_t> members;
    std::vector<std::string> docs;
    for (std::size_t i = 0; i < corpus.size(); ++i) {
      std::string doc = text_of(corpus[i]);
      if (text::is_blank(doc)) continue;  // structural QC already reports these
      members.push_back(i);
      docs.push_back(std::move(doc));
    }
    if (docs.size() < 2) return;
    for (const auto& r : analytics::redundancy_filter(docs, theta)) {
      const auto idx = members[r.index];
      out.push_back({idx, corpus[idx].id(), criterion, corpus[members[r.kept_index]].id(), r.cosine});
    }
  };
  pass("profile", theta_profile,
       [](const StudentTrajectory& t) { return t.profile ? profile_text(*t.profile) : std::string(); });
  pass("dialogue", theta_dialogue, [](const StudentTrajectory& t) { return dialogue_text(t); });
  return out;
}

// ---------------------------------------------------------------------------

const std::vector<std::string>& default_denylist() {
  static const std::vector<std::string> v{
      "给你开药", "你需要吃药", "你应该吃药", "加大药量", "自行停药", "吃点安眠药", "我诊断你",
      "你就是抑郁症", "你确诊了", "你有人格障碍", "别矫情", "想开点就好了", "想死就", "自杀方法",
      "割腕", "一了百了", "不用看医生", "不要告诉任何人",
  };
  return v;
}

const std::vector<std::string>& default_scenario_terms() {
  static const std::vector<std::string> v{
      "宿舍", "室友", "考试", "期末", "期中", "课程", "导师", "老师", "辅导员", "同学", "学校", "校园",
      "专业", "学期", "论文", "实习", "社团", "食堂", "图书馆", "毕业", "就业", "奖学金", "考研", "实验室",
  };
  return v;
}

std::vector<QcFinding> qc_safety(const StudentTrajectory& traj, std::span<const std::string> denylist,
                                 std::span<const std::string> scenario_terms) {
  std::vector<QcFinding> out;
  for (const auto& s : traj.sessions) {
    for (const auto& t : s.turns) {
      for (const auto& pattern : denylist) {
        if (pattern.empty() || t.text.find(pattern) == std::string::npos) continue;
        out.push_back({Family::Safety, "DenylistHit",
                       "session " + std::to_string(s.session_index) + " turn " + std::to_string(t.index) + " (" +
                           std::string(role_name(t.role)) + ") matches \"" + pattern + "\""});
      }
    }
  }
  if (!scenario_terms.empty()) {
    std::string all = dialogue_text(traj);
    if (traj.profile) all += profile_text(*traj.profile);
    if (traj.graph) {
      for (const auto& n : traj.graph->nodes) all += n.event_content;
    }
    const bool on_scenario = std::any_of(scenario_terms.begin(), scenario_terms.end(), [&](const std::string& term) {
      return !term.empty() && all.find(term) != std::string::npos;
    });
    if (!on_scenario) out.push_back({Family::Safety, "OffScenario", "no campus scenario term found"});
  }
  return out;
}

// ---------------------------------------------------------------------------

std::vector<QCReport> run_qc(std::span<const StudentTrajectory> corpus, std::span<const sim::PromptLog> logs,
                             const QcOptions& options) {
  if (!logs.empty() && logs.size() != corpus.size()) {
    throw Error(ErrorCode::Config, "prompt logs must be parallel to the corpus");
  }
  std::vector<QCReport> reports;
  reports.reserve(corpus.size());
  for (std::size_t i = 0; i < corpus.size(); ++i) {
    const auto& traj = corpus[i];
    QCReport r;
    r.trajectory_id = traj.id();
    auto append = [&](std::vector<QcFinding> v) { r.findings.insert(r.findings.end(), v.begin(), v.end()); };
    append(qc_structural(traj, options.limits));
    append(qc_consistency(traj, logs.empty() ? nullptr : &logs[i], options.sim_config, options.judge));
    append(qc_safety(traj, options.denylist, options.scenario_terms));
    reports.push_back(std::move(r));
  }
  for (const auto& d : qc_diversity(corpus, options.theta_profile, options.theta_dialogue)) {
    reports[d.index].findings.push_back({Family::Diversity, d.criterion == "profile" ? "ProfileRepetition"
                                                                                     : "DialogueRepetition",
                                         "cosine " + json(d.cosine).dump() + " with " + d.kept_id});
  }
  return reports;
}

}  // namespace campsim::qc
