#include <algorithm>

#include "campsim/core/error.hpp"
#include "campsim/sim/simulator.hpp"

namespace campsim::sim {

namespace {

constexpr std::string_view kStudentSystem =
    "你将扮演一名正在接受高校心理咨询的大学生。请始终以档案中的身份、性格和说话方式，用第一人称、"
    "口语化的中文回应咨询师。围绕当前压力事件表达真实感受，可以自然提及过往咨询中谈过的内容。"
    "只输出学生本轮要说的话，不要加角色名或任何说明。";

constexpr std::string_view kCounselorSystem =
    "你是一名经验丰富的高校心理咨询师。请综合运用共情、澄清、情绪探索、阶段性总结和适度引导，"
    "聚焦学生当前的压力事件；在合适时结合历史咨询记忆，保持多次咨询之间的连续性。"
    "不要做医学诊断，不要一次给出过多建议。只输出咨询师本轮要说的话，不要加角色名或任何说明。";

constexpr std::string_view kSummarySystem =
    "你是心理咨询记录整理助手。请阅读本次咨询对话，结合当前压力事件和历史记忆，生成结构化的会谈摘要。"
    "严格输出一个JSON对象，字段为：stress_event（本次讨论的压力事件）、dominant_emotion（主导情绪）、"
    "core_conflict_status（核心冲突的当前状态）、counseling_focus（本次咨询重点）、"
    "unresolved_issues（尚未解决的问题）。所有字段均为非空字符串，不要输出其他内容。";

std::string profile_block(const StudentProfile& p) {
  return "【学生档案】\n姓名：" + p.name + "\n基本信息：" + render_demographics(p) + "\n性格特点：" + p.personality +
         "\n家庭与社会背景：" + p.background + "\n核心冲突：" + p.core_conflict + "\n";
}

std::string event_block(const EventNode& e) {
  return "【当前压力事件】\n第" + std::to_string(e.week) + "周（" + std::string(domain_label(e.domain)) + "）：" +
         e.event_content + "\n心理影响：" + e.psychological_impact + "\n压力水平：" +
         std::to_string(e.stress_level) + "/10\n";
}

std::string memory_block(std::span<const SessionSummary> memory) {
  std::string out = "【历史咨询记忆】\n";
  if (memory.empty()) return out + "（这是第一次咨询，暂无历史记忆）\n";
  for (const auto& m : memory) {
    out += "第" + std::to_string(m.session_index) + "次咨询：压力事件：" + m.stress_event + "；主导情绪：" +
           m.dominant_emotion + "；核心冲突状态：" + m.core_conflict_status + "；咨询重点：" + m.counseling_focus +
           "；未解决问题：" + m.unresolved_issues + "\n";
  }
  return out;
}

std::string history_block(std::span<const Turn> history) {
  std::string out = "【本次对话记录】\n";
  if (history.empty()) return out + "（对话尚未开始）\n";
  for (const auto& t : history) out += (t.role == Role::Student ? "学生：" : "咨询师：") + t.text + "\n";
  return out;
}

json memory_hints(std::span<const SessionSummary> memory) {
  json out = json::array();
  for (const auto& m : memory) out.push_back(m);
  return out;
}

json profile_hints(const StudentProfile& p) {
  return json{{"student_id", p.student_id},
              {"name", p.name},
              {"personality", p.personality},
              {"background", p.background},
              {"core_conflict", p.core_conflict}};
}

}  // namespace

std::span<const SessionSummary> memory_view(const MemoryState& memory, int window) {
  std::span<const SessionSummary> all(memory.summaries);
  if (window <= 0 || static_cast<std::size_t>(window) >= all.size()) return all;
  return all.last(static_cast<std::size_t>(window));
}

GenerationRequest render_student_request(const TurnContext& ctx) {
  GenerationRequest req;
  req.kind = RequestKind::StudentTurn;
  req.max_length = 1024;
  req.system_prompt = std::string(kStudentSystem);
  req.user_prompt = profile_block(ctx.profile) + event_block(ctx.event) + memory_block(ctx.memory) +
                    history_block(ctx.history) + "这是第" + std::to_string(ctx.session_index) + "次咨询的第" +
                    std::to_string(ctx.round) + "轮（共" + std::to_string(ctx.rounds) + "轮）。请说出学生的下一句话。";
  req.hints = json{{"profile", profile_hints(ctx.profile)},
                   {"event", ctx.event},
                   {"memory", memory_hints(ctx.memory)},
                   {"session_index", ctx.session_index},
                   {"round", ctx.round},
                   {"rounds", ctx.rounds}};
  return req;
}

GenerationRequest render_counselor_request(const TurnContext& ctx, std::string_view student_utterance) {
  GenerationRequest req;
  req.kind = RequestKind::CounselorTurn;
  req.max_length = 1024;
  req.system_prompt = std::string(kCounselorSystem);
  req.user_prompt = profile_block(ctx.profile) + event_block(ctx.event) + memory_block(ctx.memory) +
                    history_block(ctx.history) + "【学生刚才说】\n" + std::string(student_utterance) + "\n这是第" +
                    std::to_string(ctx.session_index) + "次咨询的第" + std::to_string(ctx.round) + "轮（共" +
                    std::to_string(ctx.rounds) + "轮）。" +
                    (ctx.round >= ctx.rounds ? "这是本次咨询的最后一轮，请做阶段性总结并自然收尾。" : "") +
                    "请给出咨询师的回应。";
  req.hints = json{{"profile", profile_hints(ctx.profile)},
                   {"event", ctx.event},
                   {"memory", memory_hints(ctx.memory)},
                   {"session_index", ctx.session_index},
                   {"round", ctx.round},
                   {"rounds", ctx.rounds},
                   {"student_utterance", student_utterance}};
  return req;
}

GenerationRequest render_summary_request(const StudentProfile& profile, const SessionDialogue& dialogue,
                                         const EventNode& event, std::span<const SessionSummary> memory) {
  GenerationRequest req;
  req.kind = RequestKind::Summary;
  req.max_length = 2048;
  req.temperature = 0.3;
  req.system_prompt = std::string(kSummarySystem);
  req.user_prompt = profile_block(profile) + event_block(event) + memory_block(memory) +
                    history_block(dialogue.turns) + "请输出第" + std::to_string(dialogue.session_index) +
                    "次咨询的JSON摘要。";
  req.hints = json{{"event", event}, {"memory", memory_hints(memory)}, {"session_index", dialogue.session_index}};
  return req;
}

}  // namespace campsim::sim
