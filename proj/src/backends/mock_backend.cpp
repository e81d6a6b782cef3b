#include "campsim/backends/mock_backend.hpp"

#include <algorithm>
#include <cmath>

#include "campsim/core/digest.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"
#include "campsim/kernels/kernels.hpp"
#include "mock_lexicon.hpp"

namespace campsim {

namespace lex = mock_lexicon;

namespace {

std::string fill_slots(std::string_view tmpl, Rng& rng) {
  std::map<std::string, std::string> values;
  for (const auto& [slot, pool] : lex::event_slots()) values[slot] = pick(pool, rng);
  return text::render_template(tmpl, values);
}

std::string hint_text(const json& hints, const char* key, std::string fallback = {}) {
  if (hints.is_object() && hints.contains(key) && hints.at(key).is_string()) return hints.at(key).get<std::string>();
  return fallback;
}

int hint_int(const json& hints, const char* key, int fallback) {
  if (hints.is_object() && hints.contains(key) && hints.at(key).is_number_integer()) return hints.at(key).get<int>();
  return fallback;
}

int age_for_grade(const std::string& grade, Rng& rng) {
  static const std::map<std::string, int> base{{"大一", 18}, {"大二", 19}, {"大三", 20}, {"大四", 21},
                                               {"研一", 22}, {"研二", 23}, {"研三", 24}};
  const auto it = base.find(grade);
  return (it == base.end() ? 20 : it->second) + static_cast<int>(uniform_int(rng, 0, 1));
}

std::string first_impact(const std::string& impact) {
  const auto cut = impact.find("、");
  return cut == std::string::npos ? impact : impact.substr(0, cut);
}

// ---------------------------------------------------------------------------

std::string mock_profile(const json& hints, Rng& rng) {
  const json attrs = hints.value("attributes", json::object());
  const std::string gender = hint_text(attrs, "gender", "女");
  const std::string grade = hint_text(attrs, "grade", "大二");
  const std::string major = hint_text(attrs, "major", "工科");
  const auto domain = parse_domain(hint_text(attrs, "stress_domain", "学业压力")).value_or(StressDomain::Academic);
  const int age = std::clamp(age_for_grade(grade, rng), hint_int(hints, "age_min", 17), hint_int(hints, "age_max", 30));

  auto t1 = pick(lex::traits(), rng);
  auto t2 = pick(lex::traits(), rng);
  while (t2 == t1) t2 = pick(lex::traits(), rng);
  const std::string personality = pick(lex::mbti_types(), rng) + "型人格，" + t1 + "，" + t2 + "。面对压力时" +
                                  pick(lex::coping_styles(), rng) + "。";
  const std::string background = "来自" + pick(lex::hometowns(), rng) + "的" + pick(lex::family_structures(), rng) +
                                 "家庭，" + pick(lex::parent_situations(), rng) + "。" +
                                 pick(lex::economic_situations(), rng) + "，" + pick(lex::social_support(), rng) + "。";
  json out{{"name", pick(lex::surnames(), rng) + pick(lex::given_names(), rng)},
           {"demographics", {{"gender", gender}, {"age", age}, {"grade", grade}, {"major", major}}},
           {"personality", personality},
           {"background", background},
           {"core_conflict", pick(lex::conflicts(domain), rng)}};
  return out.dump(2);
}

std::string mock_event_graph(const json& hints, Rng& rng) {
  const int weeks = std::max(1, hint_int(hints, "weeks", 16));
  const int lo = std::max(1, hint_int(hints, "min_events", 10));
  const int hi = std::max(lo, hint_int(hints, "max_events", 15));
  const auto home = parse_domain(hint_text(hints, "stress_domain", "学业压力")).value_or(StressDomain::Academic);
  const int n = static_cast<int>(uniform_int(rng, lo, hi));

  std::vector<int> week_of(static_cast<std::size_t>(n));
  for (auto& w : week_of) w = static_cast<int>(uniform_int(rng, 1, weeks));
  std::sort(week_of.begin(), week_of.end());

  json events = json::array();
  std::vector<std::string> used_contents;
  for (int i = 0; i < n; ++i) {
    const StressDomain d =
        uniform_unit(rng) < 0.4 ? home : all_stress_domains()[static_cast<std::size_t>(uniform_int(rng, 0, 4))];
    std::string content;
    for (int tries = 0; tries < 8; ++tries) {
      content = fill_slots(pick(lex::event_templates(d), rng), rng);
      if (std::find(used_contents.begin(), used_contents.end(), content) == used_contents.end()) break;
    }
    used_contents.push_back(content);

    std::string impact = pick(lex::impacts(), rng);
    const std::string second = pick(lex::impacts(), rng);
    if (second != impact) impact += "、" + second;

    const double progress = static_cast<double>(week_of[i]) / static_cast<double>(weeks);
    const int stress = std::clamp(3 + static_cast<int>(std::lround(5.0 * progress)) +
                                      static_cast<int>(uniform_int(rng, -1, 1)),
                                  1, 10);

    json causes = json::array();
    if (i > 0) {
      const double r = uniform_unit(rng);
      const int k = r < 0.25 ? 0 : (r < 0.8 ? 1 : 2);
      std::vector<int> chosen;
      for (int c = 0; c < k && static_cast<int>(chosen.size()) < i; ++c) {
        // prefer recent events
        const int lo_idx = std::max(0, i - 4);
        int pick_idx = static_cast<int>(uniform_int(rng, lo_idx, i - 1));
        if (std::find(chosen.begin(), chosen.end(), pick_idx) != chosen.end()) continue;
        chosen.push_back(pick_idx);
      }
      std::sort(chosen.begin(), chosen.end());
      for (int c : chosen) causes.push_back("E" + std::to_string(c + 1));
    }
    events.push_back(json{{"id", "E" + std::to_string(i + 1)},
                          {"week", week_of[i]},
                          {"domain", std::string(domain_label(d))},
                          {"event_content", content},
                          {"psychological_impact", impact},
                          {"stress_level", stress},
                          {"caused_by", causes}});
  }

  // Vary the surface form the way real generators do; the parser accepts all of these.
  const double form = uniform_unit(rng);
  if (form < 0.2) {
    std::vector<json> shuffled(events.begin(), events.end());
    seeded_shuffle(shuffled, rng);
    events = json(shuffled);
  }
  if (form >= 0.2 && form < 0.4) return json{{"events", events}}.dump(2);
  if (form >= 0.4 && form < 0.5) return "```json\n" + events.dump(2) + "\n```";
  return events.dump(2);
}

std::string mock_student_turn(const json& hints, Rng& rng) {
  const json event = hints.value("event", json::object());
  const json memory = hints.value("memory", json::array());
  const int round = hint_int(hints, "round", 1);
  const std::string content = hint_text(event, "event_content", "最近压力很大");
  const std::string impact = first_impact(hint_text(event, "psychological_impact", "焦虑"));

  std::string out;
  if (round <= 1) {
    out = pick(lex::student_openers(), rng) + "这周" + content + "，" + pick(lex::student_feelings(), rng) + "。";
    if (!memory.empty() && uniform_unit(rng) < 0.6) {
      out += "感觉和之前" + hint_text(memory.back(), "stress_event", "那件事") + "的事情又搅在一起了。";
    }
  } else {
    out = pick(lex::student_followups(), rng);
    if (uniform_unit(rng) < 0.5) out += "那种" + impact + "的感觉一直在。";
    out += pick(lex::student_feelings(), rng) + "。";
  }
  out += pick(lex::student_closers(), rng);
  return out;
}

std::string mock_counselor_turn(const json& hints, Rng& rng) {
  const json event = hints.value("event", json::object());
  const json memory = hints.value("memory", json::array());
  const int round = hint_int(hints, "round", 1);
  const int rounds = hint_int(hints, "rounds", 1);
  const std::string impact = first_impact(hint_text(event, "psychological_impact", "焦虑"));

  std::string out = pick(lex::counselor_empathy(), rng);
  out += text::render_template(pick(lex::counselor_reflections(), rng), {{"impact", impact}});
  if (!memory.empty() && (round == 1 || uniform_unit(rng) < 0.25)) {
    const json& last = memory.back();
    out += text::render_template(pick(lex::counselor_memory_links(), rng),
                                 {{"focus", hint_text(last, "counseling_focus", "情绪")},
                                  {"event", hint_text(last, "stress_event", "上次的事")},
                                  {"issue", hint_text(last, "unresolved_issues", "未解决的问题")}});
  }
  if (round >= rounds) {
    out += pick(lex::counselor_wrapups(), rng) + pick(lex::counselor_guidance(), rng);
  } else {
    out += pick(lex::counselor_questions(), rng);
    if (uniform_unit(rng) < 0.4) out += pick(lex::counselor_guidance(), rng);
  }
  return out;
}

std::string mock_summary(const json& hints, Rng& rng) {
  const json event = hints.value("event", json::object());
  const std::string impact = hint_text(event, "psychological_impact", "焦虑");
  json out{{"stress_event", hint_text(event, "event_content", "本次咨询讨论的压力事件")},
           {"dominant_emotion", first_impact(impact)},
           {"core_conflict_status", pick(lex::conflict_statuses(), rng)},
           {"counseling_focus", pick(lex::counseling_foci(), rng)},
           {"unresolved_issues", pick(lex::unresolved_issues(), rng)}};
  return out.dump(2);
}

std::string mock_judge(const json& hints, Rng& rng) {
  json out = json::object();
  const json rubric = hints.value("rubric", json::array());
  for (const auto& dim : rubric) {
    if (dim.is_string()) out[dim.get<std::string>()] = uniform_int(rng, 2, 5);
  }
  if (out.empty()) out["score"] = uniform_int(rng, 2, 5);
  return out.dump();
}

}  // namespace

MockBackend::MockBackend(std::uint64_t seed, int embed_dim) : seed_(seed), embed_dim_(embed_dim) {
  if (embed_dim_ <= 0) throw Error(ErrorCode::Config, "embedding dimension must be positive");
}

std::string MockBackend::id() const { return "mock:" + std::to_string(seed_); }

std::string MockBackend::generate(const GenerationRequest& req) {
  check_request(req);
  const std::string call_digest = req.prompt_digest() + "|" + std::string(to_string(req.kind)) + "|" +
                                  (req.seed ? std::to_string(*req.seed) : std::string("-"));
  Rng rng(derive_seed(seed_, {"generate", call_digest}));

  std::string out;
  switch (req.kind) {
    case RequestKind::Profile: out = mock_profile(req.hints, rng); break;
    case RequestKind::EventGraph: out = mock_event_graph(req.hints, rng); break;
    case RequestKind::StudentTurn: out = mock_student_turn(req.hints, rng); break;
    case RequestKind::CounselorTurn: out = mock_counselor_turn(req.hints, rng); break;
    case RequestKind::Summary: out = mock_summary(req.hints, rng); break;
    case RequestKind::Judge: out = mock_judge(req.hints, rng); break;
    case RequestKind::Free: out = "（模拟回复）" + sha256_hex(call_digest + std::to_string(rng())).substr(0, 12); break;
  }
  if (static_cast<int>(text::scalar_count(out)) > req.max_length) {
    throw Error(ErrorCode::BudgetExceeded, "mock reply of " + std::to_string(text::scalar_count(out)) +
                                               " characters exceeds max_length " + std::to_string(req.max_length));
  }
  return out;
}

EmbeddingVector hashed_bigram_embedding(std::string_view input, std::uint64_t seed, int dim) {
  std::u32string cps;
  for (char32_t c : text::decode_utf8(input)) {
    if (!text::is_space(c)) cps.push_back(c);
  }
  if (cps.empty()) throw Error(ErrorCode::EmptyText, "cannot embed empty text");

  EmbeddingVector v;
  v.values.assign(static_cast<std::size_t>(dim), 0.0);
  const std::uint64_t salt = splitmix64(seed ^ 0x5eed5eed5eedULL);
  auto bump = [&](std::u32string_view gram) {
    const std::uint64_t h = splitmix64(salt ^ fnv1a64(text::encode_utf8(gram)));
    v.values[static_cast<std::size_t>(h % static_cast<std::uint64_t>(dim))] += 1.0;
  };
  if (cps.size() == 1) {
    bump(cps);
  } else {
    for (std::size_t i = 0; i + 1 < cps.size(); ++i) bump(std::u32string_view(cps).substr(i, 2));
  }
  const double norm = std::sqrt(kernels::dot(v.values, v.values));
  kernels::scale(v.values, 1.0 / norm);
  return v;
}

std::vector<EmbeddingVector> MockBackend::embed(std::span<const std::string> texts) {
  std::vector<EmbeddingVector> out;
  out.reserve(texts.size());
  for (const auto& t : texts) {
    if (t.empty()) throw Error(ErrorCode::EmptyText, "cannot embed empty text");
    out.push_back(hashed_bigram_embedding(t, seed_, embed_dim_));
  }
  return out;
}

}  // namespace campsim
