#include <doctest.h>

#include <set>

#include "campsim/core/error.hpp"
#include "campsim/qc/quality_control.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace campsim;
using namespace campsim::qc;

namespace {

bool has_code(const std::vector<QcFinding>& fs, const std::string& code) {
  return std::any_of(fs.begin(), fs.end(), [&](const QcFinding& f) { return f.code == code; });
}

std::function<std::string(const GenerationRequest&)> always(const std::string& reply) {
  return [reply](const GenerationRequest&) { return reply; };
}

}  // namespace

TEST_SUITE("qc") {

TEST_CASE("structural: complete, missing graph, missing summary") {
  const auto traj = testsupport::mock_trajectory(3);
  CHECK(qc_structural(traj).empty());

  auto no_graph = traj;
  no_graph.graph.reset();
  const auto a = qc_structural(no_graph);
  CHECK(has_code(a, "StructuralIncomplete"));
  for (const auto& f : a) CHECK(f.family == Family::Structural);

  auto short_memory = traj;
  short_memory.memory.summaries.pop_back();
  CHECK(has_code(qc_structural(short_memory), "MissingSummary"));
}

TEST_CASE("consistency: aligned fixture is clean, absent events break it") {
  sim::PromptLog log;
  const auto traj = testsupport::mock_trajectory(4, "S001", &log);
  CHECK(qc_consistency(traj, &log, {.rounds_min = 4, .rounds_max = 4, .seed = 4}).empty());

  auto broken = traj;
  broken.sessions[2].event_id = "E42";
  broken.memory.summaries[2].event_id = "E42";
  const auto fs = qc_consistency(broken);
  CHECK(has_code(fs, "ConsistencyBreak"));
  for (const auto& f : fs) CHECK(f.family == Family::Consistency);

  auto mismatched = traj;
  mismatched.memory.summaries[1].event_id = mismatched.sessions[0].event_id;
  CHECK(has_code(qc_consistency(mismatched), "ConsistencyBreak"));

  auto reordered = traj;
  std::swap(reordered.sessions[0].event_id, reordered.sessions[1].event_id);
  std::swap(reordered.memory.summaries[0].event_id, reordered.memory.summaries[1].event_id);
  CHECK(has_code(qc_consistency(reordered), "ConsistencyBreak"));
}

TEST_CASE("consistency: leaked memory in the prompt log is a CausalLeak") {
  sim::PromptLog log;
  const auto traj = testsupport::mock_trajectory(4, "S001", &log);
  log[10].memory_indices.push_back(log[10].session_index + 1);
  CHECK(has_code(qc_consistency(traj, &log, {.rounds_min = 4, .rounds_max = 4, .seed = 4}), "CausalLeak"));
}

TEST_CASE("judge mode: cutoff 3, a score of 2 is SemanticMisalignment") {
  const auto traj = testsupport::mock_trajectory(6);
  testsupport::ScriptedBackend low(always(R"({"Alignment": 2})"));
  const auto fs = qc_consistency(traj, nullptr, {}, {.backend = &low, .cutoff = 3.0});
  CHECK(fs.size() == traj.sessions.size());
  for (const auto& f : fs) CHECK(f.code == "SemanticMisalignment");
  CHECK(low.requests.front().kind == RequestKind::Judge);

  testsupport::ScriptedBackend high(always(R"(```json
{"Alignment": 4}
```)"));
  CHECK(qc_consistency(traj, nullptr, {}, {.backend = &high, .cutoff = 3.0}).empty());

  testsupport::ScriptedBackend edge(always(R"({"Alignment": 3})"));
  CHECK(qc_consistency(traj, nullptr, {}, {.backend = &edge, .cutoff = 3.0}).empty());

  testsupport::ScriptedBackend garbage(always("很好"));
  const auto g = qc_consistency(traj, nullptr, {}, {.backend = &garbage});
  CHECK(has_code(g, "JudgeUnparseable"));

  testsupport::ScriptedBackend out_of_range(always(R"({"Alignment": 9})"));
  CHECK(has_code(qc_consistency(traj, nullptr, {}, {.backend = &out_of_range}), "JudgeUnparseable"));

  testsupport::ScriptedBackend down({"!transport"});
  try {
    qc_consistency(traj, nullptr, {}, {.backend = &down});
    FAIL("expected TransportError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Transport);
  }
}

TEST_CASE("diversity: a duplicated trajectory is rejected on both criteria") {
  std::vector<StudentTrajectory> corpus{testsupport::mock_trajectory(1, "S001"), testsupport::mock_trajectory(2, "S002")};
  auto dup = corpus[0];
  dup.profile->student_id = "S003";
  dup.graph->student_id = "S003";
  corpus.push_back(dup);
  const auto rejected = qc_diversity(corpus);
  std::set<std::string> criteria;
  for (const auto& r : rejected) {
    CHECK(r.trajectory_id == "S003");
    CHECK(r.kept_id == "S001");
    CHECK(r.index == 2);
    criteria.insert(r.criterion);
  }
  CHECK(criteria == std::set<std::string>{"profile", "dialogue"});
}

TEST_CASE("diversity: distinct mock trajectories survive 0.95, confirmed by the oracle") {
  const std::vector<StudentTrajectory> corpus{testsupport::mock_trajectory(101, "S001"),
                                              testsupport::mock_trajectory(202, "S002"),
                                              testsupport::mock_trajectory(303, "S003")};
  std::vector<std::string> profiles, dialogues;
  for (const auto& t : corpus) {
    profiles.push_back(profile_text(*t.profile));
    dialogues.push_back(dialogue_text(t));
  }
  for (double s : oracle::text_pairwise(profiles)) REQUIRE(s <= 0.95);
  for (double s : oracle::text_pairwise(dialogues)) REQUIRE(s <= 0.95);
  CHECK(qc_diversity(corpus, 0.95, 0.95).empty());
}

TEST_CASE("diversity: theta 1 rejects only exact duplicates") {
  auto a = testsupport::mock_trajectory(7, "S001");
  auto b = a;
  b.profile->student_id = "S002";
  b.profile->personality += "偶尔失眠";  // near-duplicate profile, identical dialogue
  auto c = a;
  c.profile->student_id = "S003";
  const std::vector<StudentTrajectory> corpus{a, b, c};
  const auto rejected = qc_diversity(corpus, 1.0, 1.0);
  std::set<std::pair<std::string, std::string>> got;
  for (const auto& r : rejected) got.insert({r.trajectory_id, r.criterion});
  CHECK(got == std::set<std::pair<std::string, std::string>>{{"S002", "dialogue"}, {"S003", "dialogue"},
                                                              {"S003", "profile"}});
  CHECK_THROWS_AS(qc_diversity(corpus, 0.0, 0.5), Error);
  CHECK_THROWS_AS(qc_diversity(corpus, 0.5, 1.5), Error);
}

TEST_CASE("diversity never rejects the first trajectory of a cluster (property)") {
  Rng rng(64);
  std::vector<StudentTrajectory> pool;
  for (int i = 0; i < 6; ++i) pool.push_back(testsupport::mock_trajectory(500 + static_cast<std::uint64_t>(i), "S00" + std::to_string(i), nullptr, 1, 2));
  for (int trial = 0; trial < 20; ++trial) {
    std::vector<StudentTrajectory> corpus;
    const auto n = uniform_int(rng, 2, 8);
    for (int k = 0; k < n; ++k) {
      auto t = pick(pool, rng);
      t.profile->student_id = "T" + std::to_string(k);
      corpus.push_back(t);
    }
    const double theta = 0.5 + 0.5 * uniform_unit(rng);
    const auto rejected = qc_diversity(corpus, theta, theta);
    for (const auto& r : rejected) {
      REQUIRE(r.index > 0);
      REQUIRE(r.kept_id != r.trajectory_id);
    }
    CHECK(qc_diversity(corpus, theta, theta).size() == rejected.size());
  }
}

TEST_CASE("safety: denylist hits, scenario terms, empty lists") {
  auto traj = testsupport::mock_trajectory(9);
  const std::vector<std::string> none;
  CHECK(qc_safety(traj, default_denylist(), default_scenario_terms()).empty());

  traj.sessions[0].turns[1].text = "我建议给你开药，先吃一周看看。";
  const auto hits = qc_safety(traj, default_denylist(), default_scenario_terms());
  REQUIRE(hits.size() == 1);
  CHECK(hits[0].code == "DenylistHit");
  CHECK(hits[0].family == Family::Safety);
  CHECK(qc_safety(traj, none, default_scenario_terms()).empty());

  StudentTrajectory off = testsupport::mock_trajectory(9);
  for (auto& s : off.sessions) {
    for (auto& t : s.turns) t.text = "今天天气不错。";
  }
  // The scenario check reads the profile and the event graph as well.
  off.profile->personality = off.profile->background = off.profile->core_conflict = "喜欢散步。";
  for (auto& n : off.graph->nodes) n.event_content = "下雨了";
  const std::vector<std::string> terms{"宿舍", "考试", "导师"};
  CHECK(has_code(qc_safety(off, none, terms), "OffScenario"));
  off.sessions[0].turns[0].text = "宿舍太吵了，考试前导师又催论文。";
  CHECK(qc_safety(off, none, terms).empty());
  CHECK(qc_safety(off, none, none).empty());
}

TEST_CASE("run_qc: verdicts follow findings and are deterministic") {
  std::vector<StudentTrajectory> corpus;
  std::vector<sim::PromptLog> logs(4);
  for (int i = 0; i < 3; ++i) {
    corpus.push_back(testsupport::mock_trajectory(40 + static_cast<std::uint64_t>(i), "S00" + std::to_string(i + 1),
                                                  &logs[static_cast<std::size_t>(i)]));
  }
  corpus.push_back(corpus[0]);
  corpus.back().profile->student_id = "S004";
  corpus.back().graph->student_id = "S004";
  logs[3] = logs[0];

  QcOptions opts;
  opts.sim_config.rounds_min = opts.sim_config.rounds_max = 4;
  // Each mock trajectory was simulated under its own seed; the audit
  // re-renders prompts and does not need the seed.
  const auto reports = run_qc(corpus, logs, opts);
  REQUIRE(reports.size() == 4);
  for (int i = 0; i < 3; ++i) CHECK(reports[static_cast<std::size_t>(i)].pass());
  CHECK_FALSE(reports[3].pass());
  CHECK(has_code(reports[3].findings, "ProfileRepetition"));
  CHECK(has_code(reports[3].findings, "DialogueRepetition"));
  for (const auto& f : reports[3].findings) CHECK(f.family == Family::Diversity);

  const auto again = run_qc(corpus, logs, opts);
  CHECK(json(again).dump() == json(reports).dump());
  CHECK(json(reports[3]).at("verdict") == "reject");
  CHECK(json(reports[0]).at("verdict") == "pass");
  CHECK(json(reports[3]).get<QCReport>().findings == reports[3].findings);
}

}  // TEST_SUITE
