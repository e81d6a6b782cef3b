#include <doctest.h>

#include <cmath>
#include <set>
#include <sstream>

#include "campsim/backends/mock_backend.hpp"
#include "campsim/bench/bench.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/text.hpp"
#include "judge_fixture.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace campsim;
using namespace campsim::bench;

namespace {

std::vector<StudentTrajectory> held_out(int n, std::uint64_t base = 900) {
  std::vector<StudentTrajectory> out;
  for (int i = 0; i < n; ++i) {
    out.push_back(testsupport::mock_trajectory(base + static_cast<std::uint64_t>(i), "H" + std::to_string(100 + i)));
  }
  return out;
}

std::map<Task, int> count_tasks(const std::vector<BenchInstance>& v) {
  std::map<Task, int> out;
  for (const auto& i : v) ++out[i.task];
  return out;
}

BenchInstance bare(Task t) {
  BenchInstance inst;
  inst.instance_id = "X-01";
  inst.task = t;
  inst.rubric = rubric_for(t);
  return inst;
}

ErrorCode code_of(const std::function<void()>& f) {
  try {
    f();
  } catch (const Error& e) {
    return e.code();
  }
  FAIL("expected an error");
  return ErrorCode::Parse;
}

}  // namespace

TEST_SUITE("bench") {

TEST_CASE("rubrics have 3, 4 and 4 dimensions") {
  CHECK(rubric_for(Task::SR).size() == 3);
  CHECK(rubric_for(Task::MR).size() == 4);
  CHECK(rubric_for(Task::TCR).size() == 4);
  CHECK(std::find(rubric_for(Task::MR).begin(), rubric_for(Task::MR).end(), "No Hallucination") !=
        rubric_for(Task::MR).end());
  for (auto t : {Task::SR, Task::MR, Task::TCR}) CHECK(parse_task(to_string(t)) == t);
  CHECK_FALSE(parse_task("sr").has_value());
}

TEST_CASE("20 held-out trajectories give 100 SR, 40 MR and 20 TCR") {
  const auto trajs = held_out(20);
  BenchConfig cfg;
  cfg.seed = 5;
  const auto bench = build_bench(trajs, cfg);
  const auto counts = count_tasks(bench);
  CHECK(bench.size() == 160);
  CHECK(counts.at(Task::SR) == 100);
  CHECK(counts.at(Task::MR) == 40);
  CHECK(counts.at(Task::TCR) == 20);

  std::set<std::string> ids;
  for (const auto& inst : bench) ids.insert(inst.instance_id);
  CHECK(ids.size() == bench.size());

  std::size_t pos = 0;
  for (const auto& t : trajs) {
    for (int k = 0; k < 8; ++k, ++pos) {
      const auto& inst = bench[pos];
      CHECK(inst.trajectory_id == t.id());
      CHECK(verify_reference(inst, t).empty());
    }
  }

  cfg.exclude = {bench[2].instance_id};
  REQUIRE(bench[2].task == Task::SR);
  const auto filtered = build_bench(trajs, cfg);
  const auto c2 = count_tasks(filtered);
  CHECK(c2.at(Task::SR) == 99);
  CHECK(c2.at(Task::MR) == 40);
  CHECK(c2.at(Task::TCR) == 20);

  cfg.exclude.clear();
  CHECK(build_bench(trajs, cfg) == bench);
}

TEST_CASE("instance ids follow trajectory, task and ordinal") {
  const auto t = testsupport::mock_trajectory(11, "S042");
  const auto sr = build_sr(t, 5, 1);
  REQUIRE(sr.size() == 5);
  CHECK(sr[0].instance_id == "S042-SR-01");
  CHECK(sr[4].instance_id == "S042-SR-05");
  CHECK(build_tcr(t).instance_id == "S042-TCR-01");
}

TEST_CASE("quota larger than the available items is QuotaTooLarge") {
  const auto t = testsupport::mock_trajectory(12, "S001", nullptr, 1, 1);
  const auto cuts = static_cast<int>(t.sessions.size());
  CHECK(build_sr(t, cuts, 0).size() == static_cast<std::size_t>(cuts));
  CHECK(code_of([&] { build_sr(t, cuts + 1, 0); }) == ErrorCode::QuotaTooLarge);
  const auto mr_sources = static_cast<int>(3 * t.graph->nodes.size() + t.memory.size());
  CHECK(build_mr(t, mr_sources, 0).size() == static_cast<std::size_t>(mr_sources));
  CHECK(code_of([&] { build_mr(t, mr_sources + 1, 0); }) == ErrorCode::QuotaTooLarge);
  CHECK(code_of([&] { build_sr(t, 0, 0); }) == ErrorCode::Config);

  auto incomplete = t;
  incomplete.graph.reset();
  CHECK(code_of([&] { build_tcr(incomplete); }) == ErrorCode::Config);
}

TEST_CASE("SR instances cut before a counselor turn and expose only earlier memory") {
  const auto t = testsupport::mock_trajectory(13);
  for (const auto& inst : build_sr(t, 10, 3)) {
    const int s = inst.input_payload.at("session_index").get<int>();
    const int r = inst.input_payload.at("round").get<int>();
    const auto& hist = inst.input_payload.at("history");
    CHECK(hist.size() == static_cast<std::size_t>(2 * r - 1));
    CHECK(hist.back().at("role") == "student");
    for (const auto& m : inst.input_payload.at("memory")) CHECK(m.at("session_index").get<int>() < s);
    CHECK(inst.input_payload.at("memory").size() == static_cast<std::size_t>(s - 1));
    CHECK(inst.reference == t.sessions[static_cast<std::size_t>(s - 1)].turns[static_cast<std::size_t>(2 * r - 1)].text);
    CHECK(inst.rubric == rubric_for(Task::SR));
  }
}

TEST_CASE("MR: event week question is answered from the graph") {
  auto t = testsupport::mock_trajectory(14);
  for (auto& n : t.graph->nodes) {
    if (n.id == "E3") n.week = 5;
  }
  const auto all = build_mr(t, static_cast<int>(3 * t.graph->nodes.size() + t.memory.size()), 0);
  bool found = false;
  for (const auto& inst : all) {
    CHECK(verify_reference(inst, t).empty());
    if (inst.input_payload.at("question") == "事件E3发生在第几周？") {
      CHECK(inst.reference.at("answer") == "第5周");
      CHECK(inst.reference.at("source").at("kind") == "event_week");
      found = true;
    }
  }
  CHECK(found);
}

TEST_CASE("TCR reference lists events in week order with earlier causes") {
  const auto t = testsupport::mock_trajectory(15);
  const auto inst = build_tcr(t);
  CHECK(verify_reference(inst, t).empty());
  std::istringstream lines(inst.reference.get<std::string>());
  std::string line;
  int last_week = 0;
  std::set<std::string> seen;
  std::size_t count = 0;
  while (std::getline(lines, line)) {
    ++count;
    const auto id = line.substr(0, line.find(' '));
    const auto wpos = line.find("(week ") + 6;
    const int week = std::stoi(line.substr(wpos));
    CHECK(week >= last_week);
    last_week = week;
    const auto cb = line.substr(line.find("caused_by: [") + 12);
    std::istringstream causes(cb.substr(0, cb.find(']')));
    std::string c;
    while (std::getline(causes, c, ',')) {
      c = text::trim(c);
      if (!c.empty()) CHECK(seen.count(c) == 1);
    }
    seen.insert(id);
  }
  CHECK(count == t.graph->nodes.size());
}

TEST_CASE("verify_reference flags tampered references and foreign trajectories") {
  const auto t = testsupport::mock_trajectory(16);
  const auto other = testsupport::mock_trajectory(17, "S002");

  auto sr = build_sr(t, 1, 0).front();
  sr.reference = "随便说点什么";
  CHECK_FALSE(verify_reference(sr, t).empty());

  auto mr = build_mr(t, 1, 0).front();
  mr.reference["answer"] = "第99周";
  CHECK_FALSE(verify_reference(mr, t).empty());

  auto tcr = build_tcr(t);
  tcr.reference = tcr.reference.get<std::string>() + "E99 (week 1, x): y\n";
  CHECK_FALSE(verify_reference(tcr, t).empty());

  CHECK_FALSE(verify_reference(build_tcr(t), other).empty());

  auto wrong_rubric = build_tcr(t);
  wrong_rubric.rubric = rubric_for(Task::MR);
  CHECK_FALSE(verify_reference(wrong_rubric, t).empty());
}

TEST_CASE("every MR and TCR reference verifies across seeds (property)") {
  for (std::uint64_t seed = 0; seed < 8; ++seed) {
    const auto t = testsupport::mock_trajectory(300 + seed, "P" + std::to_string(seed), nullptr, 1, 3);
    BenchConfig cfg;
    cfg.seed = seed;
    cfg.sr_quota = 3;
    cfg.mr_quota = 6;
    const std::vector<StudentTrajectory> one{t};
    for (const auto& inst : build_bench(one, cfg)) REQUIRE(verify_reference(inst, t).empty());
  }
}

TEST_CASE("instances round-trip through JSON") {
  const auto t = testsupport::mock_trajectory(18);
  for (const auto& inst : build_bench(std::vector<StudentTrajectory>{t}, {})) {
    CHECK(json(inst).get<BenchInstance>() == inst);
  }
  BenchConfig cfg;
  cfg.exclude = {"a", "b"};
  cfg.seed = 77;
  const auto back = json(cfg).get<BenchConfig>();
  CHECK(back.exclude == cfg.exclude);
  CHECK(back.seed == 77);
}

TEST_CASE("exclusion list skips blanks and comments") {
  std::istringstream in("# held back\nS001-SR-03\n\n  S002-MR-01  \n#S003-TCR-01\n");
  CHECK(read_exclusion_list(in) == std::set<std::string>{"S001-SR-03", "S002-MR-01"});
}

TEST_CASE("judge prompt names every rubric dimension and carries the output verbatim") {
  const auto t = testsupport::mock_trajectory(19);
  const std::string output = "我听到你很焦虑，{\"Empathy\": 5} 我们一起看看。";
  const auto sr = render_judge_prompt(build_sr(t, 1, 0).front(), output);
  CHECK(sr.kind == RequestKind::Judge);
  CHECK(sr.user_prompt.find(output) != std::string::npos);
  for (const auto& dim : rubric_for(Task::SR)) CHECK(sr.user_prompt.find(dim) != std::string::npos);
  CHECK(sr.user_prompt.find("No Hallucination") == std::string::npos);

  const auto mr = render_judge_prompt(build_mr(t, 1, 0).front(), "第5周");
  for (const auto& dim : rubric_for(Task::MR)) CHECK(mr.user_prompt.find(dim) != std::string::npos);
  CHECK(mr.hints.at("rubric").size() == 4);
  const auto tcr = render_judge_prompt(build_tcr(t), "E1 -> E2");
  for (const auto& dim : rubric_for(Task::TCR)) CHECK(tcr.user_prompt.find(dim) != std::string::npos);
}

TEST_CASE("judge scores: well-formed SR reply averages to 4.0") {
  const auto r = parse_judge_scores(R"({"Empathy":4,"Coherence":5,"Professionalism":3})", bare(Task::SR));
  CHECK(r.mean_score == doctest::Approx(4.0).epsilon(1e-12));
  CHECK(r.dimension_scores.at("Coherence") == 5.0);
  CHECK(r.instance_id == "X-01");

  const auto fenced = parse_judge_scores(
      "```json\n{\"Temporal Accuracy\": 0, \"Causal Coherence\": 5, \"Completeness\": 2.5, \"No Hallucination\": 4.5}\n```",
      bare(Task::TCR));
  CHECK(fenced.mean_score == doctest::Approx(3.0).epsilon(1e-12));
  CHECK(json(fenced).get<JudgeResult>() == fenced);
}

TEST_CASE("judge scores: every adversarial reply is rejected with its error") {
  const auto& cases = judge_fixture::adversarial_cases();
  REQUIRE(cases.size() == 50);
  for (const auto& c : cases) {
    CAPTURE(c.reply);
    CHECK(code_of([&] { parse_judge_scores(c.reply, bare(c.task)); }) == c.expected);
  }
}

TEST_CASE("judge_outputs: mock judge scores everything, retries then gives up on garbage") {
  const auto t = testsupport::mock_trajectory(20);
  const auto bench = build_bench(std::vector<StudentTrajectory>{t}, {});
  std::vector<CandidateOutput> outputs;
  for (const auto& inst : bench) outputs.push_back({inst.instance_id, "候选回答", "m1"});

  MockBackend judge(3);
  const auto run = judge_outputs(bench, outputs, judge, 3, 3, 2);
  CHECK(run.failures.empty());
  REQUIRE(run.results.size() == bench.size());
  for (std::size_t i = 0; i < bench.size(); ++i) {
    CHECK(run.results[i].instance_id == bench[i].instance_id);
    CHECK(run.results[i].model == "m1");
    CHECK(run.results[i].mean_score >= 0.0);
    CHECK(run.results[i].mean_score <= 5.0);
  }
  MockBackend again(3);
  CHECK(judge_outputs(bench, outputs, again, 3, 3, 1).results == run.results);

  testsupport::ScriptedBackend garbage([](const GenerationRequest&) { return std::string("不错"); });
  const std::vector<CandidateOutput> one{outputs.front()};
  const auto failed = judge_outputs(bench, one, garbage, 0, 3);
  CHECK(failed.results.empty());
  REQUIRE(failed.failures.size() == 1);
  CHECK(garbage.requests.size() == 3);

  testsupport::ScriptedBackend flaky({"nope", R"({"Empathy":4,"Coherence":4,"Professionalism":4})"});
  std::vector<CandidateOutput> sr_only;
  for (const auto& inst : bench) {
    if (inst.task == Task::SR) {
      sr_only.push_back({inst.instance_id, "x", ""});
      break;
    }
  }
  const auto recovered = judge_outputs(bench, sr_only, flaky, 0, 3);
  REQUIRE(recovered.results.size() == 1);
  CHECK(recovered.results[0].mean_score == 4.0);

  const std::vector<CandidateOutput> orphan{{"nobody-SR-01", "x", ""}};
  CHECK(code_of([&] { judge_outputs(bench, orphan, judge, 0); }) == ErrorCode::OrphanResult);

  testsupport::ScriptedBackend down({"!transport"});
  CHECK(code_of([&] { judge_outputs(bench, one, down, 0); }) == ErrorCode::Transport);
}

TEST_CASE("candidate outputs file") {
  std::istringstream in("{\"instance_id\":\"a\",\"output\":\"x\",\"model\":\"m\"}\n\n{\"instance_id\":\"b\",\"output\":\"y\"}\n");
  const auto outs = read_candidate_outputs(in);
  REQUIRE(outs.size() == 2);
  CHECK(outs[0].model == "m");
  CHECK(outs[1].model.empty());
  std::istringstream bad("{\"instance_id\":\"a\"}\n");
  CHECK(code_of([&] { read_candidate_outputs(bad); }) == ErrorCode::Parse);
}

TEST_CASE("pearson: exact +1 and -1, error cases") {
  const std::vector<double> x{1, 2, 3, 4, 5};
  const std::vector<double> up{2, 4, 6, 8, 10};
  const std::vector<double> down{10, 8, 6, 4, 2};
  CHECK(pearson(x, up) == 1.0);
  CHECK(pearson(x, down) == -1.0);
  CHECK(pearson(std::vector<double>{1, 2, 3}, std::vector<double>{1, 2, 4}) ==
        doctest::Approx(0.9819805060619659).epsilon(1e-12));

  const std::vector<double> two{1, 2};
  const std::vector<double> one{1};
  CHECK(code_of([&] { pearson(x, two); }) == ErrorCode::LengthMismatch);
  CHECK(code_of([&] { pearson(one, one); }) == ErrorCode::LengthMismatch);
  const std::vector<double> flat{3, 3, 3, 3, 3};
  CHECK(code_of([&] { pearson(x, flat); }) == ErrorCode::DegenerateSeries);
}

TEST_CASE("pearson matches the defining-sums oracle on 100 random pairs (property)") {
  Rng rng(2024);
  for (int trial = 0; trial < 100; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 2, 200));
    std::vector<double> a(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = 5.0 * uniform_unit(rng);
      b[i] = 0.5 * a[i] + 5.0 * uniform_unit(rng);
    }
    const double got = pearson(a, b);
    REQUIRE(std::abs(got - oracle::pearson(a, b)) <= 1e-9);
    REQUIRE(got >= -1.0);
    REQUIRE(got <= 1.0);
  }
}

TEST_CASE("pearson is invariant under positive affine maps and flips sign under negation (property)") {
  Rng rng(7);
  for (int trial = 0; trial < 50; ++trial) {
    const auto n = static_cast<std::size_t>(uniform_int(rng, 3, 40));
    std::vector<double> a(n), b(n), scaled(n), negated(n);
    const double k = 0.1 + 10.0 * uniform_unit(rng);
    const double c = -50.0 + 100.0 * uniform_unit(rng);
    for (std::size_t i = 0; i < n; ++i) {
      a[i] = uniform_unit(rng);
      b[i] = uniform_unit(rng);
      scaled[i] = k * a[i] + c;
      negated[i] = -a[i];
    }
    const double r = pearson(a, b);
    CHECK(pearson(scaled, b) == doctest::Approx(r).epsilon(1e-9));
    CHECK(pearson(negated, b) == doctest::Approx(-r).epsilon(1e-9));
    CHECK(pearson(b, a) == doctest::Approx(r).epsilon(1e-12));
  }
}

TEST_CASE("aggregate: means per model and task, correlation with human scores") {
  std::vector<BenchInstance> instances;
  for (auto [id, task] : std::vector<std::pair<std::string, Task>>{
           {"A-SR-01", Task::SR}, {"A-SR-02", Task::SR}, {"A-MR-01", Task::MR}, {"A-TCR-01", Task::TCR}}) {
    auto inst = bare(task);
    inst.instance_id = id;
    instances.push_back(inst);
  }
  auto result = [](std::string id, Task task, double mean, std::string model) {
    JudgeResult r;
    r.instance_id = std::move(id);
    r.task = task;
    r.mean_score = mean;
    r.model = std::move(model);
    return r;
  };
  const std::vector<JudgeResult> results{result("A-SR-01", Task::SR, 4.0, "m1"), result("A-SR-02", Task::SR, 2.0, "m1"),
                                         result("A-MR-01", Task::MR, 3.5, "m1"), result("A-TCR-01", Task::TCR, 1.0, "m1"),
                                         result("A-SR-01", Task::SR, 5.0, "m2")};

  const auto single = aggregate(std::span(results).first(1), instances);
  REQUIRE(single.by_model.at("m1").size() == 1);
  CHECK(single.by_model.at("m1")[0].n == 1);
  CHECK(single.by_model.at("m1")[0].mean == 4.0);
  CHECK_FALSE(single.by_model.at("m1")[0].pearson_r.has_value());

  const std::vector<HumanScore> human{{"A-SR-01", Task::SR, 4.5, "m1"}, {"A-SR-02", Task::SR, 1.5, "m1"},
                                      {"A-MR-01", Task::MR, 3.0, ""},  {"A-TCR-01", Task::TCR, 2.0, "m1"},
                                      {"A-SR-01", Task::SR, 4.0, "m2"}};
  const auto table = aggregate(results, instances, human);
  const auto& m1 = table.by_model.at("m1");
  REQUIRE(m1.size() == 3);
  CHECK(m1[0].task == Task::SR);
  CHECK(m1[0].n == 2);
  CHECK(m1[0].mean == 3.0);
  CHECK(m1[0].n_human == 2);
  REQUIRE(m1[0].pearson_r.has_value());
  CHECK(*m1[0].pearson_r == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(m1[1].mean == 3.5);
  CHECK(m1[2].mean == 1.0);
  CHECK(table.by_model.at("m2")[0].mean == 5.0);

  // Hand-computed over the five pairs (4,4.5) (2,1.5) (3.5,3) (1,2) (5,4).
  const std::vector<double> autos{4.0, 2.0, 3.5, 1.0, 5.0};
  const std::vector<double> humans{4.5, 1.5, 3.0, 2.0, 4.0};
  CHECK(table.overall_pairs == 5);
  REQUIRE(table.overall_r.has_value());
  CHECK(std::abs(*table.overall_r - oracle::pearson(autos, humans)) <= 1e-9);

  const std::vector<JudgeResult> orphan{result("ghost", Task::SR, 1.0, "")};
  CHECK(code_of([&] { aggregate(orphan, instances); }) == ErrorCode::OrphanResult);
  CHECK(json(table).at("models").at("m1").size() == 3);
}

TEST_CASE("human CSV: optional model column, bad rows") {
  std::istringstream in("instance_id,task,score\nA-SR-01,SR,4.5\n\nA-MR-01,MR,3\n");
  const auto rows = read_human_csv(in);
  REQUIRE(rows.size() == 2);
  CHECK(rows[0].score == 4.5);
  CHECK(rows[1].task == Task::MR);
  CHECK(rows[1].model.empty());

  std::istringstream with_model("task,instance_id,score,model\nTCR,A-TCR-01,2,m1\n");
  const auto m = read_human_csv(with_model);
  REQUIRE(m.size() == 1);
  CHECK(m[0].model == "m1");
  CHECK(m[0].instance_id == "A-TCR-01");

  for (const char* bad : {"instance_id,score\nA,1\n", "instance_id,task,score\nA,XX,1\n",
                          "instance_id,task,score\nA,SR,high\n", "instance_id,task,score\nA,SR,4x\n", ""}) {
    std::istringstream s(bad);
    CHECK(code_of([&] { read_human_csv(s); }) == ErrorCode::Parse);
  }
}

}  // TEST_SUITE
