#include <doctest.h>

#include <map>
#include <set>

#include "campsim/backends/mock_backend.hpp"
#include "campsim/core/error.hpp"
#include "campsim/events/event_graph.hpp"
#include "mutations.hpp"
#include "support.hpp"

using namespace campsim;
using namespace campsim::events;

namespace {

std::set<GraphErrorCategory> categories(const std::vector<GraphValidationError>& errors) {
  std::set<GraphErrorCategory> out;
  for (const auto& e : errors) out.insert(e.category);
  return out;
}

json node_json(const EventNode& e) {
  return json{{"id", e.id},
              {"week", e.week},
              {"domain", std::string(domain_heading(e.domain))},
              {"event_content", e.event_content},
              {"psychological_impact", e.psychological_impact},
              {"stress_level", e.stress_level},
              {"caused_by", e.caused_by}};
}

}  // namespace

TEST_SUITE("events") {

TEST_CASE("event prompt carries the semester span, domain headings and persona") {
  auto p = testsupport::sample_profile();
  p.core_conflict = "害怕让父母失望";
  const auto req = render_event_prompt(p);
  CHECK(req.kind == RequestKind::EventGraph);
  CHECK(req.user_prompt.find("(16 weeks)") != std::string::npos);
  for (auto d : all_stress_domains()) CHECK(req.user_prompt.find(std::string(domain_heading(d))) != std::string::npos);
  CHECK(req.user_prompt.find("害怕让父母失望") != std::string::npos);
  CHECK(req.user_prompt.find(p.name) != std::string::npos);
  CHECK(render_event_prompt(p, {}, 20).user_prompt.find("(20 weeks)") != std::string::npos);
}

TEST_CASE("parse accepts a list, an events object and a fenced reply, all identical") {
  const auto g = testsupport::chain_graph(12);
  json list = json::array();
  for (auto it = g.nodes.rbegin(); it != g.nodes.rend(); ++it) list.push_back(node_json(*it));

  const auto a = parse_event_graph(list.dump(), "S001");
  const auto b = parse_event_graph(json{{"events", list}}.dump(), "S001");
  const auto c = parse_event_graph("```json\n" + list.dump(2) + "\n```", "S001");
  REQUIRE(a.nodes.size() == 12);
  CHECK(a == b);
  CHECK(a == c);
  CHECK(a.nodes == g.nodes);
  for (std::size_t i = 1; i < a.nodes.size(); ++i) CHECK_FALSE(event_order_less(a.nodes[i], a.nodes[i - 1]));
}

TEST_CASE("parse is insensitive to the order of the raw list (property)") {
  Rng rng(17);
  for (int trial = 0; trial < 100; ++trial) {
    const auto g = testsupport::random_valid_graph(rng);
    auto nodes = g.nodes;
    seeded_shuffle(nodes, rng);
    json list = json::array();
    for (const auto& e : nodes) list.push_back(node_json(e));
    const auto parsed = parse_event_graph(list.dump(), g.student_id);
    REQUIRE(parsed.nodes == g.nodes);
  }
}

TEST_CASE("parse rejects non-integer weeks, missing fields and garbage") {
  const auto g = testsupport::chain_graph(10);
  json list = json::array();
  for (const auto& e : g.nodes) list.push_back(node_json(e));

  auto expect_parse = [](const std::string& raw) {
    try {
      parse_event_graph(raw, "S001");
      FAIL("expected ParseError");
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
    }
  };
  auto bad_week = list;
  bad_week[2]["week"] = "three";
  expect_parse(bad_week.dump());
  auto no_stress = list;
  no_stress[0].erase("stress_level");
  expect_parse(no_stress.dump());
  auto float_stress = list;
  float_stress[0]["stress_level"] = 4.5;
  expect_parse(float_stress.dump());
  expect_parse("oops");
  expect_parse(R"({"nodes": []})");
}

TEST_CASE("a well-formed 12-node graph validates cleanly") {
  CHECK(validate_event_graph(testsupport::chain_graph(12)).empty());
}

TEST_CASE("single-category fixtures") {
  auto g = testsupport::chain_graph(12);
  g.nodes[11].week = 17;
  CHECK(categories(validate_event_graph(g)) == std::set{GraphErrorCategory::WeekOutOfRange});

  g = testsupport::chain_graph(12);
  g.nodes[1].week = 4;
  g.nodes[2].week = 9;
  g.nodes[1].caused_by = {"E3"};
  g.nodes[2].caused_by = {};
  g.nodes[3].caused_by = {};
  const auto temporal = validate_event_graph(g);
  REQUIRE(temporal.size() == 1);
  CHECK(temporal[0].category == GraphErrorCategory::TemporalViolation);
  CHECK(temporal[0].offending_ids == std::vector<std::string>{"E3", "E2"});

  g = testsupport::chain_graph(12);
  g.nodes[0].caused_by = {"E2"};
  const auto cycle = validate_event_graph(g);
  REQUIRE(cycle.size() == 1);
  CHECK(cycle[0].category == GraphErrorCategory::CausalCycle);
  CHECK(cycle[0].offending_ids == std::vector<std::string>{"E1", "E2"});

  const auto short_graph = validate_event_graph(testsupport::chain_graph(9));
  REQUIRE(short_graph.size() == 1);
  CHECK(short_graph[0].category == GraphErrorCategory::EventCountOutOfRange);
  CHECK(short_graph[0].offending_ids.empty());
}

TEST_CASE("same-week causes are ordered by id index") {
  auto g = testsupport::chain_graph(10);
  for (auto& n : g.nodes) n.week = 5;
  CHECK(validate_event_graph(g).empty());
  g.nodes[2].caused_by.push_back("E10");
  CHECK(categories(validate_event_graph(g)) == std::set{GraphErrorCategory::CausalCycle});
  g = testsupport::chain_graph(10);
  for (auto& n : g.nodes) n.week = 5;
  // Cutting E3 -> E4 leaves E10 downstream of nothing E3 reaches.
  g.nodes[2].caused_by = {"E10"};
  g.nodes[3].caused_by = {};
  CHECK(categories(validate_event_graph(g)) == std::set{GraphErrorCategory::TemporalViolation});
}

TEST_CASE("every violation is reported, not just the first") {
  auto g = testsupport::chain_graph(12);
  g.nodes[11].week = 30;
  g.nodes[3].stress_level = 0;
  g.nodes[5].caused_by.push_back("E77");
  g.nodes[6].caused_by.push_back("E7");
  const auto cats = categories(validate_event_graph(g));
  CHECK(cats == std::set{GraphErrorCategory::WeekOutOfRange, GraphErrorCategory::StressOutOfRange,
                         GraphErrorCategory::DanglingCause, GraphErrorCategory::SelfCause});
}

TEST_CASE("unmutated random graphs validate cleanly (property)") {
  Rng rng(8080);
  for (int trial = 0; trial < 500; ++trial) {
    const auto g = testsupport::random_valid_graph(rng);
    REQUIRE(validate_event_graph(g).empty());
  }
}

TEST_CASE("each single-violation mutation reports exactly its category (property)") {
  const auto mutants = mutations::generate(123, 450);
  std::map<GraphErrorCategory, int> per_category;
  for (const auto& m : mutants) {
    CAPTURE(m.description);
    const auto cats = categories(validate_event_graph(m.graph));
    REQUIRE(cats == std::set{m.injected});
    ++per_category[m.injected];
  }
  CHECK(per_category.size() == static_cast<std::size_t>(kGraphErrorCategoryCount));
}

TEST_CASE("build_graph: mock succeeds first time, garbage exhausts the budget") {
  const auto profile = testsupport::sample_profile();
  MockBackend b1(4), b2(4);
  const auto g1 = build_graph(profile, b1, {}, 4);
  const auto g2 = build_graph(profile, b2, {}, 4);
  CHECK(g1.attempts == 1);
  CHECK(g1.graph == g2.graph);
  CHECK(validate_event_graph(g1.graph).empty());
  CHECK(g1.graph.student_id == "S001");

  testsupport::ScriptedBackend garbage;
  garbage.fallback = [](const GenerationRequest&) { return std::string("oops"); };
  try {
    build_graph(profile, garbage, {}, 4);
    FAIL("expected GenerationExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenerationExhausted);
  }
  CHECK(garbage.requests.size() == 3);
}

TEST_CASE("mock graphs stay valid across seeds and event-count settings (property)") {
  const auto profile = testsupport::sample_profile();
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    GraphBuildSettings settings;
    settings.limits = {static_cast<int>(5 + seed % 6), static_cast<int>(12 + seed % 6)};
    settings.semester_weeks = static_cast<int>(12 + seed % 9);
    MockBackend backend(seed);
    const auto build = build_graph(profile, backend, settings, seed);
    REQUIRE(validate_event_graph(build.graph, settings.limits).empty());
    REQUIRE(build.graph.semester_weeks == settings.semester_weeks);
  }
}

TEST_CASE("stress trend sign") {
  auto g = testsupport::chain_graph(10);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.nodes[i].stress_level = static_cast<int>(i + 1);
  CHECK(stress_trend_sign(g) == 1);
  for (std::size_t i = 0; i < g.nodes.size(); ++i) g.nodes[i].stress_level = static_cast<int>(10 - i);
  CHECK(stress_trend_sign(g) == -1);
  for (auto& n : g.nodes) n.stress_level = 5;
  CHECK(stress_trend_sign(g) == 0);
}

}  // TEST_SUITE
