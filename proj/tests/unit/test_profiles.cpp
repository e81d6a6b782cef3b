#include <doctest.h>

#include <map>
#include <set>

#include "campsim/analytics/similarity.hpp"
#include "campsim/backends/mock_backend.hpp"
#include "campsim/core/error.hpp"
#include "campsim/profiles/profile_builder.hpp"
#include "oracles.hpp"
#include "support.hpp"

using namespace campsim;
using namespace campsim::profiles;

namespace {

const std::string kValidReply =
    R"({"name": "王磊", "demographics": {"gender": "男", "age": 21, "grade": "大一", "major": "文科"},
        "personality": "ISTJ，做事有条理，压力大时会埋头学习。", "background": "农村家庭，父母务农。",
        "core_conflict": "担心绩点不够保研。"})";

}  // namespace

TEST_SUITE("profiles") {

TEST_CASE("100 tuples over five domains give exactly 20 per domain") {
  const auto space = default_attribute_space();
  const auto tuples = sample_attributes(space, 100, 3);
  std::map<StressDomain, int> by_domain;
  for (const auto& t : tuples) ++by_domain[t.stress_domain];
  REQUIRE(by_domain.size() == 5);
  for (const auto& [d, n] : by_domain) CHECK(n == 20);
}

TEST_CASE("stratification and coverage hold for any count (property)") {
  const auto space = default_attribute_space();
  for (int count = 0; count <= 120; ++count) {
    const auto tuples = sample_attributes(space, count, static_cast<std::uint64_t>(count) * 31 + 1);
    REQUIRE(tuples.size() == static_cast<std::size_t>(count));
    std::map<StressDomain, int> by_domain;
    for (auto d : space.stress_domains) by_domain[d] = 0;
    std::map<StressDomain, std::set<std::string>> majors;
    for (const auto& t : tuples) {
      ++by_domain[t.stress_domain];
      majors[t.stress_domain].insert(t.major);
      REQUIRE(space.has_gender(t.gender));
      REQUIRE(space.has_grade(t.grade));
      REQUIRE(space.has_major(t.major));
    }
    int lo = count, hi = 0;
    for (const auto& [d, n] : by_domain) {
      lo = std::min(lo, n);
      hi = std::max(hi, n);
      // Round-robin: a domain with n draws covers min(n, |majors|) majors.
      REQUIRE(majors[d].size() == std::min<std::size_t>(static_cast<std::size_t>(n), space.majors.size()));
    }
    REQUIRE(hi - lo <= 1);
  }
}

TEST_CASE("sampling is deterministic and seed-sensitive") {
  const auto space = default_attribute_space();
  CHECK(sample_attributes(space, 10, 7) == sample_attributes(space, 10, 7));
  CHECK(sample_attributes(space, 0, 7).empty());
  CHECK(sample_attributes(space, 30, 7) != sample_attributes(space, 30, 8));
}

TEST_CASE("profile prompt substitutes every attribute") {
  const auto space = default_attribute_space();
  const AttributeTuple attrs{"女", "大三", "工科", StressDomain::Academic};
  const auto req = render_profile_prompt(attrs, space);
  CHECK(req.kind == RequestKind::Profile);
  for (const char* literal : {"女", "工科", "大三", "学业压力"}) CHECK(req.user_prompt.find(literal) != std::string::npos);
  CHECK(req.user_prompt.find('{') == std::string::npos);

  const AttributeTuple other{"男", "大三", "工科", StressDomain::Academic};
  CHECK(render_profile_prompt(other, space).prompt_digest() != req.prompt_digest());

  auto broken = space;
  broken.domain_descriptions.erase(StressDomain::Academic);
  try {
    render_profile_prompt(attrs, broken);
    FAIL("expected TemplateError");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::Template);
  }
}

TEST_CASE("parse_profile forces grade and major to the sampled values") {
  const AttributeTuple attrs{"男", "大二", "工科", StressDomain::Career};
  const auto p = parse_profile(kValidReply, attrs, {"S007", 9, "mock:1", "d"});
  CHECK(p.demographics.major == "工科");
  CHECK(p.demographics.grade == "大二");
  CHECK(p.demographics.age == 21);
  CHECK(p.stress_domain == StressDomain::Career);
  CHECK(p.student_id == "S007");
  CHECK(p.provenance.seed == 9);
  CHECK(p.name == "王磊");
}

TEST_CASE("parse_profile accepts fenced replies and rejects malformed ones") {
  const AttributeTuple attrs{"男", "大二", "工科", StressDomain::Career};
  CHECK_NOTHROW(parse_profile("```json\n" + kValidReply + "\n```", attrs));
  CHECK_NOTHROW(parse_profile("好的：" + kValidReply, attrs));

  auto expect_parse = [&](const std::string& raw, const std::string& needle) {
    try {
      parse_profile(raw, attrs);
      FAIL("expected ParseError for " << raw);
    } catch (const Error& e) {
      CHECK(e.code() == ErrorCode::Parse);
      CHECK(std::string(e.what()).find(needle) != std::string::npos);
    }
  };
  expect_parse("not json", "JSON");
  auto missing = json::parse(kValidReply);
  missing.erase("core_conflict");
  expect_parse(missing.dump(), "core_conflict");
  expect_parse("[1, 2]", "object");
}

TEST_CASE("correction rule holds for arbitrary reply contents (property)") {
  const auto space = default_attribute_space();
  Rng rng(55);
  for (int i = 0; i < 200; ++i) {
    const auto attrs = sample_attributes(space, 1, static_cast<std::uint64_t>(i))[0];
    auto obj = json::parse(kValidReply);
    obj["demographics"]["grade"] = pick(space.grades, rng);
    obj["demographics"]["major"] = uniform_int(rng, 0, 1) ? pick(space.majors, rng) : std::string("未知专业");
    const auto p = parse_profile(obj.dump(), attrs);
    REQUIRE(p.demographics.grade == attrs.grade);
    REQUIRE(p.demographics.major == attrs.major);
  }
}

TEST_CASE("filter: identical profiles collide, validator failures carry their reason") {
  FilterOptions opts;
  opts.threshold = 0.9;
  auto a = testsupport::sample_profile("S001");
  auto b = a;
  b.student_id = "S002";
  auto c = testsupport::sample_profile("S003");
  c.background = "";
  const auto r = filter_profiles({a, b, c}, opts);
  REQUIRE(r.kept.size() == 1);
  CHECK(r.kept[0].student_id == "S001");
  REQUIRE(r.rejected.size() == 2);
  CHECK(r.rejected[0].reason == RejectReason::EmptyDimension);
  CHECK(r.rejected[1].reason == RejectReason::Repetition);
  CHECK(r.rejected[1].detail == "S001");
}

TEST_CASE("filter keeps a distinct 3-profile fixture whose oracle cosines are below 0.2") {
  auto a = testsupport::sample_profile("S001");
  auto b = testsupport::sample_profile("S002");
  b.name = "周航";
  b.personality = "ENTP，外向健谈，喜欢辩论。";
  b.background = "上海独生子女，父母经商。";
  b.core_conflict = "实习面试屡屡失败，开始怀疑自己的能力。";
  auto c = testsupport::sample_profile("S003");
  c.name = "阿依";
  c.personality = "ISFP，安静温和，喜欢画画。";
  c.background = "新疆少数民族家庭，第一次离家。";
  c.core_conflict = "室友作息不同导致长期失眠。";
  const std::vector<std::string> docs{profile_text(a), profile_text(b), profile_text(c)};
  for (double s : oracle::pairwise(oracle::tfidf(docs))) REQUIRE(s < 0.2);
  const auto r = filter_profiles({a, b, c}, FilterOptions{});
  CHECK(r.kept.size() == 3);
  CHECK(r.rejected.empty());
}

TEST_CASE("filter applies the required-keyword relevance check") {
  FilterOptions opts;
  opts.required_keywords = {"宿舍"};
  const auto r = filter_profiles({testsupport::sample_profile()}, opts);
  REQUIRE(r.rejected.size() == 1);
  CHECK(r.rejected[0].reason == RejectReason::WeakCampusRelevance);
}

TEST_CASE("filtering is idempotent on mock profiles (property)") {
  const auto space = default_attribute_space();
  for (std::uint64_t seed = 1; seed <= 8; ++seed) {
    MockBackend backend(seed);
    const auto tuples = sample_attributes(space, 12, seed);
    std::vector<StudentProfile> ps;
    for (std::size_t i = 0; i < tuples.size(); ++i) {
      ps.push_back(build_profile(tuples[i], space, backend, "S" + std::to_string(i), seed, 3).profile);
    }
    ps.push_back(ps.front());  // guarantees at least one rejection
    for (double threshold : {0.2, 0.4, 0.6}) {
      FilterOptions opts;
      opts.threshold = threshold;
      const auto once = filter_profiles(ps, opts);
      CHECK_FALSE(once.rejected.empty());
      const auto twice = filter_profiles(once.kept, opts);
      CHECK(twice.rejected.empty());
      CHECK(twice.kept == once.kept);
    }
  }
}

TEST_CASE("build_profile retries on parse failures and then gives up") {
  const auto space = default_attribute_space();
  const AttributeTuple attrs{"男", "大二", "工科", StressDomain::Career};
  testsupport::ScriptedBackend ok({"garbage", kValidReply});
  const auto build = build_profile(attrs, space, ok, "S001", 1, 3);
  CHECK(build.attempts == 2);
  CHECK(build.prompt_digests.size() == 2);
  CHECK(build.profile.provenance.backend_id == "scripted");

  testsupport::ScriptedBackend bad({"oops", "oops", "oops", kValidReply});
  try {
    build_profile(attrs, space, bad, "S001", 1, 3);
    FAIL("expected GenerationExhausted");
  } catch (const Error& e) {
    CHECK(e.code() == ErrorCode::GenerationExhausted);
  }
  CHECK(bad.requests.size() == 3);
}

TEST_CASE("mock profiles are valid on the first attempt and deterministic") {
  const auto space = default_attribute_space();
  for (const auto& attrs : sample_attributes(space, 20, 11)) {
    MockBackend b1(11), b2(11);
    const auto p1 = build_profile(attrs, space, b1, "S001", 11, 3);
    const auto p2 = build_profile(attrs, space, b2, "S001", 11, 3);
    CHECK(p1.attempts == 1);
    CHECK(p1.profile == p2.profile);
    CHECK(validate_profile(p1.profile, space).ok());
  }
}

}  // TEST_SUITE
