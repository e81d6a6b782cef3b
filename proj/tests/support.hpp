#pragma once

// Shared fixtures for the unit and acceptance suites.

#include <unistd.h>

#include <algorithm>
#include <atomic>
#include <deque>
#include <filesystem>
#include <functional>
#include <mutex>
#include <random>
#include <string>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/backends/mock_backend.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/types.hpp"
#include "campsim/events/event_graph.hpp"
#include "campsim/profiles/profile_builder.hpp"
#include "campsim/sim/simulator.hpp"

namespace testsupport {

using namespace campsim;

/// Replies in order from a queue; "!transport" throws a transport error. When
/// the queue is empty, `fallback` (if set) answers.
class ScriptedBackend : public Backend {
 public:
  explicit ScriptedBackend(std::vector<std::string> replies = {}) : replies_(replies.begin(), replies.end()) {}
  explicit ScriptedBackend(std::function<std::string(const GenerationRequest&)> answer) : fallback(std::move(answer)) {}

  std::function<std::string(const GenerationRequest&)> fallback;

  std::string generate(const GenerationRequest& req) override {
    std::string reply;
    {
      std::lock_guard lock(mu_);
      requests.push_back(req);
      if (!replies_.empty()) {
        reply = replies_.front();
        replies_.pop_front();
      } else if (fallback) {
        reply = fallback(req);
      } else {
        throw Error(ErrorCode::Transport, "script exhausted");
      }
    }
    if (reply == "!transport") throw Error(ErrorCode::Transport, "scripted transport failure");
    return reply;
  }

  std::vector<EmbeddingVector> embed(std::span<const std::string> texts) override {
    std::vector<EmbeddingVector> out;
    for (const auto& t : texts) out.push_back(hashed_bigram_embedding(t, 1, 64));
    return out;
  }

  std::string id() const override { return "scripted"; }

  std::vector<GenerationRequest> requests;

 private:
  std::mutex mu_;
  std::deque<std::string> replies_;
};

/// Self-deleting scratch directory.
class TempDir {
 public:
  explicit TempDir(const std::string& tag) {
    static std::atomic<int> counter{0};
    path_ = std::filesystem::temp_directory_path() /
            ("campsim_test_" + tag + "_" + std::to_string(::getpid()) + "_" + std::to_string(counter++));
    std::filesystem::remove_all(path_);
    std::filesystem::create_directories(path_);
  }
  ~TempDir() {
    std::error_code ec;
    std::filesystem::remove_all(path_, ec);
  }
  const std::filesystem::path& path() const { return path_; }

 private:
  std::filesystem::path path_;
};

inline StudentProfile sample_profile(const std::string& id = "S001") {
  StudentProfile p;
  p.student_id = id;
  p.name = "林晓";
  p.demographics = {"女", 20, "大二", "理科"};
  p.personality = "INFJ型人格，敏感细腻，做事认真。面对压力时习惯独自消化。";
  p.background = "来自湖南县城的双职工家庭，父母对成绩期望很高。经济条件一般，与室友关系平淡。";
  p.core_conflict = "害怕考试失败让父母失望，却又无法停止拖延。";
  p.stress_domain = StressDomain::Academic;
  return p;
}

/// Valid chain: ids E1..En with nondecreasing weeks and each node caused by
/// its predecessor.
inline StressEventGraph chain_graph(int n, const std::string& student = "S001", int weeks = 16) {
  StressEventGraph g;
  g.student_id = student;
  g.semester_weeks = weeks;
  for (int i = 1; i <= n; ++i) {
    EventNode e;
    e.id = "E" + std::to_string(i);
    e.week = std::min(weeks, 1 + (i - 1) * weeks / std::max(1, n));
    e.domain = all_stress_domains()[static_cast<std::size_t>(i % 5)];
    e.event_content = "第" + std::to_string(i) + "个事件：期中考试前复习进度落后于同学";
    e.psychological_impact = "焦虑、自我怀疑";
    e.stress_level = 1 + (i * 7) % 10;
    if (i > 1) e.caused_by = {"E" + std::to_string(i - 1)};
    g.nodes.push_back(e);
  }
  return g;
}

/// Random valid graph: sorted weeks, each node caused by up to two earlier
/// nodes in a strictly earlier (week, index) position.
inline StressEventGraph random_valid_graph(Rng& rng, int min_events = 10, int max_events = 15, int weeks = 16) {
  const int n = static_cast<int>(uniform_int(rng, min_events, max_events));
  std::vector<int> w(static_cast<std::size_t>(n));
  for (auto& x : w) x = static_cast<int>(uniform_int(rng, 1, weeks));
  std::sort(w.begin(), w.end());
  StressEventGraph g;
  g.student_id = "S" + std::to_string(uniform_int(rng, 100, 999));
  g.semester_weeks = weeks;
  for (int i = 0; i < n; ++i) {
    EventNode e;
    e.id = "E" + std::to_string(i + 1);
    e.week = w[static_cast<std::size_t>(i)];
    e.domain = all_stress_domains()[static_cast<std::size_t>(uniform_int(rng, 0, 4))];
    e.event_content = "事件" + std::to_string(i + 1);
    e.psychological_impact = "紧张";
    e.stress_level = static_cast<int>(uniform_int(rng, 1, 10));
    const int k = i == 0 ? 0 : static_cast<int>(uniform_int(rng, 0, std::min(2, i)));
    std::vector<int> parents;
    while (static_cast<int>(parents.size()) < k) {
      const int p = static_cast<int>(uniform_int(rng, 0, i - 1));
      if (std::find(parents.begin(), parents.end(), p) == parents.end()) parents.push_back(p);
    }
    std::sort(parents.begin(), parents.end());
    for (int p : parents) e.caused_by.push_back("E" + std::to_string(p + 1));
    g.nodes.push_back(e);
  }
  return g;
}

/// A complete mock trajectory built through the real generators.
inline StudentTrajectory mock_trajectory(std::uint64_t seed, const std::string& id = "S001",
                                         sim::PromptLog* log = nullptr, int rounds_min = 4, int rounds_max = 4) {
  MockBackend backend(seed);
  const auto space = default_attribute_space();
  const auto attrs = profiles::sample_attributes(space, 1, seed);
  const auto profile = profiles::build_profile(attrs[0], space, backend, id, seed, 3).profile;
  const auto graph = events::build_graph(profile, backend, {}, seed).graph;
  sim::SimulationConfig cfg;
  cfg.rounds_min = rounds_min;
  cfg.rounds_max = rounds_max;
  cfg.seed = seed;
  return sim::run_trajectory(profile, graph, backend, cfg, log);
}

}  // namespace testsupport
