#include "campsim/pipeline/config.hpp"

#include <fstream>

#include "campsim/core/digest.hpp"
#include "campsim/core/error.hpp"

namespace campsim::pipeline {

namespace {

template <typename T>
T field(const json& j, const char* key, T fallback) {
  if (!j.contains(key)) return fallback;
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("bad value for ") + key + ": " + e.what());
  }
}

BackendConfig backend_block(const json& j, const char* key) {
  try {
    return j.at(key).get<BackendConfig>();
  } catch (const Error&) {
    throw;
  } catch (const json::exception& e) {
    throw Error(ErrorCode::Config, std::string("bad backend block ") + key + ": " + e.what());
  }
}

void check_unit_interval(double v, const char* name) {
  if (!(v > 0.0 && v <= 1.0)) throw Error(ErrorCode::Config, std::string(name) + " must lie in (0, 1]");
}

}  // namespace

PipelineConfig parse_config(const json& j, const std::filesystem::path& base_dir) {
  if (!j.is_object()) throw Error(ErrorCode::Config, "configuration must be a JSON object");
  if (!j.contains("generator") || !j.at("generator").is_object()) {
    throw Error(ErrorCode::Config, "configuration lacks the generator backend block");
  }
  PipelineConfig c;
  c.seed = field<std::uint64_t>(j, "seed", c.seed);
  c.students = field<int>(j, "students", c.students);
  if (c.students < 1) throw Error(ErrorCode::Config, "students must be >= 1");

  if (j.contains("attribute_space")) {
    json space = j.at("attribute_space");
    if (space.is_string()) {
      const auto path = base_dir / space.get<std::string>();
      std::ifstream in(path);
      if (!in) throw Error(ErrorCode::Config, "cannot read attribute space " + path.string());
      space = json::parse(in, nullptr, false);
      if (space.is_discarded()) throw Error(ErrorCode::Config, "attribute space " + path.string() + " is not JSON");
    }
    try {
      c.attribute_space = space.get<AttributeSpace>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Config, std::string("bad attribute space: ") + e.what());
    }
  }
  if (!c.attribute_space.well_formed()) throw Error(ErrorCode::Config, "attribute space is not well formed");

  c.generator = backend_block(j, "generator");
  if (j.contains("judge")) c.judge = backend_block(j, "judge");
  if (j.contains("embedder")) c.embedder = backend_block(j, "embedder");

  const json p = j.value("profiles", json::object());
  c.profiles.attempt_budget = field(p, "attempt_budget", c.profiles.attempt_budget);
  c.profiles.regeneration_rounds = field(p, "regeneration_rounds", c.profiles.regeneration_rounds);
  c.profiles.threshold = field(p, "threshold", c.profiles.threshold);
  c.profiles.required_keywords = field(p, "required_keywords", c.profiles.required_keywords);
  if (c.profiles.attempt_budget < 1 || c.profiles.regeneration_rounds < 0) {
    throw Error(ErrorCode::Config, "profile budgets must be positive");
  }
  check_unit_interval(c.profiles.threshold, "profiles.threshold");

  const json g = j.value("graphs", json::object());
  c.graphs.limits.min_events = field(g, "min_events", c.graphs.limits.min_events);
  c.graphs.limits.max_events = field(g, "max_events", c.graphs.limits.max_events);
  c.graphs.semester_weeks = field(g, "semester_weeks", c.graphs.semester_weeks);
  c.graphs.attempt_budget = field(g, "attempt_budget", c.graphs.attempt_budget);
  if (c.graphs.limits.min_events < 1 || c.graphs.limits.max_events < c.graphs.limits.min_events ||
      c.graphs.semester_weeks < 1 || c.graphs.attempt_budget < 1) {
    throw Error(ErrorCode::Config, "graph settings out of range");
  }

  if (j.contains("simulation")) {
    try {
      c.simulation = j.at("simulation").get<sim::SimulationConfig>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Config, std::string("bad simulation block: ") + e.what());
    }
  }
  c.simulation.seed = c.seed;
  sim::check_config(c.simulation);

  const json q = j.value("qc", json::object());
  c.qc.theta_profile = field(q, "theta_profile", c.qc.theta_profile);
  c.qc.theta_dialogue = field(q, "theta_dialogue", c.qc.theta_dialogue);
  if (q.contains("denylist")) c.qc.denylist = field<std::vector<std::string>>(q, "denylist", {});
  if (q.contains("scenario_terms")) c.qc.scenario_terms = field<std::vector<std::string>>(q, "scenario_terms", {});
  c.qc.judge_cutoff = field(q, "judge_cutoff", c.qc.judge_cutoff);
  c.qc.use_judge = field(q, "use_judge", c.qc.use_judge);
  check_unit_interval(c.qc.theta_profile, "qc.theta_profile");
  check_unit_interval(c.qc.theta_dialogue, "qc.theta_dialogue");
  if (c.qc.use_judge && !c.judge) throw Error(ErrorCode::Config, "qc.use_judge needs a judge backend block");

  if (j.contains("bench")) {
    try {
      c.bench = j.at("bench").get<bench::BenchConfig>();
    } catch (const json::exception& e) {
      throw Error(ErrorCode::Config, std::string("bad bench block: ") + e.what());
    }
  }
  if (!j.contains("bench") || !j.at("bench").contains("seed")) c.bench.seed = c.seed;

  c.output_root = field<std::string>(j, "output_root", c.output_root.string());
  c.parallel = field(j, "parallel", c.parallel);
  if (c.parallel < 0) throw Error(ErrorCode::Config, "parallel must be >= 0");
  return c;
}

PipelineConfig load_config(const std::filesystem::path& path) {
  std::ifstream in(path);
  if (!in) throw Error(ErrorCode::Config, "cannot read configuration " + path.string());
  const json j = json::parse(in, nullptr, false);
  if (j.is_discarded()) throw Error(ErrorCode::Config, "configuration " + path.string() + " is not valid JSON");
  return parse_config(j, path.parent_path().empty() ? std::filesystem::path(".") : path.parent_path());
}

json config_to_json(const PipelineConfig& c) {
  json j{{"seed", c.seed},
         {"students", c.students},
         {"attribute_space", c.attribute_space},
         {"generator", c.generator},
         {"profiles",
          {{"attempt_budget", c.profiles.attempt_budget},
           {"regeneration_rounds", c.profiles.regeneration_rounds},
           {"threshold", c.profiles.threshold},
           {"required_keywords", c.profiles.required_keywords}}},
         {"graphs",
          {{"min_events", c.graphs.limits.min_events},
           {"max_events", c.graphs.limits.max_events},
           {"semester_weeks", c.graphs.semester_weeks},
           {"attempt_budget", c.graphs.attempt_budget}}},
         {"simulation", c.simulation},
         {"qc",
          {{"theta_profile", c.qc.theta_profile},
           {"theta_dialogue", c.qc.theta_dialogue},
           {"judge_cutoff", c.qc.judge_cutoff},
           {"use_judge", c.qc.use_judge}}},
         {"bench", c.bench},
         {"output_root", c.output_root.string()},
         {"parallel", c.parallel}};
  if (c.judge) j["judge"] = *c.judge;
  if (c.embedder) j["embedder"] = *c.embedder;
  if (c.qc.denylist) j["qc"]["denylist"] = *c.qc.denylist;
  if (c.qc.scenario_terms) j["qc"]["scenario_terms"] = *c.qc.scenario_terms;
  return j;
}

std::string config_digest(const PipelineConfig& c) {
  json j = config_to_json(c);
  j.erase("output_root");
  j.erase("parallel");
  return sha256_hex(j.dump());
}

PipelineConfig mock_config(std::uint64_t seed, int students) {
  PipelineConfig c;
  c.seed = seed;
  c.students = students;
  c.generator.type = BackendConfig::Type::Mock;
  c.generator.seed = seed;
  c.simulation.seed = seed;
  c.bench.seed = seed;
  return c;
}

}  // namespace campsim::pipeline
