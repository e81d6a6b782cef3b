#include <algorithm>
#include <istream>
#include <map>
#include <mutex>
#include <set>
#include <sstream>

#include "campsim/bench/bench.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/parallel.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"

namespace campsim::bench {

void to_json(json& j, const JudgeResult& r) {
  j = json{{"instance_id", r.instance_id},
           {"task", std::string(to_string(r.task))},
           {"dimension_scores", r.dimension_scores},
           {"mean_score", r.mean_score},
           {"model", r.model}};
}

void from_json(const json& j, JudgeResult& r) {
  r.instance_id = j.at("instance_id").get<std::string>();
  const auto task = parse_task(j.at("task").get<std::string>());
  if (!task) throw json::other_error::create(501, "unknown task " + j.at("task").dump(), &j);
  r.task = *task;
  r.dimension_scores = j.at("dimension_scores").get<std::map<std::string, double>>();
  r.mean_score = j.at("mean_score").get<double>();
  r.model = j.value("model", std::string());
}

namespace {

constexpr std::string_view kJudgeSystem =
    "You are an impartial evaluator of counseling-dialogue benchmark outputs. Score the candidate output on each "
    "listed dimension using a 0-5 scale: 5 means excellent, 0 means invalid, entirely wrong or off-task. The "
    "reference answer is a guide to what a correct output covers; the candidate does not need to match its "
    "wording, only to accomplish the task. Reply with one JSON object mapping every dimension name to a number "
    "and nothing else.";

std::string_view task_goal(Task t) {
  switch (t) {
    case Task::SR: return "Write the counselor's next response to the student's latest utterance.";
    case Task::MR: return "Answer the factual question from the counseling history.";
    case Task::TCR: return "Reconstruct the semester's stress-event timeline and explain the causal links.";
  }
  return "";
}

}  // namespace

GenerationRequest render_judge_prompt(const BenchInstance& inst, std::string_view model_output) {
  json skeleton = json::object();
  for (const auto& dim : inst.rubric) skeleton[dim] = 0;

  std::string user = "Task: " + std::string(to_string(inst.task)) + ". " + std::string(task_goal(inst.task)) +
                     "\n\nDimensions (" + std::to_string(inst.rubric.size()) + "): " + text::join(inst.rubric, ", ") +
                     "\n\n[Task input]\n" + inst.input_payload.dump(2) + "\n\n[Candidate output]\n" +
                     std::string(model_output) + "\n\n[Reference answer]\n" +
                     (inst.reference.is_string() ? inst.reference.get<std::string>() : inst.reference.dump(2)) +
                     "\n\nReply format: " + skeleton.dump();

  GenerationRequest req;
  req.kind = RequestKind::Judge;
  req.temperature = 0.0;
  req.max_length = 512;
  req.system_prompt = std::string(kJudgeSystem);
  req.user_prompt = std::move(user);
  req.hints = json{{"rubric", inst.rubric}, {"instance_id", inst.instance_id}};
  return req;
}

namespace {

// Parses a top-level JSON object, rejecting repeated keys: the library would
// otherwise keep the last value and hide a contradictory reply.
json parse_unique_object(const std::string& body, bool& duplicate) {
  std::set<std::string> keys;
  duplicate = false;
  const json::parser_callback_t cb = [&](int depth, json::parse_event_t event, json& parsed) {
    if (event == json::parse_event_t::key && depth == 1 && !keys.insert(parsed.get<std::string>()).second) {
      duplicate = true;
    }
    return true;
  };
  return json::parse(body, cb, false);
}

}  // namespace

JudgeResult parse_judge_scores(std::string_view raw, const BenchInstance& inst) {
  const std::string body = text::strip_code_fences(raw);
  bool duplicate = false;
  json obj = parse_unique_object(body, duplicate);
  if (obj.is_discarded()) {
    const auto b = body.find('{');
    const auto e = body.rfind('}');
    if (b != std::string::npos && e != std::string::npos && e > b) {
      obj = parse_unique_object(body.substr(b, e - b + 1), duplicate);
    }
  }
  if (obj.is_discarded() || !obj.is_object()) throw Error(ErrorCode::Parse, "judge reply is not a JSON object");
  if (duplicate) throw Error(ErrorCode::Parse, "judge reply repeats a dimension");

  std::vector<std::string> missing;
  std::vector<std::string> extra;
  for (const auto& dim : inst.rubric) {
    if (!obj.contains(dim)) missing.push_back(dim);
  }
  for (const auto& [key, _] : obj.items()) {
    if (std::find(inst.rubric.begin(), inst.rubric.end(), key) == inst.rubric.end()) extra.push_back(key);
  }
  if (!missing.empty() || !extra.empty()) {
    throw Error(ErrorCode::RubricMismatch,
                "missing [" + text::join(missing, ", ") + "], unexpected [" + text::join(extra, ", ") + "]");
  }

  JudgeResult r;
  r.instance_id = inst.instance_id;
  r.task = inst.task;
  double total = 0.0;
  for (const auto& dim : inst.rubric) {
    const json& v = obj.at(dim);
    if (!v.is_number()) throw Error(ErrorCode::Parse, "score for " + dim + " is not a number");
    const double s = v.get<double>();
    if (!(s >= kScoreMin && s <= kScoreMax)) {
      throw Error(ErrorCode::ScoreOutOfRange, dim + " = " + v.dump() + " lies outside [0, 5]");
    }
    r.dimension_scores[dim] = s;
    total += s;
  }
  r.mean_score = inst.rubric.empty() ? 0.0 : total / static_cast<double>(inst.rubric.size());
  return r;
}

std::vector<CandidateOutput> read_candidate_outputs(std::istream& in) {
  std::vector<CandidateOutput> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_blank(line)) continue;
    const json j = json::parse(line, nullptr, false);
    if (j.is_discarded() || !j.is_object() || !j.contains("instance_id") || !j.contains("output") ||
        !j.at("instance_id").is_string() || !j.at("output").is_string()) {
      throw Error(ErrorCode::Parse, "outputs line " + std::to_string(lineno) + " is not {instance_id, output}");
    }
    out.push_back({j.at("instance_id").get<std::string>(), j.at("output").get<std::string>(),
                   j.value("model", std::string())});
  }
  return out;
}

JudgeRun judge_outputs(std::span<const BenchInstance> instances, std::span<const CandidateOutput> outputs,
                       Backend& judge, std::uint64_t seed, int attempt_budget, int parallel) {
  std::map<std::string, const BenchInstance*> by_id;
  for (const auto& inst : instances) by_id.emplace(inst.instance_id, &inst);
  for (const auto& o : outputs) {
    if (!by_id.contains(o.instance_id)) throw Error(ErrorCode::OrphanResult, "no bench instance " + o.instance_id);
  }

  std::vector<std::optional<JudgeResult>> results(outputs.size());
  std::vector<std::string> errors(outputs.size());
  parallel_for(outputs.size(), resolve_workers(parallel), [&](std::size_t i) {
    const auto& o = outputs[i];
    const BenchInstance& inst = *by_id.at(o.instance_id);
    GenerationRequest req = render_judge_prompt(inst, o.output);
    for (int a = 0; a < std::max(1, attempt_budget); ++a) {
      req.seed = derive_seed(seed, {"judge", o.instance_id, o.model, std::to_string(a)});
      try {
        JudgeResult r = parse_judge_scores(judge.generate(req), inst);
        r.model = o.model;
        results[i] = std::move(r);
        return;
      } catch (const Error& e) {
        if (e.code() == ErrorCode::Transport || e.code() == ErrorCode::Config) throw;
        errors[i] = e.what();
      }
    }
  });

  JudgeRun run;
  for (std::size_t i = 0; i < outputs.size(); ++i) {
    if (results[i]) {
      run.results.push_back(std::move(*results[i]));
    } else {
      run.failures.push_back({outputs[i].instance_id, errors[i]});
    }
  }
  return run;
}

// ---------------------------------------------------------------------------

std::vector<HumanScore> read_human_csv(std::istream& in) {
  auto split = [](const std::string& line) {
    std::vector<std::string> cells;
    std::stringstream ss(line);
    std::string cell;
    while (std::getline(ss, cell, ',')) cells.push_back(text::trim(cell));
    return cells;
  };
  std::string line;
  if (!std::getline(in, line)) throw Error(ErrorCode::Parse, "human score file is empty");
  const auto header = split(line);
  auto column = [&](std::string_view name) -> std::optional<std::size_t> {
    const auto it = std::find(header.begin(), header.end(), name);
    if (it == header.end()) return std::nullopt;
    return static_cast<std::size_t>(it - header.begin());
  };
  const auto c_id = column("instance_id");
  const auto c_task = column("task");
  const auto c_score = column("score");
  const auto c_model = column("model");
  if (!c_id || !c_task || !c_score) throw Error(ErrorCode::Parse, "human CSV needs instance_id,task,score columns");

  std::vector<HumanScore> out;
  std::size_t lineno = 1;
  while (std::getline(in, line)) {
    ++lineno;
    if (text::is_blank(line)) continue;
    const auto cells = split(line);
    const std::string where = "human CSV line " + std::to_string(lineno);
    if (cells.size() < header.size() - (c_model ? 1 : 0)) throw Error(ErrorCode::Parse, where + " is short");
    HumanScore h;
    h.instance_id = cells[*c_id];
    const auto task = parse_task(cells[*c_task]);
    if (!task) throw Error(ErrorCode::Parse, where + ": unknown task " + cells[*c_task]);
    h.task = *task;
    std::size_t used = 0;
    try {
      h.score = std::stod(cells[*c_score], &used);
    } catch (const std::exception&) {
      used = 0;
    }
    if (used == 0 || used != cells[*c_score].size()) throw Error(ErrorCode::Parse, where + ": bad score");
    if (c_model && *c_model < cells.size()) h.model = cells[*c_model];
    out.push_back(std::move(h));
  }
  return out;
}

void to_json(json& j, const AggregateTable& t) {
  json models = json::object();
  for (const auto& [model, rows] : t.by_model) {
    json arr = json::array();
    for (const auto& r : rows) {
      arr.push_back(json{{"task", std::string(to_string(r.task))},
                         {"n", r.n},
                         {"mean", r.mean},
                         {"n_human", r.n_human},
                         {"pearson_r", r.pearson_r ? json(*r.pearson_r) : json(nullptr)}});
    }
    models[model] = arr;
  }
  j = json{{"models", models},
           {"overall_pairs", t.overall_pairs},
           {"overall_r", t.overall_r ? json(*t.overall_r) : json(nullptr)}};
}

namespace {

std::optional<double> try_pearson(const std::vector<double>& a, const std::vector<double>& b) {
  try {
    return pearson(a, b);
  } catch (const Error&) {
    return std::nullopt;
  }
}

}  // namespace

AggregateTable aggregate(std::span<const JudgeResult> results, std::span<const BenchInstance> instances,
                         std::span<const HumanScore> human) {
  std::map<std::string, Task> task_of;
  for (const auto& inst : instances) task_of.emplace(inst.instance_id, inst.task);

  struct Acc {
    std::size_t n = 0;
    double total = 0.0;
    std::vector<double> auto_scores;
    std::vector<double> human_scores;
  };
  std::map<std::string, std::map<Task, Acc>> acc;
  std::vector<double> all_auto;
  std::vector<double> all_human;
  for (const auto& r : results) {
    const auto it = task_of.find(r.instance_id);
    if (it == task_of.end()) throw Error(ErrorCode::OrphanResult, "result for unknown instance " + r.instance_id);
    Acc& a = acc[r.model][it->second];
    ++a.n;
    a.total += r.mean_score;
    for (const auto& h : human) {
      if (h.instance_id != r.instance_id || (!h.model.empty() && h.model != r.model)) continue;
      a.auto_scores.push_back(r.mean_score);
      a.human_scores.push_back(h.score);
      all_auto.push_back(r.mean_score);
      all_human.push_back(h.score);
    }
  }

  AggregateTable table;
  for (auto& [model, tasks] : acc) {
    auto& rows = table.by_model[model];
    for (auto& [task, a] : tasks) {
      TaskRow row;
      row.task = task;
      row.n = a.n;
      row.mean = a.total / static_cast<double>(a.n);
      row.n_human = a.human_scores.size();
      row.pearson_r = try_pearson(a.auto_scores, a.human_scores);
      rows.push_back(row);
    }
  }
  table.overall_pairs = all_auto.size();
  table.overall_r = try_pearson(all_auto, all_human);
  return table;
}

}  // namespace campsim::bench
