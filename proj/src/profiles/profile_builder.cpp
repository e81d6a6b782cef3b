#include "campsim/profiles/profile_builder.hpp"

#include <algorithm>
#include <cctype>

#include "campsim/analytics/similarity.hpp"
#include "campsim/analytics/tfidf.hpp"
#include "campsim/core/error.hpp"
#include "campsim/core/seeding.hpp"
#include "campsim/core/text.hpp"

namespace campsim::profiles {

namespace {

constexpr std::string_view kProfileTemplate =
    R"(Write one fictional undergraduate for a counseling-training dataset.
Fixed attributes, which the profile must not contradict:
- gender: {gender}
- major: {major}
- year of study: {year}
- stress category: {category_name}
Category notes:
{category_desc}
Fields to fill:
- name and demographics (gender, age, grade, major)
- personality: temperament and how this student usually copes when under pressure
- background: family, friendships and circumstances that could feed into risk
- core_conflict: a single sentence naming the main inner struggle, tied to the stress category above
Make the student specific rather than typical, give the struggle concrete detail, and write every field in Chinese.
Reply with the JSON object only.)";

constexpr std::string_view kProfileSchema =
    R"(Output exactly one JSON object with this schema:
{"name": string, "demographics": {"gender": string, "age": integer, "grade": string, "major": string}, "personality": string, "background": string, "core_conflict": string})";

json parse_json_object(std::string_view raw) {
  const std::string body = text::strip_code_fences(raw);
  auto parsed = json::parse(body, nullptr, false);
  if (parsed.is_discarded()) {
    const auto b = body.find('{');
    const auto e = body.rfind('}');
    if (b != std::string::npos && e != std::string::npos && e > b) {
      parsed = json::parse(body.substr(b, e - b + 1), nullptr, false);
    }
  }
  if (parsed.is_discarded()) throw Error(ErrorCode::Parse, "profile reply is not JSON");
  if (!parsed.is_object()) throw Error(ErrorCode::Parse, "profile reply is not a JSON object");
  return parsed;
}

// Generators sometimes return nested objects for narrative fields; flatten
// them into one line of text rather than rejecting the reply.
std::string flatten_text(const json& v) {
  if (v.is_string()) return v.get<std::string>();
  if (v.is_number() || v.is_boolean()) return v.dump();
  std::vector<std::string> parts;
  if (v.is_object()) {
    for (const auto& [k, item] : v.items()) parts.push_back(k + "：" + flatten_text(item));
  } else if (v.is_array()) {
    for (const auto& item : v) parts.push_back(flatten_text(item));
  }
  return text::join(parts, "；");
}

std::string required_text(const json& obj, const char* field) {
  if (!obj.contains(field) || obj.at(field).is_null()) {
    throw Error(ErrorCode::Parse, std::string("missing ") + field);
  }
  return flatten_text(obj.at(field));
}

int parse_age(const json& v) {
  if (v.is_number_integer()) return v.get<int>();
  if (v.is_number_float()) return static_cast<int>(v.get<double>());
  if (v.is_string()) {
    const auto s = v.get<std::string>();
    int age = 0;
    bool digits = false;
    for (char c : s) {
      if (std::isdigit(static_cast<unsigned char>(c))) {
        age = age * 10 + (c - '0');
        digits = true;
        if (age > 1000) break;
      } else if (digits) {
        break;
      }
    }
    if (digits) return age;
  }
  throw Error(ErrorCode::Parse, "demographics.age is not a number");
}

RejectReason reason_for(FindingCode c) {
  switch (c) {
    case FindingCode::EmptyDimension: return RejectReason::EmptyDimension;
    case FindingCode::AgeImplausible: return RejectReason::AgeImplausible;
    default: return RejectReason::AttributeOutOfSpace;
  }
}

}  // namespace

void to_json(json& j, const AttributeTuple& t) {
  j = json{{"gender", t.gender}, {"grade", t.grade}, {"major", t.major}, {"stress_domain", t.stress_domain}};
}

void from_json(const json& j, AttributeTuple& t) {
  j.at("gender").get_to(t.gender);
  j.at("grade").get_to(t.grade);
  j.at("major").get_to(t.major);
  j.at("stress_domain").get_to(t.stress_domain);
}

std::vector<AttributeTuple> sample_attributes(const AttributeSpace& space, int count, std::uint64_t seed) {
  std::vector<AttributeTuple> out;
  if (count <= 0) return out;
  if (space.genders.empty() || space.grades.empty() || space.majors.empty() || space.stress_domains.empty()) {
    throw Error(ErrorCode::Config, "attribute space has an empty list");
  }

  Rng rng(derive_seed(seed, {"attributes", "domain-order"}));
  auto domains = space.stress_domains;
  seeded_shuffle(domains, rng);

  struct PerDomain {
    std::vector<std::string> genders, grades, majors;
    std::size_t drawn = 0;
  };
  std::vector<PerDomain> per(domains.size());
  for (std::size_t d = 0; d < domains.size(); ++d) {
    Rng drng(derive_seed(seed, {"attributes", domain_key(domains[d])}));
    per[d].genders = space.genders;
    per[d].grades = space.grades;
    per[d].majors = space.majors;
    seeded_shuffle(per[d].genders, drng);
    seeded_shuffle(per[d].grades, drng);
    seeded_shuffle(per[d].majors, drng);
  }

  out.reserve(static_cast<std::size_t>(count));
  for (int i = 0; i < count; ++i) {
    const std::size_t d = static_cast<std::size_t>(i) % domains.size();
    auto& p = per[d];
    const std::size_t k = p.drawn++;
    out.push_back(AttributeTuple{p.genders[k % p.genders.size()], p.grades[k % p.grades.size()],
                                 p.majors[k % p.majors.size()], domains[d]});
  }
  return out;
}

GenerationRequest render_profile_prompt(const AttributeTuple& attrs, const AttributeSpace& space) {
  const auto desc = space.domain_descriptions.find(attrs.stress_domain);
  std::map<std::string, std::string> values{
      {"gender", attrs.gender},
      {"major", attrs.major},
      {"year", attrs.grade},
      {"category_name", std::string(domain_label(attrs.stress_domain))},
  };
  if (desc != space.domain_descriptions.end()) values["category_desc"] = desc->second;

  GenerationRequest req;
  req.kind = RequestKind::Profile;
  req.system_prompt = std::string(kProfileSchema);
  req.user_prompt = text::render_template(kProfileTemplate, values);
  req.max_length = 2048;
  req.hints = json{{"attributes", attrs}, {"age_min", space.age_min}, {"age_max", space.age_max}};
  return req;
}

StudentProfile parse_profile(std::string_view raw, const AttributeTuple& attrs, const ProfileMeta& meta) {
  const json obj = parse_json_object(raw);

  StudentProfile p;
  p.student_id = meta.student_id;
  p.name = required_text(obj, "name");
  if (!obj.contains("demographics") || !obj.at("demographics").is_object()) {
    throw Error(ErrorCode::Parse, "missing demographics");
  }
  const json& demo = obj.at("demographics");
  p.demographics.gender =
      demo.contains("gender") && demo.at("gender").is_string() ? demo.at("gender").get<std::string>() : attrs.gender;
  if (!demo.contains("age")) throw Error(ErrorCode::Parse, "missing demographics.age");
  p.demographics.age = parse_age(demo.at("age"));
  p.demographics.grade = attrs.grade;
  p.demographics.major = attrs.major;
  p.personality = required_text(obj, "personality");
  p.background = required_text(obj, "background");
  p.core_conflict = required_text(obj, "core_conflict");
  p.stress_domain = attrs.stress_domain;
  p.provenance = Provenance{meta.seed, meta.backend_id, meta.prompt_digest};
  return p;
}

std::string_view to_string(RejectReason r) noexcept {
  switch (r) {
    case RejectReason::Repetition: return "Repetition";
    case RejectReason::EmptyDimension: return "EmptyDimension";
    case RejectReason::AttributeOutOfSpace: return "AttributeOutOfSpace";
    case RejectReason::AgeImplausible: return "AgeImplausible";
    case RejectReason::WeakCampusRelevance: return "WeakCampusRelevance";
  }
  return "Unknown";
}

FilterResult filter_profiles(const std::vector<StudentProfile>& profiles, const FilterOptions& options) {
  FilterResult result;
  std::vector<StudentProfile> candidates;
  for (const auto& p : profiles) {
    const auto report = validate_profile(p, options.space);
    if (!report.ok()) {
      const auto& f = report.findings.front();
      result.rejected.push_back(Rejection{p, reason_for(f.code), f.subject});
      continue;
    }
    if (!options.required_keywords.empty()) {
      const std::string body = profile_text(p);
      const bool relevant = std::any_of(options.required_keywords.begin(), options.required_keywords.end(),
                                        [&](const std::string& k) { return body.find(k) != std::string::npos; });
      if (!relevant) {
        result.rejected.push_back(Rejection{p, RejectReason::WeakCampusRelevance, {}});
        continue;
      }
    }
    candidates.push_back(p);
  }

  std::vector<std::string> docs;
  docs.reserve(candidates.size());
  for (const auto& p : candidates) docs.push_back(profile_text(p));
  std::vector<bool> drop(candidates.size(), false);
  for (const auto& r : analytics::redundancy_filter(docs, options.threshold)) {
    drop[r.index] = true;
    result.rejected.push_back(Rejection{candidates[r.index], RejectReason::Repetition,
                                        candidates[r.kept_index].student_id});
  }
  for (std::size_t i = 0; i < candidates.size(); ++i) {
    if (drop[i]) continue;
    result.kept.push_back(std::move(candidates[i]));
  }
  return result;
}

ProfileBuild build_profile(const AttributeTuple& attrs, const AttributeSpace& space, Backend& backend,
                           const std::string& student_id, std::uint64_t seed, int attempt_budget, int first_attempt) {
  ProfileBuild build;
  std::string last_error = "no attempts";
  for (int a = first_attempt; a < first_attempt + attempt_budget; ++a) {
    GenerationRequest req = render_profile_prompt(attrs, space);
    req.seed = derive_seed(seed, {"profile", student_id, std::to_string(a)});
    const std::string digest = req.prompt_digest();
    build.prompt_digests.push_back(digest);
    ++build.attempts;
    try {
      const std::string raw = backend.generate(req);
      StudentProfile p = parse_profile(raw, attrs, ProfileMeta{student_id, *req.seed, backend.id(), digest});
      const auto report = validate_profile(p, space);
      if (!report.ok()) {
        last_error = std::string(to_string(report.findings.front().code)) + " " + report.findings.front().subject;
        continue;
      }
      build.profile = std::move(p);
      return build;
    } catch (const Error& e) {
      last_error = e.what();
    }
  }
  throw Error(ErrorCode::GenerationExhausted,
              "profile for " + student_id + " after " + std::to_string(build.attempts) + " attempts: " + last_error);
}

}  // namespace campsim::profiles
