#pragma once

#include <cstdint>
#include <string>
#include <string_view>
#include <vector>

#include "campsim/backends/backend.hpp"
#include "campsim/core/types.hpp"
#include "campsim/core/validate.hpp"
#include "campsim/profiles/attribute_space.hpp"

namespace campsim::profiles {

struct AttributeTuple {
  std::string gender;
  std::string grade;
  std::string major;
  StressDomain stress_domain = StressDomain::Academic;

  bool operator==(const AttributeTuple&) const = default;
};

void to_json(json& j, const AttributeTuple& t);
void from_json(const json& j, AttributeTuple& t);

/// Stratified over stress domain (counts differ by at most one, the domains
/// that receive the remainder are chosen by the seed). Within a domain, gender,
/// grade and major cycle through per-domain seeded shuffles.
std::vector<AttributeTuple> sample_attributes(const AttributeSpace& space, int count, std::uint64_t seed);

/// Profile-generation request with gender, major, grade and stress domain
/// substituted. Throws Error(Template) if any value (including the domain
/// description) is missing.
GenerationRequest render_profile_prompt(const AttributeTuple& attrs, const AttributeSpace& space);

struct ProfileMeta {
  std::string student_id;
  std::uint64_t seed = 0;
  std::string backend_id;
  std::string prompt_digest;
};

/// Parses the generator's JSON object. Grade and major are forced to the
/// sampled values; stress domain comes from the tuple. Throws Error(Parse) on
/// malformed JSON or a missing field.
StudentProfile parse_profile(std::string_view raw, const AttributeTuple& attrs, const ProfileMeta& meta = {});

enum class RejectReason { Repetition, EmptyDimension, AttributeOutOfSpace, AgeImplausible, WeakCampusRelevance };

std::string_view to_string(RejectReason r) noexcept;

struct Rejection {
  StudentProfile profile;
  RejectReason reason;
  std::string detail;  // for Repetition: the kept profile it collided with
};

struct FilterResult {
  std::vector<StudentProfile> kept;
  std::vector<Rejection> rejected;
};

struct FilterOptions {
  double threshold = 0.6;
  AttributeSpace space = default_attribute_space();
  /// When non-empty, a profile must mention at least one of these terms.
  std::vector<std::string> required_keywords;
};

/// Validator rejections first, then a greedy first-kept-wins pass over
/// pairwise TF-IDF cosine of the concatenated profile texts. The greedy pass is
/// repeated on the kept set until it rejects nothing, so the result is a fixed
/// point: filtering it again with the same options keeps everything.
FilterResult filter_profiles(const std::vector<StudentProfile>& profiles, const FilterOptions& options);

/// One attribute tuple through render -> generate -> parse -> validate with up
/// to `attempt_budget` tries. `first_attempt` offsets the attempt counter so a
/// caller can ask for a fresh draw after a repetition rejection.
struct ProfileBuild {
  StudentProfile profile;
  int attempts = 0;
  std::vector<std::string> prompt_digests;
};

ProfileBuild build_profile(const AttributeTuple& attrs, const AttributeSpace& space, Backend& backend,
                           const std::string& student_id, std::uint64_t seed, int attempt_budget,
                           int first_attempt = 0);

}  // namespace campsim::profiles
