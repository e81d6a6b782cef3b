#pragma once

#include <map>
#include <string>
#include <vector>

#include "campsim/core/types.hpp"

namespace campsim {

/// Legal values for sampled profile attributes.
struct AttributeSpace {
  std::vector<std::string> genders;
  std::vector<std::string> grades;
  std::vector<std::string> majors;
  std::vector<StressDomain> stress_domains;
  std::map<StressDomain, std::string> domain_descriptions;
  int age_min = 17;
  int age_max = 30;

  /// Non-empty lists and exactly five stress domains.
  bool well_formed() const;

  bool has_gender(const std::string& g) const;
  bool has_grade(const std::string& g) const;
  bool has_major(const std::string& m) const;
  bool has_domain(StressDomain d) const;
};

/// Chinese-university attribute space: two genders, seven grades (undergraduate
/// and master's years), six major families, the five stress domains.
AttributeSpace default_attribute_space();

void to_json(json& j, const AttributeSpace& s);
/// Missing keys fall back to the defaults.
void from_json(const json& j, AttributeSpace& s);

}  // namespace campsim
