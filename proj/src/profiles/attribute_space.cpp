#include "campsim/profiles/attribute_space.hpp"

#include <algorithm>

namespace campsim {

bool AttributeSpace::well_formed() const {
  if (genders.empty() || grades.empty() || majors.empty()) return false;
  if (stress_domains.size() != kStressDomainCount) return false;
  auto sorted = stress_domains;
  std::sort(sorted.begin(), sorted.end());
  return std::adjacent_find(sorted.begin(), sorted.end()) == sorted.end() && age_min <= age_max;
}

bool AttributeSpace::has_gender(const std::string& g) const {
  return std::find(genders.begin(), genders.end(), g) != genders.end();
}

bool AttributeSpace::has_grade(const std::string& g) const {
  return std::find(grades.begin(), grades.end(), g) != grades.end();
}

bool AttributeSpace::has_major(const std::string& m) const {
  return std::find(majors.begin(), majors.end(), m) != majors.end();
}

bool AttributeSpace::has_domain(StressDomain d) const {
  return std::find(stress_domains.begin(), stress_domains.end(), d) != stress_domains.end();
}

AttributeSpace default_attribute_space() {
  AttributeSpace s;
  s.genders = {"男", "女"};
  s.grades = {"大一", "大二", "大三", "大四", "研一", "研二", "研三"};
  s.majors = {"文科", "理科", "工科", "商科", "艺术", "医学"};
  s.stress_domains = all_stress_domains();
  s.domain_descriptions = {
      {StressDomain::Academic, "课程学习、考试、论文与学业规划带来的压力，例如挂科、期末考试、毕业论文、保研或考研竞争。"},
      {StressDomain::Interpersonal, "宿舍矛盾、同伴疏离、社团冲突、恋爱关系等人际交往中的困扰。"},
      {StressDomain::Career, "实习、求职、考研与考公的选择，以及对未来方向的不确定感。"},
      {StressDomain::FamilyFinance, "生活费不足、助学贷款、家庭变故、父母期望过高或家庭关系紧张。"},
      {StressDomain::Health, "失眠、饮食紊乱、焦虑发作、躯体不适等身心健康方面的困扰。"},
  };
  return s;
}

void to_json(json& j, const AttributeSpace& s) {
  json desc = json::object();
  for (const auto& [d, text] : s.domain_descriptions) desc[std::string(domain_key(d))] = text;
  json domains = json::array();
  for (auto d : s.stress_domains) domains.push_back(std::string(domain_key(d)));
  j = json{{"genders", s.genders},     {"grades", s.grades},   {"majors", s.majors},
           {"stress_domains", domains}, {"domain_descriptions", desc},
           {"age_min", s.age_min},     {"age_max", s.age_max}};
}

void from_json(const json& j, AttributeSpace& s) {
  s = default_attribute_space();
  if (j.contains("genders")) j.at("genders").get_to(s.genders);
  if (j.contains("grades")) j.at("grades").get_to(s.grades);
  if (j.contains("majors")) j.at("majors").get_to(s.majors);
  if (j.contains("stress_domains")) {
    s.stress_domains.clear();
    for (const auto& d : j.at("stress_domains")) s.stress_domains.push_back(d.get<StressDomain>());
  }
  if (j.contains("domain_descriptions")) {
    s.domain_descriptions.clear();
    for (const auto& [k, v] : j.at("domain_descriptions").items()) {
      s.domain_descriptions[json(k).get<StressDomain>()] = v.get<std::string>();
    }
  }
  if (j.contains("age_min")) j.at("age_min").get_to(s.age_min);
  if (j.contains("age_max")) j.at("age_max").get_to(s.age_max);
}

}  // namespace campsim
