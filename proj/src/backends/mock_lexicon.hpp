#pragma once

// Phrase pools for the offline mock generator. Internal to the backends module.

#include <map>
#include <string>
#include <vector>

#include "campsim/core/types.hpp"

namespace campsim::mock_lexicon {

using Pool = std::vector<std::string>;

const Pool& surnames();
const Pool& given_names();
const Pool& mbti_types();
const Pool& traits();
const Pool& coping_styles();
const Pool& hometowns();
const Pool& family_structures();
const Pool& parent_situations();
const Pool& economic_situations();
const Pool& social_support();
const Pool& conflicts(StressDomain d);

/// Event templates with {course} {person} {place} {company} {relative} {symptom} {amount} slots.
const Pool& event_templates(StressDomain d);
const std::map<std::string, Pool>& event_slots();
const Pool& impacts();

const Pool& student_openers();
const Pool& student_feelings();
const Pool& student_followups();
const Pool& student_closers();

const Pool& counselor_empathy();
const Pool& counselor_reflections();
const Pool& counselor_questions();
const Pool& counselor_guidance();
const Pool& counselor_memory_links();
const Pool& counselor_wrapups();

const Pool& conflict_statuses();
const Pool& counseling_foci();
const Pool& unresolved_issues();

}  // namespace campsim::mock_lexicon
