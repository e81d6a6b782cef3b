#pragma once

#include <cstddef>
#include <map>
#include <string>
#include <string_view>
#include <vector>

namespace campsim::text {

/// Decode UTF-8 into Unicode scalar values. Invalid bytes decode to U+FFFD.
std::u32string decode_utf8(std::string_view s);
std::string encode_utf8(std::u32string_view s);

/// Number of Unicode scalar values in a UTF-8 string.
std::size_t scalar_count(std::string_view s);

bool is_space(char32_t c) noexcept;
std::string trim(std::string_view s);
bool is_blank(std::string_view s);

/// Remove a leading ```lang fence and trailing ``` fence if present.
std::string strip_code_fences(std::string_view s);

/// Substitute {name} placeholders. Throws Error(Template) when a placeholder
/// has no value or its value is empty.
std::string render_template(std::string_view tmpl, const std::map<std::string, std::string>& values);

std::string join(const std::vector<std::string>& parts, std::string_view sep);

}  // namespace campsim::text
