#pragma once

#include <string>
#include <string_view>
#include <vector>

namespace convsim {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);
std::vector<std::string> split(std::string_view s, char sep);
std::string join(const std::vector<std::string>& parts, std::string_view sep);
bool starts_with(std::string_view s, std::string_view prefix);

/// Replaces every "{{name}}" placeholder; unknown placeholders are left as-is.
std::string expand_placeholders(std::string_view tmpl,
                                const std::vector<std::pair<std::string, std::string>>& values);

std::string read_file(const std::string& path);
void write_file_atomic(const std::string& path, std::string_view content);

}  // namespace convsim
