#pragma once

#include <string>
#include <vector>

#include "convsim/schema/parameters.hpp"

namespace convsim::schema {

// Stable rule identifiers, one per validation rule. Tests and callers match
// on these, never on messages.
namespace rules {
inline constexpr const char* unit_interval = "unit_interval";
inline constexpr const char* likert_range = "likert_range";
inline constexpr const char* question_types_sum = "question_types_sum";
inline constexpr const char* turn_balance = "turn_balance";
inline constexpr const char* turns_min = "turns_min";
inline constexpr const char* topic_scope_nonempty = "topic_scope_nonempty";
inline constexpr const char* complexity_nonempty = "complexity_nonempty";
inline constexpr const char* complexity_monotone = "complexity_monotone";
inline constexpr const char* enum_member = "enum_member";
inline constexpr const char* emotion_label_nonempty = "emotion_label_nonempty";
inline constexpr const char* stakeholders_required = "stakeholders_required";
// warning-only: perspectives present but relevance to industry is not machine-checkable
inline constexpr const char* stakeholders_relevance = "stakeholders_relevance";
}  // namespace rules

struct Violation {
    std::string path;     // dotted path in file-format key names
    std::string rule;     // one of rules::*
    std::string message;

    bool operator==(const Violation&) const = default;
};

struct ValidationReport {
    bool ok = true;  // true iff violations is empty
    std::vector<Violation> violations;
    std::vector<Violation> warnings;

    bool operator==(const ValidationReport&) const = default;
};

/// Checks every rule; violations are data, not failures.
ValidationReport validate(const ConversationParameters& params);

/// Formats a report for error messages and CLI output.
std::string describe(const ValidationReport& report);

}  // namespace convsim::schema
