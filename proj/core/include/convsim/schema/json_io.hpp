#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "convsim/schema/parameters.hpp"

namespace convsim::schema {

/// Parses the UTF-8 JSON parameter file format (camelCase keys, optionally
/// wrapped in a top-level "conversationParameters" object). Unknown fields
/// are rejected with their path. Non-fatal normalizations (e.g. a fractional
/// priorKnowledgeLevel mapped onto the 1-5 scale) are appended to *warnings.
ConversationParameters parse_parameters(std::string_view text,
                                        std::vector<std::string>* warnings = nullptr);

/// Canonical serialization: fixed key order, 2-space indent, deterministic
/// bytes for equal parameter values. Refuses parameters that do not validate.
std::string serialize_parameters(const ConversationParameters& params);

}  // namespace convsim::schema
