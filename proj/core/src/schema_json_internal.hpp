#pragma once

#include <string>
#include <vector>

#include <json.hpp>

#include "convsim/schema/parameters.hpp"

namespace convsim::schema::internal {

using ojson = nlohmann::ordered_json;

/// Emits the six-section body (no "conversationParameters" wrapper) in
/// canonical key order. Does not validate.
ojson params_to_json(const ConversationParameters& params);

/// Reads the six-section body. Rejects unknown fields, reports all missing
/// sections at once, and normalizes fractional priorKnowledgeLevel values.
ConversationParameters params_from_json(const ojson& body, std::vector<std::string>* warnings);

}  // namespace convsim::schema::internal
