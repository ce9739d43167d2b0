#pragma once

#include <cstdint>
#include <string>
#include <string_view>

#include "convsim/schema/parameters.hpp"

namespace convsim::schema {

/// Draws a parameter bundle uniformly from the legal domains. `constraints_json`
/// is a JSON object keyed by dotted file-format paths, e.g.
///   {"fundamentals.turns": 20, "conversationDynamics.smoothnessFactor": "A"}
/// Constrained fields are fixed; everything else is random. Same
/// (seed, constraints) always yields the identical bundle, and the result
/// validates clean. Contradictory or unknown constraints raise ConstraintError.
ConversationParameters randomize_parameters(uint64_t seed,
                                            std::string_view constraints_json = "{}");

}  // namespace convsim::schema
