#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace convsim::gateway {

enum class Speaker { user, assistant };

std::string to_string(Speaker s);
Speaker speaker_from_string(const std::string& s);

struct TranscriptTurn {
    int turn = 0;  // 1-based, contiguous
    Speaker speaker = Speaker::user;
    std::string content;
    std::optional<std::string> emotional_state;
    std::optional<double> complexity_level;

    bool operator==(const TranscriptTurn&) const = default;
};

struct TranscriptMetadata {
    std::string user_role;
    std::string assistant_role;
    Speaker initiator = Speaker::user;
    std::string conversation_arc;
    int total_turns = 0;

    bool operator==(const TranscriptMetadata&) const = default;
};

struct Provenance {
    std::string prompt_hash;
    std::string provider_id;
    std::string model_id;
    std::string timestamp;
    uint64_t seed = 0;

    bool empty() const {
        return prompt_hash.empty() && provider_id.empty() && model_id.empty() &&
               timestamp.empty() && seed == 0;
    }
    bool operator==(const Provenance&) const = default;
};

/// A parsed conversation. Turns are strictly 1..N with alternating speakers
/// starting from the declared initiator; metadata totalTurns matches.
struct Transcript {
    TranscriptMetadata metadata;
    std::vector<TranscriptTurn> turns;
    Provenance provenance;
    std::optional<std::string> analysis_json;      // provider "analysis" block, kept verbatim
    std::vector<std::string> quality_flags;        // e.g. turn-count mismatch vs the prompt

    std::vector<const TranscriptTurn*> user_turns() const;
    bool operator==(const Transcript&) const = default;
};

/// Strict parse of the transcript document format; on failure, one repair
/// pass (strip code fences / extract the outermost JSON object) and a second
/// strict parse. Invariant breaches are ParseErrors carrying the raw text.
Transcript parse_output(const std::string& raw);

/// Canonical single-document serialization; parse_output(serialize(t)) == t.
std::string serialize_transcript(const Transcript& transcript);

}  // namespace convsim::gateway
