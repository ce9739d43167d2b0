#include "convsim/gateway/transcript.hpp"

#include <sstream>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::gateway {

namespace {

using ojson = nlohmann::ordered_json;

// Repair pass: drop markdown code fences, then cut out the outermost
// {...} block. Applied once; anything still unparseable is an error.
std::string repair(const std::string& raw) {
    std::string text = raw;
    std::string cleaned;
    std::istringstream lines(text);
    std::string line;
    while (std::getline(lines, line)) {
        if (starts_with(trim(line), "```")) continue;
        cleaned += line;
        cleaned += '\n';
    }
    const auto open = cleaned.find('{');
    const auto close = cleaned.rfind('}');
    if (open == std::string::npos || close == std::string::npos || close < open) {
        return cleaned;
    }
    return cleaned.substr(open, close - open + 1);
}

Transcript from_json(const ojson& doc, const std::string& raw) {
    if (!doc.is_object()) {
        throw ParseError("transcript document must be a JSON object", raw);
    }
    if (!doc.contains("metadata") || !doc.contains("conversation")) {
        throw ParseError("transcript document needs \"metadata\" and \"conversation\"", raw);
    }

    Transcript t;
    const ojson& meta = doc.at("metadata");
    if (!meta.is_object()) throw ParseError("\"metadata\" must be an object", raw);

    std::optional<Speaker> declared_initiator;
    if (meta.contains("participantRoles") && meta.at("participantRoles").is_object()) {
        const ojson& roles = meta.at("participantRoles");
        if (roles.contains("user") && roles.at("user").is_string()) {
            t.metadata.user_role = roles.at("user").get<std::string>();
        }
        if (roles.contains("assistant") && roles.at("assistant").is_string()) {
            t.metadata.assistant_role = roles.at("assistant").get<std::string>();
        }
        if (roles.contains("initiator") && roles.at("initiator").is_string()) {
            declared_initiator = speaker_from_string(roles.at("initiator").get<std::string>());
        }
    }
    if (meta.contains("conversationArc") && meta.at("conversationArc").is_string()) {
        t.metadata.conversation_arc = meta.at("conversationArc").get<std::string>();
    }
    if (!meta.contains("totalTurns") || !meta.at("totalTurns").is_number()) {
        throw ParseError("metadata.totalTurns missing or not a number", raw);
    }
    t.metadata.total_turns = meta.at("totalTurns").get<int>();

    const ojson& conv = doc.at("conversation");
    if (!conv.is_array() || conv.empty()) {
        throw ParseError("\"conversation\" must be a non-empty array", raw);
    }
    for (size_t i = 0; i < conv.size(); ++i) {
        const ojson& entry = conv[i];
        const std::string where = "conversation[" + std::to_string(i) + "]";
        if (!entry.is_object()) throw ParseError(where + " must be an object", raw);
        TranscriptTurn turn;
        try {
            turn.turn = entry.at("turn").get<int>();
            turn.speaker = speaker_from_string(entry.at("speaker").get<std::string>());
            turn.content = entry.at("content").get<std::string>();
        } catch (const std::exception& e) {
            throw ParseError(where + ": " + e.what(), raw);
        }
        if (turn.content.empty()) {
            throw ParseError(where + " has empty content", raw);
        }
        if (entry.contains("emotionalState") && entry.at("emotionalState").is_string()) {
            turn.emotional_state = entry.at("emotionalState").get<std::string>();
        }
        if (entry.contains("complexityLevel") && entry.at("complexityLevel").is_number()) {
            turn.complexity_level = entry.at("complexityLevel").get<double>();
        }
        t.turns.push_back(std::move(turn));
    }

    for (size_t i = 0; i < t.turns.size(); ++i) {
        if (t.turns[i].turn != static_cast<int>(i) + 1) {
            throw ParseError("non-contiguous turn indices: expected " + std::to_string(i + 1) +
                                 ", got " + std::to_string(t.turns[i].turn),
                             raw);
        }
    }

    t.metadata.initiator = declared_initiator.value_or(t.turns.front().speaker);
    if (t.turns.front().speaker != t.metadata.initiator) {
        throw ParseError("turn 1 speaker does not match the declared initiator", raw);
    }
    for (size_t i = 1; i < t.turns.size(); ++i) {
        if (t.turns[i].speaker == t.turns[i - 1].speaker) {
            throw ParseError("speakers do not alternate at turn " + std::to_string(i + 1), raw);
        }
    }
    if (t.metadata.total_turns != static_cast<int>(t.turns.size())) {
        throw ParseError("metadata.totalTurns = " + std::to_string(t.metadata.total_turns) +
                             " but conversation has " + std::to_string(t.turns.size()) + " turns",
                         raw);
    }

    if (doc.contains("analysis")) {
        t.analysis_json = doc.at("analysis").dump();
    }
    if (doc.contains("provenance") && doc.at("provenance").is_object()) {
        const ojson& prov = doc.at("provenance");
        t.provenance.prompt_hash = prov.value("promptHash", "");
        t.provenance.provider_id = prov.value("providerId", "");
        t.provenance.model_id = prov.value("modelId", "");
        t.provenance.timestamp = prov.value("timestamp", "");
        t.provenance.seed = prov.value("seed", uint64_t{0});
    }
    if (doc.contains("qualityFlags") && doc.at("qualityFlags").is_array()) {
        for (const auto& flag : doc.at("qualityFlags")) {
            t.quality_flags.push_back(flag.get<std::string>());
        }
    }
    return t;
}

}  // namespace

std::string to_string(Speaker s) { return s == Speaker::user ? "user" : "assistant"; }

Speaker speaker_from_string(const std::string& s) {
    if (s == "user") return Speaker::user;
    if (s == "assistant") return Speaker::assistant;
    throw ParseError("unknown speaker \"" + s + "\"");
}

std::vector<const TranscriptTurn*> Transcript::user_turns() const {
    std::vector<const TranscriptTurn*> out;
    for (const auto& t : turns) {
        if (t.speaker == Speaker::user) out.push_back(&t);
    }
    return out;
}

Transcript parse_output(const std::string& raw) {
    ojson doc;
    try {
        doc = ojson::parse(raw);
        return from_json(doc, raw);
    } catch (const nlohmann::json::parse_error&) {
        // fall through to the single repair pass
    }
    const std::string repaired = repair(raw);
    try {
        doc = ojson::parse(repaired);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("transcript is not valid JSON after repair: ") + e.what(),
                         raw);
    }
    return from_json(doc, raw);
}

std::string serialize_transcript(const Transcript& t) {
    ojson doc;
    ojson roles;
    roles["initiator"] = to_string(t.metadata.initiator);
    roles["user"] = t.metadata.user_role;
    roles["assistant"] = t.metadata.assistant_role;
    doc["metadata"] = {{"participantRoles", std::move(roles)},
                       {"conversationArc", t.metadata.conversation_arc},
                       {"totalTurns", t.metadata.total_turns}};
    ojson conv = ojson::array();
    for (const auto& turn : t.turns) {
        ojson entry;
        entry["turn"] = turn.turn;
        entry["speaker"] = to_string(turn.speaker);
        entry["content"] = turn.content;
        if (turn.emotional_state) entry["emotionalState"] = *turn.emotional_state;
        if (turn.complexity_level) entry["complexityLevel"] = *turn.complexity_level;
        conv.push_back(std::move(entry));
    }
    doc["conversation"] = std::move(conv);
    if (t.analysis_json) {
        doc["analysis"] = ojson::parse(*t.analysis_json);
    }
    if (!t.provenance.empty()) {
        doc["provenance"] = {{"promptHash", t.provenance.prompt_hash},
                             {"providerId", t.provenance.provider_id},
                             {"modelId", t.provenance.model_id},
                             {"timestamp", t.provenance.timestamp},
                             {"seed", t.provenance.seed}};
    }
    if (!t.quality_flags.empty()) {
        doc["qualityFlags"] = t.quality_flags;
    }
    return doc.dump(2) + "\n";
}

}  // namespace convsim::gateway
