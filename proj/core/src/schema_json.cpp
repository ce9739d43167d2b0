#include "convsim/schema/json_io.hpp"

#include <cmath>
#include <set>
#include <sstream>

#include "convsim/errors.hpp"
#include "convsim/schema/validate.hpp"
#include "convsim/util/strings.hpp"
#include "schema_json_internal.hpp"

namespace convsim::schema {

namespace internal {

namespace {

[[noreturn]] void type_error(const std::string& path, const char* expected) {
    throw SchemaError("field " + path + " must be " + expected);
}

// Tracks which keys were consumed so leftovers can be rejected by path.
class ObjectReader {
public:
    ObjectReader(const ojson& node, std::string path) : node_(node), path_(std::move(path)) {
        if (!node_.is_object()) {
            type_error(path_, "an object");
        }
    }

    const ojson& require(const char* key) {
        seen_.insert(key);
        auto it = node_.find(key);
        if (it == node_.end()) {
            throw SchemaError("missing required field " + path_ + "." + key);
        }
        return *it;
    }

    bool has(const char* key) const { return node_.contains(key); }

    const ojson* optional(const char* key) {
        seen_.insert(key);
        auto it = node_.find(key);
        return it == node_.end() ? nullptr : &*it;
    }

    void reject_unknown() const {
        for (const auto& item : node_.items()) {
            if (!seen_.count(item.key())) {
                throw SchemaError("unknown field " + path_ + "." + item.key());
            }
        }
    }

    const std::string& path() const { return path_; }

private:
    const ojson& node_;
    std::string path_;
    std::set<std::string> seen_;
};

std::string read_string(const ojson& v, const std::string& path) {
    if (!v.is_string()) type_error(path, "a string");
    return v.get<std::string>();
}

double read_number(const ojson& v, const std::string& path) {
    if (!v.is_number()) type_error(path, "a number");
    return v.get<double>();
}

int read_int(const ojson& v, const std::string& path) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d)) return static_cast<int>(d);
    }
    type_error(path, "an integer");
}

std::vector<std::string> read_string_array(const ojson& v, const std::string& path) {
    if (!v.is_array()) type_error(path, "an array of strings");
    std::vector<std::string> out;
    for (size_t i = 0; i < v.size(); ++i) {
        out.push_back(read_string(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

TurnBalance read_turn_balance(const ojson& v, const std::string& path) {
    const std::string text = read_string(v, path);
    const auto parts = split(text, ':');
    if (parts.size() != 2) {
        throw SchemaError("field " + path + " must look like \"55:45\", got \"" + text + "\"");
    }
    TurnBalance tb;
    try {
        tb.user_percent = std::stoi(trim(parts[0]));
        tb.advisor_percent = std::stoi(trim(parts[1]));
    } catch (const std::exception&) {
        throw SchemaError("field " + path + " must contain two integers, got \"" + text + "\"");
    }
    return tb;
}

// Appendix erratum handling: a fractional level in [0,1] is mapped onto the
// 1-5 scale as round(1 + 4x), with a warning.
int read_prior_knowledge(const ojson& v, const std::string& path,
                         std::vector<std::string>* warnings) {
    if (v.is_number_integer()) return v.get<int>();
    if (v.is_number_float()) {
        const double d = v.get<double>();
        if (d == std::floor(d)) return static_cast<int>(d);
        if (d >= 0.0 && d <= 1.0) {
            const int mapped = static_cast<int>(std::lround(1.0 + 4.0 * d));
            if (warnings) {
                std::ostringstream msg;
                msg << path << ": fractional value " << d << " mapped to level " << mapped
                    << " on the 1-5 scale";
                warnings->push_back(msg.str());
            }
            return mapped;
        }
    }
    type_error(path, "an integer on the 1-5 scale");
}

std::vector<EmotionalStage> read_emotional_journey(const ojson& v, const std::string& path) {
    if (!v.is_array()) type_error(path, "an array");
    std::vector<EmotionalStage> out;
    for (size_t i = 0; i < v.size(); ++i) {
        const std::string entry_path = path + "[" + std::to_string(i) + "]";
        const ojson& entry = v[i];
        if (!entry.is_object() || entry.size() != 1) {
            throw SchemaError("field " + entry_path +
                              " must be a single {\"emotion\": intensity} object");
        }
        const auto item = entry.items().begin();
        out.push_back({item.key(), read_number(item.value(), entry_path + "." + item.key())});
    }
    return out;
}

std::vector<double> read_number_array(const ojson& v, const std::string& path) {
    if (!v.is_array()) type_error(path, "an array of numbers");
    std::vector<double> out;
    for (size_t i = 0; i < v.size(); ++i) {
        out.push_back(read_number(v[i], path + "[" + std::to_string(i) + "]"));
    }
    return out;
}

}  // namespace

ojson params_to_json(const ConversationParameters& p) {
    ojson body;

    ojson fundamentals;
    fundamentals["purpose"] = to_string(p.fundamentals.purpose);
    fundamentals["turns"] = p.fundamentals.turns;
    {
        std::ostringstream tb;
        tb << p.fundamentals.turn_balance.user_percent << ":"
           << p.fundamentals.turn_balance.advisor_percent;
        fundamentals["turnBalance"] = tb.str();
    }
    fundamentals["arc"] = to_string(p.fundamentals.arc);
    fundamentals["initiator"] = to_string(p.fundamentals.initiator);
    fundamentals["topicScope"] = p.fundamentals.topic_scope;
    body["fundamentals"] = std::move(fundamentals);

    ojson participants;
    participants["knowledgeGapLevel"] = p.participants.knowledge_gap_level;
    participants["assistant"] = {{"identity", p.participants.assistant.identity},
                                 {"consistencyLevel", p.participants.assistant.consistency_level}};
    participants["user"] = {
        {"identity", p.participants.user.identity},
        {"focusLevel", p.participants.user.focus_level},
        {"priorKnowledgeLevel", p.participants.user.prior_knowledge_level},
        {"decisionMakingStyle", to_string(p.participants.user.decision_making_style)},
        {"feedbackReception", to_string(p.participants.user.feedback_reception)}};
    body["participants"] = std::move(participants);

    ojson learning;
    learning["framework"] = to_string(p.learning_approach.framework);
    learning["practicalTheoreticalBalance"] = p.learning_approach.practical_theoretical_balance;
    learning["complexityProgression"] = p.learning_approach.complexity_progression;
    learning["industryContext"] = p.learning_approach.industry_context;
    body["learningApproach"] = std::move(learning);

    ojson dynamics;
    dynamics["formality"] = p.dynamics.formality;
    ojson journey = ojson::array();
    for (const auto& stage : p.dynamics.emotional_journey) {
        journey.push_back({{stage.emotion, stage.intensity}});
    }
    dynamics["emotionalJourney"] = std::move(journey);
    dynamics["relationshipDevelopment"] = p.dynamics.relationship_development;
    dynamics["disagreementHandling"] = to_string(p.dynamics.disagreement_handling);
    dynamics["smoothnessFactor"] = to_string(p.dynamics.smoothness_factor);
    body["conversationDynamics"] = std::move(dynamics);

    ojson linguistic;
    linguistic["technicalLanguageLevel"] = p.linguistic.technical_language_level;
    linguistic["questionTypes"] = {{"closed", p.linguistic.question_types.closed},
                                   {"open", p.linguistic.question_types.open},
                                   {"rhetorical", p.linguistic.question_types.rhetorical},
                                   {"clarifying", p.linguistic.question_types.clarifying}};
    linguistic["responseStyle"] = {{"conciseness", p.linguistic.response_style.conciseness},
                                   {"directness", p.linguistic.response_style.directness},
                                   {"formality", p.linguistic.response_style.formality}};
    body["linguisticPatterns"] = std::move(linguistic);

    ojson content;
    content["factualAccuracy"] = p.content.factual_accuracy;
    content["exampleSpecificity"] = p.content.example_specificity;
    content["stakeholderPerspectives"] = p.content.stakeholder_perspectives;
    body["contentAttributes"] = std::move(content);

    return body;
}

ConversationParameters params_from_json(const ojson& body, std::vector<std::string>* warnings) {
    if (!body.is_object()) {
        throw SchemaError("parameter document must be a JSON object");
    }

    static const char* kSections[] = {"fundamentals",          "participants",
                                      "learningApproach",      "conversationDynamics",
                                      "linguisticPatterns",    "contentAttributes"};
    std::vector<std::string> missing;
    for (const char* section : kSections) {
        if (!body.contains(section)) missing.emplace_back(section);
    }
    if (!missing.empty()) {
        throw SchemaError("missing section(s): " + join(missing, ", "));
    }

    ConversationParameters p;
    ObjectReader root(body, "conversationParameters");

    {
        ObjectReader r(root.require("fundamentals"), "fundamentals");
        p.fundamentals.purpose = purpose_from_string(read_string(r.require("purpose"), "fundamentals.purpose"));
        p.fundamentals.turns = read_int(r.require("turns"), "fundamentals.turns");
        p.fundamentals.turn_balance = read_turn_balance(r.require("turnBalance"), "fundamentals.turnBalance");
        p.fundamentals.arc = arc_from_string(read_string(r.require("arc"), "fundamentals.arc"));
        p.fundamentals.initiator =
            initiator_from_string(read_string(r.require("initiator"), "fundamentals.initiator"));
        p.fundamentals.topic_scope = read_string_array(r.require("topicScope"), "fundamentals.topicScope");
        r.reject_unknown();
    }

    {
        ObjectReader r(root.require("participants"), "participants");
        p.participants.knowledge_gap_level =
            read_int(r.require("knowledgeGapLevel"), "participants.knowledgeGapLevel");
        {
            ObjectReader a(r.require("assistant"), "participants.assistant");
            p.participants.assistant.identity =
                read_string(a.require("identity"), "participants.assistant.identity");
            p.participants.assistant.consistency_level =
                read_number(a.require("consistencyLevel"), "participants.assistant.consistencyLevel");
            a.reject_unknown();
        }
        {
            ObjectReader u(r.require("user"), "participants.user");
            p.participants.user.identity = read_string(u.require("identity"), "participants.user.identity");
            p.participants.user.focus_level = read_int(u.require("focusLevel"), "participants.user.focusLevel");
            p.participants.user.prior_knowledge_level = read_prior_knowledge(
                u.require("priorKnowledgeLevel"), "participants.user.priorKnowledgeLevel", warnings);
            p.participants.user.decision_making_style = decision_making_style_from_string(
                read_string(u.require("decisionMakingStyle"), "participants.user.decisionMakingStyle"));
            p.participants.user.feedback_reception = feedback_reception_from_string(
                read_string(u.require("feedbackReception"), "participants.user.feedbackReception"));
            u.reject_unknown();
        }
        r.reject_unknown();
    }

    {
        ObjectReader r(root.require("learningApproach"), "learningApproach");
        p.learning_approach.framework =
            framework_from_string(read_string(r.require("framework"), "learningApproach.framework"));
        p.learning_approach.practical_theoretical_balance = read_number(
            r.require("practicalTheoreticalBalance"), "learningApproach.practicalTheoreticalBalance");
        p.learning_approach.complexity_progression = read_number_array(
            r.require("complexityProgression"), "learningApproach.complexityProgression");
        p.learning_approach.industry_context =
            read_string(r.require("industryContext"), "learningApproach.industryContext");
        r.reject_unknown();
    }

    {
        ObjectReader r(root.require("conversationDynamics"), "conversationDynamics");
        p.dynamics.formality = read_number(r.require("formality"), "conversationDynamics.formality");
        p.dynamics.emotional_journey =
            read_emotional_journey(r.require("emotionalJourney"), "conversationDynamics.emotionalJourney");
        p.dynamics.relationship_development = read_number(
            r.require("relationshipDevelopment"), "conversationDynamics.relationshipDevelopment");
        p.dynamics.disagreement_handling = disagreement_handling_from_string(read_string(
            r.require("disagreementHandling"), "conversationDynamics.disagreementHandling"));
        // absent in older documents; flow defaults to the top grade
        if (const ojson* sf = r.optional("smoothnessFactor")) {
            p.dynamics.smoothness_factor = smoothness_grade_from_string(
                read_string(*sf, "conversationDynamics.smoothnessFactor"));
        } else {
            p.dynamics.smoothness_factor = SmoothnessGrade::A;
        }
        r.reject_unknown();
    }

    {
        ObjectReader r(root.require("linguisticPatterns"), "linguisticPatterns");
        p.linguistic.technical_language_level =
            read_number(r.require("technicalLanguageLevel"), "linguisticPatterns.technicalLanguageLevel");
        {
            ObjectReader q(r.require("questionTypes"), "linguisticPatterns.questionTypes");
            p.linguistic.question_types.closed =
                read_number(q.require("closed"), "linguisticPatterns.questionTypes.closed");
            p.linguistic.question_types.open =
                read_number(q.require("open"), "linguisticPatterns.questionTypes.open");
            p.linguistic.question_types.rhetorical =
                read_number(q.require("rhetorical"), "linguisticPatterns.questionTypes.rhetorical");
            p.linguistic.question_types.clarifying =
                read_number(q.require("clarifying"), "linguisticPatterns.questionTypes.clarifying");
            q.reject_unknown();
        }
        {
            ObjectReader s(r.require("responseStyle"), "linguisticPatterns.responseStyle");
            p.linguistic.response_style.conciseness =
                read_number(s.require("conciseness"), "linguisticPatterns.responseStyle.conciseness");
            p.linguistic.response_style.directness =
                read_number(s.require("directness"), "linguisticPatterns.responseStyle.directness");
            p.linguistic.response_style.formality =
                read_number(s.require("formality"), "linguisticPatterns.responseStyle.formality");
            s.reject_unknown();
        }
        r.reject_unknown();
    }

    {
        ObjectReader r(root.require("contentAttributes"), "contentAttributes");
        p.content.factual_accuracy =
            read_number(r.require("factualAccuracy"), "contentAttributes.factualAccuracy");
        p.content.example_specificity =
            read_number(r.require("exampleSpecificity"), "contentAttributes.exampleSpecificity");
        p.content.stakeholder_perspectives = read_string_array(
            r.require("stakeholderPerspectives"), "contentAttributes.stakeholderPerspectives");
        r.reject_unknown();
    }

    root.reject_unknown();
    return p;
}

}  // namespace internal

ConversationParameters parse_parameters(std::string_view text, std::vector<std::string>* warnings) {
    if (trim(text).empty()) {
        throw SchemaError(
            "parameter document is empty; missing section(s): fundamentals, participants, "
            "learningApproach, conversationDynamics, linguisticPatterns, contentAttributes");
    }
    internal::ojson doc;
    try {
        doc = internal::ojson::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string("malformed parameter document: ") + e.what(),
                         std::string(text));
    }
    if (!doc.is_object()) {
        throw SchemaError("parameter document must be a JSON object");
    }
    if (doc.contains("conversationParameters")) {
        for (const auto& item : doc.items()) {
            if (item.key() != "conversationParameters") {
                throw SchemaError("unknown field " + item.key());
            }
        }
        return internal::params_from_json(doc["conversationParameters"], warnings);
    }
    return internal::params_from_json(doc, warnings);
}

std::string serialize_parameters(const ConversationParameters& params) {
    const ValidationReport report = validate(params);
    if (!report.ok) {
        throw InputError("refusing to serialize invalid parameters: " + describe(report));
    }
    internal::ojson doc;
    doc["conversationParameters"] = internal::params_to_json(params);
    return doc.dump(2) + "\n";
}

}  // namespace convsim::schema
