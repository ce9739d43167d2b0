#include "convsim/schema/validate.hpp"

#include <cmath>
#include <sstream>

namespace convsim::schema {

namespace {

constexpr double kSumTolerance = 1e-6;

class RuleSink {
public:
    explicit RuleSink(ValidationReport& report) : report_(report) {}

    void violation(std::string path, const char* rule, std::string message) {
        report_.violations.push_back({std::move(path), rule, std::move(message)});
    }

    void warning(std::string path, const char* rule, std::string message) {
        report_.warnings.push_back({std::move(path), rule, std::move(message)});
    }

    void unit(const std::string& path, double value) {
        if (!(value >= 0.0 && value <= 1.0) || std::isnan(value)) {
            std::ostringstream msg;
            msg << path << " = " << value << " outside [0,1]";
            violation(path, rules::unit_interval, msg.str());
        }
    }

    void likert(const std::string& path, int value) {
        if (value < 1 || value > 5) {
            std::ostringstream msg;
            msg << path << " = " << value << " outside 1-5";
            violation(path, rules::likert_range, msg.str());
        }
    }

private:
    ValidationReport& report_;
};

template <typename Enum>
bool known(Enum v) {
    // to_string returns "?" only for values forged outside the enumeration
    return to_string(v) != "?";
}

}  // namespace

ValidationReport validate(const ConversationParameters& p) {
    ValidationReport report;
    RuleSink sink(report);

    // fundamentals
    if (!known(p.fundamentals.purpose)) {
        sink.violation("fundamentals.purpose", rules::enum_member, "purpose is not a known value");
    }
    if (!known(p.fundamentals.arc)) {
        sink.violation("fundamentals.arc", rules::enum_member, "arc is not a known value");
    }
    if (!known(p.fundamentals.initiator)) {
        sink.violation("fundamentals.initiator", rules::enum_member, "initiator is not a known value");
    }
    if (p.fundamentals.turns < 1) {
        sink.violation("fundamentals.turns", rules::turns_min,
                       "turns = " + std::to_string(p.fundamentals.turns) + ", must be >= 1");
    }
    {
        const auto& tb = p.fundamentals.turn_balance;
        if (tb.user_percent <= 0 || tb.advisor_percent <= 0 ||
            tb.user_percent + tb.advisor_percent != 100) {
            std::ostringstream msg;
            msg << "turn balance " << tb.user_percent << ":" << tb.advisor_percent
                << " must be positive and sum to 100";
            sink.violation("fundamentals.turnBalance", rules::turn_balance, msg.str());
        }
    }
    if (p.fundamentals.topic_scope.empty()) {
        sink.violation("fundamentals.topicScope", rules::topic_scope_nonempty,
                       "topic scope must list at least one topic");
    }

    // participants
    sink.likert("participants.knowledgeGapLevel", p.participants.knowledge_gap_level);
    sink.unit("participants.assistant.consistencyLevel", p.participants.assistant.consistency_level);
    sink.likert("participants.user.focusLevel", p.participants.user.focus_level);
    sink.likert("participants.user.priorKnowledgeLevel", p.participants.user.prior_knowledge_level);
    if (!known(p.participants.user.decision_making_style)) {
        sink.violation("participants.user.decisionMakingStyle", rules::enum_member,
                       "decision-making style is not a known value");
    }
    if (!known(p.participants.user.feedback_reception)) {
        sink.violation("participants.user.feedbackReception", rules::enum_member,
                       "feedback reception is not a known value");
    }

    // learning approach
    if (!known(p.learning_approach.framework)) {
        sink.violation("learningApproach.framework", rules::enum_member,
                       "framework is not a known value");
    }
    sink.unit("learningApproach.practicalTheoreticalBalance",
              p.learning_approach.practical_theoretical_balance);
    {
        const auto& cp = p.learning_approach.complexity_progression;
        if (cp.empty()) {
            sink.violation("learningApproach.complexityProgression", rules::complexity_nonempty,
                           "complexity progression must be non-empty");
        }
        for (size_t i = 0; i < cp.size(); ++i) {
            sink.unit("learningApproach.complexityProgression[" + std::to_string(i) + "]", cp[i]);
        }
        for (size_t i = 1; i < cp.size(); ++i) {
            if (cp[i] < cp[i - 1]) {
                std::ostringstream msg;
                msg << "complexity progression decreases at index " << i << " (" << cp[i - 1]
                    << " -> " << cp[i] << ")";
                sink.violation("learningApproach.complexityProgression", rules::complexity_monotone,
                               msg.str());
                break;
            }
        }
    }

    // conversation dynamics
    sink.unit("conversationDynamics.formality", p.dynamics.formality);
    for (size_t i = 0; i < p.dynamics.emotional_journey.size(); ++i) {
        const auto& stage = p.dynamics.emotional_journey[i];
        const std::string path = "conversationDynamics.emotionalJourney[" + std::to_string(i) + "]";
        if (stage.emotion.empty()) {
            sink.violation(path, rules::emotion_label_nonempty, "emotion label is empty");
        }
        sink.unit(path + ".intensity", stage.intensity);
    }
    sink.unit("conversationDynamics.relationshipDevelopment", p.dynamics.relationship_development);
    if (!known(p.dynamics.disagreement_handling)) {
        sink.violation("conversationDynamics.disagreementHandling", rules::enum_member,
                       "disagreement handling is not a known value");
    }
    if (!known(p.dynamics.smoothness_factor)) {
        sink.violation("conversationDynamics.smoothnessFactor", rules::enum_member,
                       "smoothness factor is not a known grade");
    }

    // linguistic patterns
    sink.unit("linguisticPatterns.technicalLanguageLevel", p.linguistic.technical_language_level);
    sink.unit("linguisticPatterns.questionTypes.closed", p.linguistic.question_types.closed);
    sink.unit("linguisticPatterns.questionTypes.open", p.linguistic.question_types.open);
    sink.unit("linguisticPatterns.questionTypes.rhetorical", p.linguistic.question_types.rhetorical);
    sink.unit("linguisticPatterns.questionTypes.clarifying", p.linguistic.question_types.clarifying);
    {
        const double sum = p.linguistic.question_types.sum();
        if (std::abs(sum - 1.0) > kSumTolerance) {
            std::ostringstream msg;
            msg << "question types sum " << sum << " != 1.0";
            sink.violation("linguisticPatterns.questionTypes", rules::question_types_sum, msg.str());
        }
    }
    sink.unit("linguisticPatterns.responseStyle.conciseness", p.linguistic.response_style.conciseness);
    sink.unit("linguisticPatterns.responseStyle.directness", p.linguistic.response_style.directness);
    sink.unit("linguisticPatterns.responseStyle.formality", p.linguistic.response_style.formality);

    // content attributes
    sink.unit("contentAttributes.factualAccuracy", p.content.factual_accuracy);
    sink.unit("contentAttributes.exampleSpecificity", p.content.example_specificity);
    if (p.content.stakeholder_perspectives.empty()) {
        if (p.fundamentals.purpose == Purpose::advisory) {
            sink.violation("contentAttributes.stakeholderPerspectives", rules::stakeholders_required,
                           "advisory conversations require at least one stakeholder perspective");
        } else {
            sink.warning("contentAttributes.stakeholderPerspectives", rules::stakeholders_relevance,
                         "no stakeholder perspectives given; relevance to industry context "
                         "cannot be assessed");
        }
    }

    report.ok = report.violations.empty();
    return report;
}

std::string describe(const ValidationReport& report) {
    std::ostringstream out;
    if (report.ok) {
        out << "ok";
    } else {
        out << report.violations.size() << " violation(s)";
        for (const auto& v : report.violations) {
            out << "\n  [" << v.rule << "] " << v.path << ": " << v.message;
        }
    }
    for (const auto& w : report.warnings) {
        out << "\n  warning [" << w.rule << "] " << w.path << ": " << w.message;
    }
    return out.str();
}

}  // namespace convsim::schema
