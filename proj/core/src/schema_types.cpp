#include "convsim/schema/parameters.hpp"

#include "convsim/errors.hpp"

namespace convsim::schema {

namespace {

[[noreturn]] void bad_label(const char* what, const std::string& s) {
    throw SchemaError(std::string("unknown ") + what + " value: \"" + s + "\"");
}

}  // namespace

std::string to_string(Purpose v) {
    switch (v) {
        case Purpose::advisory: return "advisory";
        case Purpose::educational: return "educational";
        case Purpose::exploratory: return "exploratory";
        case Purpose::evaluative: return "evaluative";
    }
    return "?";
}

std::string to_string(Arc v) {
    switch (v) {
        case Arc::problem_solution: return "problem-solution";
        case Arc::exploration_conclusion: return "exploration-conclusion";
        case Arc::question_answer: return "question-answer";
        case Arc::build_refine: return "build-refine";
    }
    return "?";
}

std::string to_string(Initiator v) {
    return v == Initiator::user ? "user" : "assistant";
}

std::string to_string(Framework v) {
    switch (v) {
        case Framework::socratic: return "socratic";
        case Framework::didactic: return "didactic";
        case Framework::collaborative: return "collaborative";
        case Framework::experiential: return "experiential";
    }
    return "?";
}

std::string to_string(DecisionMakingStyle v) {
    switch (v) {
        case DecisionMakingStyle::analytical: return "analytical";
        case DecisionMakingStyle::intuitive: return "intuitive";
        case DecisionMakingStyle::consultative: return "consultative";
        case DecisionMakingStyle::risk_averse: return "risk-averse";
        case DecisionMakingStyle::impulsive: return "impulsive";
    }
    return "?";
}

std::string to_string(FeedbackReception v) {
    switch (v) {
        case FeedbackReception::receptive: return "receptive";
        case FeedbackReception::balanced: return "balanced";
        case FeedbackReception::skeptical: return "skeptical";
        case FeedbackReception::resistant: return "resistant";
    }
    return "?";
}

std::string to_string(DisagreementHandling v) {
    switch (v) {
        case DisagreementHandling::diplomatic: return "diplomatic";
        case DisagreementHandling::direct: return "direct";
        case DisagreementHandling::avoidant: return "avoidant";
        case DisagreementHandling::collaborative: return "collaborative";
    }
    return "?";
}

std::string to_string(SmoothnessGrade v) {
    switch (v) {
        case SmoothnessGrade::A: return "A";
        case SmoothnessGrade::B: return "B";
        case SmoothnessGrade::C: return "C";
        case SmoothnessGrade::D: return "D";
        case SmoothnessGrade::E: return "E";
        case SmoothnessGrade::F: return "F";
    }
    return "?";
}

Purpose purpose_from_string(const std::string& s) {
    if (s == "advisory") return Purpose::advisory;
    if (s == "educational") return Purpose::educational;
    if (s == "exploratory") return Purpose::exploratory;
    if (s == "evaluative") return Purpose::evaluative;
    bad_label("purpose", s);
}

Arc arc_from_string(const std::string& s) {
    if (s == "problem-solution") return Arc::problem_solution;
    if (s == "exploration-conclusion") return Arc::exploration_conclusion;
    if (s == "question-answer") return Arc::question_answer;
    if (s == "build-refine") return Arc::build_refine;
    bad_label("arc", s);
}

Initiator initiator_from_string(const std::string& s) {
    if (s == "user") return Initiator::user;
    if (s == "assistant") return Initiator::assistant;
    bad_label("initiator", s);
}

Framework framework_from_string(const std::string& s) {
    if (s == "socratic") return Framework::socratic;
    if (s == "didactic") return Framework::didactic;
    if (s == "collaborative") return Framework::collaborative;
    if (s == "experiential") return Framework::experiential;
    bad_label("framework", s);
}

DecisionMakingStyle decision_making_style_from_string(const std::string& s) {
    if (s == "analytical") return DecisionMakingStyle::analytical;
    if (s == "intuitive") return DecisionMakingStyle::intuitive;
    if (s == "consultative") return DecisionMakingStyle::consultative;
    if (s == "risk-averse") return DecisionMakingStyle::risk_averse;
    if (s == "impulsive") return DecisionMakingStyle::impulsive;
    bad_label("decisionMakingStyle", s);
}

FeedbackReception feedback_reception_from_string(const std::string& s) {
    if (s == "receptive") return FeedbackReception::receptive;
    if (s == "balanced") return FeedbackReception::balanced;
    if (s == "skeptical") return FeedbackReception::skeptical;
    if (s == "resistant") return FeedbackReception::resistant;
    bad_label("feedbackReception", s);
}

DisagreementHandling disagreement_handling_from_string(const std::string& s) {
    if (s == "diplomatic") return DisagreementHandling::diplomatic;
    if (s == "direct") return DisagreementHandling::direct;
    if (s == "avoidant") return DisagreementHandling::avoidant;
    if (s == "collaborative") return DisagreementHandling::collaborative;
    bad_label("disagreementHandling", s);
}

SmoothnessGrade smoothness_grade_from_string(const std::string& s) {
    if (s.size() == 1) {
        switch (s[0]) {
            case 'A': return SmoothnessGrade::A;
            case 'B': return SmoothnessGrade::B;
            case 'C': return SmoothnessGrade::C;
            case 'D': return SmoothnessGrade::D;
            case 'E': return SmoothnessGrade::E;
            case 'F': return SmoothnessGrade::F;
            default: break;
        }
    }
    bad_label("smoothnessFactor", s);
}

}  // namespace convsim::schema
