#pragma once

#include <string>
#include <vector>

namespace convsim::schema {

enum class Purpose { advisory, educational, exploratory, evaluative };
enum class Arc { problem_solution, exploration_conclusion, question_answer, build_refine };
enum class Initiator { user, assistant };
enum class Framework { socratic, didactic, collaborative, experiential };
enum class DecisionMakingStyle { analytical, intuitive, consultative, risk_averse, impulsive };
enum class FeedbackReception { receptive, balanced, skeptical, resistant };
enum class DisagreementHandling { diplomatic, direct, avoidant, collaborative };

/// Conversation-flow grade: A = logical transitions, F = random topic jumping.
enum class SmoothnessGrade { A, B, C, D, E, F };

std::string to_string(Purpose v);
std::string to_string(Arc v);
std::string to_string(Initiator v);
std::string to_string(Framework v);
std::string to_string(DecisionMakingStyle v);
std::string to_string(FeedbackReception v);
std::string to_string(DisagreementHandling v);
std::string to_string(SmoothnessGrade v);

// from-string parsers throw SchemaError on unknown labels
Purpose purpose_from_string(const std::string& s);
Arc arc_from_string(const std::string& s);
Initiator initiator_from_string(const std::string& s);
Framework framework_from_string(const std::string& s);
DecisionMakingStyle decision_making_style_from_string(const std::string& s);
FeedbackReception feedback_reception_from_string(const std::string& s);
DisagreementHandling disagreement_handling_from_string(const std::string& s);
SmoothnessGrade smoothness_grade_from_string(const std::string& s);

/// Share of turns spoken by each side, e.g. 55:45. Components sum to 100.
struct TurnBalance {
    int user_percent = 50;
    int advisor_percent = 50;

    bool operator==(const TurnBalance&) const = default;
};

struct Fundamentals {
    Purpose purpose = Purpose::advisory;
    int turns = 1;
    TurnBalance turn_balance;
    Arc arc = Arc::problem_solution;
    Initiator initiator = Initiator::user;
    std::vector<std::string> topic_scope;

    bool operator==(const Fundamentals&) const = default;
};

struct AssistantSpec {
    std::string identity;
    double consistency_level = 1.0;

    bool operator==(const AssistantSpec&) const = default;
};

struct UserSpec {
    std::string identity;
    int focus_level = 3;             // 1 = wide-ranging, 5 = laser-focused
    int prior_knowledge_level = 3;   // 1 = novice, 5 = expert
    DecisionMakingStyle decision_making_style = DecisionMakingStyle::analytical;
    FeedbackReception feedback_reception = FeedbackReception::balanced;

    bool operator==(const UserSpec&) const = default;
};

struct Participants {
    int knowledge_gap_level = 3;  // 1 = expert, 5 = complete novice
    AssistantSpec assistant;
    UserSpec user;

    bool operator==(const Participants&) const = default;
};

struct LearningApproach {
    Framework framework = Framework::didactic;
    double practical_theoretical_balance = 0.5;
    std::vector<double> complexity_progression;  // non-decreasing, each in [0,1]
    std::string industry_context;

    bool operator==(const LearningApproach&) const = default;
};

struct EmotionalStage {
    std::string emotion;
    double intensity = 0.5;

    bool operator==(const EmotionalStage&) const = default;
};

struct ConversationDynamics {
    double formality = 0.5;
    std::vector<EmotionalStage> emotional_journey;
    double relationship_development = 0.5;
    DisagreementHandling disagreement_handling = DisagreementHandling::diplomatic;
    SmoothnessGrade smoothness_factor = SmoothnessGrade::A;

    bool operator==(const ConversationDynamics&) const = default;
};

/// Distribution over inquiry styles; values sum to 1.0.
struct QuestionTypes {
    double closed = 0.25;
    double open = 0.25;
    double rhetorical = 0.25;
    double clarifying = 0.25;

    double sum() const { return closed + open + rhetorical + clarifying; }
    bool operator==(const QuestionTypes&) const = default;
};

struct ResponseStyle {
    double conciseness = 0.5;
    double directness = 0.5;
    double formality = 0.5;

    bool operator==(const ResponseStyle&) const = default;
};

struct LinguisticPatterns {
    double technical_language_level = 0.5;
    QuestionTypes question_types;
    ResponseStyle response_style;

    bool operator==(const LinguisticPatterns&) const = default;
};

struct ContentAttributes {
    double factual_accuracy = 0.9;
    double example_specificity = 0.5;
    std::vector<std::string> stakeholder_perspectives;

    bool operator==(const ContentAttributes&) const = default;
};

/// The six-category parameter bundle driving one conversation generation.
struct ConversationParameters {
    Fundamentals fundamentals;
    Participants participants;
    LearningApproach learning_approach;
    ConversationDynamics dynamics;
    LinguisticPatterns linguistic;
    ContentAttributes content;

    bool operator==(const ConversationParameters&) const = default;
};

}  // namespace convsim::schema
