#include "convsim/prompt/prompt.hpp"

#include <filesystem>

#include "convsim/errors.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::prompt {

namespace {

constexpr const char* kVersion = "1";

constexpr const char* kScenario =
    "Create a {{turns}}-turn conversation between an AI adviser and an entrepreneur working in "
    "{{industry}}. The AI adviser is an informed business coach in a Small Business Development "
    "Corporation. The entrepreneur is {{demographic}} with a focus on {{idea}}, and "
    "{{experience}}. Generate the full conversation according to the parameter definitions and "
    "the specific parameter values given below.";

constexpr const char* kBaseline =
    "Create a {{turns}}-turn conversation between an AI adviser and an entrepreneur trying to "
    "work on {{industry}}. In the conversation, the AI adviser is an informed business coach in "
    "a Small Business Development Corporation, and the entrepreneur is {{demographic}} with a "
    "focus on {{idea}}.";

constexpr const char* kOutputContract = R"(Return exactly one JSON document and no other prose, following this structure:
{
  "metadata": {
    "participantRoles": {
      "initiator": "user|assistant",
      "user": "...",
      "assistant": "..."
    },
    "conversationArc": "...",
    "totalTurns": N
  },
  "conversation": [
    {
      "turn": 1,
      "speaker": "user|assistant",
      "content": "...",
      "emotionalState": "...",
      "complexityLevel": 0.0
    }
  ],
  "analysis": {
    "parameterAdherence": {},
    "learningObjectivesMet": [],
    "stakeholderPerspectivesCovered": []
  }
}
Number turns consecutively from 1 and alternate speakers on every turn.)";

constexpr const char* kDefinitions = R"(PARAMETER DEFINITIONS

The conversation generator uses a hierarchical parameter system organized into
six main categories: Fundamentals, Participants, Learning Approach,
Conversation Dynamics, Linguistic Patterns, and Content Attributes.

FUNDAMENTALS
Core structural parameters that define the conversation's basic framework.

Purpose: the primary intent of the conversation.
  - advisory: problem-solving and guidance-focused dialogue
  - educational: knowledge transfer and learning-oriented
  - exploratory: discovery and brainstorming-centered
  - evaluative: assessment and critique-focused

Turns: total number of conversation turns (exchanges between participants).

Turn Balance: distribution of conversation contributions between participants,
expressed as a ratio; "55:45" means the user speaks 55% of turns and the
advisor 45%.

Arc: overall narrative structure of the conversation.
  - problem-solution: identifies issues and develops solutions
  - exploration-conclusion: broad investigation leading to specific outcomes
  - question-answer: sequential inquiry and response pattern
  - build-refine: iterative development and improvement process

Initiator: which participant starts the conversation.
  - user: entrepreneur begins with a question or problem
  - assistant: advisor opens with an inquiry or observation

Topic Scope: array of subject areas that may be covered during the
conversation (e.g., ["food business", "marketing", "operations"]).

PARTICIPANTS
Parameters defining the characteristics and relationship between conversation
participants.

Knowledge Gap Level (KGL):
  1: Expert with deep understanding of business domain
  2: Advanced practitioner with solid foundational knowledge and some
     specialized expertise
  3: Moderate familiarity with business concepts
  4: Basic understanding with significant knowledge gaps requiring guidance
  5: Complete novice with minimal business knowledge about their ideas

Assistant Identity: role and background description (e.g., "experienced
business advisor with small business expertise").

Assistant Consistency Level: how consistently the assistant maintains their
role and expertise (0.0 = highly variable, 1.0 = perfectly consistent).

User Identity: role and background description (e.g., "early-stage food
business entrepreneur").

Focus Level (FL):
  1: Free-flowing, wide-ranging conversation covering many aspects
  2: Mostly broad discussion with occasional deep dives into specific areas
  3: Balanced focus with some exploration of tangential topics
  4: Primarily focused on core issues with minimal tangential exploration
  5: Laser-focused on specific details of implementation

Prior Knowledge Level: user's existing expertise in the domain (1 = complete
novice, 2 = limited knowledge, 3 = moderate level understanding, 4 = extensive
previous experience, 5 = expert level).

Decision-Making Style (DMS):
  - analytical: focuses on data, metrics, and logical analysis
  - intuitive: relies on gut feeling and personal judgment
  - consultative: seeks multiple perspectives before deciding
  - risk-averse: prioritizes minimizing potential downsides
  - impulsive: makes quick decisions without extensive deliberation

Feedback Reception (FR):
  - receptive: eagerly accepts and builds upon advice
  - balanced: considers advice thoughtfully with moderate acceptance
  - skeptical: questions most suggestions, needs convincing
  - resistant: pushes back against most advice, difficult to persuade

LEARNING APPROACH
Parameters controlling how knowledge is delivered and educational objectives
are achieved.

Framework: educational methodology employed.
  - socratic: question-driven discovery learning
  - didactic: direct instruction and explanation
  - collaborative: joint problem-solving approach
  - experiential: learning through practical examples and scenarios

Practical-Theoretical Balance: ratio of practical application to theoretical
concepts (0.0 = purely theoretical, 1.0 = purely practical).

Complexity Progression: array showing how conceptual difficulty increases
throughout the conversation (e.g., [0.3, 0.5, 0.7, 0.8] indicates gradual
complexity increase).

Industry Context: specific sector or domain focus (e.g., "food-business",
"technology", "healthcare").

CONVERSATION DYNAMICS
Parameters governing interpersonal interactions and emotional progression.

Formality: level of professional versus casual communication (0.0 = highly
casual, 1.0 = highly formal).

Emotional Journey: array of emotional states and their intensities throughout
the conversation; each entry contains an emotion and an intensity level
(0.0 = minimal, 1.0 = maximum).

Relationship Development: how much the participant relationship evolves during
the conversation (0.0 = static relationship, 1.0 = significant relationship
building).

Disagreement Handling: approach to managing conflicting viewpoints.
  - diplomatic: respectful acknowledgment and gentle correction
  - direct: clear, straightforward disagreement
  - avoidant: minimizing or redirecting conflict
  - collaborative: working together to resolve differences

Smoothness Factor: a grade A-F indicating conversation flow.
  A: Perfectly flowing conversation with logical transitions
  B: Mostly smooth flow with occasional abrupt shifts
  C: Noticeably uneven flow with several loosely connected transitions
  D: Frequently disjointed flow with weakly motivated topic changes
  E: Mostly disjointed conversation with little connective tissue
  F: Highly disjointed conversation with random topic jumping

LINGUISTIC PATTERNS
Parameters controlling language use and communication style.

Technical Language Level: degree of specialized terminology and jargon
(0.0 = plain language only, 1.0 = highly technical).

Question Types: distribution of inquiry styles; values should sum to 1.0.
  - closed: yes/no or specific factual questions
  - open: broad, exploratory questions requiring detailed responses
  - rhetorical: questions posed for emphasis rather than response
  - clarifying: questions seeking to understand or confirm information

Response Style:
  - conciseness: brevity versus elaboration (0.0 = very verbose,
    1.0 = extremely concise)
  - directness: straightforward versus indirect communication (0.0 = highly
    indirect, 1.0 = completely direct)
  - formality: professional versus casual language (0.0 = very casual,
    1.0 = highly formal)

CONTENT ATTRIBUTES
Parameters ensuring quality and comprehensiveness of conversation content.

Factual Accuracy: degree of correctness in information provided
(0.0 = potentially inaccurate, 1.0 = verified accuracy).

Example Specificity: level of detail in illustrations and case studies
(0.0 = general examples, 1.0 = highly specific, detailed examples).

Stakeholder Perspectives: array of viewpoints to be considered during the
conversation (e.g., ["customer", "supplier", "regulator", "competitor"]).

IMPLEMENTATION GUIDELINES
When generating conversations using these parameters:
  1. Begin by establishing participant identities and knowledge levels.
  2. Follow the specified conversation arc while maintaining turn balance.
  3. Progress complexity according to the defined progression array.
  4. Incorporate emotional journey elements at appropriate conversation points.
  5. Ensure content addresses multiple stakeholder perspectives.
  6. Maintain consistency with linguistic pattern specifications.
  7. Adapt technical language level to participant knowledge asymmetry.)";

std::string load_block(const std::filesystem::path& dir, const char* name,
                       const std::string& fallback) {
    const auto path = dir / name;
    if (std::filesystem::exists(path)) {
        return read_file(path.string());
    }
    return fallback;
}

}  // namespace

const PromptTemplates& PromptTemplates::builtin() {
    static const PromptTemplates instance{kVersion, kScenario, kBaseline, kOutputContract};
    return instance;
}

PromptTemplates PromptTemplates::from_dir(const std::string& dir) {
    const std::filesystem::path root(dir);
    if (!std::filesystem::is_directory(root)) {
        throw ConfigError("template directory does not exist: " + dir);
    }
    const auto& base = builtin();
    PromptTemplates t;
    t.version = trim(load_block(root, "VERSION", base.version));
    t.scenario = load_block(root, "scenario.tmpl", base.scenario);
    t.baseline = load_block(root, "baseline.tmpl", base.baseline);
    t.output_contract = load_block(root, "output_contract.tmpl", base.output_contract);
    if (t.version == base.version &&
        (t.scenario != base.scenario || t.baseline != base.baseline ||
         t.output_contract != base.output_contract)) {
        throw ConfigError("template directory " + dir +
                          " changes prompt text without bumping VERSION");
    }
    return t;
}

std::string render_parameter_definitions() { return kDefinitions; }

}  // namespace convsim::prompt
