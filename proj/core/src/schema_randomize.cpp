#include "convsim/schema/randomize.hpp"

#include <algorithm>
#include <array>
#include <string>
#include <vector>

#include "convsim/errors.hpp"
#include "convsim/schema/validate.hpp"
#include "convsim/util/rng.hpp"
#include "convsim/util/strings.hpp"
#include "schema_json_internal.hpp"

namespace convsim::schema {

namespace {

using internal::ojson;

const std::vector<std::string>& topic_pool() {
    static const std::vector<std::string> pool = {
        "food business",   "marketing",        "operations",      "pricing strategy",
        "customer growth", "retail logistics", "licensing",       "funding options",
        "online presence", "hiring",           "product design",  "supplier selection",
        "cost control",    "branding",         "market research", "regulatory compliance"};
    return pool;
}

const std::vector<std::string>& industry_pool() {
    static const std::vector<std::string> pool = {
        "food-business", "technology", "healthcare",  "retail",      "education",
        "fitness",       "logistics",  "hospitality", "agriculture", "consulting",
        "manufacturing", "creative-services"};
    return pool;
}

const std::vector<std::string>& assistant_identity_pool() {
    static const std::vector<std::string> pool = {
        "experienced business advisor",
        "business coach at a small business development corporation",
        "startup mentor with operations expertise",
        "financial advisor specializing in small businesses"};
    return pool;
}

const std::vector<std::string>& user_identity_pool() {
    static const std::vector<std::string> pool = {
        "early-stage food business entrepreneur", "first-time technology founder",
        "aspiring retail shop owner",             "healthcare service entrepreneur",
        "independent consultant building a practice"};
    return pool;
}

const std::vector<std::string>& emotion_pool() {
    static const std::vector<std::string> pool = {"uncertainty", "curiosity",  "confusion",
                                                  "understanding", "confidence", "excitement",
                                                  "frustration", "relief"};
    return pool;
}

const std::vector<std::string>& stakeholder_pool() {
    static const std::vector<std::string> pool = {"customer", "supplier",  "regulator",
                                                  "competitor", "investor", "employee",
                                                  "community"};
    return pool;
}

template <typename T>
const T& pick(Rng& rng, const std::vector<T>& pool) {
    return pool[rng.below(pool.size())];
}

std::vector<std::string> pick_distinct(Rng& rng, const std::vector<std::string>& pool,
                                       size_t count) {
    std::vector<size_t> order(pool.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    // Fisher-Yates over index list, then take a prefix
    for (size_t i = order.size(); i > 1; --i) {
        std::swap(order[i - 1], order[rng.below(i)]);
    }
    std::vector<std::string> out;
    for (size_t i = 0; i < count && i < order.size(); ++i) {
        out.push_back(pool[order[i]]);
    }
    return out;
}

ConversationParameters draw_random(Rng& rng) {
    ConversationParameters p;

    p.fundamentals.purpose = static_cast<Purpose>(rng.below(4));
    p.fundamentals.turns = static_cast<int>(rng.range(2, 20));
    {
        const int user = static_cast<int>(rng.range(1, 99));
        p.fundamentals.turn_balance = {user, 100 - user};
    }
    p.fundamentals.arc = static_cast<Arc>(rng.below(4));
    p.fundamentals.initiator = static_cast<Initiator>(rng.below(2));
    p.fundamentals.topic_scope = pick_distinct(rng, topic_pool(), 1 + rng.below(3));

    p.participants.knowledge_gap_level = static_cast<int>(rng.range(1, 5));
    p.participants.assistant.identity = pick(rng, assistant_identity_pool());
    p.participants.assistant.consistency_level = rng.unit();
    p.participants.user.identity = pick(rng, user_identity_pool());
    p.participants.user.focus_level = static_cast<int>(rng.range(1, 5));
    p.participants.user.prior_knowledge_level = static_cast<int>(rng.range(1, 5));
    p.participants.user.decision_making_style = static_cast<DecisionMakingStyle>(rng.below(5));
    p.participants.user.feedback_reception = static_cast<FeedbackReception>(rng.below(4));

    p.learning_approach.framework = static_cast<Framework>(rng.below(4));
    p.learning_approach.practical_theoretical_balance = rng.unit();
    {
        const size_t len = 2 + rng.below(5);
        std::vector<double> prog(len);
        for (auto& v : prog) v = rng.unit();
        std::sort(prog.begin(), prog.end());
        p.learning_approach.complexity_progression = std::move(prog);
    }
    p.learning_approach.industry_context = pick(rng, industry_pool());

    p.dynamics.formality = rng.unit();
    {
        const auto emotions = pick_distinct(rng, emotion_pool(), 2 + rng.below(4));
        for (const auto& e : emotions) {
            p.dynamics.emotional_journey.push_back({e, rng.unit()});
        }
    }
    p.dynamics.relationship_development = rng.unit();
    p.dynamics.disagreement_handling = static_cast<DisagreementHandling>(rng.below(4));
    p.dynamics.smoothness_factor = static_cast<SmoothnessGrade>(rng.below(6));

    p.linguistic.technical_language_level = rng.unit();
    {
        // four positive shares normalized to an exact unit sum
        std::array<double, 4> shares;
        double total = 0.0;
        for (auto& s : shares) {
            s = rng.unit() + 1e-3;
            total += s;
        }
        p.linguistic.question_types.closed = shares[0] / total;
        p.linguistic.question_types.open = shares[1] / total;
        p.linguistic.question_types.rhetorical = shares[2] / total;
        p.linguistic.question_types.clarifying =
            1.0 - (p.linguistic.question_types.closed + p.linguistic.question_types.open +
                   p.linguistic.question_types.rhetorical);
    }
    p.linguistic.response_style.conciseness = rng.unit();
    p.linguistic.response_style.directness = rng.unit();
    p.linguistic.response_style.formality = rng.unit();

    p.content.factual_accuracy = rng.unit();
    p.content.example_specificity = rng.unit();
    p.content.stakeholder_perspectives = pick_distinct(rng, stakeholder_pool(), 1 + rng.below(4));

    return p;
}

void apply_constraint(ojson& body, const std::string& path, const ojson& value) {
    const auto segments = split(path, '.');
    ojson* node = &body;
    for (size_t i = 0; i + 1 < segments.size(); ++i) {
        if (!node->is_object() || !node->contains(segments[i])) {
            throw ConstraintError("unknown parameter path: " + path);
        }
        node = &(*node)[segments[i]];
    }
    if (!node->is_object() || !node->contains(segments.back())) {
        throw ConstraintError("unknown parameter path: " + path);
    }
    (*node)[segments.back()] = value;
}

}  // namespace

ConversationParameters randomize_parameters(uint64_t seed, std::string_view constraints_json) {
    ojson constraints;
    try {
        constraints = ojson::parse(constraints_json);
    } catch (const nlohmann::json::parse_error& e) {
        throw ConstraintError(std::string("malformed constraints document: ") + e.what());
    }
    if (!constraints.is_object()) {
        throw ConstraintError("constraints must be a JSON object keyed by dotted paths");
    }

    Rng rng(seed);
    ConversationParameters p = draw_random(rng);
    if (constraints.empty()) {
        return p;
    }

    ojson body = internal::params_to_json(p);
    std::vector<std::string> constrained_paths;
    for (const auto& item : constraints.items()) {
        apply_constraint(body, item.key(), item.value());
        constrained_paths.push_back(item.key());
    }

    ConversationParameters constrained;
    try {
        constrained = internal::params_from_json(body, nullptr);
    } catch (const Error& e) {
        throw ConstraintError(std::string("constraints produce an unreadable document: ") +
                              e.what());
    }

    const ValidationReport report = validate(constrained);
    if (!report.ok) {
        throw ConstraintError("contradictory constraints: " + describe(report));
    }
    return constrained;
}

}  // namespace convsim::schema
