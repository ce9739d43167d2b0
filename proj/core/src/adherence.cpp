#include "convsim/metrics/adherence.hpp"

#include <cmath>

#include "convsim/errors.hpp"

namespace convsim::metrics {

namespace {

const gateway::JudgePathSpec* find_spec(const std::string& path) {
    for (const auto& spec : gateway::judge_path_specs()) {
        if (spec.path == path) return &spec;
    }
    return nullptr;
}

}  // namespace

NumericMap adherence_numeric(
    const std::vector<std::pair<NumericMap, NumericMap>>& conversations) {
    std::map<std::string, std::pair<double, std::size_t>> sums;  // path -> (sq sum, n)
    for (const auto& [set_values, inferred] : conversations) {
        for (const auto& [path, value] : inferred) {
            const auto it = set_values.find(path);
            if (it == set_values.end()) {
                throw InputError("inferred numeric path \"" + path +
                                 "\" has no set value; scales cannot be compared");
            }
            const double diff = it->second - value;
            auto& slot = sums[path];
            slot.first += diff * diff;
            ++slot.second;
        }
    }
    NumericMap out;
    for (const auto& [path, slot] : sums) {
        out[path] = slot.first / static_cast<double>(slot.second);
    }
    return out;
}

NumericMap adherence_numeric(const NumericMap& set_values, const NumericMap& inferred) {
    return adherence_numeric({{set_values, inferred}});
}

NumericMap adherence_categorical(
    const std::vector<std::pair<CategoricalMap, CategoricalMap>>& conversations) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> tallies;  // path -> (hits, n)
    for (const auto& [set_values, inferred] : conversations) {
        for (const auto& [path, label] : inferred) {
            const auto it = set_values.find(path);
            if (it == set_values.end()) {
                throw InputError("inferred categorical path \"" + path +
                                 "\" has no set value; scales cannot be compared");
            }
            auto& slot = tallies[path];
            if (it->second == label) ++slot.first;
            ++slot.second;
        }
    }
    NumericMap out;
    for (const auto& [path, slot] : tallies) {
        out[path] = static_cast<double>(slot.first) / static_cast<double>(slot.second);
    }
    return out;
}

NumericMap adherence_categorical(const CategoricalMap& set_values,
                                 const CategoricalMap& inferred) {
    return adherence_categorical({{set_values, inferred}});
}

AdherenceScore blend_judgments(const AdherenceScore& human, const AdherenceScore& llm,
                               std::pair<double, double> agreement) {
    if (agreement.first < 0.0 || agreement.second < 0.0) {
        throw ConfigError("agreement values must be non-negative");
    }

    const bool no_human = human.numeric_mse.empty() && human.categorical_accuracy.empty();
    AdherenceScore out;
    if (no_human) {
        out = llm;
        out.blend_weights = {0.0, 1.0};
        return out;
    }

    const double total = agreement.first + agreement.second;
    if (total == 0.0) {
        throw ConfigError("at least one judge must have non-zero agreement");
    }
    const double wh = agreement.first / total;
    const double wl = agreement.second / total;
    out.blend_weights = {wh, wl};

    auto blend_maps = [&](const NumericMap& h, const NumericMap& l) {
        NumericMap blended;
        for (const auto& [path, hv] : h) {
            const auto it = l.find(path);
            blended[path] = it == l.end() ? hv : wh * hv + wl * it->second;
        }
        for (const auto& [path, lv] : l) {
            if (!blended.count(path)) blended[path] = lv;
        }
        return blended;
    };
    out.numeric_mse = blend_maps(human.numeric_mse, llm.numeric_mse);
    out.categorical_accuracy = blend_maps(human.categorical_accuracy, llm.categorical_accuracy);
    out.excluded = llm.excluded;
    for (const auto& [path, count] : human.excluded) {
        out.excluded[path] += count;
    }
    return out;
}

NumericMap judged_numeric_values(const schema::ConversationParameters& params) {
    return {
        {"participants.knowledgeGapLevel", static_cast<double>(params.participants.knowledge_gap_level)},
        {"participants.user.focusLevel", static_cast<double>(params.participants.user.focus_level)},
        {"participants.user.priorKnowledgeLevel",
         static_cast<double>(params.participants.user.prior_knowledge_level)},
        {"conversationDynamics.formality", params.dynamics.formality},
        {"linguisticPatterns.technicalLanguageLevel", params.linguistic.technical_language_level},
    };
}

CategoricalMap judged_categorical_values(const schema::ConversationParameters& params) {
    return {
        {"participants.user.decisionMakingStyle",
         schema::to_string(params.participants.user.decision_making_style)},
        {"participants.user.feedbackReception",
         schema::to_string(params.participants.user.feedback_reception)},
        {"conversationDynamics.smoothnessFactor",
         schema::to_string(params.dynamics.smoothness_factor)},
    };
}

void add_observation(AdherenceObservations& obs, const schema::ConversationParameters& set_params,
                     const gateway::InferredParameters& inferred) {
    const NumericMap set_numeric = judged_numeric_values(set_params);
    const CategoricalMap set_categorical = judged_categorical_values(set_params);

    for (const auto& [path, value] : inferred.numeric) {
        (void)value;
        if (set_categorical.count(path)) {
            throw InputError("judge returned a number for categorical path \"" + path + "\"");
        }
    }
    for (const auto& [path, label] : inferred.categorical) {
        (void)label;
        if (set_numeric.count(path)) {
            throw InputError("judge returned a label for numeric path \"" + path + "\"");
        }
    }

    obs.numeric.emplace_back(set_numeric, inferred.numeric);
    obs.categorical.emplace_back(set_categorical, inferred.categorical);
    for (const auto& [path, raw] : inferred.invalid) {
        (void)raw;
        ++obs.excluded[path];
    }
}

AdherenceScore score_observations(const AdherenceObservations& obs) {
    AdherenceScore score;
    score.numeric_mse = adherence_numeric(obs.numeric);
    score.categorical_accuracy = adherence_categorical(obs.categorical);
    score.excluded = obs.excluded;
    return score;
}

double judgment_agreement(const gateway::InferredParameters& a,
                          const gateway::InferredParameters& b) {
    double total = 0.0;
    std::size_t shared = 0;
    for (const auto& [path, av] : a.numeric) {
        const auto it = b.numeric.find(path);
        if (it == b.numeric.end()) continue;
        const auto* spec = find_spec(path);
        const double range = spec != nullptr && spec->hi > spec->lo ? spec->hi - spec->lo : 1.0;
        total += 1.0 - std::min(1.0, std::abs(av - it->second) / range);
        ++shared;
    }
    for (const auto& [path, av] : a.categorical) {
        const auto it = b.categorical.find(path);
        if (it == b.categorical.end()) continue;
        total += av == it->second ? 1.0 : 0.0;
        ++shared;
    }
    return shared == 0 ? 0.0 : total / static_cast<double>(shared);
}

}  // namespace convsim::metrics
