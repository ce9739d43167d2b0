#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "convsim/gateway/gateway.hpp"
#include "convsim/schema/parameters.hpp"

namespace convsim::metrics {

using NumericMap = std::map<std::string, double>;
using CategoricalMap = std::map<std::string, std::string>;

/// Per-path adherence with the (human, llm) blend weights that produced it.
/// numeric_mse holds mean squared errors (>= 0); categorical_accuracy holds
/// fractions correct in [0,1].
struct AdherenceScore {
    NumericMap numeric_mse;
    NumericMap categorical_accuracy;
    std::pair<double, double> blend_weights{0.0, 1.0};
    std::map<std::string, std::size_t> excluded;  // invalid judge values dropped, by path
};

/// Per path, the mean over conversations of (set - inferred)^2. A path only
/// counts conversations where the judge answered it. Inferred paths must be
/// a subset of set paths.
NumericMap adherence_numeric(const std::vector<std::pair<NumericMap, NumericMap>>& conversations);
NumericMap adherence_numeric(const NumericMap& set_values, const NumericMap& inferred);

/// Per path, the fraction of conversations classified correctly.
NumericMap adherence_categorical(
    const std::vector<std::pair<CategoricalMap, CategoricalMap>>& conversations);
NumericMap adherence_categorical(const CategoricalMap& set_values,
                                 const CategoricalMap& inferred);

/// Weighted per-path mean with weights = normalized agreement values. An
/// empty human score passes the LLM score through with weights (0,1); both
/// agreements zero is a configuration error.
AdherenceScore blend_judgments(const AdherenceScore& human, const AdherenceScore& llm,
                               std::pair<double, double> agreement);

/// The ground-truth values for the judged paths, keyed like the judge answers.
NumericMap judged_numeric_values(const schema::ConversationParameters& params);
CategoricalMap judged_categorical_values(const schema::ConversationParameters& params);

/// Accumulates (set, inferred) pairs per conversation for scoring.
struct AdherenceObservations {
    std::vector<std::pair<NumericMap, NumericMap>> numeric;
    std::vector<std::pair<CategoricalMap, CategoricalMap>> categorical;
    std::map<std::string, std::size_t> excluded;
};

void add_observation(AdherenceObservations& obs, const schema::ConversationParameters& set_params,
                     const gateway::InferredParameters& inferred);
AdherenceScore score_observations(const AdherenceObservations& obs);

/// Agreement between two judgments: mean over shared paths of exact matches
/// (categorical) and 1 - |a-b|/range (numeric). No shared paths -> 0.
double judgment_agreement(const gateway::InferredParameters& a,
                          const gateway::InferredParameters& b);

}  // namespace convsim::metrics
