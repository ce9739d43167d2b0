#pragma once

#include <string>
#include <vector>

#include "convsim/gateway/transcript.hpp"
#include "convsim/schema/parameters.hpp"

namespace convsim::metrics {

struct Bounds {
    double lo = 0.0;
    double hi = 1.0;
};

/// Lexicons and calibration bounds for the formality and technical scorers.
/// The bounds are measurement instruments with documented defaults, not
/// ground truth; they ship as a data file and can be overridden.
struct ScoringConfig {
    std::vector<std::string> domain_terms;   // canonicalized phrases, e.g. "cash flow"
    std::vector<std::string> jargon_terms;   // single tokens, e.g. "roi"

    Bounds word_length{3.5, 7.0};
    Bounds type_token{0.3, 0.7};
    Bounds sentence_length{5.0, 30.0};
    Bounds pronoun_rate{0.0, 0.2};
    Bounds term_density{0.0, 0.08};
    Bounds grade{4.0, 16.0};
    Bounds jargon_per_sentence{0.0, 2.0};

    static const ScoringConfig& builtin();
    static ScoringConfig from_file(const std::string& path);
};

/// Equal-weight mean of three clamped sub-scores: vocabulary sophistication
/// (mean word length + per-sentence type-token ratio), sentence structure
/// (mean sentence length), and pronoun usage (1 - first/second-person rate).
double formality_score(const std::string& text, const ScoringConfig& config);

/// Equal-weight mean of three clamped sub-scores: domain-term density per
/// token, readability-grade proxy, and jargon hits per sentence.
double technical_score(const std::string& text, const ScoringConfig& config);

struct StabilityScore {
    double formality_error = 0.0;  // eF in [0,1]
    double technical_error = 0.0;  // eT in [0,1]
    double stability = 1.0;        // 1 - 0.5 (eF + eT)
};

/// Errors are |measured - target| where measured is the mean per-user-turn
/// score and targets come from the parameters.
StabilityScore stability_score(const gateway::Transcript& transcript,
                               const schema::ConversationParameters& params,
                               const ScoringConfig& config);

StabilityScore stability_from_errors(double formality_error, double technical_error);

}  // namespace convsim::metrics
