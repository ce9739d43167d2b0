#pragma once

#include <set>
#include <string>
#include <vector>

#include "convsim/gateway/transcript.hpp"

namespace convsim::metrics {

/// Entity extraction backend selection. Only the rule-based extractor ships;
/// naming another backend without the fallback enabled is a provider error.
struct ExtractionConfig {
    std::string backend = "rules";
    bool fallback_enabled = true;
    std::vector<std::string> lexicon_phrases;  // canonicalized noun phrases

    static const ExtractionConfig& builtin();
    static ExtractionConfig from_file(const std::string& path);
};

/// Per-turn sets of canonicalized entity strings (lowercased, naive-singular).
/// Rules: domain-lexicon noun phrases first, then capitalized spans over the
/// remaining tokens, with pronouns and sentence-initial stopwords excluded.
std::vector<std::set<std::string>> extract_entities(const gateway::Transcript& transcript,
                                                    const ExtractionConfig& config = ExtractionConfig::builtin());

struct RevisitResult {
    std::vector<std::pair<int, double>> per_turn;      // (turn index, revisit fraction)
    double aggregate = 0.0;                            // mean fraction over eligible turns
    double raw_mean_count = 0.0;                       // unnormalized: mean |intersection| over t=2..T
    std::vector<std::set<std::string>> entity_sets;
};

/// Fraction of each turn's entities already seen in earlier turns, averaged
/// over turns 2..T with non-empty entity sets. The unnormalized mean
/// intersection count is kept alongside for auditability.
RevisitResult revisit_rate(const std::vector<std::set<std::string>>& entity_sets);

}  // namespace convsim::metrics
