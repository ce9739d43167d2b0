#pragma once

#include <string>
#include <vector>

#include "convsim/embed/embedder.hpp"
#include "convsim/gateway/transcript.hpp"

namespace convsim::metrics {

struct DriftPoint {
    int turn = 0;            // transcript turn index
    double similarity = 0.0; // cos(embed(utterance), embed(opening topic))
    double drift = 0.0;      // 1 - similarity

    bool operator==(const DriftPoint&) const = default;
};

/// One point per entrepreneur (user) turn.
struct DriftSeries {
    std::vector<DriftPoint> points;
};

/// Cosine similarity of each user utterance against the opening topic;
/// drift is the cosine distance. Both series are kept since similarity is
/// what the figures plot.
DriftSeries topic_drift_series(const gateway::Transcript& transcript,
                               const std::string& opening_topic, embed::Embedder& embedder);

/// Mean cosine similarity between consecutive turns, all speakers. An
/// interpretation of per-conversation topic coherence; single-turn
/// transcripts score 1.
double topic_coherence(const gateway::Transcript& transcript, embed::Embedder& embedder);

}  // namespace convsim::metrics
