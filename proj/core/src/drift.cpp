#include "convsim/metrics/drift.hpp"

#include "convsim/errors.hpp"

namespace convsim::metrics {

DriftSeries topic_drift_series(const gateway::Transcript& transcript,
                               const std::string& opening_topic, embed::Embedder& embedder) {
    if (opening_topic.empty()) {
        throw InputError("opening topic must be non-empty");
    }
    const auto user_turns = transcript.user_turns();
    if (user_turns.empty()) {
        throw InputError("transcript has no user turns to measure drift on");
    }

    std::vector<std::string> texts;
    texts.reserve(user_turns.size() + 1);
    texts.push_back(opening_topic);
    for (const auto* turn : user_turns) {
        texts.push_back(turn->content);
    }
    const auto vectors = embed::embed_sentences(texts, embedder);

    DriftSeries series;
    for (size_t i = 0; i < user_turns.size(); ++i) {
        const double similarity = embed::cosine_similarity(vectors[i + 1], vectors[0]);
        series.points.push_back({user_turns[i]->turn, similarity, 1.0 - similarity});
    }
    return series;
}

double topic_coherence(const gateway::Transcript& transcript, embed::Embedder& embedder) {
    if (transcript.turns.empty()) {
        throw InputError("transcript has no turns");
    }
    if (transcript.turns.size() == 1) {
        return 1.0;
    }
    std::vector<std::string> texts;
    texts.reserve(transcript.turns.size());
    for (const auto& turn : transcript.turns) {
        texts.push_back(turn.content);
    }
    const auto vectors = embed::embed_sentences(texts, embedder);
    double total = 0.0;
    for (size_t i = 1; i < vectors.size(); ++i) {
        total += embed::cosine_similarity(vectors[i], vectors[i - 1]);
    }
    return total / static_cast<double>(vectors.size() - 1);
}

}  // namespace convsim::metrics
