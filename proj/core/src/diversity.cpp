#include "convsim/metrics/diversity.hpp"

#include <cmath>

#include "convsim/errors.hpp"

namespace convsim::metrics {

std::vector<std::size_t> TopicClusterSet::counts() const {
    std::vector<std::size_t> out;
    out.reserve(clusters.size());
    for (const auto& c : clusters) out.push_back(c.count);
    return out;
}

TopicClusterSet cluster_topics(const std::vector<std::string>& topics, double threshold,
                               embed::Embedder& embedder) {
    if (!(threshold > 0.0 && threshold < 1.0)) {
        throw InputError("cluster threshold must be in (0,1), got " + std::to_string(threshold));
    }
    TopicClusterSet result;
    result.threshold = threshold;
    if (topics.empty()) return result;

    const auto vectors = embed::embed_sentences(topics, embedder);
    std::vector<embed::EmbeddingVector> representatives;

    for (size_t i = 0; i < topics.size(); ++i) {
        bool placed = false;
        for (size_t c = 0; c < result.clusters.size(); ++c) {
            if (embed::cosine_similarity(vectors[i], representatives[c]) >= threshold) {
                result.clusters[c].members.push_back(topics[i]);
                ++result.clusters[c].count;
                placed = true;
                break;
            }
        }
        if (!placed) {
            TopicCluster cluster;
            cluster.representative = topics[i];
            cluster.members.push_back(topics[i]);
            cluster.count = 1;
            result.clusters.push_back(std::move(cluster));
            representatives.push_back(vectors[i]);
        }
    }
    return result;
}

double topic_entropy(const std::vector<std::size_t>& counts) {
    if (counts.empty()) {
        throw InputError("topic entropy needs at least one count");
    }
    double total = 0.0;
    for (std::size_t c : counts) {
        if (c == 0) {
            throw InputError("topic entropy counts must be positive");
        }
        total += static_cast<double>(c);
    }
    double h = 0.0;
    for (std::size_t c : counts) {
        const double p = static_cast<double>(c) / total;
        h -= p * std::log2(p);
    }
    return h;
}

double embedding_diversity(const std::vector<std::string>& texts, embed::Embedder& embedder) {
    if (texts.size() < 2) {
        throw InputError("embedding diversity needs at least two texts");
    }
    const auto vectors = embed::embed_sentences(texts, embedder);
    double total = 0.0;
    std::size_t pairs = 0;
    for (size_t i = 0; i < vectors.size(); ++i) {
        for (size_t j = i + 1; j < vectors.size(); ++j) {
            total += 1.0 - embed::cosine_similarity(vectors[i], vectors[j]);
            ++pairs;
        }
    }
    return total / static_cast<double>(pairs);
}

}  // namespace convsim::metrics
