#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "convsim/embed/embedder.hpp"

namespace convsim::metrics {

struct TopicCluster {
    std::string representative;        // first topic that founded the cluster
    std::vector<std::string> members;  // includes the representative
    std::size_t count = 0;
};

struct TopicClusterSet {
    std::vector<TopicCluster> clusters;
    double threshold = 0.0;

    std::vector<std::size_t> counts() const;
};

/// Greedy agglomeration in input order: a topic joins the first existing
/// cluster whose representative is at least `threshold` cosine-similar,
/// otherwise it founds a new cluster. Deterministic given input order.
TopicClusterSet cluster_topics(const std::vector<std::string>& topics, double threshold,
                               embed::Embedder& embedder);

/// Shannon entropy in bits over p_i = count_i / sum(counts).
double topic_entropy(const std::vector<std::size_t>& counts);

/// Mean pairwise cosine distance (1 - cos) over all unordered text pairs.
double embedding_diversity(const std::vector<std::string>& texts, embed::Embedder& embedder);

}  // namespace convsim::metrics
