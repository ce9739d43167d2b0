#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>

#include "convsim/errors.hpp"
#include "convsim/metrics/diversity.hpp"
#include "convsim/metrics/drift.hpp"
#include "convsim/util/rng.hpp"
#include "test_helpers.hpp"

using namespace convsim;
using namespace convsim::metrics;
using convsim::test::FixtureEmbedder;
using convsim::test::make_transcript;

namespace {

// independent oracle: direct Shannon evaluation, no shared code path
double entropy_oracle(const std::vector<std::size_t>& counts) {
    double total = 0.0;
    for (auto c : counts) total += double(c);
    double h = 0.0;
    for (auto c : counts) {
        const double p = double(c) / total;
        h -= p * std::log(p) / std::log(2.0);
    }
    return h;
}

// independent oracle: quadratic scan re-implementation of the greedy rule
std::size_t greedy_cluster_count_oracle(const std::vector<std::string>& topics, double threshold,
                                        embed::Embedder& embedder) {
    std::vector<embed::EmbeddingVector> reps;
    const auto vectors = embed::embed_sentences(topics, embedder);
    for (const auto& vec : vectors) {
        bool joined = false;
        for (const auto& rep : reps) {
            if (embed::cosine_similarity(vec, rep) >= threshold) {
                joined = true;
                break;
            }
        }
        if (!joined) reps.push_back(vec);
    }
    return reps.size();
}

}  // namespace

TEST_CASE("entropy of a uniform distribution over 4 topics is 2 bits") {
    CHECK(topic_entropy({1, 1, 1, 1}) == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("entropy of a single topic is 0") {
    CHECK(topic_entropy({5}) == doctest::Approx(0.0));
}

TEST_CASE("entropy of [2,1,1] is 1.5 bits") {
    CHECK(topic_entropy({2, 1, 1}) == doctest::Approx(1.5).epsilon(1e-12));
}

TEST_CASE("entropy rejects empty and non-positive counts") {
    CHECK_THROWS_AS(topic_entropy({}), InputError);
    CHECK_THROWS_AS(topic_entropy({3, 0, 2}), InputError);
}

TEST_CASE("entropy matches the direct oracle on 1000 random vectors") {
    Rng rng(17);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::size_t> counts(1 + rng.below(12));
        for (auto& c : counts) c = 1 + rng.below(500);
        const double h = topic_entropy(counts);
        CHECK(h == doctest::Approx(entropy_oracle(counts)).epsilon(1e-9));
        CHECK(h <= std::log2(double(counts.size())) + 1e-9);
    }
}

TEST_CASE("identical topic strings form one cluster") {
    embed::StubEmbedder stub(32);
    const auto set = cluster_topics({"vegan bakery", "vegan bakery"}, 0.9, stub);
    REQUIRE(set.clusters.size() == 1);
    CHECK(set.clusters[0].count == 2);
    CHECK(set.clusters[0].representative == "vegan bakery");
}

TEST_CASE("empty topic list clusters to nothing") {
    embed::StubEmbedder stub(32);
    CHECK(cluster_topics({}, 0.5, stub).clusters.empty());
}

TEST_CASE("cluster threshold outside (0,1) is rejected") {
    embed::StubEmbedder stub(8);
    CHECK_THROWS_AS(cluster_topics({"x"}, 0.0, stub), InputError);
    CHECK_THROWS_AS(cluster_topics({"x"}, 1.0, stub), InputError);
}

TEST_CASE("greedy clustering matches the quadratic-scan oracle on 50 synthetic topics") {
    embed::StubEmbedder stub(48);
    // small stems with repeats so several topics actually land together
    std::vector<std::string> topics;
    Rng rng(23);
    const std::vector<std::string> stems = {"vegan bakery", "mobile repair", "farm share",
                                            "tutoring studio", "coffee cart"};
    for (int i = 0; i < 50; ++i) {
        std::string topic = stems[rng.below(stems.size())];
        if (rng.chance(0.5)) topic += " plan";
        if (rng.chance(0.3)) topic += " " + std::to_string(rng.below(3));
        topics.push_back(topic);
    }
    for (double threshold : {0.5, 0.7, 0.9}) {
        const auto set = cluster_topics(topics, threshold, stub);
        CHECK(set.clusters.size() == greedy_cluster_count_oracle(topics, threshold, stub));
        // every topic lands in exactly one cluster
        std::size_t total = 0;
        for (const auto& c : set.clusters) total += c.count;
        CHECK(total == topics.size());
    }
}

TEST_CASE("embedding diversity of identical texts is 0") {
    embed::StubEmbedder stub(16);
    CHECK(embedding_diversity({"same", "same"}, stub) == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("embedding diversity of an orthogonal pair is 1") {
    FixtureEmbedder fixture(2);
    fixture.set("east", {1.0f, 0.0f});
    fixture.set("north", {0.0f, 1.0f});
    CHECK(embedding_diversity({"east", "north"}, fixture) == doctest::Approx(1.0));
}

TEST_CASE("embedding diversity needs two texts") {
    embed::StubEmbedder stub(8);
    CHECK_THROWS_AS(embedding_diversity({"solo"}, stub), InputError);
}

TEST_CASE("embedding diversity equals the pairwise-loop oracle for n = 10") {
    embed::StubEmbedder stub(32);
    std::vector<std::string> texts;
    for (int i = 0; i < 10; ++i) texts.push_back("text number " + std::to_string(i * i));

    const auto vectors = embed::embed_sentences(texts, stub);
    double oracle = 0.0;
    int pairs = 0;
    for (size_t i = 0; i < vectors.size(); ++i) {
        for (size_t j = 0; j < vectors.size(); ++j) {
            if (j <= i) continue;
            oracle += 1.0 - embed::cosine_similarity(vectors[i], vectors[j]);
            ++pairs;
        }
    }
    oracle /= pairs;
    CHECK(embedding_diversity(texts, stub) == doctest::Approx(oracle).epsilon(1e-12));
}

TEST_CASE("embedding diversity is permutation invariant") {
    embed::StubEmbedder stub(32);
    std::vector<std::string> texts = {"alpha beta", "gamma", "delta epsilon", "zeta", "eta theta"};
    const double forward = embedding_diversity(texts, stub);
    std::vector<std::string> shuffled = {"zeta", "alpha beta", "eta theta", "gamma",
                                         "delta epsilon"};
    CHECK(embedding_diversity(shuffled, stub) == doctest::Approx(forward).epsilon(1e-12));
}

TEST_CASE("drift is zero when the utterance equals the opening topic") {
    embed::StubEmbedder stub(32);
    const auto t = make_transcript({"food truck licensing", "let us dig into that"});
    const auto series = topic_drift_series(t, "food truck licensing", stub);
    REQUIRE(series.points.size() == 1);
    CHECK(series.points[0].similarity == doctest::Approx(1.0).epsilon(1e-9));
    CHECK(series.points[0].drift == doctest::Approx(0.0).epsilon(1e-9));
}

TEST_CASE("orthogonal utterance has similarity 0 and drift 1") {
    FixtureEmbedder fixture(2);
    fixture.set("the topic", {1.0f, 0.0f});
    fixture.set("something else", {0.0f, 1.0f});
    fixture.set("reply", {0.5f, 0.5f});
    const auto t = make_transcript({"something else", "reply"});
    const auto series = topic_drift_series(t, "the topic", fixture);
    REQUIRE(series.points.size() == 1);
    CHECK(series.points[0].similarity == doctest::Approx(0.0));
    CHECK(series.points[0].drift == doctest::Approx(1.0));
}

TEST_CASE("constructed-monotone fixture yields a nonincreasing similarity series") {
    FixtureEmbedder fixture(2);
    fixture.set("opening", {1.0f, 0.0f});
    const std::vector<std::pair<std::string, float>> plan = {
        {"u1", 0.0f}, {"u2", 0.35f}, {"u3", 0.7f}, {"u4", 1.05f}, {"u5", 1.4f}};
    for (const auto& [name, angle] : plan) {
        fixture.set(name, {std::cos(angle), std::sin(angle)});
    }
    const auto t = make_transcript({"u1", "a1", "u2", "a2", "u3", "a3", "u4", "a4", "u5", "a5"});
    const auto series = topic_drift_series(t, "opening", fixture);
    REQUIRE(series.points.size() == 5);
    for (size_t i = 1; i < series.points.size(); ++i) {
        CHECK(series.points[i].similarity < series.points[i - 1].similarity);
    }
    CHECK(series.points[0].similarity == doctest::Approx(1.0));
    for (const auto& p : series.points) {
        CHECK(p.drift == doctest::Approx(1.0 - p.similarity).epsilon(1e-12));
    }
}

TEST_CASE("drift needs user turns and a topic") {
    embed::StubEmbedder stub(8);
    auto t = make_transcript({"hello there"}, gateway::Speaker::assistant);
    CHECK_THROWS_AS(topic_drift_series(t, "topic", stub), InputError);
    const auto u = make_transcript({"hello there"});
    CHECK_THROWS_AS(topic_drift_series(u, "", stub), InputError);
}

TEST_CASE("topic coherence averages adjacent-turn similarity") {
    FixtureEmbedder fixture(2);
    fixture.set("t1", {1.0f, 0.0f});
    fixture.set("t2", {0.0f, 1.0f});
    fixture.set("t3", {0.0f, 1.0f});
    const auto t = make_transcript({"t1", "t2", "t3"});
    // cos(t1,t2) = 0, cos(t2,t3) = 1 -> mean 0.5
    CHECK(topic_coherence(t, fixture) == doctest::Approx(0.5));
}
