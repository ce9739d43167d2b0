#include <benchmark/benchmark.h>

#include <vector>

#include "convsim/embed/embedder.hpp"
#include "convsim/gateway/transcript.hpp"
#include "convsim/metrics/diversity.hpp"
#include "convsim/metrics/entities.hpp"
#include "convsim/metrics/stability.hpp"
#include "convsim/persona/persona.hpp"
#include "convsim/prompt/prompt.hpp"
#include "convsim/schema/json_io.hpp"
#include "convsim/schema/randomize.hpp"
#include "convsim/schema/validate.hpp"

using namespace convsim;

namespace {

schema::ConversationParameters sample_params() {
    return schema::randomize_parameters(42);
}

gateway::Transcript sample_transcript(int turns) {
    gateway::Transcript t;
    t.metadata.initiator = gateway::Speaker::user;
    t.metadata.total_turns = turns;
    t.metadata.conversation_arc = "problem-solution";
    for (int i = 1; i <= turns; ++i) {
        gateway::TranscriptTurn turn;
        turn.turn = i;
        turn.speaker = i % 2 == 1 ? gateway::Speaker::user : gateway::Speaker::assistant;
        turn.content = "We reviewed the cash flow forecast with Acme Capital before the permit "
                       "meeting and compared roi projections across suppliers number " +
                       std::to_string(i);
        t.turns.push_back(std::move(turn));
    }
    return t;
}

void BM_Validate(benchmark::State& state) {
    const auto params = sample_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(schema::validate(params));
    }
}
BENCHMARK(BM_Validate);

void BM_RandomizeParameters(benchmark::State& state) {
    uint64_t seed = 0;
    for (auto _ : state) {
        benchmark::DoNotOptimize(schema::randomize_parameters(seed++));
    }
}
BENCHMARK(BM_RandomizeParameters);

void BM_SerializeParse(benchmark::State& state) {
    const auto params = sample_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(schema::parse_parameters(schema::serialize_parameters(params)));
    }
}
BENCHMARK(BM_SerializeParse);

void BM_CompileParameterized(benchmark::State& state) {
    const auto profile = persona::generate_profiles(7, 1, {"food-business"}).front();
    const auto params = sample_params();
    for (auto _ : state) {
        benchmark::DoNotOptimize(prompt::compile_parameterized(profile, params));
    }
}
BENCHMARK(BM_CompileParameterized);

void BM_StubEmbed(benchmark::State& state) {
    embed::StubEmbedder stub(64);
    std::vector<std::string> texts;
    for (int i = 0; i < 16; ++i) {
        texts.push_back("pricing strategy for a neighborhood bakery round " + std::to_string(i));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(stub.embed(texts));
    }
}
BENCHMARK(BM_StubEmbed);

void BM_TopicEntropy(benchmark::State& state) {
    std::vector<std::size_t> counts(static_cast<size_t>(state.range(0)));
    for (size_t i = 0; i < counts.size(); ++i) counts[i] = i + 1;
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::topic_entropy(counts));
    }
}
BENCHMARK(BM_TopicEntropy)->Arg(16)->Arg(256);

void BM_ClusterTopics(benchmark::State& state) {
    embed::StubEmbedder stub(64);
    std::vector<std::string> topics;
    for (int i = 0; i < state.range(0); ++i) {
        topics.push_back("topic cluster sample " + std::to_string(i % 40));
    }
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::cluster_topics(topics, 0.85, stub));
    }
}
BENCHMARK(BM_ClusterTopics)->Arg(64)->Arg(256);

void BM_FormalityScore(benchmark::State& state) {
    const auto transcript = sample_transcript(20);
    const auto& config = metrics::ScoringConfig::builtin();
    for (auto _ : state) {
        for (const auto* turn : transcript.user_turns()) {
            benchmark::DoNotOptimize(metrics::formality_score(turn->content, config));
        }
    }
}
BENCHMARK(BM_FormalityScore);

void BM_ExtractEntities(benchmark::State& state) {
    const auto transcript = sample_transcript(static_cast<int>(state.range(0)));
    for (auto _ : state) {
        benchmark::DoNotOptimize(metrics::extract_entities(transcript));
    }
}
BENCHMARK(BM_ExtractEntities)->Arg(5)->Arg(20);

void BM_ParseTranscript(benchmark::State& state) {
    const std::string raw = gateway::serialize_transcript(sample_transcript(20));
    for (auto _ : state) {
        benchmark::DoNotOptimize(gateway::parse_output(raw));
    }
}
BENCHMARK(BM_ParseTranscript);

}  // namespace

BENCHMARK_MAIN();
