// Acceptance suite: one criterion per test case, each printing a PASS/FAIL
// line with its runtime. Tolerances are pinned in the assertions.
#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <sys/wait.h>
#include <unistd.h>

#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <set>
#include <sstream>

#include <json.hpp>

#include "convsim/embed/embedder.hpp"
#include "convsim/errors.hpp"
#include "convsim/gateway/gateway.hpp"
#include "convsim/metrics/adherence.hpp"
#include "convsim/metrics/diversity.hpp"
#include "convsim/metrics/drift.hpp"
#include "convsim/metrics/entities.hpp"
#include "convsim/metrics/stability.hpp"
#include "convsim/persona/persona.hpp"
#include "convsim/prompt/prompt.hpp"
#include "convsim/runner/experiment.hpp"
#include "convsim/schema/json_io.hpp"
#include "convsim/schema/validate.hpp"
#include "convsim/util/rng.hpp"
#include "convsim/util/strings.hpp"
#include "test_helpers.hpp"

using namespace convsim;
namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;
using convsim::test::FixtureEmbedder;
using convsim::test::make_transcript;
using convsim::test::read_data_file;

namespace {

class Criterion {
public:
    Criterion(int number, std::string name, double limit_seconds = 0.0)
        : number_(number), name_(std::move(name)), limit_(limit_seconds),
          start_(std::chrono::steady_clock::now()) {}

    ~Criterion() {
        const double elapsed = seconds();
        const bool failed = std::uncaught_exceptions() > 0;
        std::printf("criterion %d (%s): %s (%.2fs)\n", number_, name_.c_str(),
                    failed ? "FAIL" : "PASS", elapsed);
        std::fflush(stdout);
    }

    double seconds() const {
        return std::chrono::duration<double>(std::chrono::steady_clock::now() - start_).count();
    }

    void check_time() const {
        if (limit_ > 0.0) {
            REQUIRE(seconds() < limit_);
        }
    }

private:
    int number_;
    std::string name_;
    double limit_;
    std::chrono::steady_clock::time_point start_;
};

ojson mutate(const std::string& dotted, ojson value) {
    auto doc = ojson::parse(read_data_file("example_params.json"));
    ojson* node = &doc["conversationParameters"];
    const auto segments = split(dotted, '.');
    for (size_t i = 0; i + 1 < segments.size(); ++i) node = &(*node)[segments[i]];
    (*node)[segments.back()] = std::move(value);
    return doc;
}

bool mutation_caught(const std::string& dotted, ojson value, const std::string& rule) {
    const auto params = schema::parse_parameters(mutate(dotted, std::move(value)).dump());
    for (const auto& violation : schema::validate(params).violations) {
        if (violation.rule == rule) return true;
    }
    return false;
}

int run_cli(const std::string& args, const std::string& log_path) {
    const std::string cmd = std::string(CONVSIM_SIM_BIN) + " " + args + " > " + log_path +
                            " 2>&1";
    const int status = std::system(cmd.c_str());
    return WIFEXITED(status) ? WEXITSTATUS(status) : -1;
}

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() /
               ("convsim-accept-" + name + "-" + std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

}  // namespace

TEST_CASE("criterion 1: validation suite") {
    Criterion criterion(1, "validation suite", 1.0);

    std::vector<std::string> warnings;
    const auto params =
        schema::parse_parameters(read_data_file("example_params.json"), &warnings);
    REQUIRE(schema::validate(params).ok);

    using schema::rules::complexity_monotone;
    using schema::rules::likert_range;
    using schema::rules::question_types_sum;
    using schema::rules::stakeholders_required;
    using schema::rules::topic_scope_nonempty;
    using schema::rules::turn_balance;
    using schema::rules::turns_min;
    using schema::rules::unit_interval;

    REQUIRE(mutation_caught("participants.knowledgeGapLevel", 7, likert_range));
    REQUIRE(mutation_caught("participants.user.focusLevel", 0, likert_range));
    REQUIRE(mutation_caught("linguisticPatterns.questionTypes.closed", 0.3, question_types_sum));
    REQUIRE(mutation_caught("fundamentals.turnBalance", "60:45", turn_balance));
    REQUIRE(mutation_caught("fundamentals.turns", 0, turns_min));
    REQUIRE(mutation_caught("fundamentals.topicScope", ojson::array(), topic_scope_nonempty));
    REQUIRE(mutation_caught("learningApproach.complexityProgression",
                            ojson::array({0.5, 0.3}), complexity_monotone));
    REQUIRE(mutation_caught("conversationDynamics.formality", 1.5, unit_interval));
    REQUIRE(mutation_caught("participants.assistant.consistencyLevel", -0.1, unit_interval));
    REQUIRE(mutation_caught("contentAttributes.stakeholderPerspectives", ojson::array(),
                            stakeholders_required));

    // enum forgery is only reachable on the struct
    auto forged = params;
    forged.fundamentals.arc = static_cast<schema::Arc>(77);
    bool enum_caught = false;
    for (const auto& violation : schema::validate(forged).violations) {
        enum_caught |= violation.rule == std::string(schema::rules::enum_member);
    }
    REQUIRE(enum_caught);

    criterion.check_time();
}

TEST_CASE("criterion 2: entropy oracle and published-table consistency") {
    Criterion criterion(2, "entropy oracle", 5.0);

    Rng rng(271828);
    for (int i = 0; i < 1000; ++i) {
        std::vector<std::size_t> counts(1 + rng.below(20));
        for (auto& c : counts) c = 1 + rng.below(1000);

        double total = 0.0;
        for (auto c : counts) total += double(c);
        double expected = 0.0;
        for (auto c : counts) {
            const double p = double(c) / total;
            expected -= p * std::log2(p);
        }
        const double h = metrics::topic_entropy(counts);
        REQUIRE(std::abs(h - expected) < 1e-9);
        REQUIRE(h <= std::log2(double(counts.size())) + 1e-9);
    }

    // reference (cluster count, entropy) pairs; each entropy must respect the
    // base-2 ceiling log2(count)
    const std::vector<std::pair<std::size_t, double>> reference = {
        {111, 4.469}, {143, 5.275}, {136, 4.464}, {154, 5.311}, {140, 4.578},
        {84, 3.859},  {141, 5.266}, {5, 0.888},   {35, 2.985}};
    for (const auto& [diversity, entropy] : reference) {
        REQUIRE(entropy <= std::log2(double(diversity)));
    }

    criterion.check_time();
}

TEST_CASE("criterion 3: revisit oracle") {
    Criterion criterion(3, "revisit oracle", 5.0);

    Rng rng(314159);
    for (int trial = 0; trial < 200; ++trial) {
        const size_t turns = 2 + rng.below(19);  // T <= 20
        std::vector<std::set<std::string>> sets(turns);
        for (auto& set : sets) {
            const size_t count = rng.below(7);
            for (size_t i = 0; i < count; ++i) {
                set.insert("e" + std::to_string(rng.below(50)));  // alphabet <= 50
            }
        }

        // independent brute-force intersection loop
        std::set<std::string> seen = sets[0];
        double fraction_sum = 0.0;
        int eligible = 0;
        for (size_t t = 1; t < sets.size(); ++t) {
            int inter = 0;
            for (const auto& e : sets[t]) inter += seen.count(e) ? 1 : 0;
            if (!sets[t].empty()) {
                fraction_sum += double(inter) / double(sets[t].size());
                ++eligible;
            }
            seen.insert(sets[t].begin(), sets[t].end());
        }
        const double expected = eligible == 0 ? 0.0 : fraction_sum / eligible;

        const auto result = metrics::revisit_rate(sets);
        REQUIRE(std::abs(result.aggregate - expected) < 1e-12);
        REQUIRE(result.aggregate >= 0.0);
        REQUIRE(result.aggregate <= 1.0);
    }

    criterion.check_time();
}

TEST_CASE("criterion 4: adherence oracles and blend symmetry") {
    Criterion criterion(4, "adherence oracle");

    Rng rng(161803);
    std::vector<std::pair<metrics::NumericMap, metrics::NumericMap>> numeric;
    std::vector<std::pair<metrics::CategoricalMap, metrics::CategoricalMap>> categorical;
    const std::vector<std::string> labels = {"analytical", "intuitive", "consultative",
                                             "risk-averse", "impulsive"};
    for (int i = 0; i < 100; ++i) {
        metrics::NumericMap set_n, inf_n;
        metrics::CategoricalMap set_c, inf_c;
        for (const std::string path : {"p1", "p2", "p3"}) {
            set_n[path] = 1.0 + double(rng.below(5));
            if (rng.chance(0.85)) inf_n[path] = 1.0 + double(rng.below(5));
            set_c[path] = labels[rng.below(labels.size())];
            if (rng.chance(0.85)) inf_c[path] = labels[rng.below(labels.size())];
        }
        numeric.emplace_back(std::move(set_n), std::move(inf_n));
        categorical.emplace_back(std::move(set_c), std::move(inf_c));
    }

    const auto mse = metrics::adherence_numeric(numeric);
    const auto accuracy = metrics::adherence_categorical(categorical);
    for (const std::string path : {"p1", "p2", "p3"}) {
        double sq_sum = 0.0;
        int n = 0;
        for (const auto& [set_values, inferred] : numeric) {
            const auto it = inferred.find(path);
            if (it == inferred.end()) continue;
            const double d = set_values.at(path) - it->second;
            sq_sum += d * d;
            ++n;
        }
        REQUIRE(std::abs(mse.at(path) - sq_sum / n) < 1e-12);
        REQUIRE(mse.at(path) >= 0.0);

        int hits = 0;
        int m = 0;
        for (const auto& [set_values, inferred] : categorical) {
            const auto it = inferred.find(path);
            if (it == inferred.end()) continue;
            hits += set_values.at(path) == it->second ? 1 : 0;
            ++m;
        }
        REQUIRE(std::abs(accuracy.at(path) - double(hits) / m) < 1e-12);
    }

    // blend with equal agreement is exactly the arithmetic mean
    metrics::AdherenceScore human;
    human.numeric_mse = {{"p1", 0.3}, {"p2", 1.7}};
    human.categorical_accuracy = {{"p3", 0.9}};
    metrics::AdherenceScore llm;
    llm.numeric_mse = {{"p1", 0.7}, {"p2", 0.1}};
    llm.categorical_accuracy = {{"p3", 0.6}};
    const auto blended = metrics::blend_judgments(human, llm, {1.0, 1.0});
    REQUIRE(blended.numeric_mse.at("p1") == 0.5 * (0.3 + 0.7));
    REQUIRE(blended.numeric_mse.at("p2") == 0.5 * (1.7 + 0.1));
    REQUIRE(blended.categorical_accuracy.at("p3") == 0.5 * (0.9 + 0.6));

    criterion.check_time();
}

TEST_CASE("criterion 5: stability formula") {
    Criterion criterion(5, "stability formula");

    Rng rng(141421);
    for (int i = 0; i < 1000; ++i) {
        const double ef = rng.unit();
        const double et = rng.unit();
        const auto score = metrics::stability_from_errors(ef, et);
        REQUIRE(score.stability == 1.0 - 0.5 * (ef + et));
    }

    // measured-equals-target fixture scores exactly 1
    const auto& scoring = metrics::ScoringConfig::builtin();
    const auto transcript = make_transcript(
        {"We should review the cash flow forecast before the bank meeting.",
         "Agreed, bring the ledgers.",
         "The roi on the second food truck still looks thin to me."});
    double f_total = 0.0, t_total = 0.0;
    for (const auto* turn : transcript.user_turns()) {
        f_total += metrics::formality_score(turn->content, scoring);
        t_total += metrics::technical_score(turn->content, scoring);
    }
    auto params = schema::parse_parameters(read_data_file("example_params.json"));
    params.dynamics.formality = f_total / 2.0;
    params.linguistic.technical_language_level = t_total / 2.0;
    const auto score = metrics::stability_score(transcript, params, scoring);
    REQUIRE(score.stability == doctest::Approx(1.0).epsilon(1e-12));

    criterion.check_time();
}

TEST_CASE("criterion 6: drift and diversity with the stub embedding provider") {
    Criterion criterion(6, "drift and diversity stub");

    // constructed-monotone fixture: angles grow away from the opening vector
    FixtureEmbedder fixture(2);
    fixture.set("opening", {1.0f, 0.0f});
    std::vector<std::string> contents;
    for (int i = 0; i < 5; ++i) {
        const std::string name = "user-" + std::to_string(i);
        const float angle = 0.3f * float(i);
        fixture.set(name, {std::cos(angle), std::sin(angle)});
        contents.push_back(name);
        contents.push_back("assistant reply " + std::to_string(i));
    }
    const auto transcript = make_transcript(contents);
    const auto series = metrics::topic_drift_series(transcript, "opening", fixture);
    REQUIRE(series.points.size() == 5);
    for (size_t i = 1; i < series.points.size(); ++i) {
        REQUIRE(series.points[i].similarity <= series.points[i - 1].similarity);
    }

    // pairwise oracle for n = 10 stub-embedded texts
    embed::StubEmbedder stub(48);
    std::vector<std::string> texts;
    for (int i = 0; i < 10; ++i) texts.push_back("topic sample " + std::to_string(i * 7));
    const auto vectors = embed::embed_sentences(texts, stub);
    double oracle = 0.0;
    int pairs = 0;
    for (size_t i = 0; i < vectors.size(); ++i) {
        for (size_t j = i + 1; j < vectors.size(); ++j) {
            oracle += 1.0 - embed::cosine_similarity(vectors[i], vectors[j]);
            ++pairs;
        }
    }
    oracle /= pairs;
    REQUIRE(std::abs(metrics::embedding_diversity(texts, stub) - oracle) < 1e-12);

    criterion.check_time();
}

TEST_CASE("criterion 7: offline end-to-end drift run") {
    Criterion criterion(7, "offline end-to-end", 60.0);

    TempDir dir("e2e");
    const std::string run_dir = (dir.path / "run").string();
    const std::string log = (dir.path / "cli.log").string();

    // 0.02 x 200 = 4 per arm -> 12 conversations over {A, F, baseline}
    REQUIRE(run_cli("run paper-drift --scale 0.02 --mock --out " + run_dir + " --workers 2",
                    log) == 0);

    const auto summary = ojson::parse(read_file(run_dir + "/run_summary.json"));
    REQUIRE(summary.at("cellsTotal").get<int>() == 12);
    REQUIRE(summary.at("cellsCompleted").get<int>() == 12);
    REQUIRE(summary.at("cellsFailed").get<int>() == 0);

    // every stored transcript round-trips through the parser
    size_t transcripts = 0;
    for (const auto& entry : fs::directory_iterator(run_dir + "/transcripts")) {
        const std::string text = read_file(entry.path().string());
        const auto parsed = gateway::parse_output(text);
        REQUIRE(gateway::serialize_transcript(parsed) == text);
        ++transcripts;
    }
    REQUIRE(transcripts == 12);

    // drift CSV has the similarity-by-turn-by-arm shape
    REQUIRE(run_cli("report " + run_dir + " --format csv", log) == 0);
    const std::string csv = read_file(run_dir + "/reports/drift_series.csv");
    REQUIRE(csv.rfind("model,arm,turn,mean_similarity,mean_drift,n", 0) == 0);
    for (const std::string arm : {",A,", ",F,", ",baseline,"}) {
        REQUIRE(csv.find(arm) != std::string::npos);
    }

    // rerun: zero provider calls
    REQUIRE(run_cli("run paper-drift --scale 0.02 --mock --out " + run_dir + " --workers 2",
                    log) == 0);
    const auto rerun = ojson::parse(read_file(run_dir + "/run_summary.json"));
    REQUIRE(rerun.at("providerCalls").get<int>() == 0);
    REQUIRE(rerun.at("cellsSkipped").get<int>() == 12);

    // determinism: an independent directory produces identical records
    const std::string run_dir2 = (dir.path / "run2").string();
    REQUIRE(run_cli("run paper-drift --scale 0.02 --mock --out " + run_dir2 + " --workers 2",
                    log) == 0);
    for (const auto& entry : fs::directory_iterator(run_dir + "/metrics/cells")) {
        const auto other = fs::path(run_dir2) / "metrics" / "cells" / entry.path().filename();
        REQUIRE(read_file(entry.path().string()) == read_file(other.string()));
    }

    criterion.check_time();
}

TEST_CASE("criterion 8: prompt goldens and judge blindness") {
    Criterion criterion(8, "prompt goldens");

    const auto profile = persona::generate_profiles(7, 1, {"food-business"}).front();
    const auto params = schema::parse_parameters(read_data_file("example_params.json"));

    const auto parameterized = prompt::compile_parameterized(profile, params);
    REQUIRE(parameterized.instruction_text == read_data_file("golden/parameterized_prompt.txt"));

    const auto baseline = prompt::compile_baseline(profile, 10);
    REQUIRE(baseline.instruction_text == read_data_file("golden/baseline_prompt.txt"));
    REQUIRE(baseline.instruction_text.rfind("Create a 10-turn conversation", 0) == 0);
    REQUIRE(baseline.instruction_text.find("PARAMETER DEFINITIONS") == std::string::npos);
    REQUIRE(baseline.instruction_text.find("Knowledge Gap Level") == std::string::npos);
    REQUIRE(!baseline.parameter_block.has_value());

    // judge prompt: no substring of the serialized true parameter values
    TempDir dir("judge-blind");
    gateway::Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    const auto transcript =
        gw.generate_conversation(parameterized, gateway::ProviderConfig{}, 1);
    const std::string judge_prompt = gateway::Gateway::render_judge_prompt(transcript);
    const std::string serialized = schema::serialize_parameters(params);
    REQUIRE(judge_prompt.find(serialized) == std::string::npos);
    std::istringstream lines(serialized);
    std::string line;
    while (std::getline(lines, line)) {
        const std::string trimmed = trim(line);
        if (trimmed.empty() || trimmed == "{" || trimmed == "}" ||
            line.find(':') == std::string::npos) {
            continue;
        }
        REQUIRE(judge_prompt.find(line) == std::string::npos);
    }

    criterion.check_time();
}

TEST_CASE("criterion 9: optional live smoke") {
    Criterion criterion(9, "live smoke");

    const char* provider_id = std::getenv("CONVSIM_LIVE_PROVIDER");
    if (provider_id == nullptr || *provider_id == '\0') {
        std::printf("criterion 9: skipping live smoke (set CONVSIM_LIVE_PROVIDER and the "
                    "provider credential to enable)\n");
        return;
    }

    const auto provider = runner::provider_by_id(provider_id);
    TempDir dir("live");
    gateway::Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});

    const auto profile = persona::baseline_profile(1);
    const auto bundle = prompt::compile_baseline(profile, 5);
    const auto transcript = gw.generate_conversation(bundle, provider, 1);
    REQUIRE(!transcript.turns.empty());
    if (static_cast<int>(transcript.turns.size()) != 5) {
        REQUIRE(!transcript.quality_flags.empty());
    }

    const auto inferred = gw.judge_infer_parameters(transcript, provider);
    REQUIRE((!inferred.numeric.empty() || !inferred.categorical.empty() ||
             !inferred.missing.empty()));

    criterion.check_time();
}
