#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <unistd.h>

#include <algorithm>
#include <filesystem>
#include <sstream>

#include "convsim/errors.hpp"
#include "convsim/persona/persona.hpp"
#include "convsim/gateway/gateway.hpp"
#include "convsim/prompt/prompt.hpp"
#include "convsim/schema/json_io.hpp"
#include "convsim/util/sha256.hpp"
#include "convsim/util/strings.hpp"
#include "test_helpers.hpp"

using namespace convsim;
using namespace convsim::gateway;
using convsim::test::make_transcript;
using convsim::test::read_data_file;

namespace {

namespace fs = std::filesystem;

const char* kValidDocument = R"({
  "metadata": {
    "participantRoles": {"initiator": "user", "user": "entrepreneur", "assistant": "adviser"},
    "conversationArc": "problem-solution",
    "totalTurns": 4
  },
  "conversation": [
    {"turn": 1, "speaker": "user", "content": "How do I price my menu?", "emotionalState": "uncertainty", "complexityLevel": 0.3},
    {"turn": 2, "speaker": "assistant", "content": "Start from your ingredient costs.", "emotionalState": "calm", "complexityLevel": 0.3},
    {"turn": 3, "speaker": "user", "content": "Costs vary by season though."},
    {"turn": 4, "speaker": "assistant", "content": "Then price against the yearly average."}
  ],
  "analysis": {
    "parameterAdherence": {},
    "learningObjectivesMet": [],
    "stakeholderPerspectivesCovered": []
  }
})";

struct TempDir {
    fs::path path;
    explicit TempDir(const std::string& name)
        : path(fs::temp_directory_path() / ("convsim-" + name + "-" +
                                            std::to_string(::getpid()))) {
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
};

prompt::PromptBundle sample_bundle() {
    const auto profile = persona::generate_profiles(7, 1, {"food-business"}).front();
    const auto params = schema::parse_parameters(read_data_file("example_params.json"));
    return prompt::compile_parameterized(profile, params);
}

}  // namespace

TEST_CASE("a document in the declared output format parses") {
    const Transcript t = parse_output(kValidDocument);
    CHECK(t.turns.size() == 4);
    CHECK(t.metadata.total_turns == 4);
    CHECK(t.metadata.initiator == Speaker::user);
    CHECK(t.turns[0].emotional_state == std::optional<std::string>("uncertainty"));
    CHECK(t.turns[2].emotional_state == std::nullopt);
    CHECK(t.analysis_json.has_value());
}

TEST_CASE("code-fenced output is repaired and parsed") {
    const std::string fenced = "Here is the conversation:\n```json\n" +
                               std::string(kValidDocument) + "\n```\n";
    const Transcript t = parse_output(fenced);
    CHECK(t.turns.size() == 4);
}

TEST_CASE("unstructured prose is a parse error that keeps the raw text") {
    try {
        parse_output("I cannot produce that conversation, sorry.");
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(e.raw_text().find("cannot produce") != std::string::npos);
    }
}

TEST_CASE("non-contiguous turn indices are rejected") {
    std::string doc = kValidDocument;
    doc.replace(doc.find("\"turn\": 3"), 9, "\"turn\": 7");
    try {
        parse_output(doc);
        FAIL("expected ParseError");
    } catch (const ParseError& e) {
        CHECK(std::string(e.what()).find("non-contiguous") != std::string::npos);
    }
}

TEST_CASE("speakers must alternate from the declared initiator") {
    std::string doc = kValidDocument;
    doc.replace(doc.find("\"turn\": 2, \"speaker\": \"assistant\""), 31,
                "\"turn\": 2, \"speaker\": \"user\"");
    CHECK_THROWS_AS(parse_output(doc), ParseError);
}

TEST_CASE("metadata totalTurns must match the conversation length") {
    std::string doc = kValidDocument;
    doc.replace(doc.find("\"totalTurns\": 4"), 15, "\"totalTurns\": 9");
    CHECK_THROWS_AS(parse_output(doc), ParseError);
}

TEST_CASE("empty content is rejected") {
    std::string doc = kValidDocument;
    doc.replace(doc.find("\"Costs vary by season though.\""), 30, "\"\"");
    CHECK_THROWS_AS(parse_output(doc), ParseError);
}

TEST_CASE("serialize then parse is the identity") {
    Transcript t = parse_output(kValidDocument);
    t.provenance = {"hash123", "mock", "mock-1", "1970-01-01T00:00:00Z", 42};
    t.quality_flags = {"turn_count_mismatch: expected 5, got 4"};
    const Transcript round = parse_output(serialize_transcript(t));
    CHECK(round == t);
}

TEST_CASE("mock generation fills provenance and parses clean") {
    TempDir dir("gateway-mock");
    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    ProviderConfig config;  // mock defaults

    const auto bundle = sample_bundle();
    const Transcript t = gw.generate_conversation(bundle, config, 99);
    CHECK(t.turns.size() == 12);
    CHECK(t.quality_flags.empty());
    CHECK(t.provenance.prompt_hash == bundle.content_hash);
    CHECK(t.provenance.provider_id == "mock");
    CHECK(t.provenance.seed == 99);

    const Transcript round = parse_output(serialize_transcript(t));
    CHECK(round == t);
}

TEST_CASE("cache soundness: identical requests hit the provider once") {
    TempDir dir("gateway-cache");
    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    ProviderConfig config;

    const auto bundle = sample_bundle();
    const Transcript first = gw.generate_conversation(bundle, config, 1);
    CHECK(gw.provider_calls() == 1);
    const Transcript second = gw.generate_conversation(bundle, config, 1);
    CHECK(gw.provider_calls() == 1);
    CHECK(serialize_transcript(first) == serialize_transcript(second));

    // a fresh gateway over the same cache directory issues no call either
    Gateway gw2({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    const Transcript third = gw2.generate_conversation(bundle, config, 1);
    CHECK(gw2.provider_calls() == 0);
    CHECK(serialize_transcript(third) == serialize_transcript(first));
}

TEST_CASE("turn-count mismatch is a quality flag, not an error") {
    TempDir dir("gateway-fixture");
    const auto bundle = sample_bundle();  // target_turns = 12

    // play back an 11-turn fixture for this exact prompt
    std::vector<std::string> contents;
    for (int i = 0; i < 11; ++i) contents.push_back("turn content " + std::to_string(i + 1));
    const std::string fixture = serialize_transcript(make_transcript(contents));
    write_file_atomic((dir.path / "fixtures" / (bundle.content_hash + ".txt")).string(), fixture);

    ProviderConfig config;
    config.fixture_dir = (dir.path / "fixtures").string();
    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    const Transcript t = gw.generate_conversation(bundle, config, 5);
    CHECK(t.turns.size() == 11);
    REQUIRE(t.quality_flags.size() == 1);
    CHECK(t.quality_flags[0].find("expected 12") != std::string::npos);
    CHECK(t.quality_flags[0].find("got 11") != std::string::npos);
}

TEST_CASE("judge prompt is blind to the true parameter values") {
    const auto params = schema::parse_parameters(read_data_file("example_params.json"));
    const auto serialized = schema::serialize_parameters(params);

    TempDir dir("gateway-judge");
    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    const auto bundle = sample_bundle();
    const Transcript t = gw.generate_conversation(bundle, ProviderConfig{}, 1);

    const std::string judge_prompt = Gateway::render_judge_prompt(t);
    CHECK(judge_prompt.find(serialized) == std::string::npos);
    // no serialized value line leaks either (indented "key": value lines)
    std::istringstream lines(serialized);
    std::string line;
    while (std::getline(lines, line)) {
        if (trim(line).empty() || trim(line) == "{" || trim(line) == "}") continue;
        if (line.find(':') == std::string::npos) continue;
        CHECK(judge_prompt.find(line) == std::string::npos);
    }
    // it does contain the definitions and the transcript
    CHECK(judge_prompt.find("PARAMETER DEFINITIONS") != std::string::npos);
    CHECK(judge_prompt.find(t.turns.front().content) != std::string::npos);
}

TEST_CASE("judge answers parse into typed inferences") {
    TempDir dir("gateway-judge-fixture");
    const auto t = make_transcript({"We should check the books", "Yes, start with margins"});

    ProviderConfig config;
    config.fixture_dir = (dir.path / "fixtures").string();
    const std::string judge_hash = sha256_hex(Gateway::render_judge_prompt(t) + "\x1f" +
                                              config.provider_id + "\x1f" + config.model_id);
    write_file_atomic((dir.path / "fixtures" / (judge_hash + ".txt")).string(),
                      R"({"participants.user.focusLevel": 3,
                          "participants.user.decisionMakingStyle": "analytical"})");

    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    const auto inferred = gw.judge_infer_parameters(t, config);
    CHECK(inferred.judge_id == "llm");
    CHECK(inferred.numeric.at("participants.user.focusLevel") == doctest::Approx(3.0));
    CHECK(inferred.categorical.at("participants.user.decisionMakingStyle") == "analytical");
    // unanswered paths are reported missing
    CHECK(std::find(inferred.missing.begin(), inferred.missing.end(),
                    "participants.knowledgeGapLevel") != inferred.missing.end());
}

TEST_CASE("out-of-range judge values are recorded as invalid and excluded") {
    TempDir dir("gateway-judge-invalid");
    const auto t = make_transcript({"Question", "Answer"});

    ProviderConfig config;
    config.fixture_dir = (dir.path / "fixtures").string();
    const std::string judge_hash = sha256_hex(Gateway::render_judge_prompt(t) + "\x1f" +
                                              config.provider_id + "\x1f" + config.model_id);
    write_file_atomic((dir.path / "fixtures" / (judge_hash + ".txt")).string(),
                      R"({"participants.user.focusLevel": 9,
                          "conversationDynamics.smoothnessFactor": "Z"})");

    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    const auto inferred = gw.judge_infer_parameters(t, config);
    CHECK(inferred.numeric.count("participants.user.focusLevel") == 0);
    CHECK(inferred.invalid.at("participants.user.focusLevel") == "9");
    CHECK(inferred.categorical.count("conversationDynamics.smoothnessFactor") == 0);
    CHECK(inferred.invalid.count("conversationDynamics.smoothnessFactor") == 1);
}

TEST_CASE("human label import") {
    TempDir dir("labels");
    const std::string path = (dir.path / "labels.jsonl").string();

    SUBCASE("three valid rows become grouped records") {
        write_file_atomic(path,
            R"({"conversation_id": "c1", "annotator_id": "a1", "parameter_path": "participants.user.focusLevel", "value": 4})"
            "\n"
            R"({"conversation_id": "c1", "annotator_id": "a1", "parameter_path": "participants.user.decisionMakingStyle", "value": "intuitive"})"
            "\n"
            R"({"conversation_id": "c2", "annotator_id": "a1", "parameter_path": "participants.knowledgeGapLevel", "value": 2})"
            "\n");
        const auto result = import_human_labels(path);
        CHECK(result.row_errors.empty());
        REQUIRE(result.records.size() == 2);
        CHECK(result.records[0].judge_id == "human");
        CHECK(result.records[0].conversation_id == "c1");
        CHECK(result.records[0].numeric.at("participants.user.focusLevel") == 4.0);
        CHECK(result.records[0].categorical.at("participants.user.decisionMakingStyle") ==
              "intuitive");
        CHECK(result.records[1].conversation_id == "c2");
    }

    SUBCASE("a row with an unknown path is rejected, others proceed") {
        write_file_atomic(path,
            R"({"conversation_id": "c1", "annotator_id": "a1", "parameter_path": "made.up.path", "value": 1})"
            "\n"
            R"({"conversation_id": "c1", "annotator_id": "a1", "parameter_path": "participants.user.focusLevel", "value": 2})"
            "\n");
        const auto result = import_human_labels(path);
        REQUIRE(result.row_errors.size() == 1);
        CHECK(result.row_errors[0].find("made.up.path") != std::string::npos);
        REQUIRE(result.records.size() == 1);
        CHECK(result.records[0].numeric.size() == 1);
    }

    SUBCASE("an empty file imports nothing") {
        write_file_atomic(path, "");
        const auto result = import_human_labels(path);
        CHECK(result.records.empty());
        CHECK(result.row_errors.empty());
    }

    SUBCASE("malformed rows are row-level errors") {
        write_file_atomic(path, "{not json}\n"
            R"({"conversation_id": "c1", "annotator_id": "a1", "parameter_path": "participants.user.focusLevel", "value": 5})"
            "\n");
        const auto result = import_human_labels(path);
        CHECK(result.row_errors.size() == 1);
        CHECK(result.records.size() == 1);
    }
}

TEST_CASE("missing credential for an http provider is a configuration error") {
    TempDir dir("gateway-cred");
    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    ProviderConfig config;
    config.provider_id = "openai";
    config.endpoint = "https://api.openai.com/v1/chat/completions";
    config.credential_env = "CONVSIM_TEST_SURELY_UNSET_KEY";
    CHECK_THROWS_AS(gw.generate_conversation(sample_bundle(), config, 1), ConfigError);
}

TEST_CASE("transport failure after retries is a provider error") {
    TempDir dir("gateway-transport");
    Gateway gw({.cache_dir = (dir.path / "cache").string(), .cache_enabled = true});
    ProviderConfig config;
    config.provider_id = "custom";
    config.endpoint = "http://127.0.0.1:1/v1/chat/completions";  // nothing listens here
    config.max_retries = 2;
    config.timeout_seconds = 2;
    CHECK_THROWS_AS(gw.generate_conversation(sample_bundle(), config, 1), ProviderError);
}
