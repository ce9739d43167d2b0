#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convsim/errors.hpp"
#include "convsim/prompt/prompt.hpp"
#include "convsim/schema/json_io.hpp"
#include "test_helpers.hpp"

using namespace convsim;
using namespace convsim::prompt;
using convsim::test::read_data_file;

namespace {

persona::EntrepreneurProfile fixed_profile() {
    return persona::generate_profiles(7, 1, {"food-business"}).front();
}

schema::ConversationParameters example_params() {
    return schema::parse_parameters(read_data_file("example_params.json"));
}

size_t count_occurrences(const std::string& haystack, const std::string& needle) {
    size_t count = 0;
    size_t pos = 0;
    while ((pos = haystack.find(needle, pos)) != std::string::npos) {
        ++count;
        pos += needle.size();
    }
    return count;
}

}  // namespace

TEST_CASE("parameterized bundle embeds the serialized values") {
    const auto bundle = compile_parameterized(fixed_profile(), example_params());
    REQUIRE(bundle.parameter_block.has_value());
    CHECK(bundle.parameter_block->find("\"knowledgeGapLevel\": 3") != std::string::npos);
    CHECK(bundle.instruction_text.find(*bundle.parameter_block) != std::string::npos);
    CHECK(bundle.target_turns == 12);
    CHECK(bundle.mode == PromptMode::parameterized);
}

TEST_CASE("identical inputs give identical content hashes") {
    const auto a = compile_parameterized(fixed_profile(), example_params());
    const auto b = compile_parameterized(fixed_profile(), example_params());
    CHECK(a.content_hash == b.content_hash);
    CHECK(a == b);

    const auto c = compile_baseline(fixed_profile(), 10);
    const auto d = compile_baseline(fixed_profile(), 10);
    CHECK(c.content_hash == d.content_hash);
}

TEST_CASE("invalid parameters are refused") {
    auto params = example_params();
    params.participants.knowledge_gap_level = 9;
    CHECK_THROWS_AS(compile_parameterized(fixed_profile(), params), InputError);
}

TEST_CASE("baseline prompt follows the raw template") {
    const auto bundle = compile_baseline(fixed_profile(), 10);
    CHECK(bundle.instruction_text.rfind("Create a 10-turn conversation", 0) == 0);
    CHECK(bundle.instruction_text.find("Small Business Development Corporation") !=
          std::string::npos);
    CHECK(!bundle.parameter_block.has_value());
    CHECK(bundle.mode == PromptMode::baseline);
    // no parameter definitions of any kind
    CHECK(bundle.instruction_text.find("PARAMETER DEFINITIONS") == std::string::npos);
    CHECK(bundle.instruction_text.find("Knowledge Gap Level") == std::string::npos);
    CHECK(bundle.instruction_text.find("Smoothness Factor") == std::string::npos);
}

TEST_CASE("baseline boundary cases") {
    const auto one = compile_baseline(fixed_profile(), 1);
    CHECK(one.target_turns == 1);
    CHECK(one.instruction_text.rfind("Create a 1-turn conversation", 0) == 0);
    CHECK_THROWS_AS(compile_baseline(fixed_profile(), 0), InputError);
}

TEST_CASE("definitions catalog carries the level glosses and is stable") {
    const std::string defs = render_parameter_definitions();
    CHECK(defs.find("Laser-focused on specific details of implementation") != std::string::npos);
    CHECK(defs.find("Complete novice with minimal business knowledge") != std::string::npos);
    CHECK(defs.find("Highly disjointed conversation with random topic jumping") !=
          std::string::npos);
    CHECK(defs.find("Perfectly flowing conversation with logical transitions") !=
          std::string::npos);
    CHECK(defs == render_parameter_definitions());
}

TEST_CASE("every parameter key appears in the parameter block at its schema multiplicity") {
    const auto bundle = compile_parameterized(fixed_profile(), example_params());
    const std::string& block = *bundle.parameter_block;
    const std::vector<std::pair<std::string, size_t>> expected = {
        {"\"purpose\":", 1},        {"\"turns\":", 1},
        {"\"turnBalance\":", 1},    {"\"arc\":", 1},
        {"\"initiator\":", 1},      {"\"topicScope\":", 1},
        {"\"knowledgeGapLevel\":", 1}, {"\"identity\":", 2},
        {"\"consistencyLevel\":", 1}, {"\"focusLevel\":", 1},
        {"\"priorKnowledgeLevel\":", 1}, {"\"decisionMakingStyle\":", 1},
        {"\"feedbackReception\":", 1}, {"\"framework\":", 1},
        {"\"practicalTheoreticalBalance\":", 1}, {"\"complexityProgression\":", 1},
        {"\"industryContext\":", 1}, {"\"formality\":", 2},
        {"\"emotionalJourney\":", 1}, {"\"relationshipDevelopment\":", 1},
        {"\"disagreementHandling\":", 1}, {"\"smoothnessFactor\":", 1},
        {"\"technicalLanguageLevel\":", 1}, {"\"questionTypes\":", 1},
        {"\"closed\":", 1},         {"\"open\":", 1},
        {"\"rhetorical\":", 1},     {"\"clarifying\":", 1},
        {"\"responseStyle\":", 1},  {"\"conciseness\":", 1},
        {"\"directness\":", 1},     {"\"factualAccuracy\":", 1},
        {"\"exampleSpecificity\":", 1}, {"\"stakeholderPerspectives\":", 1},
    };
    for (const auto& [key, count] : expected) {
        CHECK_MESSAGE(count_occurrences(block, key) == count, key);
    }
}

TEST_CASE("compiled prompts match the checked-in goldens") {
    const auto parameterized = compile_parameterized(fixed_profile(), example_params());
    CHECK(parameterized.instruction_text ==
          read_data_file("golden/parameterized_prompt.txt"));

    const auto baseline = compile_baseline(fixed_profile(), 10);
    CHECK(baseline.instruction_text == read_data_file("golden/baseline_prompt.txt"));
}

TEST_CASE("template dir override must bump the version to change text") {
    // builtin templates load back unchanged from an empty dir
    const auto t = PromptTemplates::from_dir(std::string(CONVSIM_TEST_DATA_DIR));
    CHECK(t.version == PromptTemplates::builtin().version);
    CHECK(t.scenario == PromptTemplates::builtin().scenario);
}
