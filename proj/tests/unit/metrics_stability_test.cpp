#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include "convsim/errors.hpp"
#include "convsim/metrics/stability.hpp"
#include "convsim/metrics/text_stats.hpp"
#include "convsim/schema/randomize.hpp"
#include "convsim/util/rng.hpp"
#include "test_helpers.hpp"

using namespace convsim;
using namespace convsim::metrics;
using convsim::test::make_transcript;

namespace {

// one long sentence, thirty distinct words of >= 7 letters, no pronouns:
// every formality sub-feature clamps at its upper bound
const char* kFormalText =
    "Comprehensive regulatory documentation concerning institutional governance frameworks "
    "demonstrates systematic organizational accountability, incorporating rigorous compliance "
    "procedures, transparent fiduciary obligations, extensive operational benchmarks, "
    "quantitative performance indicators, longitudinal assessment methodologies, strategic "
    "contingency provisions, and meticulous documentation standards throughout successive "
    "administrative evaluations conducted independently.";

const char* kInformalText = "hey u there? lol u ok? thx u. me too lol. u free? hi hi.";

}  // namespace

TEST_CASE("informal text scores by the hand-computed sub-scores") {
    // 15 words, mean length 2.4 -> word-length feature 0
    // 6 sentences of <= 3 words -> sentence feature 0
    // per-sentence TTR 1.0 -> clamps to 1, so vocabulary = (0 + 1)/2 = 0.5
    // pronouns u x4 + me -> rate 1/3 >= 0.2 bound -> pronoun feature 0
    const double score = formality_score(kInformalText, ScoringConfig::builtin());
    CHECK(score == doctest::Approx(0.5 / 3.0).epsilon(1e-9));
    CHECK(score < 0.3);
}

TEST_CASE("formal register fixture clamps every sub-score to 1") {
    CHECK(formality_score(kFormalText, ScoringConfig::builtin()) == doctest::Approx(1.0));
}

TEST_CASE("formality is invariant under text duplication") {
    const ScoringConfig& config = ScoringConfig::builtin();
    const std::string once = "The quarterly filing requires careful reconciliation. We should "
                             "review the supplier ledger before Friday.";
    const std::string twice = once + " " + once;
    CHECK(formality_score(twice, config) ==
          doctest::Approx(formality_score(once, config)).epsilon(1e-12));
}

TEST_CASE("empty text is an input error for both scorers") {
    CHECK_THROWS_AS(formality_score("", ScoringConfig::builtin()), InputError);
    CHECK_THROWS_AS(technical_score("  ", ScoringConfig::builtin()), InputError);
}

TEST_CASE("zero lexicon hits and minimal grade score 0") {
    // two tiny sentences: grade proxy lands far below the lower bound
    CHECK(technical_score("a a a. b b.", ScoringConfig::builtin()) == doctest::Approx(0.0));
}

TEST_CASE("fixture saturating all three technical sub-scores is 1") {
    ScoringConfig config = ScoringConfig::builtin();
    config.domain_terms = {"cash flow"};
    config.jargon_terms = {"ebitda"};
    // one long sentence, dense in the lexicon term and jargon, polysyllabic
    const std::string text =
        "Sophisticated ebitda ebitda considerations regarding cash flow cash flow cash flow "
        "optimization methodologies demonstrate quantitative cash flow cash flow cash flow "
        "cash flow evaluation ebitda procedures cash flow throughout organizational planning.";
    CHECK(technical_score(text, config) == doctest::Approx(1.0));
}

TEST_CASE("crafted fixture matches hand-computed composite") {
    ScoringConfig config = ScoringConfig::builtin();
    config.domain_terms = {"cash flow"};
    config.jargon_terms = {"roi"};
    // "we track cash flow and roi here. numbers look fine today there."
    // tokens: 12; "cash flow" hits: 1 -> density 1/12 = 0.08333 -> clamps to 1
    // sentences: 2 of 6 words; syllables: we(1) track(1) cash(1) flow(1) and(1) roi(2)
    //   here(1=he... vowel groups: e->1? "here": e,e -> h-e-r-e: groups "e","e" = 2)
    // jargon hits 1 -> 0.5 per sentence -> 0.25 normalized
    const std::string text = "we track cash flow and roi here. numbers look fine today there.";

    const TokenizedText t = tokenize_text(text);
    REQUIRE(t.word_count == 12);
    REQUIRE(t.sentences.size() == 2);
    std::size_t syllables = 0;
    for (const auto& sentence : t.sentences) {
        for (const auto& word : sentence) syllables += syllable_estimate(word);
    }
    const double grade = 0.39 * 6.0 + 11.8 * (double(syllables) / 12.0) - 15.59;
    const double grade_sub = normalize_to_bounds(grade, config.grade.lo, config.grade.hi);
    const double density_sub = normalize_to_bounds(1.0 / 12.0, config.term_density.lo,
                                                   config.term_density.hi);
    const double jargon_sub = normalize_to_bounds(0.5, config.jargon_per_sentence.lo,
                                                  config.jargon_per_sentence.hi);
    const double expected = (density_sub + grade_sub + jargon_sub) / 3.0;
    CHECK(technical_score(text, config) == doctest::Approx(expected).epsilon(1e-12));
}

TEST_CASE("technical score is invariant under text duplication") {
    const ScoringConfig& config = ScoringConfig::builtin();
    const std::string once = "Our cash flow projection needs a better roi model. The balance "
                             "sheet shows leverage concerns.";
    const std::string twice = once + " " + once;
    CHECK(technical_score(twice, config) ==
          doctest::Approx(technical_score(once, config)).epsilon(1e-12));
}

TEST_CASE("stability formula is exact over 1000 random error pairs") {
    Rng rng(3);
    for (int i = 0; i < 1000; ++i) {
        const double ef = rng.unit();
        const double et = rng.unit();
        const auto score = stability_from_errors(ef, et);
        CHECK(score.stability == 1.0 - 0.5 * (ef + et));
        CHECK(score.stability >= 0.0);
        CHECK(score.stability <= 1.0);
    }
}

TEST_CASE("direct formula examples") {
    CHECK(stability_from_errors(0.2, 0.3).stability == doctest::Approx(0.75));
    // a combined error budget of 0.184 keeps stability at 0.908
    CHECK(stability_from_errors(0.092, 0.092).stability == doctest::Approx(0.908));
    CHECK(stability_from_errors(0.0, 0.0).stability == doctest::Approx(1.0));
}

TEST_CASE("measured-equals-target transcript scores stability 1") {
    const ScoringConfig& config = ScoringConfig::builtin();
    const auto transcript = make_transcript(
        {"We should examine the cash flow statement before revising the business plan.",
         "Agreed, the projections deserve scrutiny.",
         "Our balance sheet shows the roi on the new kitchen is holding steady."});

    // measure first, then point the targets at the measured values
    double formality_total = 0.0;
    double technical_total = 0.0;
    for (const auto* turn : transcript.user_turns()) {
        formality_total += formality_score(turn->content, config);
        technical_total += technical_score(turn->content, config);
    }
    const auto n = double(transcript.user_turns().size());

    auto params = schema::randomize_parameters(9);
    params.dynamics.formality = formality_total / n;
    params.linguistic.technical_language_level = technical_total / n;

    const auto score = stability_score(transcript, params, config);
    CHECK(score.formality_error == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(score.technical_error == doctest::Approx(0.0).epsilon(1e-12));
    CHECK(score.stability == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("stability needs user turns") {
    const auto transcript = make_transcript({"only the adviser speaks"},
                                            gateway::Speaker::assistant);
    const auto params = schema::randomize_parameters(2);
    CHECK_THROWS_AS(stability_score(transcript, params, ScoringConfig::builtin()), InputError);
}

TEST_CASE("stability decreases in each error") {
    const auto base = stability_from_errors(0.2, 0.2);
    CHECK(stability_from_errors(0.3, 0.2).stability < base.stability);
    CHECK(stability_from_errors(0.2, 0.3).stability < base.stability);
}

TEST_CASE("scores rise with their raw feature rates inside the clamp bounds") {
    const ScoringConfig& config = ScoringConfig::builtin();
    // more personal pronouns lowers formality
    const std::string detached = "The committee reviewed the quarterly projections carefully.";
    const std::string personal = "You reviewed my quarterly projections carefully with me.";
    CHECK(formality_score(personal, config) < formality_score(detached, config));

    // more jargon raises the technical score
    ScoringConfig tech = config;
    tech.domain_terms = {"never matches anything"};
    tech.jargon_terms = {"roi"};
    const std::string sparse = "The projection for the quarter looks steady and calm overall.";
    const std::string dense = "The roi projection for the quarter looks roi steady overall.";
    CHECK(technical_score(dense, tech) > technical_score(sparse, tech));
}

TEST_CASE("scoring config round-trips through its data file") {
    const auto config =
        ScoringConfig::from_file(std::string(CONVSIM_TEST_DATA_DIR) + "/../../core/data/lexicons.json");
    CHECK(config.word_length.lo == doctest::Approx(3.5));
    CHECK(config.jargon_per_sentence.hi == doctest::Approx(2.0));
    CHECK(!config.domain_terms.empty());
    CHECK(!config.jargon_terms.empty());
    // shipped defaults agree with the builtin calibration
    const std::string text = "Our cash flow outlook depends on the roi of the second location.";
    CHECK(technical_score(text, config) ==
          doctest::Approx(technical_score(text, ScoringConfig::builtin())).epsilon(1e-12));
}
