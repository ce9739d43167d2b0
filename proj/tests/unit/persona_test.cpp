#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "convsim/errors.hpp"
#include "convsim/persona/persona.hpp"

using namespace convsim;
using namespace convsim::persona;

namespace {
const std::vector<std::string> kPool = {
    "food-business", "technology", "healthcare",  "retail",      "education",
    "fitness",       "logistics",  "hospitality", "agriculture", "consulting",
    "manufacturing", "creative-services", "food-business", "technology", "retail",
    "healthcare",    "education",  "fitness",     "logistics",   "hospitality"};
}

TEST_CASE("zero profiles is a valid empty batch") {
    CHECK(generate_profiles(7, 0, {"food-business"}).empty());
}

TEST_CASE("empty industry pool with n > 0 is a configuration error") {
    CHECK_THROWS_AS(generate_profiles(7, 3, {}), ConfigError);
}

TEST_CASE("800 profiles have distinct ids and non-empty fields") {
    const auto batch = generate_profiles(7, 800, kPool);
    REQUIRE(batch.size() == 800);
    std::set<std::string> ids;
    for (const auto& p : batch) {
        ids.insert(p.id);
        CHECK(!p.demographic.empty());
        CHECK(!p.industry.empty());
        CHECK(!p.business_idea.empty());
        CHECK(!p.prior_experience.empty());
    }
    CHECK(ids.size() == 800);
}

TEST_CASE("same seed gives byte-identical batches") {
    const auto a = generate_profiles(7, 100, kPool);
    const auto b = generate_profiles(7, 100, kPool);
    CHECK(a == b);
    CHECK(profiles_to_jsonl(a) == profiles_to_jsonl(b));
}

TEST_CASE("prefix stability: first k of n equals the batch of k") {
    const auto full = generate_profiles(11, 50, kPool);
    for (size_t k : {1u, 7u, 25u, 50u}) {
        const auto prefix = generate_profiles(11, k, kPool);
        REQUIRE(prefix.size() == k);
        for (size_t i = 0; i < k; ++i) {
            CHECK(prefix[i] == full[i]);
        }
    }
}

TEST_CASE("different seeds change the batch") {
    CHECK(!(generate_profiles(1, 10, kPool) == generate_profiles(2, 10, kPool)));
}

TEST_CASE("baseline profile is deterministic with every field populated") {
    const auto a = baseline_profile(1);
    const auto b = baseline_profile(1);
    CHECK(a == b);
    CHECK(!a.demographic.empty());
    CHECK(!a.industry.empty());
    CHECK(!a.business_idea.empty());
    CHECK(!a.prior_experience.empty());
}

TEST_CASE("baseline business ideas differ across seed pairs") {
    for (uint64_t seed = 0; seed < 200; seed += 2) {
        const auto a = baseline_profile(seed);
        const auto b = baseline_profile(seed + 1);
        CHECK(a.business_idea != b.business_idea);
    }
}

TEST_CASE("profiles round-trip through JSONL") {
    const auto batch = generate_profiles(3, 20, kPool);
    const auto parsed = profiles_from_jsonl(profiles_to_jsonl(batch));
    CHECK(parsed == batch);
}
