#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

namespace convsim::persona {

/// Seeded entrepreneur background used to anchor one conversation.
struct EntrepreneurProfile {
    std::string id;
    std::string demographic;       // age band, gender, locale descriptors
    std::string industry;
    std::string business_idea;
    std::string prior_experience;

    bool operator==(const EntrepreneurProfile&) const = default;
};

/// Curated facet lists the generator expands. Ships with builtin defaults;
/// researchers can extend the pools from a JSON file without code changes.
struct FacetLibrary {
    std::vector<std::string> age_bands;
    std::vector<std::string> genders;
    std::vector<std::string> locales;
    std::vector<std::string> experience_templates;   // may contain {{industry}}
    std::vector<std::string> idea_angles;
    std::map<std::string, std::vector<std::string>> idea_stems;  // by industry, "*" = fallback

    static const FacetLibrary& builtin();
    static FacetLibrary from_file(const std::string& path);
};

/// Exactly n profiles, a pure function of (seed, n, pool, facets). The first
/// k profiles of a batch of n equal the batch of k for k <= n.
std::vector<EntrepreneurProfile> generate_profiles(uint64_t seed, std::size_t n,
                                                   const std::vector<std::string>& industry_pool,
                                                   const FacetLibrary& facets = FacetLibrary::builtin());

/// Minimal profile for unparameterized runs: brief background and prior
/// experience only.
EntrepreneurProfile baseline_profile(uint64_t seed,
                                     const FacetLibrary& facets = FacetLibrary::builtin());

std::string profiles_to_jsonl(const std::vector<EntrepreneurProfile>& profiles);
std::vector<EntrepreneurProfile> profiles_from_jsonl(const std::string& text);

}  // namespace convsim::persona
