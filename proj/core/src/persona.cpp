#include "convsim/persona/persona.hpp"

#include <sstream>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/util/rng.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::persona {

namespace {

using ojson = nlohmann::ordered_json;

FacetLibrary make_builtin() {
    FacetLibrary f;
    f.age_bands = {"early 20s", "late 20s", "mid 30s", "early 40s", "mid 50s", "early 60s"};
    f.genders = {"woman", "man", "nonbinary person"};
    f.locales = {"from a large coastal city",      "from a rural Midwest town",
                 "from a mid-sized southern city", "from a Pacific Northwest suburb",
                 "recently settled in a college town", "from an immigrant family in a border city"};
    f.experience_templates = {
        "spent six years in corporate {{industry}} roles before going independent",
        "ran a family shop and is now starting over in {{industry}}",
        "is a first-time founder with no formal {{industry}} background",
        "freelanced in {{industry}} for a decade and wants to scale up",
        "managed a small team in {{industry}} and saved capital to launch",
        "left an academic career to enter {{industry}}"};
    f.idea_angles = {"for busy commuters",        "aimed at retirees",
                     "with a subscription model", "serving the local neighborhood",
                     "targeting small offices",   "built around community events",
                     "focused on sustainability", "with a mobile-first approach"};
    f.idea_stems = {
        {"food-business", {"a vegan bakery", "a food truck fleet", "a meal-prep service", "a specialty coffee roastery", "a regional sauce brand"}},
        {"technology", {"a scheduling app", "an inventory management tool", "a privacy-first analytics service", "a hardware repair marketplace"}},
        {"healthcare", {"a home-care coordination service", "a physical therapy studio", "a medical billing assistant"}},
        {"retail", {"a secondhand clothing store", "a hobby supplies shop", "a neighborhood hardware store"}},
        {"education", {"a tutoring studio", "a trade-skills bootcamp", "an after-school robotics club"}},
        {"fitness", {"a climbing gym", "a mobile personal-training service", "a youth sports program"}},
        {"logistics", {"a last-mile delivery service", "a cold-chain courier", "a warehouse-sharing platform"}},
        {"hospitality", {"a bed-and-breakfast", "a pop-up supper club", "an event venue"}},
        {"agriculture", {"an urban mushroom farm", "a farm-share cooperative", "a beekeeping supply business"}},
        {"consulting", {"a bookkeeping practice", "a compliance consultancy", "a marketing studio"}},
        {"manufacturing", {"a small-batch furniture workshop", "a 3D-printing job shop", "a packaging plant"}},
        {"creative-services", {"a branding agency", "a wedding photography studio", "a podcast production house"}},
        {"*", {"a local services business", "a niche online store", "a community workshop"}}};
    return f;
}

std::vector<std::string> read_list(const ojson& doc, const char* key,
                                   const std::vector<std::string>& fallback) {
    if (!doc.contains(key)) return fallback;
    std::vector<std::string> out;
    for (const auto& v : doc.at(key)) out.push_back(v.get<std::string>());
    return out;
}

const std::vector<std::string>& stems_for(const FacetLibrary& facets, const std::string& industry) {
    auto it = facets.idea_stems.find(industry);
    if (it != facets.idea_stems.end() && !it->second.empty()) return it->second;
    it = facets.idea_stems.find("*");
    if (it != facets.idea_stems.end() && !it->second.empty()) return it->second;
    throw ConfigError("facet library has no idea stems for industry \"" + industry + "\"");
}

std::vector<std::string> industry_keys(const FacetLibrary& facets) {
    std::vector<std::string> keys;
    for (const auto& [name, stems] : facets.idea_stems) {
        if (name != "*" && !stems.empty()) keys.push_back(name);
    }
    if (keys.empty()) keys.push_back("general");
    return keys;
}

std::string format_id(uint64_t seed, std::size_t index) {
    std::ostringstream out;
    out << "ent-" << std::hex << seed << std::dec << "-";
    std::string n = std::to_string(index);
    while (n.size() < 6) n.insert(n.begin(), '0');
    out << n;
    return out.str();
}

}  // namespace

const FacetLibrary& FacetLibrary::builtin() {
    static const FacetLibrary instance = make_builtin();
    return instance;
}

FacetLibrary FacetLibrary::from_file(const std::string& path) {
    const FacetLibrary& base = builtin();
    ojson doc;
    try {
        doc = ojson::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed facet file " + path + ": " + e.what());
    }
    FacetLibrary f;
    f.age_bands = read_list(doc, "ageBands", base.age_bands);
    f.genders = read_list(doc, "genders", base.genders);
    f.locales = read_list(doc, "locales", base.locales);
    f.experience_templates = read_list(doc, "experienceTemplates", base.experience_templates);
    f.idea_angles = read_list(doc, "ideaAngles", base.idea_angles);
    if (doc.contains("ideaStems")) {
        for (const auto& item : doc.at("ideaStems").items()) {
            std::vector<std::string> stems;
            for (const auto& v : item.value()) stems.push_back(v.get<std::string>());
            f.idea_stems[item.key()] = std::move(stems);
        }
        if (!f.idea_stems.count("*")) f.idea_stems["*"] = base.idea_stems.at("*");
    } else {
        f.idea_stems = base.idea_stems;
    }
    return f;
}

std::vector<EntrepreneurProfile> generate_profiles(uint64_t seed, std::size_t n,
                                                   const std::vector<std::string>& industry_pool,
                                                   const FacetLibrary& facets) {
    if (n == 0) return {};
    if (industry_pool.empty()) {
        throw ConfigError("industry pool must be non-empty when generating profiles");
    }

    std::vector<EntrepreneurProfile> out;
    out.reserve(n);
    for (std::size_t i = 0; i < n; ++i) {
        // demographic facets enumerate combinatorially by index so every
        // combination appears before any repeats; the rest is seeded draws
        const std::string& age = facets.age_bands[i % facets.age_bands.size()];
        const std::string& gender =
            facets.genders[(i / facets.age_bands.size()) % facets.genders.size()];
        const std::string& locale =
            facets.locales[(i / (facets.age_bands.size() * facets.genders.size())) %
                           facets.locales.size()];

        Rng rng(mix_seed(seed, i));
        EntrepreneurProfile p;
        p.id = format_id(seed, i);
        p.demographic = "a " + gender + " in their " + age + " " + locale;
        p.industry = industry_pool[rng.below(industry_pool.size())];
        const auto& stems = stems_for(facets, p.industry);
        p.business_idea = stems[rng.below(stems.size())] + " " +
                          facets.idea_angles[rng.below(facets.idea_angles.size())];
        p.prior_experience = expand_placeholders(
            facets.experience_templates[rng.below(facets.experience_templates.size())],
            {{"industry", p.industry}});
        out.push_back(std::move(p));
    }
    return out;
}

EntrepreneurProfile baseline_profile(uint64_t seed, const FacetLibrary& facets) {
    // extra idea facets keep the combined space large enough that nearby
    // seeds land on distinct ideas
    static const std::vector<std::string> kPositioning = {
        "run on a lean budget",       "started with family partners",
        "planned as a side venture",  "backed by personal savings",
        "grown from a weekend stall", "spun out of a former employer",
        "launched after a relocation", "built around repeat customers"};
    static const std::vector<std::string> kLocality = {
        "near the riverfront district", "in the old mill quarter",
        "by the university corridor",   "off the main square",
        "in a converted warehouse",     "at the farmers market",
        "along the harbor road",        "in the arts district",
        "next to the commuter station", "on the county fair circuit",
        "inside a shared kitchen",      "at a suburban strip mall",
        "in the historic downtown",     "near the medical campus",
        "beside the sports complex",    "around the tech park",
        "within the food hall",         "along the canal walk",
        "at the regional airport",      "near the fairgrounds",
        "by the lakefront promenade",   "in the garment district",
        "off the interstate exit",      "behind the civic center"};

    Rng rng(mix_seed(seed, 0x6261736521ULL));
    EntrepreneurProfile p;
    p.id = "base-" + std::to_string(seed);
    const std::string& gender = facets.genders[rng.below(facets.genders.size())];
    const std::string& age = facets.age_bands[rng.below(facets.age_bands.size())];
    p.demographic = "a " + gender + " in their " + age;
    const auto& industries = industry_keys(facets);
    p.industry = industries[rng.below(industries.size())];
    const auto& stems = stems_for(facets, p.industry);
    p.business_idea = stems[rng.below(stems.size())] + " " +
                      facets.idea_angles[rng.below(facets.idea_angles.size())] + " " +
                      kLocality[rng.below(kLocality.size())] + ", " +
                      kPositioning[rng.below(kPositioning.size())];
    p.prior_experience = expand_placeholders(
        facets.experience_templates[rng.below(facets.experience_templates.size())],
        {{"industry", p.industry}});
    return p;
}

std::string profiles_to_jsonl(const std::vector<EntrepreneurProfile>& profiles) {
    std::ostringstream out;
    for (const auto& p : profiles) {
        ojson row;
        row["id"] = p.id;
        row["demographic"] = p.demographic;
        row["industry"] = p.industry;
        row["businessIdea"] = p.business_idea;
        row["priorExperience"] = p.prior_experience;
        out << row.dump() << "\n";
    }
    return out.str();
}

std::vector<EntrepreneurProfile> profiles_from_jsonl(const std::string& text) {
    std::vector<EntrepreneurProfile> out;
    std::istringstream in(text);
    std::string line;
    size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        ojson row;
        try {
            row = ojson::parse(line);
        } catch (const nlohmann::json::parse_error& e) {
            throw ParseError("profile line " + std::to_string(line_no) + ": " + e.what(), line);
        }
        EntrepreneurProfile p;
        try {
            p.id = row.at("id").get<std::string>();
            p.demographic = row.at("demographic").get<std::string>();
            p.industry = row.at("industry").get<std::string>();
            p.business_idea = row.at("businessIdea").get<std::string>();
            p.prior_experience = row.at("priorExperience").get<std::string>();
        } catch (const nlohmann::json::exception& e) {
            throw SchemaError("profile line " + std::to_string(line_no) + ": " + e.what());
        }
        out.push_back(std::move(p));
    }
    return out;
}

}  // namespace convsim::persona
