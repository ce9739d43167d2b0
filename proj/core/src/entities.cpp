#include "convsim/metrics/entities.hpp"

#include <algorithm>
#include <cctype>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::metrics {

namespace {

struct Token {
    std::string raw;
    std::string canonical;
    bool sentence_initial = false;
};

const std::set<std::string>& entity_stopwords() {
    static const std::set<std::string> words = {
        "i",    "me",  "my",   "we",   "us",   "our",  "you",  "your", "he",   "she",
        "it",   "they", "them", "the",  "a",    "an",   "this", "that", "these", "those",
        "but",  "and", "or",   "if",   "so",   "oh",   "hey",  "ok",   "okay", "yes",
        "no",   "not", "what", "when", "how",  "why",  "where"};
    return words;
}

// naive singularization: drops plural suffixes without a dictionary
std::string singularize(std::string word) {
    const auto ends_with = [&](const char* suffix) {
        const size_t n = std::char_traits<char>::length(suffix);
        return word.size() >= n && word.compare(word.size() - n, n, suffix) == 0;
    };
    if (word.size() > 4 && ends_with("ies")) {
        word.replace(word.size() - 3, 3, "y");
    } else if (word.size() > 4 && (ends_with("ches") || ends_with("shes"))) {
        word.erase(word.size() - 2);
    } else if (word.size() > 3 && (ends_with("ses") || ends_with("xes") || ends_with("zes"))) {
        word.erase(word.size() - 2);
    } else if (word.size() > 3 && word.back() == 's' && !ends_with("ss") && !ends_with("us") &&
               !ends_with("is")) {
        word.pop_back();
    }
    return word;
}

std::vector<Token> tokenize_for_entities(const std::string& text) {
    std::vector<Token> tokens;
    std::string current;
    bool at_sentence_start = true;

    auto flush = [&] {
        if (current.empty()) return;
        Token token;
        token.raw = current;
        token.canonical = singularize(to_lower(current));
        token.sentence_initial = at_sentence_start;
        at_sentence_start = false;
        tokens.push_back(std::move(token));
        current.clear();
    };

    for (unsigned char c : text) {
        if (std::isalnum(c)) {
            current.push_back(static_cast<char>(c));
        } else {
            flush();
            if (c == '.' || c == '!' || c == '?' || c == ';') {
                at_sentence_start = true;
            }
        }
    }
    flush();
    return tokens;
}

bool is_acronym(const std::string& raw) {
    if (raw.size() < 2) return false;
    return std::all_of(raw.begin(), raw.end(), [](unsigned char c) {
        return std::isupper(c) || std::isdigit(c);
    });
}

bool is_capitalized(const std::string& raw) {
    return !raw.empty() && std::isupper(static_cast<unsigned char>(raw[0]));
}

std::set<std::string> extract_from_text(const std::string& text,
                                        const std::vector<std::vector<std::string>>& lexicon) {
    const auto tokens = tokenize_for_entities(text);
    std::set<std::string> entities;
    std::vector<bool> covered(tokens.size(), false);

    // lexicon noun phrases first; they absorb overlapping capitalized spans
    for (const auto& phrase : lexicon) {
        if (phrase.empty()) continue;
        for (size_t i = 0; i + phrase.size() <= tokens.size(); ++i) {
            bool match = true;
            for (size_t j = 0; j < phrase.size(); ++j) {
                if (covered[i + j] || tokens[i + j].canonical != phrase[j]) {
                    match = false;
                    break;
                }
            }
            if (match) {
                std::vector<std::string> parts(phrase.begin(), phrase.end());
                entities.insert(join(parts, " "));
                for (size_t j = 0; j < phrase.size(); ++j) covered[i + j] = true;
            }
        }
    }

    // capitalized spans over the remaining tokens
    size_t i = 0;
    while (i < tokens.size()) {
        if (covered[i] || !is_capitalized(tokens[i].raw) ||
            entity_stopwords().count(to_lower(tokens[i].raw))) {
            ++i;
            continue;
        }
        size_t end = i;
        while (end + 1 < tokens.size() && !covered[end + 1] &&
               is_capitalized(tokens[end + 1].raw) &&
               !entity_stopwords().count(to_lower(tokens[end + 1].raw))) {
            ++end;
        }
        // a sentence-opening capital is ordinary prose unless it is an
        // acronym or continues into a multi-word span
        if (tokens[i].sentence_initial && end == i && !is_acronym(tokens[i].raw)) {
            ++i;
            continue;
        }
        std::vector<std::string> parts;
        for (size_t j = i; j <= end; ++j) parts.push_back(tokens[j].canonical);
        entities.insert(join(parts, " "));
        i = end + 1;
    }
    return entities;
}

std::vector<std::vector<std::string>> make_builtin_lexicon() {
    const std::vector<std::string> phrases = {
        "sba loan",      "business plan",  "market research",  "cash flow",
        "food truck",    "profit margin",  "balance sheet",    "supply chain",
        "target market", "customer acquisition", "focus group", "mission statement",
        "break even",    "venture capital", "trade show",      "health inspection"};
    std::vector<std::vector<std::string>> out;
    for (const auto& p : phrases) out.push_back(split(p, ' '));
    return out;
}

}  // namespace

const ExtractionConfig& ExtractionConfig::builtin() {
    static const ExtractionConfig instance = [] {
        ExtractionConfig c;
        const auto lexicon = make_builtin_lexicon();
        for (const auto& phrase : lexicon) {
            std::vector<std::string> parts(phrase.begin(), phrase.end());
            c.lexicon_phrases.push_back(join(parts, " "));
        }
        return c;
    }();
    return instance;
}

ExtractionConfig ExtractionConfig::from_file(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed extraction config " + path + ": " + e.what());
    }
    ExtractionConfig c = builtin();
    if (doc.contains("entityPhrases")) {
        c.lexicon_phrases.clear();
        for (const auto& v : doc.at("entityPhrases")) {
            c.lexicon_phrases.push_back(v.get<std::string>());
        }
    }
    c.backend = doc.value("backend", c.backend);
    c.fallback_enabled = doc.value("fallbackEnabled", c.fallback_enabled);
    return c;
}

std::vector<std::set<std::string>> extract_entities(const gateway::Transcript& transcript,
                                                    const ExtractionConfig& config) {
    if (config.backend != "rules") {
        if (!config.fallback_enabled) {
            throw ProviderError("entity extraction backend \"" + config.backend +
                                "\" is unavailable and the rule-based fallback is disabled");
        }
        // fall through to rules
    }
    std::vector<std::vector<std::string>> lexicon;
    for (const auto& phrase : config.lexicon_phrases) {
        std::vector<std::string> canonical;
        for (const auto& word : split(phrase, ' ')) {
            if (!word.empty()) canonical.push_back(singularize(to_lower(word)));
        }
        if (!canonical.empty()) lexicon.push_back(std::move(canonical));
    }
    // longest phrases match first so sub-phrases cannot steal tokens
    std::stable_sort(lexicon.begin(), lexicon.end(),
                     [](const auto& a, const auto& b) { return a.size() > b.size(); });

    std::vector<std::set<std::string>> out;
    out.reserve(transcript.turns.size());
    for (const auto& turn : transcript.turns) {
        out.push_back(extract_from_text(turn.content, lexicon));
    }
    return out;
}

RevisitResult revisit_rate(const std::vector<std::set<std::string>>& entity_sets) {
    if (entity_sets.size() < 2) {
        throw InputError("revisit rate needs at least two turns");
    }
    RevisitResult result;
    result.entity_sets = entity_sets;

    std::set<std::string> seen(entity_sets[0].begin(), entity_sets[0].end());
    double fraction_sum = 0.0;
    std::size_t eligible = 0;
    double raw_sum = 0.0;

    for (size_t t = 1; t < entity_sets.size(); ++t) {
        const auto& current = entity_sets[t];
        std::size_t intersection = 0;
        for (const auto& entity : current) {
            if (seen.count(entity)) ++intersection;
        }
        raw_sum += static_cast<double>(intersection);
        if (!current.empty()) {
            const double fraction =
                static_cast<double>(intersection) / static_cast<double>(current.size());
            result.per_turn.emplace_back(static_cast<int>(t) + 1, fraction);
            fraction_sum += fraction;
            ++eligible;
        }
        seen.insert(current.begin(), current.end());
    }

    result.aggregate = eligible == 0 ? 0.0 : fraction_sum / static_cast<double>(eligible);
    result.raw_mean_count = raw_sum / static_cast<double>(entity_sets.size() - 1);
    return result;
}

}  // namespace convsim::metrics
