#include "convsim/metrics/stability.hpp"

#include <cmath>

#include <json.hpp>

#include "convsim/errors.hpp"
#include "convsim/metrics/text_stats.hpp"
#include "convsim/util/strings.hpp"

namespace convsim::metrics {

namespace {

ScoringConfig make_builtin() {
    ScoringConfig c;
    c.domain_terms = {
        "cash flow",      "business plan",   "market research", "profit margin",
        "supply chain",   "balance sheet",   "target market",   "break even",
        "sba loan",       "venture capital", "customer acquisition", "unit economics",
        "gross margin",   "working capital", "value proposition", "due diligence",
        "burn rate",      "churn rate",      "conversion rate", "inventory turnover"};
    c.jargon_terms = {"roi",  "kpi",   "b2b", "b2c",  "mvp",    "saas", "cac",
                      "ltv",  "ebitda", "arr", "mrr",  "capex",  "opex", "sku",
                      "cogs", "p&l",   "gtm", "runway"};
    return c;
}

Bounds read_bounds(const nlohmann::json& doc, const char* key, Bounds fallback) {
    if (!doc.contains(key)) return fallback;
    const auto& v = doc.at(key);
    return {v.at(0).get<double>(), v.at(1).get<double>()};
}

std::vector<std::string> canonical_tokens(const std::string& text) {
    std::vector<std::string> out;
    std::string current;
    for (unsigned char ch : text) {
        if (std::isalnum(ch) || ch == '&') {
            current.push_back(static_cast<char>(std::tolower(ch)));
        } else if (!current.empty()) {
            out.push_back(std::move(current));
            current.clear();
        }
    }
    if (!current.empty()) out.push_back(std::move(current));
    return out;
}

std::size_t count_phrase_hits(const std::vector<std::string>& tokens,
                              const std::vector<std::string>& phrases) {
    std::size_t hits = 0;
    for (const auto& phrase : phrases) {
        const auto parts = split(phrase, ' ');
        if (parts.empty()) continue;
        for (size_t i = 0; i + parts.size() <= tokens.size(); ++i) {
            bool match = true;
            for (size_t j = 0; j < parts.size(); ++j) {
                if (tokens[i + j] != parts[j]) {
                    match = false;
                    break;
                }
            }
            if (match) ++hits;
        }
    }
    return hits;
}

double mean_user_turn_score(const gateway::Transcript& transcript, const ScoringConfig& config,
                            double (*scorer)(const std::string&, const ScoringConfig&)) {
    const auto user_turns = transcript.user_turns();
    if (user_turns.empty()) {
        throw InputError("stability needs at least one user turn");
    }
    double total = 0.0;
    for (const auto* turn : user_turns) {
        total += scorer(turn->content, config);
    }
    return total / static_cast<double>(user_turns.size());
}

}  // namespace

const ScoringConfig& ScoringConfig::builtin() {
    static const ScoringConfig instance = make_builtin();
    return instance;
}

ScoringConfig ScoringConfig::from_file(const std::string& path) {
    nlohmann::json doc;
    try {
        doc = nlohmann::json::parse(read_file(path));
    } catch (const nlohmann::json::parse_error& e) {
        throw ConfigError("malformed scoring config " + path + ": " + e.what());
    }
    ScoringConfig c = builtin();
    if (doc.contains("domainTerms")) {
        c.domain_terms.clear();
        for (const auto& v : doc.at("domainTerms")) c.domain_terms.push_back(v.get<std::string>());
    }
    if (doc.contains("jargonTerms")) {
        c.jargon_terms.clear();
        for (const auto& v : doc.at("jargonTerms")) c.jargon_terms.push_back(v.get<std::string>());
    }
    c.word_length = read_bounds(doc, "wordLengthBounds", c.word_length);
    c.type_token = read_bounds(doc, "typeTokenBounds", c.type_token);
    c.sentence_length = read_bounds(doc, "sentenceLengthBounds", c.sentence_length);
    c.pronoun_rate = read_bounds(doc, "pronounRateBounds", c.pronoun_rate);
    c.term_density = read_bounds(doc, "termDensityBounds", c.term_density);
    c.grade = read_bounds(doc, "gradeBounds", c.grade);
    c.jargon_per_sentence = read_bounds(doc, "jargonPerSentenceBounds", c.jargon_per_sentence);
    return c;
}

double formality_score(const std::string& text, const ScoringConfig& config) {
    const TokenizedText t = tokenize_text(text);
    if (t.word_count == 0) {
        throw InputError("formality score needs non-empty text");
    }
    const double vocabulary =
        0.5 * normalize_to_bounds(mean_word_length(t), config.word_length.lo,
                                  config.word_length.hi) +
        0.5 * normalize_to_bounds(mean_sentence_ttr(t), config.type_token.lo,
                                  config.type_token.hi);
    const double structure = normalize_to_bounds(mean_sentence_length(t),
                                                 config.sentence_length.lo,
                                                 config.sentence_length.hi);
    const double pronouns = 1.0 - normalize_to_bounds(personal_pronoun_rate(t),
                                                      config.pronoun_rate.lo,
                                                      config.pronoun_rate.hi);
    return (vocabulary + structure + pronouns) / 3.0;
}

double technical_score(const std::string& text, const ScoringConfig& config) {
    const TokenizedText t = tokenize_text(text);
    if (t.word_count == 0) {
        throw InputError("technical score needs non-empty text");
    }
    if (config.domain_terms.empty() && config.jargon_terms.empty()) {
        throw InputError("technical score needs non-empty lexicons");
    }
    const auto tokens = canonical_tokens(text);

    const double density =
        static_cast<double>(count_phrase_hits(tokens, config.domain_terms)) /
        static_cast<double>(tokens.size());
    const double term_sub =
        normalize_to_bounds(density, config.term_density.lo, config.term_density.hi);

    const double grade_sub =
        normalize_to_bounds(readability_grade(t), config.grade.lo, config.grade.hi);

    const double jargon_hits =
        static_cast<double>(count_phrase_hits(tokens, config.jargon_terms));
    const double per_sentence = jargon_hits / static_cast<double>(t.sentences.size());
    const double jargon_sub = normalize_to_bounds(per_sentence, config.jargon_per_sentence.lo,
                                                  config.jargon_per_sentence.hi);

    return (term_sub + grade_sub + jargon_sub) / 3.0;
}

StabilityScore stability_from_errors(double formality_error, double technical_error) {
    StabilityScore s;
    s.formality_error = formality_error;
    s.technical_error = technical_error;
    s.stability = 1.0 - 0.5 * (formality_error + technical_error);
    return s;
}

StabilityScore stability_score(const gateway::Transcript& transcript,
                               const schema::ConversationParameters& params,
                               const ScoringConfig& config) {
    const double measured_formality = mean_user_turn_score(transcript, config, &formality_score);
    const double measured_technical = mean_user_turn_score(transcript, config, &technical_score);
    const double ef = std::abs(measured_formality - params.dynamics.formality);
    const double et = std::abs(measured_technical - params.linguistic.technical_language_level);
    return stability_from_errors(ef, et);
}

}  // namespace convsim::metrics
