#include "convsim/metrics/text_stats.hpp"

#include <algorithm>
#include <cctype>
#include <set>

#include "convsim/util/strings.hpp"

namespace convsim::metrics {

namespace {

bool is_word_char(unsigned char c) { return std::isalnum(c) || c == '\''; }

const std::set<std::string>& personal_pronouns() {
    static const std::set<std::string> pronouns = {
        "i",    "me",    "my",    "mine",  "myself",    "we",       "us",  "our",
        "ours", "ourselves", "you", "your", "yours",    "yourself", "yourselves",
        "u",    "ur",    "im",    "ive",   "id"};
    return pronouns;
}

}  // namespace

std::vector<std::string> TokenizedText::flat_words() const {
    std::vector<std::string> out;
    out.reserve(word_count);
    for (const auto& sentence : sentences) {
        out.insert(out.end(), sentence.begin(), sentence.end());
    }
    return out;
}

TokenizedText tokenize_text(const std::string& text) {
    TokenizedText out;
    std::vector<std::string> current_sentence;
    std::string current_word;

    auto flush_word = [&] {
        if (!current_word.empty()) {
            current_sentence.push_back(current_word);
            ++out.word_count;
            current_word.clear();
        }
    };
    auto flush_sentence = [&] {
        flush_word();
        if (!current_sentence.empty()) {
            out.sentences.push_back(std::move(current_sentence));
            current_sentence.clear();
        }
    };

    for (unsigned char c : text) {
        if (is_word_char(c)) {
            current_word.push_back(static_cast<char>(c));
        } else {
            flush_word();
            if (c == '.' || c == '!' || c == '?' || c == ';') {
                flush_sentence();
            }
        }
    }
    flush_sentence();
    return out;
}

double mean_word_length(const TokenizedText& t) {
    if (t.word_count == 0) return 0.0;
    std::size_t total = 0;
    for (const auto& sentence : t.sentences) {
        for (const auto& word : sentence) {
            total += word.size();
        }
    }
    return static_cast<double>(total) / static_cast<double>(t.word_count);
}

double mean_sentence_ttr(const TokenizedText& t) {
    if (t.sentences.empty()) return 0.0;
    double total = 0.0;
    for (const auto& sentence : t.sentences) {
        std::set<std::string> types;
        for (const auto& word : sentence) {
            types.insert(to_lower(word));
        }
        total += static_cast<double>(types.size()) / static_cast<double>(sentence.size());
    }
    return total / static_cast<double>(t.sentences.size());
}

double mean_sentence_length(const TokenizedText& t) {
    if (t.sentences.empty()) return 0.0;
    return static_cast<double>(t.word_count) / static_cast<double>(t.sentences.size());
}

double personal_pronoun_rate(const TokenizedText& t) {
    if (t.word_count == 0) return 0.0;
    std::size_t hits = 0;
    for (const auto& sentence : t.sentences) {
        for (const auto& word : sentence) {
            std::string lowered = to_lower(word);
            lowered.erase(std::remove(lowered.begin(), lowered.end(), '\''), lowered.end());
            if (personal_pronouns().count(lowered)) ++hits;
        }
    }
    return static_cast<double>(hits) / static_cast<double>(t.word_count);
}

std::size_t syllable_estimate(const std::string& word) {
    std::size_t groups = 0;
    bool in_group = false;
    for (unsigned char c : word) {
        const char l = static_cast<char>(std::tolower(c));
        const bool vowel = l == 'a' || l == 'e' || l == 'i' || l == 'o' || l == 'u' || l == 'y';
        if (vowel && !in_group) {
            ++groups;
            in_group = true;
        } else if (!vowel) {
            in_group = false;
        }
    }
    return std::max<std::size_t>(groups, 1);
}

double readability_grade(const TokenizedText& t) {
    if (t.word_count == 0 || t.sentences.empty()) return 0.0;
    std::size_t syllables = 0;
    for (const auto& sentence : t.sentences) {
        for (const auto& word : sentence) {
            syllables += syllable_estimate(word);
        }
    }
    const double words_per_sentence = mean_sentence_length(t);
    const double syllables_per_word =
        static_cast<double>(syllables) / static_cast<double>(t.word_count);
    return 0.39 * words_per_sentence + 11.8 * syllables_per_word - 15.59;
}

double normalize_to_bounds(double x, double lo, double hi) {
    if (hi <= lo) return x >= hi ? 1.0 : 0.0;
    const double v = (x - lo) / (hi - lo);
    return std::clamp(v, 0.0, 1.0);
}

}  // namespace convsim::metrics
