#pragma once

#include <string>
#include <vector>

namespace convsim::metrics {

/// Word tokens (alphanumeric + apostrophe runs, original casing) grouped by
/// sentence. Sentences split on . ! ? ; only segments containing at least
/// one word count.
struct TokenizedText {
    std::vector<std::vector<std::string>> sentences;
    std::size_t word_count = 0;

    std::vector<std::string> flat_words() const;
};

TokenizedText tokenize_text(const std::string& text);

double mean_word_length(const TokenizedText& t);
/// Mean per-sentence type-token ratio; per-sentence so that repeating whole
/// sentences leaves the statistic unchanged.
double mean_sentence_ttr(const TokenizedText& t);
double mean_sentence_length(const TokenizedText& t);
/// Share of words that are first/second-person pronouns (txt-speak included).
double personal_pronoun_rate(const TokenizedText& t);
std::size_t syllable_estimate(const std::string& word);
/// Grade-level proxy from words-per-sentence and syllables-per-word.
double readability_grade(const TokenizedText& t);

/// clamp((x - lo) / (hi - lo), 0, 1)
double normalize_to_bounds(double x, double lo, double hi);

}  // namespace convsim::metrics
