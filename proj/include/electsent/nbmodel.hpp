#pragma once

#include <filesystem>
#include <map>
#include <set>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "electsent/labeling.hpp"

namespace electsent {

// Lowercases, splits on Unicode whitespace, trims edge punctuation
// (keeping '#', '@' and apostrophes), and dedupes to presence features.
std::set<std::string> tokenize(std::string_view text);

struct SentimentModel {
    std::string candidate;
    std::size_t n_pos = 0;
    std::size_t n_neg = 0;
    double alpha = 1.0;
    // token -> (documents containing it per class: positive, negative)
    std::map<std::string, std::pair<std::size_t, std::size_t>> presence;

    bool operator==(const SentimentModel&) const = default;
};

// All tweets must carry the same candidate. Counts document presence,
// not token frequency.
SentimentModel train(const std::vector<LabeledTweet>& labeled, double alpha = 1.0);

struct LogScores {
    double pos = 0.0;
    double neg = 0.0;
};

// Bernoulli scores in log space: prior plus a presence or absence term
// for every vocabulary token. Tokens outside the vocabulary are ignored.
// An empty class yields -infinity for that class.
LogScores log_posterior(const SentimentModel& model, const std::set<std::string>& tokens);

// Positive iff score_pos > score_neg; an exact tie classifies Negative.
// Small unit-smoothed models are compared in exact integer arithmetic, so
// the tie rule does not depend on log-sum rounding; larger models fall
// back to the log scores.
Sentiment classify_tokens(const SentimentModel& model, const std::set<std::string>& tokens);
Sentiment classify(const SentimentModel& model, std::string_view text);

// Versioned JSON with token rows sorted lexicographically, so equal
// models always serialize to identical bytes.
std::string to_json(const SentimentModel& model);
SentimentModel model_from_json(const std::string& text);

void save_model(const SentimentModel& model, const std::filesystem::path& path);
SentimentModel load_model(const std::filesystem::path& path);

}  // namespace electsent
