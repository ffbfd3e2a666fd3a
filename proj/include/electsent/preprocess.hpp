#pragma once

#include <istream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "electsent/corpus.hpp"
#include "electsent/roster.hpp"

namespace electsent {

/// A tweet that survived cleaning: URLs and picture links removed, at least
/// one roster candidate mentioned. Hashtags, mentions, and retweet markers
/// are left in place.
struct CleanTweet {
    std::string id;
    std::int64_t created_at = 0;
    std::string text;
    std::set<std::string> mentioned;  // canonical candidate names

    bool operator==(const CleanTweet&) const = default;
};

/// Remove http(s) URLs, bare t.co links, and pic.twitter.com links together
/// with the whitespace that preceded them, then trim. Everything else is
/// left byte-for-byte, HTML entities included.
std::string strip_urls(const std::string& text);

/// Candidates whose alias occurs case-insensitively anywhere in the text,
/// hashtag-embedded occurrences included.
std::set<std::string> detect_candidates(const std::string& text,
                                        const CandidateRoster& roster);

struct PreprocessResult {
    std::vector<CleanTweet> kept;
    std::size_t input_count = 0;
    std::optional<double> removal_rate;  // empty input -> no rate, not 0
};

/// Clean every tweet and keep the ones mentioning at least one candidate.
/// Detection runs on the cleaned text.
PreprocessResult preprocess_corpus(const std::vector<Tweet>& tweets,
                                   const CandidateRoster& roster);

std::string to_jsonl(const CleanTweet& tweet);
std::vector<CleanTweet> read_clean_jsonl(std::istream& in);

}  // namespace electsent
