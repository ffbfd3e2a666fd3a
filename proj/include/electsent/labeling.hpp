#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <optional>
#include <ostream>
#include <string>
#include <utility>
#include <vector>

#include "electsent/preprocess.hpp"

namespace electsent {

enum class Sentiment { Positive, Negative };

std::string sentiment_name(Sentiment s);
std::optional<Sentiment> parse_sentiment(std::string_view name);

/// What one annotator assigned to one tweet.
struct Assigned {
    std::string candidate;
    Sentiment sentiment = Sentiment::Positive;

    bool operator==(const Assigned&) const = default;
};

/// nullopt means the annotator marked the tweet "not clear".
using Verdict = std::optional<Assigned>;

struct Annotation {
    std::string tweet_id;
    std::string annotator_id;
    Verdict verdict;
};

enum class OutcomeKind { Labeled, DroppedNotClear, Unresolved };

struct MajorityOutcome {
    OutcomeKind kind = OutcomeKind::Unresolved;
    Assigned label;  // meaningful only when kind == Labeled
};

/// Majority rule over one tweet's annotations. Verdicts compare as exact
/// (candidate, sentiment) pairs; "not clear" is its own verdict. A unique
/// most-frequent verdict decides the outcome; anything else is Unresolved.
/// Throws on an empty panel.
MajorityOutcome aggregate_majority(const std::vector<Annotation>& annotations);

struct LabeledTweet {
    CleanTweet tweet;
    std::string candidate;
    Sentiment sentiment = Sentiment::Positive;

    bool operator==(const LabeledTweet&) const = default;
};

struct DropReport {
    std::vector<std::string> not_clear_ids;
    std::vector<std::string> unresolved_ids;
    std::vector<std::string> unannotated_ids;
    std::map<std::string, std::size_t> orphan_annotations;  // tweet_id -> row count
};

struct LabelingResult {
    std::vector<LabeledTweet> labeled;
    DropReport report;
};

/// Resolve every clean tweet against its annotations. Labeled tweets keep
/// corpus order; dropped ids are reported by cause. Annotations whose
/// tweet_id matches no clean tweet are reported as orphans, not errors.
LabelingResult build_labeled_corpus(const std::vector<CleanTweet>& clean_tweets,
                                    const std::vector<Annotation>& annotations);

/// Per-candidate (positive, negative) counts.
std::map<std::string, std::pair<std::size_t, std::size_t>> label_distribution(
    const std::vector<LabeledTweet>& labeled);

/// CSV columns: tweet_id, annotator_id, candidate (or NOT_CLEAR), sentiment
/// (blank for NOT_CLEAR). Duplicate (tweet_id, annotator_id) pairs are a
/// format violation.
std::vector<Annotation> load_annotations_csv(std::istream& in);
std::vector<Annotation> load_annotations_csv(const std::filesystem::path& path);
void write_annotations_csv(std::ostream& out, const std::vector<Annotation>& annotations);

std::string to_jsonl(const LabeledTweet& tweet);
std::vector<LabeledTweet> read_labeled_jsonl(std::istream& in);
void write_drop_report_csv(std::ostream& out, const DropReport& report);

}  // namespace electsent
