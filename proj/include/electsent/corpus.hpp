#pragma once

#include <cstdint>
#include <istream>
#include <map>
#include <string>
#include <vector>

#include "electsent/dates.hpp"

namespace electsent {

/// A raw tweet. Only the identity, UTC timestamp, and text survive ingestion;
/// every other attribute of the source record is dropped.
struct Tweet {
    std::string id;
    std::int64_t created_at = 0;  // seconds since the Unix epoch, UTC
    std::string text;

    bool operator==(const Tweet&) const = default;
};

struct SkipRecord {
    std::size_t line = 0;  // 1-based
    std::string file;
    std::string reason;
};

struct ParseResult {
    std::vector<Tweet> tweets;
    std::vector<SkipRecord> skipped;
};

/// Parse a JSON-lines stream, one tweet object per line. Lines that are not
/// valid JSON, lack a parseable `created_at`, or have a missing/blank `text`
/// go to the skip report; the rest of the stream is unaffected. Input order
/// is preserved. Records without an id get "<file_name>:<line>".
ParseResult parse_tweet_stream(std::istream& in, const std::string& file_name);
ParseResult parse_tweet_stream(const std::vector<std::string>& lines,
                               const std::string& file_name);

std::string to_jsonl(const Tweet& tweet);

/// Tweets grouped into fixed-length collection periods counted from
/// `start_date`. Periods 0..max are contiguous; gaps hold empty buckets.
/// Tweets from before `start_date` land in `pre_window`.
struct PeriodBuckets {
    std::map<std::int64_t, std::vector<Tweet>> periods;
    std::vector<Tweet> pre_window;
    CivilDate start_date;
    int period_days = 7;

    CivilDate period_start(std::int64_t index) const;
};

PeriodBuckets bucket_by_period(const std::vector<Tweet>& tweets, CivilDate start_date,
                               int period_days = 7);

struct PeriodStats {
    double mean = 0.0;
    double stddev = 0.0;  // population standard deviation
    std::size_t total = 0;
    std::size_t period_count = 0;
};

/// Per-period count statistics over the indexed periods (the pre-window
/// bucket is not a collection period and is excluded). Throws InputError when
/// there are no periods.
PeriodStats period_stats(const PeriodBuckets& buckets);

void write_skip_report_csv(std::ostream& out, const std::vector<SkipRecord>& skipped);
void write_period_stats_csv(std::ostream& out, const PeriodBuckets& buckets);

}  // namespace electsent
