#include <doctest.h>

#include <sstream>

#include "electsent/corpus.hpp"
#include "electsent/util.hpp"

using namespace electsent;

namespace {

constexpr std::int64_t kDec16 = 16785 * 86400LL;  // 2015-12-16T00:00:00Z

Tweet tw(std::string id, std::int64_t at, std::string text) {
    return Tweet{std::move(id), at, std::move(text)};
}

}  // namespace

TEST_CASE("parse_tweet_stream keeps good lines and reports the bad ones") {
    const std::vector<std::string> lines = {
        R"({"id_str":"1","created_at":"Wed Dec 16 00:00:00 +0000 2015","text":"hello"})",
        R"({"id": 42, "created_at":"2015-12-16T01:00:00Z","text":"numeric id"})",
        R"(not json at all)",
        R"({"created_at":"2015-12-16T02:00:00Z","text":"no id"})",
        R"({"id_str":"5","created_at":"2015-12-16T03:00:00Z"})",
        R"({"id_str":"6","created_at":"2015-12-16T04:00:00Z","text":""})",
        R"({"id_str":"7","text":"no timestamp"})",
        R"({"id_str":"8","created_at":"sometime later","text":"bad timestamp"})",
        "",
    };
    const ParseResult result = parse_tweet_stream(lines, "feed.jsonl");

    REQUIRE(result.tweets.size() == 3);
    CHECK(result.tweets[0] == tw("1", kDec16, "hello"));
    CHECK(result.tweets[1] == tw("42", kDec16 + 3600, "numeric id"));
    CHECK(result.tweets[2] == tw("feed.jsonl:4", kDec16 + 7200, "no id"));

    REQUIRE(result.skipped.size() == 5);
    CHECK(result.skipped[0].line == 3);
    CHECK(result.skipped[0].reason == "malformed json");
    CHECK(result.skipped[1].reason == "missing text");
    CHECK(result.skipped[2].reason == "empty text");
    CHECK(result.skipped[3].reason == "missing created_at");
    CHECK(result.skipped[4].reason == "unparseable created_at");
    for (const SkipRecord& skip : result.skipped) CHECK(skip.file == "feed.jsonl");
}

TEST_CASE("parse_tweet_stream accepts crlf line endings") {
    std::istringstream in(
        "{\"id_str\":\"1\",\"created_at\":\"2015-12-16T00:00:00Z\",\"text\":\"one\"}\r\n"
        "{\"id_str\":\"2\",\"created_at\":\"2015-12-16T00:00:01Z\",\"text\":\"two\"}\r\n");
    const ParseResult result = parse_tweet_stream(in, "f");
    CHECK(result.skipped.empty());
    REQUIRE(result.tweets.size() == 2);
    CHECK(result.tweets[1].text == "two");
}

TEST_CASE("tweet jsonl round trip uses iso timestamps") {
    const Tweet tweet = tw("9", kDec16 + 61, "text with \"quotes\"");
    const std::string line = to_jsonl(tweet);
    CHECK(line ==
          R"({"created_at":"2015-12-16T00:01:01Z","id":"9","text":"text with \"quotes\""})");
    const ParseResult back = parse_tweet_stream({line}, "f");
    REQUIRE(back.tweets.size() == 1);
    CHECK(back.tweets[0] == tweet);
}

TEST_CASE("bucket_by_period fills gaps and routes early tweets to pre_window") {
    const std::vector<Tweet> tweets = {
        tw("early", kDec16 - 1, "before the window"),
        tw("p0a", kDec16, "first period"),
        tw("p0b", kDec16 + 6 * 86400 + 86399, "last second of period 0"),
        tw("p3", kDec16 + 21 * 86400, "period 3 after a gap"),
    };
    const PeriodBuckets buckets = bucket_by_period(tweets, {2015, 12, 16}, 7);

    CHECK(buckets.pre_window.size() == 1);
    REQUIRE(buckets.periods.size() == 4);  // 0..3, gaps filled
    CHECK(buckets.periods.at(0).size() == 2);
    CHECK(buckets.periods.at(1).empty());
    CHECK(buckets.periods.at(2).empty());
    CHECK(buckets.periods.at(3).size() == 1);
    CHECK(buckets.period_start(0) == CivilDate{2015, 12, 16});
    CHECK(buckets.period_start(1) == CivilDate{2015, 12, 23});
    CHECK(buckets.period_start(3) == CivilDate{2016, 1, 6});
}

TEST_CASE("period_stats population deviation over counts") {
    // counts 2 and 6: mean 4, population sigma 2
    const std::vector<Tweet> tweets = {
        tw("a", kDec16, "x"),          tw("b", kDec16 + 1, "x"),
        tw("c", kDec16 + 7 * 86400, "x"), tw("d", kDec16 + 7 * 86400 + 1, "x"),
        tw("e", kDec16 + 7 * 86400 + 2, "x"), tw("f", kDec16 + 7 * 86400 + 3, "x"),
        tw("g", kDec16 + 7 * 86400 + 4, "x"), tw("h", kDec16 + 7 * 86400 + 5, "x"),
    };
    const PeriodStats stats = period_stats(bucket_by_period(tweets, {2015, 12, 16}, 7));
    CHECK(stats.total == 8);
    CHECK(stats.period_count == 2);
    CHECK(stats.mean == doctest::Approx(4.0));
    CHECK(stats.stddev == doctest::Approx(2.0));
}

TEST_CASE("period_stats requires at least one period") {
    const PeriodBuckets empty = bucket_by_period({}, {2015, 12, 16}, 7);
    CHECK_THROWS_AS((void)period_stats(empty), InputError);
}

TEST_CASE("skip and stats reports have stable csv layouts") {
    std::ostringstream skips;
    write_skip_report_csv(skips, {{3, "feed.jsonl", "malformed json"}});
    CHECK(skips.str() ==
          "line_number,file,reason\n"
          "3,feed.jsonl,malformed json\n");

    const std::vector<Tweet> tweets = {
        tw("early", kDec16 - 86400, "x"),
        tw("a", kDec16, "x"),
        tw("b", kDec16 + 7 * 86400, "x"),
    };
    std::ostringstream stats;
    write_period_stats_csv(stats, bucket_by_period(tweets, {2015, 12, 16}, 7));
    CHECK(stats.str() ==
          "period_index,start_date,count\n"
          "-1,,1\n"
          "0,2015-12-16,1\n"
          "1,2015-12-23,1\n");
}
