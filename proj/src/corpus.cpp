#include "electsent/corpus.hpp"

#include <cmath>
#include <string>

#include <nlohmann/json.hpp>

#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

std::string id_from_record(const json& record, const std::string& file_name,
                           std::size_t line_no) {
    if (auto it = record.find("id_str"); it != record.end() && it->is_string())
        return it->get<std::string>();
    if (auto it = record.find("id"); it != record.end()) {
        if (it->is_string()) return it->get<std::string>();
        if (it->is_number_integer()) return std::to_string(it->get<std::int64_t>());
        if (it->is_number_unsigned()) return std::to_string(it->get<std::uint64_t>());
    }
    return file_name + ":" + std::to_string(line_no);
}

void parse_line(const std::string& line, std::size_t line_no, const std::string& file_name,
                ParseResult& result) {
    if (trim(line).empty()) return;
    json record = json::parse(line, nullptr, false);
    if (record.is_discarded() || !record.is_object()) {
        result.skipped.push_back({line_no, file_name, "malformed json"});
        return;
    }
    auto text_it = record.find("text");
    if (text_it == record.end() || !text_it->is_string()) {
        result.skipped.push_back({line_no, file_name, "missing text"});
        return;
    }
    std::string text = text_it->get<std::string>();
    if (trim(text).empty()) {
        result.skipped.push_back({line_no, file_name, "empty text"});
        return;
    }
    auto ts_it = record.find("created_at");
    if (ts_it == record.end() || !ts_it->is_string()) {
        result.skipped.push_back({line_no, file_name, "missing created_at"});
        return;
    }
    auto ts = parse_timestamp(ts_it->get<std::string>());
    if (!ts) {
        result.skipped.push_back({line_no, file_name, "unparseable created_at"});
        return;
    }
    result.tweets.push_back({id_from_record(record, file_name, line_no), *ts, std::move(text)});
}

}  // namespace

ParseResult parse_tweet_stream(std::istream& in, const std::string& file_name) {
    ParseResult result;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.pop_back();
        parse_line(line, line_no, file_name, result);
    }
    return result;
}

ParseResult parse_tweet_stream(const std::vector<std::string>& lines,
                               const std::string& file_name) {
    ParseResult result;
    for (std::size_t i = 0; i < lines.size(); ++i) {
        parse_line(lines[i], i + 1, file_name, result);
    }
    return result;
}

std::string to_jsonl(const Tweet& tweet) {
    json record;
    record["created_at"] = format_iso8601(tweet.created_at);
    record["id"] = tweet.id;
    record["text"] = tweet.text;
    return record.dump();
}

CivilDate PeriodBuckets::period_start(std::int64_t index) const {
    return civil_from_days(days_from_civil(start_date) + index * period_days);
}

PeriodBuckets bucket_by_period(const std::vector<Tweet>& tweets, CivilDate start_date,
                               int period_days) {
    if (period_days < 1) throw std::invalid_argument("period length must be at least one day");
    PeriodBuckets buckets;
    buckets.start_date = start_date;
    buckets.period_days = period_days;
    const std::int64_t start_day = days_from_civil(start_date);
    std::int64_t max_index = -1;
    for (const Tweet& tweet : tweets) {
        std::int64_t delta = days_from_civil(date_of(tweet.created_at)) - start_day;
        if (delta < 0) {
            buckets.pre_window.push_back(tweet);
            continue;
        }
        std::int64_t index = delta / period_days;
        buckets.periods[index].push_back(tweet);
        if (index > max_index) max_index = index;
    }
    for (std::int64_t i = 0; i <= max_index; ++i) buckets.periods.try_emplace(i);
    return buckets;
}

PeriodStats period_stats(const PeriodBuckets& buckets) {
    if (buckets.periods.empty()) throw InputError("no collection periods to summarize");
    PeriodStats stats;
    stats.period_count = buckets.periods.size();
    for (const auto& [index, tweets] : buckets.periods) stats.total += tweets.size();
    stats.mean = static_cast<double>(stats.total) / static_cast<double>(stats.period_count);
    double ss = 0.0;
    for (const auto& [index, tweets] : buckets.periods) {
        double d = static_cast<double>(tweets.size()) - stats.mean;
        ss += d * d;
    }
    stats.stddev = std::sqrt(ss / static_cast<double>(stats.period_count));
    return stats;
}

void write_skip_report_csv(std::ostream& out, const std::vector<SkipRecord>& skipped) {
    write_csv_row(out, {"line_number", "file", "reason"});
    for (const SkipRecord& rec : skipped) {
        write_csv_row(out, {std::to_string(rec.line), rec.file, rec.reason});
    }
}

void write_period_stats_csv(std::ostream& out, const PeriodBuckets& buckets) {
    write_csv_row(out, {"period_index", "start_date", "count"});
    if (!buckets.pre_window.empty()) {
        write_csv_row(out, {"-1", "", std::to_string(buckets.pre_window.size())});
    }
    for (const auto& [index, tweets] : buckets.periods) {
        write_csv_row(out, {std::to_string(index), format_date(buckets.period_start(index)),
                            std::to_string(tweets.size())});
    }
}

}  // namespace electsent
