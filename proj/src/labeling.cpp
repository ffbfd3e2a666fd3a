#include "electsent/labeling.hpp"

#include <algorithm>
#include <fstream>
#include <set>

#include <nlohmann/json.hpp>

#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

constexpr const char* kNotClear = "NOT_CLEAR";

}  // namespace

std::string sentiment_name(Sentiment s) {
    return s == Sentiment::Positive ? "positive" : "negative";
}

std::optional<Sentiment> parse_sentiment(std::string_view name) {
    std::string lowered = ascii_lower(trim(name));
    if (lowered == "positive") return Sentiment::Positive;
    if (lowered == "negative") return Sentiment::Negative;
    return std::nullopt;
}

MajorityOutcome aggregate_majority(const std::vector<Annotation>& annotations) {
    if (annotations.empty())
        throw std::invalid_argument("aggregate_majority: empty annotation list");
    std::vector<std::pair<Verdict, std::size_t>> tallies;
    for (const Annotation& a : annotations) {
        bool found = false;
        for (auto& [verdict, count] : tallies) {
            if (verdict == a.verdict) {
                ++count;
                found = true;
                break;
            }
        }
        if (!found) tallies.emplace_back(a.verdict, 1);
    }
    std::size_t best = 0;
    for (const auto& [verdict, count] : tallies) best = std::max(best, count);
    std::size_t holders = 0;
    const Verdict* winner = nullptr;
    for (const auto& [verdict, count] : tallies) {
        if (count == best) {
            ++holders;
            winner = &verdict;
        }
    }
    if (holders != 1) return {OutcomeKind::Unresolved, {}};
    if (!winner->has_value()) return {OutcomeKind::DroppedNotClear, {}};
    return {OutcomeKind::Labeled, **winner};
}

LabelingResult build_labeled_corpus(const std::vector<CleanTweet>& clean_tweets,
                                    const std::vector<Annotation>& annotations) {
    std::set<std::string> known_ids;
    for (const CleanTweet& t : clean_tweets) known_ids.insert(t.id);

    std::map<std::string, std::vector<Annotation>> by_tweet;
    LabelingResult result;
    for (const Annotation& a : annotations) {
        if (known_ids.count(a.tweet_id) == 0) {
            ++result.report.orphan_annotations[a.tweet_id];
            continue;
        }
        by_tweet[a.tweet_id].push_back(a);
    }

    for (const CleanTweet& tweet : clean_tweets) {
        auto it = by_tweet.find(tweet.id);
        if (it == by_tweet.end()) {
            result.report.unannotated_ids.push_back(tweet.id);
            continue;
        }
        MajorityOutcome outcome = aggregate_majority(it->second);
        switch (outcome.kind) {
            case OutcomeKind::Labeled:
                result.labeled.push_back(
                    {tweet, outcome.label.candidate, outcome.label.sentiment});
                break;
            case OutcomeKind::DroppedNotClear:
                result.report.not_clear_ids.push_back(tweet.id);
                break;
            case OutcomeKind::Unresolved:
                result.report.unresolved_ids.push_back(tweet.id);
                break;
        }
    }
    return result;
}

std::map<std::string, std::pair<std::size_t, std::size_t>> label_distribution(
    const std::vector<LabeledTweet>& labeled) {
    std::map<std::string, std::pair<std::size_t, std::size_t>> dist;
    for (const LabeledTweet& t : labeled) {
        auto& [pos, neg] = dist[t.candidate];
        if (t.sentiment == Sentiment::Positive) ++pos;
        else ++neg;
    }
    return dist;
}

std::vector<Annotation> load_annotations_csv(std::istream& in) {
    std::vector<Annotation> annotations;
    std::set<std::pair<std::string, std::string>> seen;
    auto rows = read_csv(in);
    bool first = true;
    std::size_t row_no = 0;
    for (const auto& row : rows) {
        ++row_no;
        if (first) {
            first = false;
            if (!row.empty() && ascii_lower(row[0]) == "tweet_id") continue;
        }
        if (row.size() != 4)
            throw InputError("annotations: expected 4 columns at row " + std::to_string(row_no));
        Annotation a;
        a.tweet_id = trim(row[0]);
        a.annotator_id = trim(row[1]);
        if (a.tweet_id.empty() || a.annotator_id.empty())
            throw InputError("annotations: blank id at row " + std::to_string(row_no));
        if (!seen.insert({a.tweet_id, a.annotator_id}).second)
            throw InputError("annotations: duplicate (tweet, annotator) pair at row " +
                             std::to_string(row_no));
        std::string candidate = trim(row[2]);
        if (candidate == kNotClear) {
            a.verdict = std::nullopt;
        } else {
            auto sentiment = parse_sentiment(row[3]);
            if (candidate.empty() || !sentiment)
                throw InputError("annotations: bad verdict at row " + std::to_string(row_no));
            a.verdict = Assigned{candidate, *sentiment};
        }
        annotations.push_back(std::move(a));
    }
    return annotations;
}

std::vector<Annotation> load_annotations_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open annotations file: " + path.string());
    return load_annotations_csv(in);
}

void write_annotations_csv(std::ostream& out, const std::vector<Annotation>& annotations) {
    write_csv_row(out, {"tweet_id", "annotator_id", "candidate", "sentiment"});
    for (const Annotation& a : annotations) {
        if (a.verdict) {
            write_csv_row(out, {a.tweet_id, a.annotator_id, a.verdict->candidate,
                                sentiment_name(a.verdict->sentiment)});
        } else {
            write_csv_row(out, {a.tweet_id, a.annotator_id, kNotClear, ""});
        }
    }
}

std::string to_jsonl(const LabeledTweet& labeled) {
    json record;
    record["created_at"] = format_iso8601(labeled.tweet.created_at);
    record["id"] = labeled.tweet.id;
    record["text"] = labeled.tweet.text;
    record["mentioned"] = labeled.tweet.mentioned;
    record["candidate"] = labeled.candidate;
    record["sentiment"] = sentiment_name(labeled.sentiment);
    return record.dump();
}

std::vector<LabeledTweet> read_labeled_jsonl(std::istream& in) {
    std::vector<LabeledTweet> labeled;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object())
            throw InputError("labeled corpus: malformed json at line " + std::to_string(line_no));
        LabeledTweet t;
        try {
            t.tweet.id = record.at("id").get<std::string>();
            t.tweet.text = record.at("text").get<std::string>();
            auto ts = parse_timestamp(record.at("created_at").get<std::string>());
            if (!ts) throw InputError("bad created_at");
            t.tweet.created_at = *ts;
            for (const auto& name : record.at("mentioned"))
                t.tweet.mentioned.insert(name.get<std::string>());
            t.candidate = record.at("candidate").get<std::string>();
            auto sentiment = parse_sentiment(record.at("sentiment").get<std::string>());
            if (!sentiment) throw InputError("bad sentiment");
            t.sentiment = *sentiment;
        } catch (const json::exception& e) {
            throw InputError("labeled corpus: bad record at line " + std::to_string(line_no) +
                             ": " + e.what());
        }
        labeled.push_back(std::move(t));
    }
    return labeled;
}

void write_drop_report_csv(std::ostream& out, const DropReport& report) {
    write_csv_row(out, {"category", "tweet_id", "annotations"});
    for (const std::string& id : report.not_clear_ids)
        write_csv_row(out, {"not_clear", id, ""});
    for (const std::string& id : report.unresolved_ids)
        write_csv_row(out, {"unresolved", id, ""});
    for (const std::string& id : report.unannotated_ids)
        write_csv_row(out, {"unannotated", id, ""});
    for (const auto& [id, count] : report.orphan_annotations)
        write_csv_row(out, {"orphan", id, std::to_string(count)});
}

}  // namespace electsent
