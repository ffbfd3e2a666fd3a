#include "electsent/preprocess.hpp"

#include <regex>

#include <nlohmann/json.hpp>

#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

const std::regex& url_pattern() {
    // Each match swallows the whitespace run in front of it, so removal
    // leaves no doubled spaces behind.
    static const std::regex re(
        R"(\s*(https?://\S+|\bt\.co/\S+|\bpic\.twitter\.com/\S+))",
        std::regex::ECMAScript | std::regex::icase | std::regex::optimize);
    return re;
}

}  // namespace

std::string strip_urls(const std::string& text) {
    return trim(std::regex_replace(text, url_pattern(), ""));
}

std::set<std::string> detect_candidates(const std::string& text,
                                        const CandidateRoster& roster) {
    std::set<std::string> mentioned;
    std::string lowered = ascii_lower(text);
    for (const Candidate& candidate : roster.entries) {
        for (const std::string& alias : candidate.aliases) {
            if (lowered.find(alias) != std::string::npos) {
                mentioned.insert(candidate.canonical_name);
                break;
            }
        }
    }
    return mentioned;
}

PreprocessResult preprocess_corpus(const std::vector<Tweet>& tweets,
                                   const CandidateRoster& roster) {
    PreprocessResult result;
    result.input_count = tweets.size();
    for (const Tweet& tweet : tweets) {
        std::string cleaned = strip_urls(tweet.text);
        std::set<std::string> mentioned = detect_candidates(cleaned, roster);
        if (mentioned.empty()) continue;
        result.kept.push_back({tweet.id, tweet.created_at, std::move(cleaned),
                               std::move(mentioned)});
    }
    if (result.input_count > 0) {
        result.removal_rate = 1.0 - static_cast<double>(result.kept.size()) /
                                        static_cast<double>(result.input_count);
    }
    return result;
}

std::string to_jsonl(const CleanTweet& tweet) {
    json record;
    record["created_at"] = format_iso8601(tweet.created_at);
    record["id"] = tweet.id;
    record["text"] = tweet.text;
    record["mentioned"] = tweet.mentioned;
    return record.dump();
}

std::vector<CleanTweet> read_clean_jsonl(std::istream& in) {
    std::vector<CleanTweet> tweets;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(in, line)) {
        ++line_no;
        if (trim(line).empty()) continue;
        json record = json::parse(line, nullptr, false);
        if (record.is_discarded() || !record.is_object())
            throw InputError("clean corpus: malformed json at line " + std::to_string(line_no));
        CleanTweet tweet;
        try {
            tweet.id = record.at("id").get<std::string>();
            tweet.text = record.at("text").get<std::string>();
            auto ts = parse_timestamp(record.at("created_at").get<std::string>());
            if (!ts) throw InputError("bad created_at");
            tweet.created_at = *ts;
            for (const auto& name : record.at("mentioned"))
                tweet.mentioned.insert(name.get<std::string>());
        } catch (const json::exception& e) {
            throw InputError("clean corpus: bad record at line " + std::to_string(line_no) +
                             ": " + e.what());
        }
        if (tweet.mentioned.empty())
            throw InputError("clean corpus: no mentioned candidates at line " +
                             std::to_string(line_no));
        tweets.push_back(std::move(tweet));
    }
    return tweets;
}

}  // namespace electsent
