#include "electsent/prediction.hpp"

#include <algorithm>
#include <cstdlib>
#include <fstream>
#include <set>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

std::size_t count_or_zero(const PositiveCountTable& counts, const std::string& candidate) {
    const auto it = counts.find(candidate);
    return it == counts.end() ? 0 : it->second;
}

}  // namespace

PositiveCountTable count_positive(const std::map<std::string, SentimentModel>& models,
                                  const std::vector<CleanTweet>& window) {
    PositiveCountTable counts;
    for (const auto& [candidate, model] : models) counts[candidate] = 0;
    for (const CleanTweet& tweet : window) {
        for (const std::string& candidate : tweet.mentioned) {
            const auto it = models.find(candidate);
            if (it == models.end())
                throw InputError("count_positive: no model for mentioned candidate " +
                                 candidate);
            if (classify(it->second, tweet.text) == Sentiment::Positive)
                ++counts[candidate];
        }
    }
    return counts;
}

std::map<std::string, std::size_t> rank_candidates(
    const PositiveCountTable& counts, const std::vector<std::string>& candidates) {
    if (candidates.empty())
        throw std::invalid_argument("rank_candidates: no candidates to rank");
    std::set<std::size_t> distinct;
    for (const std::string& c : candidates) distinct.insert(count_or_zero(counts, c));
    std::map<std::string, std::size_t> ranks;
    for (const std::string& c : candidates) {
        const std::size_t mine = count_or_zero(counts, c);
        std::size_t rank = 1;
        for (const std::size_t value : distinct)
            if (value > mine) ++rank;
        ranks[c] = rank;
    }
    return ranks;
}

std::map<std::string, std::size_t> adjust_ranks(
    const std::map<std::string, std::size_t>& predicted, std::size_t max_poll_rank) {
    if (max_poll_rank < 1)
        throw std::invalid_argument("adjust_ranks: max_poll_rank must be at least 1");
    std::map<std::string, std::size_t> adjusted;
    for (const auto& [candidate, rank] : predicted)
        adjusted[candidate] = std::min(rank, max_poll_rank);
    return adjusted;
}

RankComparison error_rate(const std::map<std::string, std::size_t>& adjusted,
                          const std::map<std::string, std::size_t>& poll) {
    if (adjusted.empty() && poll.empty())
        throw std::invalid_argument("error_rate: no candidates to compare");
    std::string only_adjusted;
    std::string only_poll;
    for (const auto& [candidate, rank] : adjusted)
        if (poll.count(candidate) == 0) only_adjusted += " " + candidate;
    for (const auto& [candidate, rank] : poll)
        if (adjusted.count(candidate) == 0) only_poll += " " + candidate;
    if (!only_adjusted.empty() || !only_poll.empty())
        throw InputError("error_rate: candidate sets differ; only ranked:" + only_adjusted +
                         "; only polled:" + only_poll);

    RankComparison comparison;
    std::size_t error_sum = 0;
    for (const auto& [candidate, rank] : adjusted) {
        const std::size_t poll_rank = poll.at(candidate);
        const std::size_t e = rank > poll_rank ? rank - poll_rank : poll_rank - rank;
        comparison.rows.push_back({candidate, rank, rank, poll_rank, e});
        error_sum += e;
    }
    comparison.error_rate =
        static_cast<double>(error_sum) / static_cast<double>(comparison.rows.size());
    return comparison;
}

std::map<std::string, std::size_t> PollTable::ranks(Party party) const {
    std::map<std::string, std::size_t> result;
    for (const PollEntry& entry : entries)
        if (entry.party == party) result[entry.candidate] = entry.poll_rank;
    return result;
}

std::size_t PollTable::max_rank(Party party) const {
    std::size_t best = 0;
    for (const PollEntry& entry : entries)
        if (entry.party == party) best = std::max(best, entry.poll_rank);
    return best;
}

std::size_t PollTable::remaining_count(Party party) const {
    std::size_t count = 0;
    for (const PollEntry& entry : entries)
        if (entry.party == party && entry.remaining) ++count;
    return count;
}

PollTable load_polls_csv(std::istream& in) {
    PollTable polls;
    std::set<std::string> seen;
    auto rows = read_csv(in);
    bool first = true;
    std::size_t row_no = 0;
    for (const auto& row : rows) {
        ++row_no;
        if (first) {
            first = false;
            if (!row.empty() && ascii_lower(row[0]) == "party") continue;
        }
        if (row.size() != 4)
            throw InputError("polls: expected 4 columns at row " + std::to_string(row_no));
        PollEntry entry;
        const auto party = parse_party(row[0]);
        if (!party) throw InputError("polls: unknown party '" + row[0] + "' at row " +
                                     std::to_string(row_no));
        entry.party = *party;
        entry.candidate = trim(row[1]);
        if (entry.candidate.empty())
            throw InputError("polls: blank candidate at row " + std::to_string(row_no));
        if (!seen.insert(entry.candidate).second)
            throw InputError("polls: duplicate candidate " + entry.candidate);
        char* end = nullptr;
        const std::string rank_text = trim(row[2]);
        const long rank = std::strtol(rank_text.c_str(), &end, 10);
        if (rank_text.empty() || *end != '\0' || rank < 1)
            throw InputError("polls: bad poll_rank '" + row[2] + "' at row " +
                             std::to_string(row_no));
        entry.poll_rank = static_cast<std::size_t>(rank);
        const std::string flag = ascii_lower(trim(row[3]));
        if (flag == "1" || flag == "true" || flag == "yes") entry.remaining = true;
        else if (flag == "0" || flag == "false" || flag == "no") entry.remaining = false;
        else
            throw InputError("polls: bad remaining_flag '" + row[3] + "' at row " +
                             std::to_string(row_no));
        polls.entries.push_back(std::move(entry));
    }
    return polls;
}

PollTable load_polls_csv(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open polls file: " + path.string());
    return load_polls_csv(in);
}

void write_polls_csv(std::ostream& out, const PollTable& polls) {
    write_csv_row(out, {"party", "candidate", "poll_rank", "remaining_flag"});
    for (const PollEntry& entry : polls.entries)
        write_csv_row(out, {party_name(entry.party), entry.candidate,
                            std::to_string(entry.poll_rank), entry.remaining ? "1" : "0"});
}

RankComparison compare_to_poll(const PositiveCountTable& counts, Party party,
                               const CandidateRoster& roster, const PollTable& polls) {
    const std::vector<std::string> members = roster.party_members(party);
    if (members.empty())
        throw std::invalid_argument("compare_to_poll: roster has no " + party_name(party) +
                                    " candidates");
    const std::size_t max_poll = polls.max_rank(party);
    if (max_poll == 0)
        throw InputError("compare_to_poll: polls have no " + party_name(party) + " entries");

    const auto predicted = rank_candidates(counts, members);
    const auto adjusted = adjust_ranks(predicted, max_poll);
    RankComparison comparison = error_rate(adjusted, polls.ranks(party));
    for (RankRow& row : comparison.rows) row.predicted = predicted.at(row.candidate);
    comparison.party = party_name(party);
    comparison.remaining = polls.remaining_count(party);
    return comparison;
}

double overall_accuracy(const std::vector<RankComparison>& comparisons) {
    if (comparisons.empty())
        throw std::invalid_argument("overall_accuracy: no comparisons");
    double sum = 0.0;
    for (const RankComparison& comp : comparisons) {
        if (comp.remaining == 0)
            throw InputError("overall_accuracy: party " + comp.party +
                             " has no remaining candidates");
        sum += comp.error_rate / static_cast<double>(comp.remaining);
    }
    return 1.0 - sum / static_cast<double>(comparisons.size());
}

std::string prediction_report_json(const std::vector<RankComparison>& comparisons,
                                   const PositiveCountTable& counts) {
    json doc;
    doc["overall_accuracy"] = overall_accuracy(comparisons);
    json parties = json::object();
    for (const RankComparison& comp : comparisons) {
        json party;
        party["error_rate"] = comp.error_rate;
        party["remaining"] = comp.remaining;
        std::string winner;
        json rows = json::array();
        for (const RankRow& row : comp.rows) {
            json r;
            r["candidate"] = row.candidate;
            r["positive_count"] = count_or_zero(counts, row.candidate);
            r["predicted_rank"] = row.predicted;
            r["adjusted_rank"] = row.adjusted;
            r["poll_rank"] = row.poll;
            r["abs_error"] = row.abs_error;
            rows.push_back(std::move(r));
            if (winner.empty() && row.predicted == 1) winner = row.candidate;
        }
        party["rows"] = std::move(rows);
        party["winner"] = winner;
        parties[ascii_lower(comp.party)] = std::move(party);
    }
    doc["parties"] = std::move(parties);
    return doc.dump(2) + "\n";
}

}  // namespace electsent
