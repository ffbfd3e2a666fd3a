#pragma once

#include <filesystem>
#include <istream>
#include <map>
#include <ostream>
#include <string>
#include <vector>

#include "electsent/nbmodel.hpp"
#include "electsent/roster.hpp"

namespace electsent {

// candidate -> tweets classified Positive in the prediction window
using PositiveCountTable = std::map<std::string, std::size_t>;

// Every tweet is scored once per mentioned candidate, by that candidate's
// own model. A mentioned candidate without a model is an input error.
PositiveCountTable count_positive(const std::map<std::string, SentimentModel>& models,
                                  const std::vector<CleanTweet>& window);

// Dense ranking by count, descending: tied counts share a rank, the next
// distinct count takes the following integer. Candidates missing from the
// table count as zero, so everyone without positives shares the bottom rank.
std::map<std::string, std::size_t> rank_candidates(
    const PositiveCountTable& counts, const std::vector<std::string>& candidates);

// Clamp every rank to max_poll_rank so both rankings span the same range.
std::map<std::string, std::size_t> adjust_ranks(
    const std::map<std::string, std::size_t>& predicted, std::size_t max_poll_rank);

struct RankRow {
    std::string candidate;
    std::size_t predicted = 0;
    std::size_t adjusted = 0;
    std::size_t poll = 0;
    std::size_t abs_error = 0;  // |poll - adjusted|
};

struct RankComparison {
    std::string party;
    std::vector<RankRow> rows;  // sorted by candidate name
    double error_rate = 0.0;    // mean abs_error over rows
    std::size_t remaining = 0;  // candidates still in the race
};

// Pairs each candidate's adjusted rank with its poll rank. Both maps must
// cover exactly the same candidates. The returned comparison has the
// predicted column equal to the adjusted one; callers with the raw
// predicted ranks fill it themselves.
RankComparison error_rate(const std::map<std::string, std::size_t>& adjusted,
                          const std::map<std::string, std::size_t>& poll);

struct PollEntry {
    std::string candidate;
    Party party = Party::Democratic;
    std::size_t poll_rank = 0;
    bool remaining = false;
};

struct PollTable {
    std::vector<PollEntry> entries;

    std::map<std::string, std::size_t> ranks(Party party) const;
    std::size_t max_rank(Party party) const;
    std::size_t remaining_count(Party party) const;
};

// CSV columns: party, candidate, poll_rank, remaining_flag (1 = still in
// the race). Duplicate candidates and non-positive ranks are rejected.
PollTable load_polls_csv(std::istream& in);
PollTable load_polls_csv(const std::filesystem::path& path);
void write_polls_csv(std::ostream& out, const PollTable& polls);

// Rank one party's candidates from positive counts, clamp to the poll
// range, and compare with the poll order.
RankComparison compare_to_poll(const PositiveCountTable& counts, Party party,
                               const CandidateRoster& roster, const PollTable& polls);

// 1 - mean over parties of (error_rate / remaining).
double overall_accuracy(const std::vector<RankComparison>& comparisons);

// Full machine-readable report: per-party rows, counts, error rates,
// winners, and the overall accuracy.
std::string prediction_report_json(const std::vector<RankComparison>& comparisons,
                                   const PositiveCountTable& counts);

}  // namespace electsent
