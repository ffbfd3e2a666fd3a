#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "electsent/dates.hpp"
#include "electsent/labeling.hpp"
#include "electsent/roster.hpp"

namespace electsent {

// Knobs for the stand-in dataset. Everything is driven by the seed; two
// runs with equal configs produce identical bytes.
struct SynthConfig {
    std::uint64_t seed = 1;
    std::size_t size = 1000;       // JSON lines emitted, malformed ones included
    double separability = 1.0;     // 1 = class-exclusive keywords, 0 = labels independent of text

    double malformed_fraction = 0.01;     // broken JSON lines
    double missing_id_fraction = 0.01;    // well-formed lines without an id
    double no_candidate_fraction = 0.10;  // tweets naming nobody (dropped by preprocessing)
    double url_fraction = 0.25;           // tweets carrying a link to strip
    double multi_mention_fraction = 0.08; // tweets naming a second candidate
    double not_clear_fraction = 0.03;     // panels with a "not clear" majority
    double tie_fraction = 0.04;           // panels splitting 1-1-1
    double dissent_fraction = 0.30;       // panels with one overruled annotator
    double unannotated_fraction = 0.02;   // tweets no annotator saw

    CivilDate start_date{2015, 12, 16};
    CivilDate end_date{2016, 2, 29};  // inclusive
    std::size_t annotator_pool = 11;
    std::size_t panel_size = 3;
};

struct SynthCorpus {
    std::vector<std::string> tweet_lines;  // raw JSON-lines, in timestamp order
    std::vector<Annotation> annotations;   // includes one orphan row ("ghost-1")

    // Bookkeeping for tests; counts refer to emitted lines.
    std::size_t malformed = 0;
    std::size_t no_candidate = 0;
    std::size_t unannotated = 0;  // missing-id tweets included
    std::size_t not_clear_panels = 0;
    std::size_t tie_panels = 0;
};

SynthCorpus generate_synthetic_corpus(const SynthConfig& config,
                                      const CandidateRoster& roster);

// Writes tweets.jsonl and annotations.csv into the directory.
void write_synth_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir);

}  // namespace electsent
