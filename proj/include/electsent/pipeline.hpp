#pragma once

#include <cstdint>
#include <filesystem>
#include <string>

#include "electsent/dates.hpp"

namespace electsent {

struct PipelineConfig {
    std::filesystem::path tweets_path;
    std::filesystem::path roster_path;  // empty -> built-in roster
    std::filesystem::path annotations_path;
    std::filesystem::path polls_path;
    std::filesystem::path out_dir;

    CivilDate start_date;    // period bucketing origin
    CivilDate window_begin;  // prediction window, inclusive dates
    CivilDate window_end;
    int period_days = 7;
    std::size_t k = 10;
    std::uint64_t seed = 0;
    double alpha = 1.0;
};

enum class FailureKind { None, Input, Stage };

struct PipelineResult {
    bool ok = false;
    FailureKind failure = FailureKind::None;
    std::string failed_stage;  // empty when ok
    std::string error;
};

// Runs ingest -> preprocess -> label -> train -> cv -> predict, writing
// every report into out_dir plus a manifest with input fingerprints and
// output hashes. On a stage failure the outputs written so far stay on
// disk and the manifest names the failed stage. Output bytes depend only
// on the inputs and the config, never on the clock or the out_dir path.
PipelineResult run_pipeline(const PipelineConfig& config);

}  // namespace electsent
