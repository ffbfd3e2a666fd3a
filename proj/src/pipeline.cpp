#include "electsent/pipeline.hpp"

#include <fstream>
#include <map>
#include <sstream>
#include <vector>

#include <nlohmann/json.hpp>

#include "electsent/corpus.hpp"
#include "electsent/evaluation.hpp"
#include "electsent/labeling.hpp"
#include "electsent/nbmodel.hpp"
#include "electsent/prediction.hpp"
#include "electsent/preprocess.hpp"
#include "electsent/roster.hpp"
#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

constexpr const char* kToolVersion = "0.1.0";

// Writes reports under out_dir and remembers a content hash per file so
// the manifest can witness byte-identical reruns.
class Bundle {
public:
    explicit Bundle(std::filesystem::path out_dir) : out_dir_(std::move(out_dir)) {}

    void write(const std::string& name, std::string_view contents) {
        write_file(out_dir_ / name, contents);
        hashes_[name] = hex64(fnv1a64(contents));
    }

    const std::map<std::string, std::string>& hashes() const { return hashes_; }

private:
    std::filesystem::path out_dir_;
    std::map<std::string, std::string> hashes_;
};

std::string candidate_slug(const std::string& name) {
    std::string slug;
    for (char c : ascii_lower(name)) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) slug += c;
    }
    return slug.empty() ? "candidate" : slug;
}

std::string jsonl_of(const std::vector<CleanTweet>& tweets) {
    std::string out;
    for (const CleanTweet& t : tweets) {
        out += to_jsonl(t);
        out += '\n';
    }
    return out;
}

std::string jsonl_of(const std::vector<LabeledTweet>& tweets) {
    std::string out;
    for (const LabeledTweet& t : tweets) {
        out += to_jsonl(t);
        out += '\n';
    }
    return out;
}

std::string removal_report(const PeriodBuckets& buckets,
                           const PreprocessResult& pre) {
    const std::int64_t start_day = days_from_civil(buckets.start_date);
    std::map<std::int64_t, std::size_t> kept_per_period;
    std::size_t kept_pre_window = 0;
    for (const CleanTweet& t : pre.kept) {
        const std::int64_t delta = days_from_civil(date_of(t.created_at)) - start_day;
        if (delta < 0) ++kept_pre_window;
        else ++kept_per_period[delta / buckets.period_days];
    }
    std::ostringstream out;
    write_csv_row(out, {"period", "input", "kept", "removal_rate"});
    auto rate_cell = [](std::size_t input, std::size_t kept) {
        if (input == 0) return std::string("undefined");
        return format_fixed(1.0 - static_cast<double>(kept) / static_cast<double>(input));
    };
    if (!buckets.pre_window.empty()) {
        write_csv_row(out, {"-1", std::to_string(buckets.pre_window.size()),
                            std::to_string(kept_pre_window),
                            rate_cell(buckets.pre_window.size(), kept_pre_window)});
    }
    for (const auto& [index, tweets] : buckets.periods) {
        const std::size_t kept = kept_per_period.count(index) ? kept_per_period[index] : 0;
        write_csv_row(out, {std::to_string(index), std::to_string(tweets.size()),
                            std::to_string(kept), rate_cell(tweets.size(), kept)});
    }
    write_csv_row(out, {"overall", std::to_string(pre.input_count),
                        std::to_string(pre.kept.size()),
                        rate_cell(pre.input_count, pre.kept.size())});
    return out.str();
}

std::string distribution_report(const std::vector<LabeledTweet>& labeled,
                                const CandidateRoster& roster) {
    auto dist = label_distribution(labeled);
    for (const std::string& name : roster.canonical_names()) dist.try_emplace(name);
    std::ostringstream out;
    write_csv_row(out, {"candidate", "positive", "negative"});
    for (const auto& [candidate, counts] : dist) {
        write_csv_row(out, {candidate, std::to_string(counts.first),
                            std::to_string(counts.second)});
    }
    return out.str();
}

}  // namespace

PipelineResult run_pipeline(const PipelineConfig& config) {
    Bundle bundle(config.out_dir);
    std::map<std::string, std::string> input_hashes;  // label -> fingerprint
    std::vector<std::string> completed;
    std::string stage = "config";
    PipelineResult result;

    auto finish = [&](FailureKind kind, const std::string& error) {
        result.ok = kind == FailureKind::None;
        result.failure = kind;
        result.failed_stage = result.ok ? "" : stage;
        result.error = error;

        json manifest;
        manifest["tool"] = "electsent";
        manifest["tool_version"] = kToolVersion;
        manifest["seed"] = config.seed;
        manifest["k"] = config.k;
        manifest["alpha"] = config.alpha;
        manifest["period_days"] = config.period_days;
        manifest["period_start"] = format_date(config.start_date);
        manifest["prediction_window"] = {{"begin", format_date(config.window_begin)},
                                         {"end", format_date(config.window_end)}};
        json inputs = json::object();
        for (const auto& [label, hash] : input_hashes) inputs[label] = hash;
        manifest["inputs"] = std::move(inputs);
        manifest["stages_completed"] = completed;
        manifest["failed_stage"] = result.failed_stage;
        manifest["error"] = result.error;
        manifest["outputs"] = bundle.hashes();
        write_file(config.out_dir / "manifest.json", manifest.dump(2) + "\n");
        return result;
    };

    try {
        if (config.k < 2) throw InputError("config: k must be at least 2");
        if (!(config.alpha > 0.0)) throw InputError("config: alpha must be positive");
        if (config.period_days < 1) throw InputError("config: period length must be positive");
        if (!valid_civil(config.start_date) || !valid_civil(config.window_begin) ||
            !valid_civil(config.window_end))
            throw InputError("config: invalid date");
        if (config.window_end < config.window_begin)
            throw InputError("config: prediction window ends before it begins");

        stage = "ingest";
        input_hashes["tweets"] = hex64(fnv1a64_file(config.tweets_path));
        std::ifstream tweets_in(config.tweets_path);
        if (!tweets_in)
            throw InputError("cannot open tweets file: " + config.tweets_path.string());
        const ParseResult parsed =
            parse_tweet_stream(tweets_in, config.tweets_path.filename().string());
        if (parsed.tweets.empty())
            throw InputError("ingest: no parseable tweets in " + config.tweets_path.string());
        const PeriodBuckets buckets =
            bucket_by_period(parsed.tweets, config.start_date, config.period_days);
        {
            std::ostringstream skip;
            write_skip_report_csv(skip, parsed.skipped);
            bundle.write("skip_report.csv", skip.str());
            std::ostringstream stats;
            write_period_stats_csv(stats, buckets);
            bundle.write("period_stats.csv", stats.str());
        }
        completed.push_back(stage);

        stage = "preprocess";
        CandidateRoster roster;
        if (config.roster_path.empty()) {
            roster = default_roster();
        } else {
            input_hashes["roster"] = hex64(fnv1a64_file(config.roster_path));
            roster = load_roster_csv(config.roster_path);
        }
        const PreprocessResult pre = preprocess_corpus(parsed.tweets, roster);
        if (pre.kept.empty())
            throw InputError("preprocess: no tweet mentions a roster candidate");
        bundle.write("clean.jsonl", jsonl_of(pre.kept));
        bundle.write("removal.csv", removal_report(buckets, pre));
        completed.push_back(stage);

        stage = "label";
        input_hashes["annotations"] = hex64(fnv1a64_file(config.annotations_path));
        const auto annotations = load_annotations_csv(config.annotations_path);
        const LabelingResult labeling = build_labeled_corpus(pre.kept, annotations);
        if (labeling.labeled.empty())
            throw InputError("label: no tweet survived majority aggregation");
        bundle.write("labeled.jsonl", jsonl_of(labeling.labeled));
        {
            std::ostringstream drops;
            write_drop_report_csv(drops, labeling.report);
            bundle.write("drop_report.csv", drops.str());
        }
        bundle.write("label_distribution.csv",
                     distribution_report(labeling.labeled, roster));
        completed.push_back(stage);

        stage = "train";
        // Prediction models only see tweets from before the prediction
        // window; the window itself is what they are asked to judge.
        std::map<std::string, std::vector<LabeledTweet>> training;
        for (const LabeledTweet& t : labeling.labeled) {
            if (date_of(t.tweet.created_at) < config.window_begin)
                training[t.candidate].push_back(t);
        }
        if (training.empty())
            throw InputError("train: no labeled tweets precede the prediction window");
        std::map<std::string, SentimentModel> models;
        for (const auto& [candidate, group] : training) {
            SentimentModel model = train(group, config.alpha);
            bundle.write("models/" + candidate_slug(candidate) + ".model.json",
                         to_json(model));
            models.emplace(candidate, std::move(model));
        }
        completed.push_back(stage);

        stage = "cv";
        const CvReport cv =
            cross_validate_all(labeling.labeled, config.k, config.seed, config.alpha);
        {
            std::ostringstream report;
            write_cv_report_csv(report, cv);
            bundle.write("cv_report.csv", report.str());
        }
        completed.push_back(stage);

        stage = "predict";
        input_hashes["polls"] = hex64(fnv1a64_file(config.polls_path));
        const PollTable polls = load_polls_csv(config.polls_path);
        std::vector<CleanTweet> window;
        for (const CleanTweet& t : pre.kept) {
            const CivilDate d = date_of(t.created_at);
            if (config.window_begin <= d && d <= config.window_end) window.push_back(t);
        }
        const PositiveCountTable counts = count_positive(models, window);
        std::vector<RankComparison> comparisons;
        for (const Party party : {Party::Democratic, Party::Republican}) {
            if (!roster.party_members(party).empty())
                comparisons.push_back(compare_to_poll(counts, party, roster, polls));
        }
        if (comparisons.empty()) throw InputError("predict: roster has no candidates");
        bundle.write("prediction_report.json",
                     prediction_report_json(comparisons, counts));
        completed.push_back(stage);
    } catch (const InputError& e) {
        return finish(FailureKind::Input, e.what());
    } catch (const std::exception& e) {
        return finish(FailureKind::Stage, e.what());
    }
    return finish(FailureKind::None, "");
}

}  // namespace electsent
