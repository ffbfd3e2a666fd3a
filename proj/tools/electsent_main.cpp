#include <algorithm>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "electsent/corpus.hpp"
#include "electsent/evaluation.hpp"
#include "electsent/labeling.hpp"
#include "electsent/nbmodel.hpp"
#include "electsent/pipeline.hpp"
#include "electsent/prediction.hpp"
#include "electsent/preprocess.hpp"
#include "electsent/roster.hpp"
#include "electsent/synth.hpp"
#include "electsent/util.hpp"

using namespace electsent;

namespace {

CivilDate require_date(const std::string& value, const char* flag) {
    auto date = parse_date(value);
    if (!date)
        throw InputError(std::string(flag) + ": expected YYYY-MM-DD, got '" + value + "'");
    return *date;
}

std::vector<std::size_t> parse_grid(const std::string& spec) {
    const auto parts = split(spec, ':');
    auto value = [&](const std::string& s) -> std::size_t {
        try {
            std::size_t pos = 0;
            const unsigned long long v = std::stoull(s, &pos);
            if (pos != s.size()) throw std::invalid_argument(s);
            return static_cast<std::size_t>(v);
        } catch (const std::exception&) {
            throw InputError("grid: '" + s + "' is not a number");
        }
    };
    if (parts.size() != 3) throw InputError("grid: expected start:stop:step");
    const std::size_t start = value(parts[0]);
    const std::size_t stop = value(parts[1]);
    const std::size_t step = value(parts[2]);
    if (start < 1 || step < 1 || stop < start)
        throw InputError("grid: need 1 <= start <= stop and step >= 1");
    std::vector<std::size_t> grid;
    for (std::size_t n = start; n <= stop; n += step) grid.push_back(n);
    return grid;
}

CandidateRoster roster_or_default(const std::string& path) {
    return path.empty() ? default_roster() : load_roster_csv(path);
}

ParseResult parse_tweets_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open tweets file: " + path);
    return parse_tweet_stream(in, std::filesystem::path(path).filename().string());
}

std::vector<LabeledTweet> read_labeled_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open labeled corpus: " + path);
    return read_labeled_jsonl(in);
}

std::vector<CleanTweet> read_clean_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw InputError("cannot open clean corpus: " + path);
    return read_clean_jsonl(in);
}

std::string candidate_slug(const std::string& name) {
    std::string slug;
    for (char c : ascii_lower(name)) {
        if ((c >= 'a' && c <= 'z') || (c >= '0' && c <= '9')) slug += c;
    }
    return slug.empty() ? "candidate" : slug;
}

struct IngestOpts {
    std::string in;
    std::string start_date;
    int period_days = 7;
    std::string out;
    std::string skip_report;
    std::string stats;
};

int run_ingest(const IngestOpts& opt) {
    const CivilDate start = require_date(opt.start_date, "--start-date");
    const ParseResult parsed = parse_tweets_file(opt.in);
    const PeriodBuckets buckets = bucket_by_period(parsed.tweets, start, opt.period_days);
    if (!opt.out.empty()) {
        std::string lines;
        for (const Tweet& t : parsed.tweets) {
            lines += to_jsonl(t);
            lines += '\n';
        }
        write_file(opt.out, lines);
    }
    if (!opt.skip_report.empty()) {
        std::ostringstream report;
        write_skip_report_csv(report, parsed.skipped);
        write_file(opt.skip_report, report.str());
    }
    if (!opt.stats.empty()) {
        std::ostringstream report;
        write_period_stats_csv(report, buckets);
        write_file(opt.stats, report.str());
    }
    const PeriodStats stats = period_stats(buckets);
    std::cout << "parsed " << parsed.tweets.size() << " tweets, skipped "
              << parsed.skipped.size() << " lines, " << stats.period_count
              << " periods, mean " << format_fixed(stats.mean, 2) << " per period (stddev "
              << format_fixed(stats.stddev, 2) << ")\n";
    return 0;
}

struct PreprocessOpts {
    std::string in;
    std::string roster;
    std::string out;
    std::string report;
};

int run_preprocess(const PreprocessOpts& opt) {
    const CandidateRoster roster = roster_or_default(opt.roster);
    const ParseResult parsed = parse_tweets_file(opt.in);
    const PreprocessResult pre = preprocess_corpus(parsed.tweets, roster);
    std::string lines;
    for (const CleanTweet& t : pre.kept) {
        lines += to_jsonl(t);
        lines += '\n';
    }
    write_file(opt.out, lines);
    const std::string rate =
        pre.removal_rate ? format_fixed(*pre.removal_rate) : std::string("undefined");
    if (!opt.report.empty()) {
        std::ostringstream report;
        write_csv_row(report, {"period", "input", "kept", "removal_rate"});
        write_csv_row(report, {"overall", std::to_string(pre.input_count),
                               std::to_string(pre.kept.size()), rate});
        write_file(opt.report, report.str());
    }
    std::cout << "kept " << pre.kept.size() << " of " << pre.input_count
              << " tweets (removal rate " << rate << ")\n";
    return 0;
}

struct LabelOpts {
    std::string clean;
    std::string annotations;
    std::string roster;
    std::string out;
    std::string drop_report;
    std::string distribution;
};

int run_label(const LabelOpts& opt) {
    const auto clean = read_clean_file(opt.clean);
    const auto annotations = load_annotations_csv(std::filesystem::path(opt.annotations));
    const LabelingResult result = build_labeled_corpus(clean, annotations);
    std::string lines;
    for (const LabeledTweet& t : result.labeled) {
        lines += to_jsonl(t);
        lines += '\n';
    }
    write_file(opt.out, lines);
    if (!opt.drop_report.empty()) {
        std::ostringstream report;
        write_drop_report_csv(report, result.report);
        write_file(opt.drop_report, report.str());
    }
    if (!opt.distribution.empty()) {
        auto dist = label_distribution(result.labeled);
        if (!opt.roster.empty()) {
            for (const std::string& name : load_roster_csv(opt.roster).canonical_names())
                dist.try_emplace(name);
        }
        std::ostringstream report;
        write_csv_row(report, {"candidate", "positive", "negative"});
        for (const auto& [candidate, counts] : dist)
            write_csv_row(report, {candidate, std::to_string(counts.first),
                                   std::to_string(counts.second)});
        write_file(opt.distribution, report.str());
    }
    std::cout << "labeled " << result.labeled.size() << " of " << clean.size()
              << " tweets (not clear " << result.report.not_clear_ids.size()
              << ", unresolved " << result.report.unresolved_ids.size() << ", unannotated "
              << result.report.unannotated_ids.size() << ", orphan ids "
              << result.report.orphan_annotations.size() << ")\n";
    return 0;
}

struct TrainOpts {
    std::string labeled;
    std::string candidate = "all";
    double alpha = 1.0;
    std::string out;
    std::string out_dir;
};

int run_train(const TrainOpts& opt) {
    if (opt.out.empty() == opt.out_dir.empty())
        throw InputError("train: pass exactly one of --out or --out-dir");
    const auto labeled = read_labeled_file(opt.labeled);
    std::map<std::string, std::vector<LabeledTweet>> groups;
    for (const LabeledTweet& t : labeled) {
        if (opt.candidate == "all" || opt.candidate == t.candidate)
            groups[t.candidate].push_back(t);
    }
    if (groups.empty())
        throw InputError("train: no labeled tweets for candidate " + opt.candidate);
    if (!opt.out.empty() && groups.size() > 1)
        throw InputError("train: --out fits a single candidate; use --out-dir for " +
                         std::to_string(groups.size()));
    for (const auto& [candidate, group] : groups) {
        const SentimentModel model = train(group, opt.alpha);
        const std::filesystem::path path =
            opt.out.empty()
                ? std::filesystem::path(opt.out_dir) / (candidate_slug(candidate) + ".model.json")
                : std::filesystem::path(opt.out);
        save_model(model, path);
        std::cout << "trained " << candidate << ": " << model.n_pos << " positive, "
                  << model.n_neg << " negative -> " << path.string() << "\n";
    }
    return 0;
}

struct CvOpts {
    std::string labeled;
    std::string candidate = "all";
    std::uint64_t k = 10;
    std::uint64_t seed = 0;
    double alpha = 1.0;
    std::string out;
};

int run_cv(const CvOpts& opt) {
    const auto labeled = read_labeled_file(opt.labeled);
    CvReport report;
    if (opt.candidate == "all") {
        report = cross_validate_all(labeled, static_cast<std::size_t>(opt.k), opt.seed,
                                    opt.alpha);
    } else {
        std::vector<LabeledTweet> group;
        for (const LabeledTweet& t : labeled)
            if (t.candidate == opt.candidate) group.push_back(t);
        if (group.empty())
            throw InputError("cv: no labeled tweets for candidate " + opt.candidate);
        report.results.push_back(
            cross_validate(group, static_cast<std::size_t>(opt.k), opt.seed, opt.alpha));
    }
    std::ostringstream csv;
    write_cv_report_csv(csv, report);
    write_file(opt.out, csv.str());
    std::cout << "cross-validated " << report.results.size() << " candidates ("
              << report.skipped.size() << " skipped) -> " << opt.out << "\n";
    return 0;
}

struct CurveOpts {
    std::string labeled;
    std::string grid = "1000:33000:1000";
    std::uint64_t horizon = 4000;
    double alpha = 1.0;
    std::string out;
};

int run_curve(const CurveOpts& opt) {
    const auto labeled = read_labeled_file(opt.labeled);
    const auto grid = parse_grid(opt.grid);
    const auto curves = learning_curves(labeled, grid, static_cast<std::size_t>(opt.horizon),
                                        opt.alpha);
    std::ostringstream csv;
    write_curve_csv(csv, curves);
    write_file(opt.out, csv.str());
    std::cout << "learning curve over " << curves.size() << " candidates, " << grid.size()
              << " grid points -> " << opt.out << "\n";
    return 0;
}

struct PredictOpts {
    std::string models_dir;
    std::string window;
    std::string polls;
    std::string roster;
    std::string out;
};

int run_predict(const PredictOpts& opt) {
    std::vector<std::filesystem::path> files;
    for (const auto& entry : std::filesystem::directory_iterator(opt.models_dir)) {
        if (entry.is_regular_file() && entry.path().string().ends_with(".model.json"))
            files.push_back(entry.path());
    }
    std::sort(files.begin(), files.end());
    if (files.empty())
        throw InputError("predict: no *.model.json files in " + opt.models_dir);
    std::map<std::string, SentimentModel> models;
    for (const auto& path : files) {
        SentimentModel model = load_model(path);
        const std::string candidate = model.candidate;
        if (!models.emplace(candidate, std::move(model)).second)
            throw InputError("predict: two models for candidate " + candidate);
    }
    const CandidateRoster roster = roster_or_default(opt.roster);
    const PollTable polls = load_polls_csv(std::filesystem::path(opt.polls));
    const auto window = read_clean_file(opt.window);
    const PositiveCountTable counts = count_positive(models, window);
    std::vector<RankComparison> comparisons;
    for (const Party party : {Party::Democratic, Party::Republican}) {
        if (!roster.party_members(party).empty())
            comparisons.push_back(compare_to_poll(counts, party, roster, polls));
    }
    if (comparisons.empty()) throw InputError("predict: roster has no candidates");
    write_file(opt.out, prediction_report_json(comparisons, counts));
    for (const RankComparison& comp : comparisons) {
        std::string winner;
        for (const RankRow& row : comp.rows)
            if (row.predicted == 1 && winner.empty()) winner = row.candidate;
        std::cout << comp.party << ": winner " << winner << ", error rate "
                  << format_fixed(comp.error_rate, 4) << "\n";
    }
    std::cout << "overall accuracy " << format_fixed(overall_accuracy(comparisons), 4)
              << " -> " << opt.out << "\n";
    return 0;
}

struct PipelineOpts {
    std::string tweets;
    std::string annotations;
    std::string polls;
    std::string roster;
    std::string out_dir;
    std::string start_date;
    std::string window_begin;
    std::string window_end;
    int period_days = 7;
    std::uint64_t k = 10;
    std::uint64_t seed = 0;
    double alpha = 1.0;
};

int run_pipeline_cmd(const PipelineOpts& opt) {
    PipelineConfig config;
    config.tweets_path = opt.tweets;
    config.annotations_path = opt.annotations;
    config.polls_path = opt.polls;
    config.roster_path = opt.roster;
    config.out_dir = opt.out_dir;
    config.start_date = require_date(opt.start_date, "--start-date");
    config.window_begin = require_date(opt.window_begin, "--window-begin");
    config.window_end = require_date(opt.window_end, "--window-end");
    config.period_days = opt.period_days;
    config.k = static_cast<std::size_t>(opt.k);
    config.seed = opt.seed;
    config.alpha = opt.alpha;
    const PipelineResult result = run_pipeline(config);
    if (!result.ok) {
        std::cerr << "pipeline failed at stage " << result.failed_stage << ": "
                  << result.error << "\n";
        return result.failure == FailureKind::Input ? 2 : 3;
    }
    std::cout << "pipeline complete, reports in " << opt.out_dir << "\n";
    return 0;
}

struct SynthOpts {
    std::uint64_t seed = 0;
    std::uint64_t size = 1000;
    double separability = 1.0;
    std::string out_dir;
    std::string roster;
    std::string start_date = "2015-12-16";
    std::string end_date = "2016-02-29";
};

int run_synth(const SynthOpts& opt) {
    SynthConfig config;
    config.seed = opt.seed;
    config.size = static_cast<std::size_t>(opt.size);
    config.separability = opt.separability;
    config.start_date = require_date(opt.start_date, "--start-date");
    config.end_date = require_date(opt.end_date, "--end-date");
    const CandidateRoster roster = roster_or_default(opt.roster);
    const SynthCorpus corpus = generate_synthetic_corpus(config, roster);
    write_synth_corpus(corpus, opt.out_dir);
    std::cout << "wrote " << corpus.tweet_lines.size() << " tweet lines ("
              << corpus.malformed << " malformed) and " << corpus.annotations.size()
              << " annotation rows to " << opt.out_dir << "\n";
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"tweet sentiment pipeline: preprocess, label, train, evaluate, predict"};
    app.require_subcommand(1);
    int rc = 0;

    auto ingest = std::make_shared<IngestOpts>();
    auto* ingest_cmd = app.add_subcommand("ingest", "parse raw tweets and bucket by period");
    ingest_cmd->add_option("--in", ingest->in, "raw tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    ingest_cmd->add_option("--start-date", ingest->start_date, "period origin, YYYY-MM-DD")
        ->required();
    ingest_cmd->add_option("--period-days", ingest->period_days, "period length in days")
        ->check(CLI::PositiveNumber);
    ingest_cmd->add_option("--out", ingest->out, "normalized tweets (JSON-lines)");
    ingest_cmd->add_option("--skip-report", ingest->skip_report, "skipped-line report CSV");
    ingest_cmd->add_option("--stats", ingest->stats, "per-period count CSV");
    ingest_cmd->callback([ingest, &rc]() { rc = run_ingest(*ingest); });

    auto preprocess = std::make_shared<PreprocessOpts>();
    auto* preprocess_cmd =
        app.add_subcommand("preprocess", "strip links and keep candidate tweets");
    preprocess_cmd->add_option("--in", preprocess->in, "raw tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    preprocess_cmd->add_option("--roster", preprocess->roster, "candidate roster CSV")
        ->check(CLI::ExistingFile);
    preprocess_cmd->add_option("--out", preprocess->out, "clean tweets (JSON-lines)")
        ->required();
    preprocess_cmd->add_option("--report", preprocess->report, "removal rate CSV");
    preprocess_cmd->callback([preprocess, &rc]() { rc = run_preprocess(*preprocess); });

    auto label = std::make_shared<LabelOpts>();
    auto* label_cmd = app.add_subcommand("label", "aggregate annotations by majority rule");
    label_cmd->add_option("--clean", label->clean, "clean tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    label_cmd->add_option("--annotations", label->annotations, "annotation CSV")
        ->required()
        ->check(CLI::ExistingFile);
    label_cmd->add_option("--roster", label->roster, "roster CSV for zero-count rows")
        ->check(CLI::ExistingFile);
    label_cmd->add_option("--out", label->out, "labeled tweets (JSON-lines)")->required();
    label_cmd->add_option("--drop-report", label->drop_report, "dropped tweet CSV");
    label_cmd->add_option("--distribution", label->distribution,
                          "per-candidate sentiment counts CSV");
    label_cmd->callback([label, &rc]() { rc = run_label(*label); });

    auto train_opts = std::make_shared<TrainOpts>();
    auto* train_cmd = app.add_subcommand("train", "fit per-candidate sentiment models");
    train_cmd->add_option("--labeled", train_opts->labeled, "labeled tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    train_cmd->add_option("--candidate", train_opts->candidate,
                          "candidate name, or 'all'");
    train_cmd->add_option("--alpha", train_opts->alpha, "smoothing strength")
        ->check(CLI::PositiveNumber);
    train_cmd->add_option("--out", train_opts->out, "model file (single candidate)");
    train_cmd->add_option("--out-dir", train_opts->out_dir, "model directory");
    train_cmd->callback([train_opts, &rc]() { rc = run_train(*train_opts); });

    auto cv = std::make_shared<CvOpts>();
    auto* cv_cmd = app.add_subcommand("cv", "k-fold cross-validation report");
    cv_cmd->add_option("--labeled", cv->labeled, "labeled tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    cv_cmd->add_option("--candidate", cv->candidate, "candidate name, or 'all'");
    cv_cmd->add_option("--k", cv->k, "fold count")->check(CLI::Range(2, 1000000));
    cv_cmd->add_option("--seed", cv->seed, "shuffle seed")->required();
    cv_cmd->add_option("--alpha", cv->alpha, "smoothing strength")
        ->check(CLI::PositiveNumber);
    cv_cmd->add_option("--out", cv->out, "report CSV")->required();
    cv_cmd->callback([cv, &rc]() { rc = run_cv(*cv); });

    auto curve = std::make_shared<CurveOpts>();
    auto* curve_cmd =
        app.add_subcommand("learning-curve", "accuracy of n-tweet prefixes on what follows");
    curve_cmd->add_option("--labeled", curve->labeled, "labeled tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    curve_cmd->add_option("--grid", curve->grid, "training sizes start:stop:step");
    curve_cmd->add_option("--horizon", curve->horizon, "evaluation window size")
        ->check(CLI::PositiveNumber);
    curve_cmd->add_option("--alpha", curve->alpha, "smoothing strength")
        ->check(CLI::PositiveNumber);
    curve_cmd->add_option("--out", curve->out, "curve CSV")->required();
    curve_cmd->callback([curve, &rc]() { rc = run_curve(*curve); });

    auto predict = std::make_shared<PredictOpts>();
    auto* predict_cmd =
        app.add_subcommand("predict", "rank candidates by positive sentiment vs polls");
    predict_cmd->add_option("--models", predict->models_dir, "model directory")
        ->required()
        ->check(CLI::ExistingDirectory);
    predict_cmd->add_option("--window", predict->window, "clean tweets to classify")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--polls", predict->polls, "poll ranks CSV")
        ->required()
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--roster", predict->roster, "candidate roster CSV")
        ->check(CLI::ExistingFile);
    predict_cmd->add_option("--out", predict->out, "prediction report JSON")->required();
    predict_cmd->callback([predict, &rc]() { rc = run_predict(*predict); });

    auto pipeline = std::make_shared<PipelineOpts>();
    auto* pipeline_cmd = app.add_subcommand("pipeline", "run every stage end to end");
    pipeline_cmd->add_option("--tweets", pipeline->tweets, "raw tweets (JSON-lines)")
        ->required()
        ->check(CLI::ExistingFile);
    pipeline_cmd->add_option("--annotations", pipeline->annotations, "annotation CSV")
        ->required()
        ->check(CLI::ExistingFile);
    pipeline_cmd->add_option("--polls", pipeline->polls, "poll ranks CSV")
        ->required()
        ->check(CLI::ExistingFile);
    pipeline_cmd->add_option("--roster", pipeline->roster, "candidate roster CSV")
        ->check(CLI::ExistingFile);
    pipeline_cmd->add_option("--out-dir", pipeline->out_dir, "report directory")->required();
    pipeline_cmd->add_option("--start-date", pipeline->start_date, "period origin")
        ->required();
    pipeline_cmd
        ->add_option("--window-begin", pipeline->window_begin, "prediction window start")
        ->required();
    pipeline_cmd->add_option("--window-end", pipeline->window_end, "prediction window end")
        ->required();
    pipeline_cmd->add_option("--period-days", pipeline->period_days, "period length")
        ->check(CLI::PositiveNumber);
    pipeline_cmd->add_option("--k", pipeline->k, "fold count")
        ->check(CLI::Range(2, 1000000));
    pipeline_cmd->add_option("--seed", pipeline->seed, "shuffle seed")->required();
    pipeline_cmd->add_option("--alpha", pipeline->alpha, "smoothing strength")
        ->check(CLI::PositiveNumber);
    pipeline_cmd->callback([pipeline, &rc]() { rc = run_pipeline_cmd(*pipeline); });

    auto synth = std::make_shared<SynthOpts>();
    auto* synth_cmd =
        app.add_subcommand("synth", "generate a synthetic corpus with annotations");
    synth_cmd->add_option("--seed", synth->seed, "generator seed")->required();
    synth_cmd->add_option("--size", synth->size, "tweet line count")
        ->check(CLI::PositiveNumber);
    synth_cmd->add_option("--separability", synth->separability,
                          "0 = labels independent of text, 1 = class-exclusive keywords")
        ->check(CLI::Range(0.0, 1.0));
    synth_cmd->add_option("--out-dir", synth->out_dir, "output directory")->required();
    synth_cmd->add_option("--roster", synth->roster, "candidate roster CSV")
        ->check(CLI::ExistingFile);
    synth_cmd->add_option("--start-date", synth->start_date, "first tweet date");
    synth_cmd->add_option("--end-date", synth->end_date, "last tweet date (inclusive)");
    synth_cmd->callback([synth, &rc]() { rc = run_synth(*synth); });

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int code = app.exit(e);
        return code == 0 ? 0 : 2;
    } catch (const InputError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 3;
    }
    return rc;
}
