#include "electsent/evaluation.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <random>
#include <stdexcept>

#include "electsent/util.hpp"

namespace electsent {

namespace {

constexpr const char* kUndefined = "undefined";

std::string metric_cell(const std::optional<double>& value) {
    return value ? format_fixed(*value) : kUndefined;
}

std::optional<double> mean_defined(const std::vector<std::optional<double>>& values) {
    double sum = 0.0;
    std::size_t defined = 0;
    for (const auto& v : values) {
        if (v) {
            sum += *v;
            ++defined;
        }
    }
    if (defined == 0) return std::nullopt;
    return sum / static_cast<double>(defined);
}

}  // namespace

ConfusionMatrix mirror(const ConfusionMatrix& cm) {
    return {cm.tn, cm.fn, cm.tp, cm.fp};
}

double accuracy(const ConfusionMatrix& cm) {
    const std::size_t total = cm.total();
    if (total == 0) throw std::invalid_argument("accuracy: empty confusion matrix");
    return static_cast<double>(cm.tp + cm.tn) / static_cast<double>(total);
}

std::optional<double> f1(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("f1: empty confusion matrix");
    if (cm.tp + cm.fp == 0 || cm.tp + cm.fn == 0) return std::nullopt;
    const double precision = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fp);
    const double recall = static_cast<double>(cm.tp) / static_cast<double>(cm.tp + cm.fn);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

std::optional<double> f1_neg(const ConfusionMatrix& cm) {
    if (cm.total() == 0) throw std::invalid_argument("f1_neg: empty confusion matrix");
    if (cm.tn + cm.fn == 0 || cm.tn + cm.fp == 0) return std::nullopt;
    const double precision = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fn);
    const double recall = static_cast<double>(cm.tn) / static_cast<double>(cm.tn + cm.fp);
    if (precision + recall == 0.0) return 0.0;
    return 2.0 * precision * recall / (precision + recall);
}

MetricReport metrics(const ConfusionMatrix& cm) {
    return {accuracy(cm), f1(cm), f1_neg(cm)};
}

std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k,
                                                  std::uint64_t seed) {
    if (k < 2) throw std::invalid_argument("kfold_split: k must be at least 2");
    if (n < k)
        throw std::invalid_argument("kfold_split: " + std::to_string(n) +
                                    " instances cannot fill " + std::to_string(k) + " folds");
    std::vector<std::size_t> indices(n);
    std::iota(indices.begin(), indices.end(), 0);
    // Hand-rolled Fisher-Yates: std::shuffle's permutation varies between
    // standard libraries, this one does not.
    std::mt19937_64 rng(seed);
    for (std::size_t i = n - 1; i > 0; --i) {
        const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
        std::swap(indices[i], indices[j]);
    }
    std::vector<std::vector<std::size_t>> folds(k);
    const std::size_t base = n / k;
    const std::size_t extra = n % k;
    std::size_t at = 0;
    for (std::size_t f = 0; f < k; ++f) {
        const std::size_t len = base + (f < extra ? 1 : 0);
        folds[f].assign(indices.begin() + at, indices.begin() + at + len);
        at += len;
    }
    return folds;
}

ConfusionMatrix confusion(const SentimentModel& model,
                          const std::vector<LabeledTweet>& test) {
    ConfusionMatrix cm;
    for (const LabeledTweet& t : test) {
        if (t.candidate != model.candidate)
            throw std::invalid_argument("confusion: tweet labeled for " + t.candidate +
                                        " scored against the " + model.candidate + " model");
        const Sentiment predicted = classify(model, t.tweet.text);
        if (t.sentiment == Sentiment::Positive) {
            if (predicted == Sentiment::Positive) ++cm.tp;
            else ++cm.fn;
        } else {
            if (predicted == Sentiment::Positive) ++cm.fp;
            else ++cm.tn;
        }
    }
    return cm;
}

CvResult cross_validate(const std::vector<LabeledTweet>& labeled, std::size_t k,
                        std::uint64_t seed, double alpha) {
    if (labeled.empty()) throw InputError("cross_validate: no labeled tweets");
    const std::string& candidate = labeled.front().candidate;
    std::size_t positives = 0;
    for (const LabeledTweet& t : labeled) {
        if (t.candidate != candidate)
            throw std::invalid_argument("cross_validate: mixed candidates (" + candidate +
                                        " vs " + t.candidate + ")");
        if (t.sentiment == Sentiment::Positive) ++positives;
    }
    if (labeled.size() < k)
        throw InputError("cross_validate: " + candidate + " has " +
                         std::to_string(labeled.size()) + " labeled tweets, fewer than k=" +
                         std::to_string(k));
    if (positives == 0 || positives == labeled.size())
        throw InputError("cross_validate: " + candidate +
                         " has a single sentiment class, nothing to validate");

    const auto folds = kfold_split(labeled.size(), k, seed);
    CvResult result;
    result.candidate = candidate;
    result.n_instances = labeled.size();

    std::vector<bool> in_test(labeled.size(), false);
    for (const auto& fold : folds) {
        for (const std::size_t i : fold) in_test[i] = true;
        std::vector<LabeledTweet> train_set;
        std::vector<LabeledTweet> test_set;
        train_set.reserve(labeled.size() - fold.size());
        test_set.reserve(fold.size());
        for (std::size_t i = 0; i < labeled.size(); ++i)
            (in_test[i] ? test_set : train_set).push_back(labeled[i]);
        for (const std::size_t i : fold) in_test[i] = false;

        const SentimentModel model = train(train_set, alpha);
        result.per_fold.push_back(metrics(confusion(model, test_set)));
    }

    double acc_sum = 0.0;
    std::vector<std::optional<double>> f1s;
    std::vector<std::optional<double>> f1_negs;
    for (const MetricReport& fold : result.per_fold) {
        acc_sum += fold.accuracy;
        f1s.push_back(fold.f1);
        f1_negs.push_back(fold.f1_neg);
    }
    result.mean_accuracy = acc_sum / static_cast<double>(result.per_fold.size());
    result.mean_f1 = mean_defined(f1s);
    result.mean_f1_neg = mean_defined(f1_negs);
    return result;
}

CvReport cross_validate_all(const std::vector<LabeledTweet>& labeled, std::size_t k,
                            std::uint64_t seed, double alpha) {
    std::map<std::string, std::vector<LabeledTweet>> groups;
    for (const LabeledTweet& t : labeled) groups[t.candidate].push_back(t);
    CvReport report;
    for (const auto& [candidate, group] : groups) {
        if (group.size() < k) {
            report.skipped.push_back({candidate, group.size(),
                                      "fewer instances than folds"});
            continue;
        }
        std::size_t positives = 0;
        for (const LabeledTweet& t : group)
            if (t.sentiment == Sentiment::Positive) ++positives;
        if (positives == 0 || positives == group.size()) {
            report.skipped.push_back({candidate, group.size(),
                                      "single sentiment class"});
            continue;
        }
        report.results.push_back(cross_validate(group, k, seed, alpha));
    }
    return report;
}

std::vector<CurvePoint> learning_curve(const std::vector<LabeledTweet>& stream,
                                       const std::vector<std::size_t>& n_values,
                                       std::size_t horizon, double alpha) {
    if (horizon == 0) throw std::invalid_argument("learning_curve: horizon must be positive");
    std::vector<CurvePoint> points;
    for (const std::size_t n : n_values) {
        CurvePoint point;
        point.n = n;
        if (n == 0 || n >= stream.size()) {
            points.push_back(point);  // skipped: nothing to train on or test
            continue;
        }
        const std::size_t end = std::min(stream.size(), n + horizon);
        point.window = end - n;
        point.truncated = point.window < horizon;
        const std::vector<LabeledTweet> train_set(stream.begin(), stream.begin() + n);
        const SentimentModel model = train(train_set, alpha);
        const std::vector<LabeledTweet> test_set(stream.begin() + n, stream.begin() + end);
        point.accuracy = accuracy(confusion(model, test_set));
        points.push_back(point);
    }
    return points;
}

std::vector<CandidateCurve> learning_curves(const std::vector<LabeledTweet>& labeled,
                                            const std::vector<std::size_t>& n_values,
                                            std::size_t horizon, double alpha) {
    std::map<std::string, std::vector<LabeledTweet>> groups;
    for (const LabeledTweet& t : labeled) groups[t.candidate].push_back(t);
    std::vector<CandidateCurve> curves;
    for (auto& [candidate, group] : groups) {
        std::stable_sort(group.begin(), group.end(),
                         [](const LabeledTweet& a, const LabeledTweet& b) {
                             return a.tweet.created_at < b.tweet.created_at;
                         });
        curves.push_back({candidate, learning_curve(group, n_values, horizon, alpha)});
    }
    return curves;
}

void write_cv_report_csv(std::ostream& out, const CvReport& report) {
    write_csv_row(out, {"candidate", "n_instances", "fold", "accuracy", "f1", "f1_neg"});
    // Interleave by candidate name so the report reads alphabetically.
    std::size_t ri = 0;
    std::size_t si = 0;
    while (ri < report.results.size() || si < report.skipped.size()) {
        const bool take_result =
            si == report.skipped.size() ||
            (ri < report.results.size() &&
             report.results[ri].candidate < report.skipped[si].candidate);
        if (take_result) {
            const CvResult& r = report.results[ri++];
            const std::string n = std::to_string(r.n_instances);
            for (std::size_t fold = 0; fold < r.per_fold.size(); ++fold) {
                const MetricReport& m = r.per_fold[fold];
                write_csv_row(out, {r.candidate, n, std::to_string(fold),
                                    format_fixed(m.accuracy), metric_cell(m.f1),
                                    metric_cell(m.f1_neg)});
            }
            write_csv_row(out, {r.candidate, n, "mean", format_fixed(r.mean_accuracy),
                                metric_cell(r.mean_f1), metric_cell(r.mean_f1_neg)});
        } else {
            const CvSkip& s = report.skipped[si++];
            write_csv_row(out, {s.candidate, std::to_string(s.n_instances), "skipped",
                                s.reason, "", ""});
        }
    }
}

void write_curve_csv(std::ostream& out, const std::vector<CandidateCurve>& curves) {
    write_csv_row(out, {"candidate", "n", "accuracy", "window", "truncated"});
    std::map<std::size_t, std::vector<std::optional<double>>> by_n;
    for (const CandidateCurve& curve : curves) {
        for (const CurvePoint& p : curve.points) {
            write_csv_row(out, {curve.candidate, std::to_string(p.n),
                                p.accuracy ? format_fixed(*p.accuracy) : "skipped",
                                std::to_string(p.window), p.truncated ? "1" : "0"});
            by_n[p.n].push_back(p.accuracy);
        }
    }
    for (const auto& [n, values] : by_n) {
        const auto mean = mean_defined(values);
        write_csv_row(out, {"mean", std::to_string(n),
                            mean ? format_fixed(*mean) : "skipped", "", ""});
    }
}

}  // namespace electsent
