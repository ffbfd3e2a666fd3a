#pragma once

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>
#include <vector>

#include "electsent/nbmodel.hpp"

namespace electsent {

struct ConfusionMatrix {
    std::size_t tp = 0;
    std::size_t fp = 0;
    std::size_t tn = 0;
    std::size_t fn = 0;

    std::size_t total() const { return tp + fp + tn + fn; }
    bool operator==(const ConfusionMatrix&) const = default;
};

// Swap the roles of the two classes: tp<->tn, fp<->fn.
ConfusionMatrix mirror(const ConfusionMatrix& cm);

// Throws on an empty matrix.
double accuracy(const ConfusionMatrix& cm);

// nullopt means the score is undefined because a precision or recall
// denominator is zero. A zero numerator with nonzero denominators is a
// defined score of 0.
std::optional<double> f1(const ConfusionMatrix& cm);

// F1 with the negative class as the class of interest: harmonic mean of
// tn/(tn+fn) and tn/(tn+fp).
std::optional<double> f1_neg(const ConfusionMatrix& cm);

struct MetricReport {
    double accuracy = 0.0;
    std::optional<double> f1;
    std::optional<double> f1_neg;
};

MetricReport metrics(const ConfusionMatrix& cm);

// Indices 0..n-1 shuffled by a seeded Fisher-Yates (stable across
// platforms), then cut into k contiguous chunks; the first n % k chunks
// take the extra element. Throws when n < k or k < 2.
std::vector<std::vector<std::size_t>> kfold_split(std::size_t n, std::size_t k,
                                                  std::uint64_t seed);

// Classify every test tweet with the model and tally against the gold
// labels. All test tweets must belong to the model's candidate.
ConfusionMatrix confusion(const SentimentModel& model,
                          const std::vector<LabeledTweet>& test);

struct CvResult {
    std::string candidate;
    std::size_t n_instances = 0;
    std::vector<MetricReport> per_fold;
    double mean_accuracy = 0.0;
    std::optional<double> mean_f1;      // mean over folds where defined
    std::optional<double> mean_f1_neg;
};

// k-fold cross-validation for one candidate's labeled tweets. Requires at
// least k instances and both sentiment classes present overall; individual
// folds may still end up single-class, which trains a degenerate model
// rather than failing.
CvResult cross_validate(const std::vector<LabeledTweet>& labeled, std::size_t k,
                        std::uint64_t seed, double alpha = 1.0);

struct CvSkip {
    std::string candidate;
    std::size_t n_instances = 0;
    std::string reason;
};

struct CvReport {
    std::vector<CvResult> results;  // sorted by candidate
    std::vector<CvSkip> skipped;    // candidates that could not be validated
};

// Group a mixed-candidate corpus by candidate and cross-validate each
// group. Candidates with fewer than k instances or a single sentiment
// class are reported as skipped instead of failing the whole run.
CvReport cross_validate_all(const std::vector<LabeledTweet>& labeled, std::size_t k,
                            std::uint64_t seed, double alpha = 1.0);

struct CurvePoint {
    std::size_t n = 0;
    std::optional<double> accuracy;  // nullopt when the point was skipped
    std::size_t window = 0;          // actual evaluation window size
    bool truncated = false;          // window smaller than the horizon
};

// Train on the first n tweets of the stream and score accuracy on the next
// `horizon` tweets. Points with no training data or no test window are
// skipped, shorter-than-horizon windows are flagged as truncated.
std::vector<CurvePoint> learning_curve(const std::vector<LabeledTweet>& stream,
                                       const std::vector<std::size_t>& n_values,
                                       std::size_t horizon, double alpha = 1.0);

struct CandidateCurve {
    std::string candidate;
    std::vector<CurvePoint> points;
};

// Group a mixed-candidate corpus by candidate, order each group by
// created_at (ties keep input order), and run learning_curve per group.
std::vector<CandidateCurve> learning_curves(const std::vector<LabeledTweet>& labeled,
                                            const std::vector<std::size_t>& n_values,
                                            std::size_t horizon, double alpha = 1.0);

// Columns: candidate,n_instances,fold,accuracy,f1,f1_neg. One row per fold
// (0-based) plus a "mean" row per candidate; undefined scores print as the
// literal "undefined". Skipped candidates get a single row with fold
// "skipped" and the reason in the accuracy column.
void write_cv_report_csv(std::ostream& out, const CvReport& report);

// Columns: candidate,n,accuracy,window,truncated. Per candidate and point,
// plus a "mean" row per n averaging the candidates with a defined score.
void write_curve_csv(std::ostream& out, const std::vector<CandidateCurve>& curves);

}  // namespace electsent
