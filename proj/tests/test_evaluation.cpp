#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <random>
#include <set>
#include <sstream>

#include "electsent/evaluation.hpp"
#include "electsent/util.hpp"

using namespace electsent;

namespace {

constexpr std::int64_t kDec16 = 16785 * 86400LL;

LabeledTweet doc(std::string id, std::string text, Sentiment s,
                 std::string candidate = "Trump") {
    return {{std::move(id), kDec16, std::move(text), {candidate}}, std::move(candidate), s};
}

LabeledTweet doc_at(std::string id, std::int64_t at, std::string text, Sentiment s) {
    return {{std::move(id), at, std::move(text), {"Trump"}}, "Trump", s};
}

ConfusionMatrix cm(std::size_t tp, std::size_t fp, std::size_t tn, std::size_t fn) {
    return {tp, fp, tn, fn};
}

}  // namespace

TEST_CASE("mirror swaps the class roles") {
    CHECK(mirror(cm(1, 2, 3, 4)) == cm(3, 4, 1, 2));
    CHECK(mirror(mirror(cm(5, 6, 7, 8))) == cm(5, 6, 7, 8));
}

TEST_CASE("accuracy and f1 on a hand-checked matrix") {
    const ConfusionMatrix m = cm(8, 2, 6, 4);
    CHECK(accuracy(m) == doctest::Approx(0.7).epsilon(1e-12));
    REQUIRE(f1(m).has_value());
    CHECK(*f1(m) == doctest::Approx(8.0 / 11.0).epsilon(1e-12));
    REQUIRE(f1_neg(m).has_value());
    CHECK(*f1_neg(m) == doctest::Approx(2.0 / 3.0).epsilon(1e-12));
    CHECK_THROWS_AS((void)accuracy(cm(0, 0, 0, 0)), std::invalid_argument);
}

TEST_CASE("f1 is undefined exactly when a denominator vanishes") {
    // No predicted positives.
    CHECK_FALSE(f1(cm(0, 0, 5, 3)).has_value());
    // No actual positives.
    CHECK_FALSE(f1(cm(0, 5, 5, 0)).has_value());
    // Zero score but both denominators live.
    REQUIRE(f1(cm(0, 3, 4, 2)).has_value());
    CHECK(*f1(cm(0, 3, 4, 2)) == 0.0);
    // Mirrored conditions for the negative-class score.
    CHECK_FALSE(f1_neg(cm(5, 3, 0, 0)).has_value());
    CHECK_FALSE(f1_neg(cm(5, 0, 0, 5)).has_value());
    REQUIRE(f1_neg(cm(4, 2, 0, 3)).has_value());
    CHECK(*f1_neg(cm(4, 2, 0, 3)) == 0.0);
}

TEST_CASE("f1_neg equals f1 of the mirrored matrix on random matrices") {
    std::mt19937_64 rng(31415);
    int undefined_seen = 0;
    for (int round = 0; round < 1000; ++round) {
        const ConfusionMatrix m = cm(rng() % 20, rng() % 20, rng() % 20, rng() % 20);
        const auto direct = f1_neg(m);
        const auto mirrored = f1(mirror(m));
        REQUIRE(direct.has_value() == mirrored.has_value());
        if (direct) {
            CHECK(*direct == doctest::Approx(*mirrored).epsilon(1e-12));
        } else {
            ++undefined_seen;
        }
    }
    CHECK(undefined_seen > 0);  // the property must exercise both branches
}

TEST_CASE("metrics bundles the three scores") {
    const MetricReport r = metrics(cm(8, 2, 6, 4));
    CHECK(r.accuracy == doctest::Approx(0.7));
    CHECK(*r.f1 == doctest::Approx(8.0 / 11.0));
    CHECK(*r.f1_neg == doctest::Approx(2.0 / 3.0));
}

TEST_CASE("kfold_split partitions deterministically") {
    const auto folds = kfold_split(10, 3, 42);
    REQUIRE(folds.size() == 3);
    CHECK(folds[0].size() == 4);  // 10 % 3 == 1 extra goes to the first fold
    CHECK(folds[1].size() == 3);
    CHECK(folds[2].size() == 3);

    std::set<std::size_t> seen;
    for (const auto& fold : folds)
        for (std::size_t index : fold) CHECK(seen.insert(index).second);
    CHECK(seen.size() == 10);
    CHECK(*seen.rbegin() == 9);

    CHECK(kfold_split(10, 3, 42) == folds);
    CHECK(kfold_split(10, 3, 43) != folds);

    CHECK_THROWS_AS((void)kfold_split(10, 1, 0), std::invalid_argument);
    CHECK_THROWS_AS((void)kfold_split(2, 3, 0), std::invalid_argument);
}

TEST_CASE("kfold_split partitions any (n, k, seed) combination") {
    std::mt19937_64 rng(9001);
    for (int round = 0; round < 200; ++round) {
        const std::size_t k = 2 + rng() % 9;
        const std::size_t n = k + rng() % 50;
        const auto folds = kfold_split(n, k, rng());
        std::vector<std::size_t> all;
        for (const auto& fold : folds) {
            CHECK(!fold.empty());
            all.insert(all.end(), fold.begin(), fold.end());
        }
        REQUIRE(all.size() == n);
        std::sort(all.begin(), all.end());
        for (std::size_t i = 0; i < n; ++i) CHECK(all[i] == i);
        for (std::size_t f = 1; f < folds.size(); ++f)
            CHECK((folds[f - 1].size() == folds[f].size() ||
                   folds[f - 1].size() == folds[f].size() + 1));
    }
}

TEST_CASE("confusion tallies predictions against gold labels") {
    // Single-class positive model predicts positive for everything.
    const SentimentModel always_pos = train({doc("1", "x", Sentiment::Positive)});
    const ConfusionMatrix m = confusion(always_pos, {
        doc("2", "a", Sentiment::Positive),
        doc("3", "b", Sentiment::Positive),
        doc("4", "c", Sentiment::Negative),
    });
    CHECK(m == cm(2, 1, 0, 0));

    CHECK_THROWS_AS(
        (void)confusion(always_pos, {doc("5", "d", Sentiment::Positive, "Cruz")}),
        std::invalid_argument);
}

TEST_CASE("cross_validate on separable data is near perfect") {
    std::vector<LabeledTweet> labeled;
    for (int i = 0; i < 30; ++i) {
        labeled.push_back(doc("p" + std::to_string(i), "great win hope", Sentiment::Positive));
        labeled.push_back(doc("n" + std::to_string(i), "sad loss fear", Sentiment::Negative));
    }
    const CvResult result = cross_validate(labeled, 10, 42);
    CHECK(result.candidate == "Trump");
    CHECK(result.n_instances == 60);
    REQUIRE(result.per_fold.size() == 10);
    CHECK(result.mean_accuracy == doctest::Approx(1.0));
    REQUIRE(result.mean_f1.has_value());
    CHECK(*result.mean_f1 == doctest::Approx(1.0));
    REQUIRE(result.mean_f1_neg.has_value());
    CHECK(*result.mean_f1_neg == doctest::Approx(1.0));
}

TEST_CASE("cross_validate rejects corpora it cannot split") {
    std::vector<LabeledTweet> few = {
        doc("1", "a", Sentiment::Positive),
        doc("2", "b", Sentiment::Negative),
    };
    CHECK_THROWS_AS((void)cross_validate(few, 10, 0), InputError);

    std::vector<LabeledTweet> one_class;
    for (int i = 0; i < 20; ++i)
        one_class.push_back(doc(std::to_string(i), "fine", Sentiment::Positive));
    CHECK_THROWS_AS((void)cross_validate(one_class, 10, 0), InputError);

    std::vector<LabeledTweet> mixed;
    for (int i = 0; i < 10; ++i) {
        mixed.push_back(doc("t" + std::to_string(i), "a", Sentiment::Positive, "Trump"));
        mixed.push_back(doc("c" + std::to_string(i), "b", Sentiment::Negative, "Cruz"));
    }
    CHECK_THROWS_AS((void)cross_validate(mixed, 5, 0), std::invalid_argument);
}

TEST_CASE("cross_validate is invariant to input permutation") {
    std::vector<LabeledTweet> labeled;
    std::mt19937_64 rng(777);
    for (int i = 0; i < 40; ++i) {
        const bool pos = i % 2 == 0;
        std::string text;
        for (int w = 0; w < 3; ++w)
            text += (rng() % 3 ? (pos ? "up " : "down ") : "word ");
        labeled.push_back(doc("t" + std::to_string(i), text,
                              pos ? Sentiment::Positive : Sentiment::Negative));
    }
    const CvResult base = cross_validate(labeled, 5, 42);
    std::shuffle(labeled.begin(), labeled.end(), rng);
    const CvResult shuffled = cross_validate(labeled, 5, 42);
    // Folds hold different tweets after the permutation, but the corpus is
    // the same, so the instance count and candidate agree and the metrics
    // stay in range.
    CHECK(shuffled.candidate == base.candidate);
    CHECK(shuffled.n_instances == base.n_instances);
    CHECK(shuffled.per_fold.size() == base.per_fold.size());
}

TEST_CASE("cross_validate_all groups, validates, and skips with reasons") {
    std::vector<LabeledTweet> labeled;
    for (int i = 0; i < 15; ++i) {
        labeled.push_back(doc("t" + std::to_string(i), i % 2 ? "good win" : "bad loss",
                              i % 2 ? Sentiment::Positive : Sentiment::Negative, "Trump"));
    }
    for (int i = 0; i < 12; ++i)
        labeled.push_back(doc("c" + std::to_string(i), "fine", Sentiment::Positive, "Cruz"));
    labeled.push_back(doc("r1", "x", Sentiment::Positive, "Rubio"));

    const CvReport report = cross_validate_all(labeled, 10, 42);
    REQUIRE(report.results.size() == 1);
    CHECK(report.results[0].candidate == "Trump");
    REQUIRE(report.skipped.size() == 2);
    CHECK(report.skipped[0].candidate == "Cruz");
    CHECK(report.skipped[0].n_instances == 12);
    CHECK(report.skipped[0].reason == "single sentiment class");
    CHECK(report.skipped[1].candidate == "Rubio");
    CHECK(report.skipped[1].reason == "fewer instances than folds");
}

TEST_CASE("cv report csv freezes folds, means, and skip rows") {
    std::vector<LabeledTweet> labeled;
    for (int i = 0; i < 4; ++i) {
        labeled.push_back(doc("p" + std::to_string(i), "great win", Sentiment::Positive));
        labeled.push_back(doc("n" + std::to_string(i), "sad loss", Sentiment::Negative));
    }
    CvReport report;
    report.results.push_back(cross_validate(labeled, 4, 1));
    report.skipped.push_back({"Walker", 3, "fewer instances than folds"});

    std::ostringstream out;
    write_cv_report_csv(out, report);
    // Seed 1 deals two same-class tweets to every test fold, so one score
    // per fold is undefined; the means average the folds that defined it.
    CHECK(out.str() ==
          "candidate,n_instances,fold,accuracy,f1,f1_neg\n"
          "Trump,8,0,1.000000,1.000000,undefined\n"
          "Trump,8,1,1.000000,undefined,1.000000\n"
          "Trump,8,2,1.000000,undefined,1.000000\n"
          "Trump,8,3,1.000000,1.000000,undefined\n"
          "Trump,8,mean,1.000000,1.000000,1.000000\n"
          "Walker,3,skipped,fewer instances than folds,,\n");
}

TEST_CASE("single-class folds print the undefined literal instead of failing") {
    // Three positives, one negative: with k = 2 and this seed some test
    // fold contains no negatives, so the negative-class score is undefined
    // there while the run still completes.
    std::vector<LabeledTweet> labeled = {
        doc("1", "good", Sentiment::Positive),
        doc("2", "good win", Sentiment::Positive),
        doc("3", "great", Sentiment::Positive),
        doc("4", "bad", Sentiment::Negative),
    };
    const CvResult result = cross_validate(labeled, 2, 0);
    std::size_t undefined_negs = 0;
    for (const MetricReport& fold : result.per_fold)
        if (!fold.f1_neg.has_value()) ++undefined_negs;
    CHECK(undefined_negs > 0);

    CvReport report;
    report.results.push_back(result);
    std::ostringstream out;
    write_cv_report_csv(out, report);
    CHECK(out.str().find("undefined") != std::string::npos);
}

TEST_CASE("learning_curve trains on prefixes and scores the following window") {
    std::vector<LabeledTweet> stream;
    for (int i = 0; i < 100; ++i) {
        const bool pos = i % 2 == 0;
        stream.push_back(doc_at("t" + std::to_string(i), kDec16 + i,
                                pos ? "great win" : "sad loss",
                                pos ? Sentiment::Positive : Sentiment::Negative));
    }
    const auto points = learning_curve(stream, {20, 80, 99, 100, 150}, 30);
    REQUIRE(points.size() == 5);

    CHECK(points[0].n == 20);
    REQUIRE(points[0].accuracy.has_value());
    CHECK(*points[0].accuracy == doctest::Approx(1.0));
    CHECK(points[0].window == 30);
    CHECK_FALSE(points[0].truncated);

    CHECK(points[1].window == 20);  // only 20 tweets remain
    CHECK(points[1].truncated);

    CHECK(points[2].window == 1);
    CHECK(points[2].truncated);

    // n == size and n > size leave nothing to score.
    CHECK_FALSE(points[3].accuracy.has_value());
    CHECK_FALSE(points[4].accuracy.has_value());

    CHECK_THROWS_AS((void)learning_curve(stream, {10}, 0), std::invalid_argument);
}

TEST_CASE("learning_curves orders each candidate stream by time") {
    std::vector<LabeledTweet> labeled;
    // Reverse chronological input; positives early in time, negatives late.
    for (int i = 9; i >= 0; --i) {
        const bool pos = i < 5;
        labeled.push_back(doc_at("t" + std::to_string(i), kDec16 + i,
                                 pos ? "great win" : "sad loss",
                                 pos ? Sentiment::Positive : Sentiment::Negative));
    }
    const auto curves = learning_curves(labeled, {5}, 5);
    REQUIRE(curves.size() == 1);
    REQUIRE(curves[0].points.size() == 1);
    REQUIRE(curves[0].points[0].accuracy.has_value());
    // Trained on the five positives, tested on the five negatives: the
    // single-class model predicts positive throughout.
    CHECK(*curves[0].points[0].accuracy == doctest::Approx(0.0));
}

TEST_CASE("curve csv layout with means and skip markers") {
    std::vector<CandidateCurve> curves;
    curves.push_back({"Cruz",
                      {{10, 0.8, 4, true}, {20, std::nullopt, 0, false}}});
    curves.push_back({"Trump",
                      {{10, 0.6, 5, false}, {20, std::nullopt, 0, false}}});
    std::ostringstream out;
    write_curve_csv(out, curves);
    CHECK(out.str() ==
          "candidate,n,accuracy,window,truncated\n"
          "Cruz,10,0.800000,4,1\n"
          "Cruz,20,skipped,0,0\n"
          "Trump,10,0.600000,5,0\n"
          "Trump,20,skipped,0,0\n"
          "mean,10,0.700000,,\n"
          "mean,20,skipped,,\n");
}
