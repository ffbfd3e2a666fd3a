#include <doctest.h>

#include <cmath>
#include <filesystem>
#include <random>

#include "electsent/nbmodel.hpp"
#include "electsent/util.hpp"
#include "nb_oracle.hpp"

using namespace electsent;

namespace {

constexpr std::int64_t kDec16 = 16785 * 86400LL;

LabeledTweet doc(std::string id, std::string text, Sentiment s,
                 std::string candidate = "Trump") {
    return {{std::move(id), kDec16, std::move(text), {candidate}}, std::move(candidate), s};
}

// Two positive documents {good}, {good day} and one negative {bad}.
SentimentModel tiny_model() {
    return train({
        doc("1", "good", Sentiment::Positive),
        doc("2", "good day", Sentiment::Positive),
        doc("3", "bad", Sentiment::Negative),
    });
}

SentimentModel random_model(std::mt19937_64& rng, std::size_t max_docs,
                            std::size_t vocab) {
    SentimentModel m;
    m.candidate = "X";
    m.alpha = 1.0;
    m.n_pos = rng() % (max_docs + 1);
    m.n_neg = rng() % (max_docs + 1);
    if (m.n_pos == 0 && m.n_neg == 0) m.n_pos = 1;
    for (std::size_t i = 0; i < vocab; ++i) {
        const std::size_t in_pos = m.n_pos == 0 ? 0 : rng() % (m.n_pos + 1);
        const std::size_t in_neg = m.n_neg == 0 ? 0 : rng() % (m.n_neg + 1);
        m.presence["t" + std::to_string(i)] = {in_pos, in_neg};
    }
    return m;
}

}  // namespace

TEST_CASE("tokenize lowercases, splits, strips edges, and dedupes") {
    CHECK(tokenize("Hello, World!") == std::set<std::string>{"hello", "world"});
    CHECK(tokenize("a b a B") == std::set<std::string>{"a", "b"});
    CHECK(tokenize("#MAGA @RealUser don't \"quote\"") ==
          std::set<std::string>{"#maga", "@realuser", "don't", "quote"});
    CHECK(tokenize("  spaced\tout\nwords ") ==
          std::set<std::string>{"spaced", "out", "words"});
    CHECK(tokenize("(vote2016)") == std::set<std::string>{"vote2016"});
    CHECK(tokenize("...") == std::set<std::string>{});
    CHECK(tokenize("") == std::set<std::string>{});
}

TEST_CASE("tokenize splits on unicode whitespace and keeps non-ascii letters") {
    // U+00A0 no-break space separates; the accented word survives untouched.
    CHECK(tokenize("caf\xC3\xA9\xC2\xA0grande") ==
          std::set<std::string>{"caf\xC3\xA9", "grande"});
    // U+3000 ideographic space.
    CHECK(tokenize("a\xE3\x80\x80z") == std::set<std::string>{"a", "z"});
}

TEST_CASE("train counts document presence per class") {
    const SentimentModel m = tiny_model();
    CHECK(m.candidate == "Trump");
    CHECK(m.n_pos == 2);
    CHECK(m.n_neg == 1);
    CHECK(m.alpha == 1.0);
    REQUIRE(m.presence.size() == 3);
    CHECK(m.presence.at("good") == std::pair<std::size_t, std::size_t>{2, 0});
    CHECK(m.presence.at("day") == std::pair<std::size_t, std::size_t>{1, 0});
    CHECK(m.presence.at("bad") == std::pair<std::size_t, std::size_t>{0, 1});
}

TEST_CASE("train counts a repeated token once per document") {
    const SentimentModel m = train({doc("1", "great great great", Sentiment::Positive)});
    CHECK(m.presence.at("great") == std::pair<std::size_t, std::size_t>{1, 0});
}

TEST_CASE("train validates its inputs") {
    CHECK_THROWS_AS((void)train({}), std::invalid_argument);
    CHECK_THROWS_AS((void)train({doc("1", "x", Sentiment::Positive, "Trump"),
                                 doc("2", "y", Sentiment::Negative, "Cruz")}),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)train({doc("1", "x", Sentiment::Positive)}, 0.0),
                    std::invalid_argument);
    CHECK_THROWS_AS((void)train({doc("1", "x", Sentiment::Positive)}, -1.0),
                    std::invalid_argument);
}

TEST_CASE("log_posterior matches hand-computed exact fractions") {
    const SentimentModel m = tiny_model();
    {
        const LogScores s = log_posterior(m, {"good"});
        CHECK(s.pos == doctest::Approx(std::log(3.0 / 16.0)).epsilon(1e-12));
        CHECK(s.neg == doctest::Approx(std::log(2.0 / 81.0)).epsilon(1e-12));
        CHECK(classify_tokens(m, {"good"}) == Sentiment::Positive);
    }
    {
        const LogScores s = log_posterior(m, {"bad"});
        CHECK(s.pos == doctest::Approx(std::log(1.0 / 48.0)).epsilon(1e-12));
        CHECK(s.neg == doctest::Approx(std::log(8.0 / 81.0)).epsilon(1e-12));
        CHECK(classify_tokens(m, {"bad"}) == Sentiment::Negative);
    }
    {
        // All vocabulary absent.
        const LogScores s = log_posterior(m, {});
        CHECK(s.pos == doctest::Approx(std::log(1.0 / 16.0)).epsilon(1e-12));
        CHECK(s.neg == doctest::Approx(std::log(4.0 / 81.0)).epsilon(1e-12));
        CHECK(classify_tokens(m, {}) == Sentiment::Positive);
    }
}

TEST_CASE("tokens outside the vocabulary change nothing") {
    const SentimentModel m = tiny_model();
    const LogScores without = log_posterior(m, {});
    const LogScores with = log_posterior(m, {"zzz", "unseen"});
    CHECK(with.pos == without.pos);
    CHECK(with.neg == without.neg);
}

TEST_CASE("an exact tie classifies negative") {
    const SentimentModel m = train({
        doc("1", "same", Sentiment::Positive),
        doc("2", "same", Sentiment::Negative),
    });
    const LogScores s = log_posterior(m, {"same"});
    CHECK(s.pos == s.neg);
    CHECK(classify_tokens(m, {"same"}) == Sentiment::Negative);
}

TEST_CASE("a single-class model always predicts that class") {
    const SentimentModel all_pos = train({
        doc("1", "any words", Sentiment::Positive),
        doc("2", "other words", Sentiment::Positive),
    });
    CHECK(std::isinf(log_posterior(all_pos, {"any"}).neg));
    CHECK(classify(all_pos, "whatever text") == Sentiment::Positive);
    CHECK(classify(all_pos, "") == Sentiment::Positive);

    const SentimentModel all_neg = train({doc("1", "bad", Sentiment::Negative)});
    CHECK(classify(all_neg, "bad") == Sentiment::Negative);
    CHECK(classify(all_neg, "unrelated") == Sentiment::Negative);
}

TEST_CASE("classify tokenizes the way train does") {
    const SentimentModel m = tiny_model();
    CHECK(classify(m, "GOOD!!!") == Sentiment::Positive);
    CHECK(classify(m, "that was bad.") == Sentiment::Negative);
}

TEST_CASE("model json round trips and serializes deterministically") {
    const SentimentModel m = tiny_model();
    const std::string text = to_json(m);
    CHECK(to_json(m) == text);
    const SentimentModel back = model_from_json(text);
    CHECK(back == m);

    const SentimentModel tiny = train({doc("1", "ok", Sentiment::Positive)});
    CHECK(to_json(tiny) ==
          "{\n"
          "  \"alpha\": 1.0,\n"
          "  \"candidate\": \"Trump\",\n"
          "  \"format\": \"sentiment-model\",\n"
          "  \"n_neg\": 0,\n"
          "  \"n_pos\": 1,\n"
          "  \"tokens\": [\n"
          "    [\n"
          "      \"ok\",\n"
          "      1,\n"
          "      0\n"
          "    ]\n"
          "  ],\n"
          "  \"version\": 1\n"
          "}\n");
}

TEST_CASE("model_from_json rejects malformed documents") {
    const std::string good = to_json(tiny_model());
    auto corrupt = [&](const std::string& from, const std::string& to) {
        std::string text = good;
        const auto at = text.find(from);
        REQUIRE(at != std::string::npos);
        text.replace(at, from.size(), to);
        return text;
    };
    CHECK_THROWS_AS((void)model_from_json("not json"), InputError);
    CHECK_THROWS_AS((void)model_from_json("{}"), InputError);
    CHECK_THROWS_AS((void)model_from_json(corrupt("sentiment-model", "other-format")),
                    InputError);
    CHECK_THROWS_AS((void)model_from_json(corrupt("\"version\": 1", "\"version\": 2")),
                    InputError);
    CHECK_THROWS_AS((void)model_from_json(corrupt("\"alpha\": 1.0", "\"alpha\": 0.0")),
                    InputError);
    // Presence count above the class document count.
    CHECK_THROWS_AS((void)model_from_json(corrupt("[\n      \"bad\",\n      0,\n      1\n    ]",
                                                  "[\n      \"bad\",\n      3,\n      1\n    ]")),
                    InputError);
}

TEST_CASE("model files round trip through disk") {
    const auto dir = std::filesystem::temp_directory_path() / "electsent_model_test";
    std::filesystem::remove_all(dir);
    const SentimentModel m = tiny_model();
    save_model(m, dir / "trump.model.json");
    CHECK(load_model(dir / "trump.model.json") == m);
    std::filesystem::remove_all(dir);
}

TEST_CASE("classifier agrees with the exact integer oracle on random models") {
    std::mt19937_64 rng(161803);
    for (int round = 0; round < 60; ++round) {
        const SentimentModel m = random_model(rng, 30, 7);
        for (int subset = 0; subset < 40; ++subset) {
            std::set<std::string> tokens;
            for (const auto& [token, counts] : m.presence)
                if (rng() % 2 == 0) tokens.insert(token);
            if (rng() % 4 == 0) tokens.insert("oov");
            CHECK(classify_tokens(m, tokens) == nb_oracle::classify(m, tokens));
        }
    }
}

TEST_CASE("replicating the corpus can move the decision boundary") {
    // Eight documents per class; a1 a2 saturate the positive class while
    // z1 z2 z3 are rare negatives. Scaling every count by 100 flips the
    // verdict on the mixed input, and the exact oracle agrees both times.
    auto scaled = [](std::size_t k) {
        SentimentModel m;
        m.candidate = "X";
        m.alpha = 1.0;
        m.n_pos = 8 * k;
        m.n_neg = 8 * k;
        m.presence["a1"] = {8 * k, 0};
        m.presence["a2"] = {8 * k, 0};
        m.presence["z1"] = {0, 1 * k};
        m.presence["z2"] = {0, 1 * k};
        m.presence["z3"] = {0, 1 * k};
        return m;
    };
    const std::set<std::string> input = {"a1", "a2", "z1", "z2", "z3"};

    CHECK(classify_tokens(scaled(1), input) == Sentiment::Positive);
    CHECK(classify_tokens(scaled(100), input) == Sentiment::Negative);
    CHECK(nb_oracle::classify(scaled(1), input) == Sentiment::Positive);
    CHECK(nb_oracle::classify(scaled(100), input) == Sentiment::Negative);
}
