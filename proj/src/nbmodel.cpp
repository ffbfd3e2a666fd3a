#include "electsent/nbmodel.hpp"

#include <cmath>
#include <limits>
#include <optional>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

bool is_unicode_space(char32_t cp) {
    switch (cp) {
        case U' ':
        case U'\t':
        case U'\n':
        case U'\v':
        case U'\f':
        case U'\r':
        case 0x0085:
        case 0x00A0:
        case 0x1680:
        case 0x2028:
        case 0x2029:
        case 0x202F:
        case 0x205F:
        case 0x3000:
            return true;
        default:
            return cp >= 0x2000 && cp <= 0x200A;
    }
}

// Permissive decoder: an invalid sequence falls back to the single lead byte.
char32_t next_codepoint(std::string_view s, std::size_t& i) {
    const unsigned char b0 = static_cast<unsigned char>(s[i]);
    if (b0 < 0x80) {
        ++i;
        return b0;
    }
    std::size_t len = 0;
    if ((b0 & 0xE0) == 0xC0) len = 2;
    else if ((b0 & 0xF0) == 0xE0) len = 3;
    else if ((b0 & 0xF8) == 0xF0) len = 4;
    if (len == 0 || i + len > s.size()) {
        ++i;
        return b0;
    }
    char32_t cp = b0 & (0x7F >> len);
    for (std::size_t k = 1; k < len; ++k) {
        const unsigned char bk = static_cast<unsigned char>(s[i + k]);
        if ((bk & 0xC0) != 0x80) {
            ++i;
            return b0;
        }
        cp = (cp << 6) | (bk & 0x3F);
    }
    i += len;
    return cp;
}

bool keep_edge_byte(unsigned char c) {
    return (c >= 'a' && c <= 'z') || (c >= '0' && c <= '9') || c == '#' ||
           c == '@' || c == '\'' || c >= 0x80;
}

}  // namespace

std::set<std::string> tokenize(std::string_view text) {
    std::set<std::string> tokens;
    auto flush = [&](std::size_t begin, std::size_t end) {
        if (end <= begin) return;
        std::string word = ascii_lower(text.substr(begin, end - begin));
        std::size_t lo = 0;
        std::size_t hi = word.size();
        while (lo < hi && !keep_edge_byte(static_cast<unsigned char>(word[lo]))) ++lo;
        while (hi > lo && !keep_edge_byte(static_cast<unsigned char>(word[hi - 1]))) --hi;
        if (hi > lo) tokens.insert(word.substr(lo, hi - lo));
    };
    std::size_t word_begin = 0;
    std::size_t i = 0;
    while (i < text.size()) {
        const std::size_t start = i;
        if (is_unicode_space(next_codepoint(text, i))) {
            flush(word_begin, start);
            word_begin = i;
        }
    }
    flush(word_begin, text.size());
    return tokens;
}

SentimentModel train(const std::vector<LabeledTweet>& labeled, double alpha) {
    if (labeled.empty()) throw std::invalid_argument("train: empty training set");
    if (!(alpha > 0.0)) throw std::invalid_argument("train: alpha must be positive");
    SentimentModel model;
    model.candidate = labeled.front().candidate;
    model.alpha = alpha;
    for (const LabeledTweet& t : labeled) {
        if (t.candidate != model.candidate)
            throw std::invalid_argument("train: mixed candidates (" + model.candidate +
                                        " vs " + t.candidate + ")");
        const bool positive = t.sentiment == Sentiment::Positive;
        if (positive) ++model.n_pos;
        else ++model.n_neg;
        for (const std::string& token : tokenize(t.tweet.text)) {
            auto& [pos_docs, neg_docs] = model.presence[token];
            if (positive) ++pos_docs;
            else ++neg_docs;
        }
    }
    return model;
}

LogScores log_posterior(const SentimentModel& model, const std::set<std::string>& tokens) {
    constexpr double kNegInf = -std::numeric_limits<double>::infinity();
    const double total = static_cast<double>(model.n_pos + model.n_neg);
    LogScores scores;
    scores.pos = model.n_pos == 0 ? kNegInf : std::log(static_cast<double>(model.n_pos) / total);
    scores.neg = model.n_neg == 0 ? kNegInf : std::log(static_cast<double>(model.n_neg) / total);
    const double denom_pos = static_cast<double>(model.n_pos) + 2.0 * model.alpha;
    const double denom_neg = static_cast<double>(model.n_neg) + 2.0 * model.alpha;
    for (const auto& [token, counts] : model.presence) {
        const double p_pos = (static_cast<double>(counts.first) + model.alpha) / denom_pos;
        const double p_neg = (static_cast<double>(counts.second) + model.alpha) / denom_neg;
        if (tokens.count(token) != 0) {
            scores.pos += std::log(p_pos);
            scores.neg += std::log(p_neg);
        } else {
            scores.pos += std::log1p(-p_pos);
            scores.neg += std::log1p(-p_neg);
        }
    }
    return scores;
}

namespace {

bool mul_fits(unsigned __int128& acc, unsigned __int128 factor) {
    return !__builtin_mul_overflow(acc, factor, &acc);
}

// Exact posterior comparison for unit-smoothed models whose cross-multiplied
// class scores fit in 128 bits, so ties resolve exactly instead of hanging
// on the rounding of two log sums. nullopt means the products overflow and
// the caller must fall back to log space.
std::optional<Sentiment> classify_exact(const SentimentModel& model,
                                        const std::set<std::string>& tokens) {
    if (model.alpha != 1.0) return std::nullopt;
    if (model.n_pos == 0) return Sentiment::Negative;
    if (model.n_neg == 0) return Sentiment::Positive;
    unsigned __int128 pos = model.n_pos;
    unsigned __int128 neg = model.n_neg;
    const unsigned __int128 den_pos = model.n_pos + 2;
    const unsigned __int128 den_neg = model.n_neg + 2;
    for (const auto& [token, counts] : model.presence) {
        const bool present = tokens.count(token) > 0;
        const std::size_t top_pos =
            present ? counts.first + 1 : model.n_pos + 1 - counts.first;
        const std::size_t top_neg =
            present ? counts.second + 1 : model.n_neg + 1 - counts.second;
        if (!mul_fits(pos, top_pos) || !mul_fits(pos, den_neg) ||
            !mul_fits(neg, top_neg) || !mul_fits(neg, den_pos))
            return std::nullopt;
    }
    return pos > neg ? Sentiment::Positive : Sentiment::Negative;
}

}  // namespace

Sentiment classify_tokens(const SentimentModel& model, const std::set<std::string>& tokens) {
    if (const auto exact = classify_exact(model, tokens)) return *exact;
    const LogScores scores = log_posterior(model, tokens);
    return scores.pos > scores.neg ? Sentiment::Positive : Sentiment::Negative;
}

Sentiment classify(const SentimentModel& model, std::string_view text) {
    return classify_tokens(model, tokenize(text));
}

std::string to_json(const SentimentModel& model) {
    json doc;
    doc["format"] = "sentiment-model";
    doc["version"] = 1;
    doc["candidate"] = model.candidate;
    doc["alpha"] = model.alpha;
    doc["n_pos"] = model.n_pos;
    doc["n_neg"] = model.n_neg;
    json tokens = json::array();
    for (const auto& [token, counts] : model.presence)
        tokens.push_back(json::array({token, counts.first, counts.second}));
    doc["tokens"] = std::move(tokens);
    return doc.dump(2) + "\n";
}

SentimentModel model_from_json(const std::string& text) {
    json doc = json::parse(text, nullptr, false);
    if (doc.is_discarded() || !doc.is_object())
        throw InputError("model: malformed json document");
    SentimentModel model;
    try {
        if (doc.at("format").get<std::string>() != "sentiment-model" ||
            doc.at("version").get<int>() != 1)
            throw InputError("model: unsupported format or version");
        model.candidate = doc.at("candidate").get<std::string>();
        model.alpha = doc.at("alpha").get<double>();
        model.n_pos = doc.at("n_pos").get<std::size_t>();
        model.n_neg = doc.at("n_neg").get<std::size_t>();
        for (const auto& row : doc.at("tokens")) {
            if (!row.is_array() || row.size() != 3)
                throw InputError("model: bad token row");
            model.presence[row[0].get<std::string>()] = {row[1].get<std::size_t>(),
                                                         row[2].get<std::size_t>()};
        }
    } catch (const json::exception& e) {
        throw InputError(std::string("model: bad document: ") + e.what());
    }
    if (!(model.alpha > 0.0)) throw InputError("model: alpha must be positive");
    if (model.n_pos + model.n_neg == 0) throw InputError("model: no training documents");
    for (const auto& [token, counts] : model.presence) {
        if (counts.first > model.n_pos || counts.second > model.n_neg)
            throw InputError("model: presence count exceeds class size for token " + token);
    }
    return model;
}

void save_model(const SentimentModel& model, const std::filesystem::path& path) {
    write_file(path, to_json(model));
}

SentimentModel load_model(const std::filesystem::path& path) {
    return model_from_json(read_file(path));
}

}  // namespace electsent
