#include "electsent/synth.hpp"

#include <algorithm>
#include <numeric>
#include <random>
#include <sstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "electsent/util.hpp"

namespace electsent {

namespace {

using nlohmann::json;

// Deterministic across standard libraries, unlike std::uniform_*.
class Rng {
public:
    explicit Rng(std::uint64_t seed) : engine_(seed) {}

    double real() { return static_cast<double>(engine_() >> 11) * 0x1.0p-53; }
    std::size_t below(std::size_t n) { return static_cast<std::size_t>(engine_() % n); }
    bool chance(double p) { return real() < p; }

private:
    std::mt19937_64 engine_;
};

const char* const kPositivePool[] = {"hope",     "win",      "great",    "love",
                                     "strong",   "inspiring", "progress", "best"};
const char* const kNegativePool[] = {"sad",   "lose",    "bad",     "hate",
                                     "weak",  "corrupt", "failing", "worst"};
const char* const kNeutralPool[] = {"rally",  "debate",  "poll",     "speech",
                                    "voters", "tonight", "campaign", "caucus"};
const char* const kUsers[] = {"@newsfeed",  "@politico_fan", "@dailywire",
                              "@viewer88",  "@townhall_now", "@pundit_desk"};

template <std::size_t N>
std::string pick(Rng& rng, const char* const (&pool)[N]) {
    return pool[rng.below(N)];
}

std::string random_link(Rng& rng) {
    static const char alnum[] = "abcdefghijklmnopqrstuvwxyz0123456789";
    std::string tail;
    for (int i = 0; i < 8; ++i) tail += alnum[rng.below(sizeof(alnum) - 1)];
    return rng.chance(0.5) ? "https://t.co/" + tail : "pic.twitter.com/" + tail;
}

// Ways to name the candidate in text such that alias detection fires.
std::vector<std::string> mention_forms(const Candidate& candidate) {
    std::vector<std::string> forms{candidate.canonical_name};
    std::string hash_base;
    for (const std::string& alias : candidate.aliases) {
        if (alias.starts_with("@")) forms.push_back(alias);
        else if (alias.find(' ') == std::string::npos &&
                 alias.find('\'') == std::string::npos && alias.size() > hash_base.size())
            hash_base = alias;
    }
    if (!hash_base.empty()) forms.push_back("#" + hash_base);
    return forms;
}

std::vector<std::string> pick_panel(Rng& rng, std::size_t pool, std::size_t size) {
    std::vector<std::size_t> ids(pool);
    std::iota(ids.begin(), ids.end(), 1);
    for (std::size_t i = 0; i < size; ++i) std::swap(ids[i], ids[i + rng.below(pool - i)]);
    std::vector<std::string> panel;
    for (std::size_t i = 0; i < size; ++i) {
        char buf[16];
        std::snprintf(buf, sizeof(buf), "ann-%02zu", ids[i]);
        panel.emplace_back(buf);
    }
    return panel;
}

std::string synth_id(std::size_t line_no) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "synth-%06zu", line_no);
    return buf;
}

}  // namespace

SynthCorpus generate_synthetic_corpus(const SynthConfig& config,
                                      const CandidateRoster& roster) {
    if (config.size < 1) throw std::invalid_argument("synth: size must be at least 1");
    if (config.separability < 0.0 || config.separability > 1.0)
        throw std::invalid_argument("synth: separability must lie in [0,1]");
    if (roster.entries.empty()) throw std::invalid_argument("synth: empty roster");
    if (config.panel_size < 1 || config.panel_size > config.annotator_pool)
        throw std::invalid_argument("synth: panel size exceeds the annotator pool");
    if (!(config.start_date <= config.end_date))
        throw std::invalid_argument("synth: start date after end date");

    Rng rng(config.seed);
    const std::int64_t begin_s = days_from_civil(config.start_date) * 86400;
    const std::int64_t end_s = (days_from_civil(config.end_date) + 1) * 86400;
    const std::uint64_t span = static_cast<std::uint64_t>(end_s - begin_s);

    std::vector<std::int64_t> timestamps(config.size);
    for (auto& ts : timestamps) ts = begin_s + static_cast<std::int64_t>(rng.below(span));
    std::sort(timestamps.begin(), timestamps.end());

    // Every positive-pool draw picks the matching pool with this probability.
    const double own_pool_p = (1.0 + config.separability) / 2.0;

    SynthCorpus corpus;
    for (std::size_t i = 0; i < config.size; ++i) {
        const std::string id = synth_id(i + 1);
        const std::string created = format_twitter(timestamps[i]);

        if (rng.chance(config.malformed_fraction)) {
            ++corpus.malformed;
            switch (rng.below(3)) {
                case 0:
                    corpus.tweet_lines.push_back("{\"id\": \"" + id + "\", \"text\": \"cut off");
                    break;
                case 1:
                    corpus.tweet_lines.push_back("{\"id\": \"" + id + "\", \"created_at\": \"" +
                                                 created + "\"}");
                    break;
                default:
                    corpus.tweet_lines.push_back("{\"id\": \"" + id +
                                                 "\", \"created_at\": \"sometime later\", "
                                                 "\"text\": \"when exactly\"}");
                    break;
            }
            continue;
        }

        const bool missing_id = rng.chance(config.missing_id_fraction);
        const bool no_candidate = rng.chance(config.no_candidate_fraction);
        const bool positive = rng.chance(0.5);
        const Candidate& candidate = roster.entries[rng.below(roster.entries.size())];

        std::string text;
        if (rng.chance(0.2)) text += "RT " + pick(rng, kUsers) + ": ";
        if (!no_candidate) {
            const auto forms = mention_forms(candidate);
            text += forms[rng.below(forms.size())] + " ";
        }
        for (int kw = 0; kw < 2; ++kw) {
            const bool own = rng.chance(own_pool_p);
            text += pick(rng, (positive == own) ? kPositivePool : kNegativePool);
            text += " ";
        }
        text += pick(rng, kNeutralPool);
        if (rng.chance(0.5)) text += " " + pick(rng, kNeutralPool);
        if (!no_candidate && rng.chance(config.multi_mention_fraction)) {
            const Candidate* other = &roster.entries[rng.below(roster.entries.size())];
            if (other->canonical_name != candidate.canonical_name) {
                const auto forms = mention_forms(*other);
                text += " with " + forms[rng.below(forms.size())];
            }
        }
        if (rng.chance(0.3)) text += " #Election2016";
        if (rng.chance(config.url_fraction)) text += " " + random_link(rng);

        json record;
        if (!missing_id) record["id"] = id;
        record["created_at"] = created;
        record["text"] = text;
        record["lang"] = "en";
        record["retweet_count"] = rng.below(50);
        corpus.tweet_lines.push_back(record.dump());

        if (no_candidate) {
            ++corpus.no_candidate;
            continue;  // preprocessing drops it; nobody annotates it
        }
        if (missing_id || rng.chance(config.unannotated_fraction)) {
            ++corpus.unannotated;
            continue;
        }

        const auto panel = pick_panel(rng, config.annotator_pool, config.panel_size);
        const Assigned truth{candidate.canonical_name,
                             positive ? Sentiment::Positive : Sentiment::Negative};
        const Assigned flipped{candidate.canonical_name,
                               positive ? Sentiment::Negative : Sentiment::Positive};
        const double scenario = rng.real();
        if (scenario < config.not_clear_fraction) {
            ++corpus.not_clear_panels;
            const std::size_t clear = config.panel_size / 2 + 1;
            for (std::size_t a = 0; a < panel.size(); ++a)
                corpus.annotations.push_back(
                    {id, panel[a], a < clear ? Verdict{} : Verdict{truth}});
        } else if (scenario < config.not_clear_fraction + config.tie_fraction) {
            ++corpus.tie_panels;
            // Half the panel each way, odd member says "not clear": no unique winner.
            for (std::size_t a = 0; a < panel.size(); ++a) {
                Verdict v;
                if (a % 2 == 0 && a + 1 < panel.size()) v = truth;
                else if (a % 2 == 1) v = flipped;
                corpus.annotations.push_back({id, panel[a], v});
            }
        } else if (rng.chance(config.dissent_fraction)) {
            const std::size_t rebel = rng.below(panel.size());
            for (std::size_t a = 0; a < panel.size(); ++a)
                corpus.annotations.push_back(
                    {id, panel[a], a == rebel ? Verdict{flipped} : Verdict{truth}});
        } else {
            for (const std::string& who : panel)
                corpus.annotations.push_back({id, who, Verdict{truth}});
        }
    }

    corpus.annotations.push_back(
        {"ghost-1", "ann-01", Verdict{Assigned{roster.entries.front().canonical_name,
                                               Sentiment::Positive}}});
    return corpus;
}

void write_synth_corpus(const SynthCorpus& corpus, const std::filesystem::path& dir) {
    std::filesystem::create_directories(dir);
    std::string lines;
    for (const std::string& line : corpus.tweet_lines) {
        lines += line;
        lines += '\n';
    }
    write_file(dir / "tweets.jsonl", lines);
    std::ostringstream ann;
    write_annotations_csv(ann, corpus.annotations);
    write_file(dir / "annotations.csv", ann.str());
}

}  // namespace electsent
