#pragma once

// Exact reference for the Bernoulli classifier, used only by tests. With
// alpha = 1 every factor of each class score is a ratio of small integers,
// so comparing the two scores reduces to comparing two big-integer
// products; no floating point is involved anywhere.

#include <cstdint>
#include <set>
#include <stdexcept>
#include <string>
#include <vector>

#include "electsent/nbmodel.hpp"

namespace nb_oracle {

// Unsigned big natural starting at 1, supporting multiply-by-word.
struct BigNat {
    std::vector<std::uint64_t> limbs{1};  // little-endian

    void mul(std::uint64_t m) {
        unsigned __int128 carry = 0;
        for (std::uint64_t& limb : limbs) {
            const unsigned __int128 cur =
                static_cast<unsigned __int128>(limb) * m + carry;
            limb = static_cast<std::uint64_t>(cur);
            carry = cur >> 64;
        }
        if (carry != 0) limbs.push_back(static_cast<std::uint64_t>(carry));
    }

    static int cmp(const BigNat& a, const BigNat& b) {
        if (a.limbs.size() != b.limbs.size())
            return a.limbs.size() < b.limbs.size() ? -1 : +1;
        for (std::size_t i = a.limbs.size(); i-- > 0;) {
            if (a.limbs[i] != b.limbs[i]) return a.limbs[i] < b.limbs[i] ? -1 : +1;
        }
        return 0;
    }
};

// Compares the positive score against the negative score exactly.
// Returns +1 when positive wins, otherwise -1 (exact ties side with
// negative, matching the production tie rule).
//
// score_c = (n_c / total) * prod over vocabulary of
//           present ? (count_tc + 1) / (n_c + 2)
//                   : (n_c + 1 - count_tc) / (n_c + 2)
//
// Multiplying both sides by total and by (n_pos + 2)^|V| (n_neg + 2)^|V|
// leaves integer products to compare.
inline int compare_scores(const electsent::SentimentModel& model,
                          const std::set<std::string>& tokens) {
    if (model.alpha != 1.0)
        throw std::invalid_argument("nb_oracle: exact arithmetic needs alpha == 1");
    if (model.n_pos == 0 && model.n_neg == 0)
        throw std::invalid_argument("nb_oracle: empty model");
    if (model.n_pos == 0) return -1;
    if (model.n_neg == 0) return +1;

    BigNat pos, neg;
    pos.mul(model.n_pos);
    neg.mul(model.n_neg);
    const std::uint64_t den_pos = model.n_pos + 2;
    const std::uint64_t den_neg = model.n_neg + 2;
    for (const auto& [token, counts] : model.presence) {
        const bool present = tokens.count(token) > 0;
        pos.mul(present ? counts.first + 1 : model.n_pos + 1 - counts.first);
        pos.mul(den_neg);
        neg.mul(present ? counts.second + 1 : model.n_neg + 1 - counts.second);
        neg.mul(den_pos);
    }
    return BigNat::cmp(pos, neg) > 0 ? +1 : -1;
}

inline electsent::Sentiment classify(const electsent::SentimentModel& model,
                                     const std::set<std::string>& tokens) {
    return compare_scores(model, tokens) > 0 ? electsent::Sentiment::Positive
                                             : electsent::Sentiment::Negative;
}

}  // namespace nb_oracle
