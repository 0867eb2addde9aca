#pragma once

#include <numeric>
#include <string_view>

#include "surprise/core.hpp"
#include "surprise/types.hpp"

// The three scoring algorithms of the evaluation grid. Scorers are pure given
// an immutable distance source; per-candidate scoring can run in parallel.
namespace surprise::rec {

enum class Algorithm { knn, msi, lsi };

Algorithm parse_algorithm(std::string_view name);
std::string_view algorithm_name(Algorithm a);

struct Scorer {
    Algorithm kind = Algorithm::knn;
    int knn_k = 50;
};

// A user's rated items with their star values; `exposed` holds exactly the
// keys of the rating list.
struct UserHistory {
    ItemSet exposed;
    std::vector<double> ratings;  // parallel to exposed.items()

    static UserHistory from_pairs(std::vector<std::pair<ItemId, double>> pairs) {
        std::stable_sort(pairs.begin(), pairs.end(),
                         [](const auto& a, const auto& b) { return a.first < b.first; });
        UserHistory h;
        std::vector<ItemId> ids;
        ids.reserve(pairs.size());
        for (const auto& [id, r] : pairs) {
            if (!ids.empty() && ids.back() == id) {
                h.ratings.back() = r;  // later pair wins
                continue;
            }
            ids.push_back(id);
            h.ratings.push_back(r);
        }
        h.exposed = ItemSet::from_sorted(std::move(ids));
        return h;
    }
};

// Weighted average rating of the k nearest rated items, sim = 1/(1 + d).
// Neighborhood ties break toward the smaller item id.
template <DistanceFn D>
double knn_score(ItemId i, const UserHistory& hist, const D& d, int k) {
    if (k < 1) throw std::domain_error("knn_score: k must be positive");
    if (hist.exposed.empty()) throw std::domain_error("knn_score: empty history");
    const auto& ids = hist.exposed.items();
    std::vector<std::pair<double, ItemId>> near;
    near.reserve(ids.size());
    for (std::size_t j = 0; j < ids.size(); ++j) near.emplace_back(d(i, ids[j]), ids[j]);
    std::size_t take = std::min<std::size_t>(static_cast<std::size_t>(k), near.size());
    std::partial_sort(near.begin(), near.begin() + static_cast<std::ptrdiff_t>(take), near.end());
    double num = 0.0, den = 0.0;
    for (std::size_t j = 0; j < take; ++j) {
        auto idx = std::lower_bound(ids.begin(), ids.end(), near[j].second) - ids.begin();
        double sim = 1.0 / (1.0 + near[j].first);
        num += sim * hist.ratings[static_cast<std::size_t>(idx)];
        den += sim;
    }
    return num / den;
}

template <DistanceFn D>
double msi_score(ItemId i, const UserHistory& hist, const D& d) {
    if (hist.exposed.contains(i))
        throw std::invalid_argument("msi_score: item " + std::to_string(i) + " already exposed");
    return item_surprise(i, hist.exposed, d);
}

// Negated surprise, so the descending-score ranking surfaces familiar items.
template <DistanceFn D>
double lsi_score(ItemId i, const UserHistory& hist, const D& d) {
    if (hist.exposed.contains(i))
        throw std::invalid_argument("lsi_score: item " + std::to_string(i) + " already exposed");
    return -item_surprise(i, hist.exposed, d);
}

template <DistanceFn D>
double score(const Scorer& scorer, ItemId i, const UserHistory& hist, const D& d) {
    switch (scorer.kind) {
        case Algorithm::knn: return knn_score(i, hist, d, scorer.knn_k);
        case Algorithm::msi: return msi_score(i, hist, d);
        case Algorithm::lsi: return lsi_score(i, hist, d);
    }
    throw std::logic_error("unreachable");
}

// Scores every candidate once, sorts descending (ties toward the smaller id)
// and returns the first `top_n` in rank order.
template <DistanceFn D>
ItemSeq rank_top_n(const std::vector<ItemId>& candidates, const Scorer& scorer,
                   const UserHistory& hist, const D& d, int top_n) {
    if (top_n < 1) throw std::domain_error("rank_top_n: top_n must be positive");
    if (static_cast<std::size_t>(top_n) > candidates.size())
        throw std::domain_error("rank_top_n: top_n exceeds the candidate count");
    std::vector<std::pair<double, ItemId>> scored;
    scored.reserve(candidates.size());
    for (ItemId c : candidates) scored.emplace_back(score(scorer, c, hist, d), c);
    std::partial_sort(scored.begin(), scored.begin() + top_n, scored.end(),
                      [](const auto& a, const auto& b) {
                          if (a.first != b.first) return a.first > b.first;
                          return a.second < b.second;
                      });
    ItemSeq seq;
    seq.reserve(static_cast<std::size_t>(top_n));
    for (int j = 0; j < top_n; ++j) seq.push_back(scored[static_cast<std::size_t>(j)].second);
    return seq;
}

}  // namespace surprise::rec
