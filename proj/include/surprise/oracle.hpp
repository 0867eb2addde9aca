#pragma once

#include <cstdint>
#include <iosfwd>
#include <vector>

#include "surprise/core.hpp"
#include "surprise/distances.hpp"
#include "surprise/types.hpp"

// Brute-force ground truth for the greedy bounds: exact potential surprise by
// permutation enumeration and exact truncated bounds by k-arrangement
// enumeration, plus the seeded greedy-validation report.
namespace surprise::oracle {

inline constexpr std::size_t kMaxExactItems = 10;          // 10! ~ 3.6M sequences
inline constexpr std::uint64_t kMaxArrangements = 5'000'000;

// n! / (n-k)! with saturation above kMaxArrangements.
std::uint64_t arrangement_count(std::size_t n, int k);

namespace detail {

// DFS over k-prefixes of arrangements, carrying the per-item surprise cache
// of greedy_pass. Snapshots per depth avoid reallocation; the deepest level
// skips the cache update entirely.
template <DistanceFn D>
struct Enumerator {
    const std::vector<ItemId>& items;
    const D& d;
    int k;
    std::vector<std::vector<double>> cache;  // one row per depth
    std::vector<char> used;
    std::vector<std::size_t> prefix;
    double best_max = -1.0, best_min = 0.0;
    bool any = false;
    ItemSeq max_seq, min_seq;

    Enumerator(const std::vector<ItemId>& items_, const D& d_, int k_,
               std::vector<double> base)
        : items(items_), d(d_), k(k_), used(items_.size(), 0) {
        cache.assign(static_cast<std::size_t>(k_), {});
        cache[0] = std::move(base);
        for (std::size_t lvl = 1; lvl < cache.size(); ++lvl) cache[lvl].resize(items.size());
        prefix.reserve(static_cast<std::size_t>(k_));
    }

    void record(double total) {
        if (!any || total > best_max) {
            best_max = total;
            max_seq.clear();
            for (std::size_t idx : prefix) max_seq.push_back(items[idx]);
        }
        if (!any || total < best_min) {
            best_min = total;
            min_seq.clear();
            for (std::size_t idx : prefix) min_seq.push_back(items[idx]);
        }
        any = true;
    }

    void walk(int depth, double total) {
        const std::vector<double>& cur = cache[static_cast<std::size_t>(depth)];
        const bool last = depth + 1 == k;
        for (std::size_t i = 0; i < items.size(); ++i) {
            if (used[i]) continue;
            double t = total + cur[i];
            prefix.push_back(i);
            if (last) {
                record(t);
            } else {
                auto& next = cache[static_cast<std::size_t>(depth) + 1];
                used[i] = 1;
                for (std::size_t j = 0; j < items.size(); ++j) {
                    if (used[j]) {
                        next[j] = cur[j];
                        continue;
                    }
                    double v = d(items[j], items[i]);
                    next[j] = v < cur[j] ? v : cur[j];
                }
                walk(depth + 1, t);
                used[i] = 0;
            }
            prefix.pop_back();
        }
    }
};

}  // namespace detail

// True optima over all length-k arrangements of `unknown`. Enumeration budget
// P(|unknown|, k) <= kMaxArrangements.
template <DistanceFn D>
SurpriseBounds exact_truncated_bounds(const ItemSet& unknown, const ItemSet& exposed, const D& d,
                                      int k) {
    surprise::detail::require_nonempty_exposure(exposed);
    if (k <= 0) throw std::domain_error("exact_truncated_bounds: k must be positive");
    if (static_cast<std::size_t>(k) > unknown.size())
        throw std::domain_error("exact_truncated_bounds: k exceeds the unknown-set size");
    if (arrangement_count(unknown.size(), k) > kMaxArrangements)
        throw std::domain_error("exact_truncated_bounds: arrangement budget exceeded; "
                                "use greedy_bounds");

    const auto& items = unknown.items();
    detail::Enumerator<D> e(items, d, k, surprise::detail::base_surprises(items, exposed, d));
    e.walk(0, 0.0);
    SurpriseBounds b;
    b.max_value = e.best_max;
    b.min_value = e.best_min;
    b.max_seq = std::move(e.max_seq);
    b.min_seq = std::move(e.min_seq);
    b.exact = true;
    return b;
}

// True optima over all permutations of `unknown` (capped at kMaxExactItems).
template <DistanceFn D>
SurpriseBounds exact_bounds(const ItemSet& unknown, const ItemSet& exposed, const D& d) {
    if (unknown.size() > kMaxExactItems)
        throw std::domain_error("exact_bounds: more than " + std::to_string(kMaxExactItems) +
                                " unknown items; use greedy_bounds");
    if (unknown.empty()) throw std::domain_error("exact_bounds: empty unknown set");
    return exact_truncated_bounds(unknown, exposed, d, static_cast<int>(unknown.size()));
}

// --- greedy validation over seeded synthetic instances ---------------------

struct OracleRow {
    dist::Kind kind = dist::Kind::euclidean;
    double exact_max_mean = 0.0, greedy_max_mean = 0.0;
    double exact_min_mean = 0.0, greedy_min_mean = 0.0;
    double max_gap_mean = 0.0, min_gap_mean = 0.0;
    double max_gap_peak = 0.0, min_gap_peak = 0.0;
    int instances = 0;
    int max_gap_count = 0, min_gap_count = 0;  // gaps above kEpsilon
    int sandwich_violations = 0;               // greedy outside the exact bounds
};

struct OracleReport {
    std::vector<OracleRow> rows;
    int instances = 0;
    int min_size = 0, max_size = 0;
    std::uint64_t seed = 0;
};

// Random 2-D instances (uniform points in [0,1]^2, one exposed item), exact
// versus greedy bounds for each distance kind. Components are shifted by
// +0.01 for the Jaccard and Jensen-Shannon evaluations so no vector is zero.
OracleReport validate_greedy(int instance_count, int min_size, int max_size,
                             const std::vector<dist::Kind>& kinds, std::uint64_t seed);

void print_report(std::ostream& out, const OracleReport& report);
void write_report_csv(std::ostream& out, const OracleReport& report);

}  // namespace surprise::oracle
