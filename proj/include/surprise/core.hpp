#pragma once

#include <limits>
#include <string>
#include <unordered_set>

#include "surprise/types.hpp"

// Surprise of items and sequences, greedy potential-surprise bounds, and the
// normalised surprise score. All functions are pure; callers may parallelize
// over users or items freely. Every argmax/argmin breaks ties toward the
// smallest item id, so identical inputs give bit-identical outputs.
namespace surprise {

// Absolute epsilon for degenerate-denominator and gap comparisons. Distances
// produced by the shipped functions are O(1)..O(100).
inline constexpr double kEpsilon = 1e-12;

namespace detail {

inline void require_nonempty_exposure(const ItemSet& exposed) {
    if (exposed.empty())
        throw std::domain_error("surprise is undefined for an empty exposure set");
}

inline void require_valid_sequence(const ItemSeq& seq, const ItemSet& exposed) {
    std::unordered_set<ItemId> seen;
    seen.reserve(seq.size() * 2);
    for (ItemId id : seq) {
        if (!seen.insert(id).second)
            throw std::invalid_argument("invalid sequence: duplicate item " + std::to_string(id));
        if (exposed.contains(id))
            throw std::invalid_argument("invalid sequence: item " + std::to_string(id) +
                                        " is already exposed");
    }
}

}  // namespace detail

// Minimum distance between item `i` and the items the user has been exposed
// to. Zero when `i` itself is in the exposure set.
template <DistanceFn D>
double item_surprise(ItemId i, const ItemSet& exposed, const D& d) {
    detail::require_nonempty_exposure(exposed);
    if (exposed.contains(i)) return 0.0;
    double best = std::numeric_limits<double>::infinity();
    for (ItemId e : exposed) {
        double v = d(i, e);
        if (v < best) best = v;
    }
    return best;
}

// Cumulative surprise of consuming `seq` in order: each position contributes
// its surprise against the exposure set grown by the items consumed before it.
// The recursion is unrolled because unknown sets can hold thousands of items.
template <DistanceFn D>
double sequence_surprise(const ItemSeq& seq, const ItemSet& exposed, const D& d) {
    detail::require_valid_sequence(seq, exposed);
    if (seq.empty()) return 0.0;
    detail::require_nonempty_exposure(exposed);
    double total = 0.0;
    for (std::size_t p = 0; p < seq.size(); ++p) {
        double s = std::numeric_limits<double>::infinity();
        for (ItemId e : exposed) {
            double v = d(seq[p], e);
            if (v < s) s = v;
        }
        for (std::size_t q = 0; q < p; ++q) {
            double v = d(seq[p], seq[q]);
            if (v < s) s = v;
        }
        total += s;
    }
    return total;
}

namespace detail {

// surprise of each unknown item against the bare exposure set; the shared
// starting state for both greedy passes.
template <DistanceFn D>
std::vector<double> base_surprises(const std::vector<ItemId>& unknown, const ItemSet& exposed,
                                   const D& d) {
    std::vector<double> base(unknown.size());
    for (std::size_t i = 0; i < unknown.size(); ++i) {
        double best = std::numeric_limits<double>::infinity();
        for (ItemId e : exposed) {
            double v = d(unknown[i], e);
            if (v < best) best = v;
        }
        base[i] = best;
    }
    return base;
}

// One greedy pass: k picks of the extreme remaining surprise, exposure growing
// by each pick. The per-item cache makes each step O(|unknown|) lookups.
template <DistanceFn D>
std::pair<double, ItemSeq> greedy_pass(const std::vector<ItemId>& unknown,
                                       std::vector<double> cache, const D& d, int k,
                                       bool maximize) {
    const std::size_t n = unknown.size();
    std::vector<char> used(n, 0);
    ItemSeq seq;
    seq.reserve(static_cast<std::size_t>(k));
    double total = 0.0;
    for (int step = 0; step < k; ++step) {
        std::size_t best = n;
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            if (best == n || (maximize ? cache[i] > cache[best] : cache[i] < cache[best]))
                best = i;
        }
        total += cache[best];
        used[best] = 1;
        seq.push_back(unknown[best]);
        for (std::size_t i = 0; i < n; ++i) {
            if (used[i]) continue;
            double v = d(unknown[i], unknown[best]);
            if (v < cache[i]) cache[i] = v;
        }
    }
    return {total, std::move(seq)};
}

inline double normalize_clip(double sequence_value, const SurpriseBounds& bounds) {
    double den = bounds.max_value - bounds.min_value;
    if (den < kEpsilon) return 1.0;  // every sequence attains the attainable maximum
    double v = (sequence_value - bounds.min_value) / den;
    if (v < 0.0) return 0.0;
    if (v > 1.0) return 1.0;
    return v;
}

}  // namespace detail

// Greedy estimates of the maximum and minimum potential surprise embeddable in
// a length-k sequence drawn from `unknown`. max_seq repeatedly takes the most
// surprising remaining item, min_seq the least surprising one.
template <DistanceFn D>
SurpriseBounds greedy_bounds(const ItemSet& unknown, const ItemSet& exposed, const D& d, int k) {
    detail::require_nonempty_exposure(exposed);
    if (k <= 0) throw std::domain_error("greedy_bounds: k must be positive");
    if (static_cast<std::size_t>(k) > unknown.size())
        throw std::domain_error("greedy_bounds: k exceeds the unknown-set size");

    const std::vector<ItemId>& u = unknown.items();
    std::vector<double> base = detail::base_surprises(u, exposed, d);

    SurpriseBounds b;
    auto mx = detail::greedy_pass(u, base, d, k, true);
    auto mn = detail::greedy_pass(u, std::move(base), d, k, false);
    b.max_value = mx.first;
    b.max_seq = std::move(mx.second);
    b.min_value = mn.first;
    b.min_seq = std::move(mn.second);
    b.exact = false;
    return b;
}

// Where the surprise of `seq` falls between the greedy potential-surprise
// bounds over the full unknown set at k = |seq|, clipped to [0, 1]. A
// degenerate span (max == min within epsilon) scores 1: there is no room for
// improvement left.
template <DistanceFn D>
double normalized_surprise(const ItemSeq& seq, const ItemSet& unknown, const ItemSet& exposed,
                           const D& d) {
    if (seq.empty()) throw std::domain_error("normalized_surprise: empty sequence");
    detail::require_valid_sequence(seq, exposed);
    for (ItemId id : seq)
        if (!unknown.contains(id))
            throw std::invalid_argument("invalid sequence: item " + std::to_string(id) +
                                        " is not in the unknown set");
    SurpriseBounds bounds = greedy_bounds(unknown, exposed, d, static_cast<int>(seq.size()));
    return detail::normalize_clip(sequence_surprise(seq, exposed, d), bounds);
}

}  // namespace surprise
