#pragma once

#include <algorithm>
#include <concepts>
#include <cstdint>
#include <stdexcept>
#include <vector>

namespace surprise {

using ItemId = std::uint32_t;
using UserId = std::uint32_t;

// One (user, item, rating, timestamp) observation from a rating log.
struct RatingEvent {
    UserId user = 0;
    ItemId item = 0;
    int rating = 0;            // 1..5 stars
    std::int64_t timestamp = 0;  // seconds since epoch
};

inline bool chronological_less(const RatingEvent& a, const RatingEvent& b) {
    if (a.timestamp != b.timestamp) return a.timestamp < b.timestamp;
    if (a.user != b.user) return a.user < b.user;
    return a.item < b.item;
}

// Set of distinct item ids kept sorted ascending. The ascending order is also
// the deterministic tie-break order used by every argmax/argmin in the library.
class ItemSet {
public:
    ItemSet() = default;

    explicit ItemSet(std::vector<ItemId> ids) : ids_(std::move(ids)) {
        std::sort(ids_.begin(), ids_.end());
        ids_.erase(std::unique(ids_.begin(), ids_.end()), ids_.end());
    }

    // Caller guarantees `ids` is sorted and duplicate-free.
    static ItemSet from_sorted(std::vector<ItemId> ids) {
        ItemSet s;
        s.ids_ = std::move(ids);
        return s;
    }

    bool contains(ItemId id) const {
        return std::binary_search(ids_.begin(), ids_.end(), id);
    }

    void insert(ItemId id) {
        auto it = std::lower_bound(ids_.begin(), ids_.end(), id);
        if (it == ids_.end() || *it != id) ids_.insert(it, id);
    }

    std::size_t size() const { return ids_.size(); }
    bool empty() const { return ids_.empty(); }
    const std::vector<ItemId>& items() const { return ids_; }

    auto begin() const { return ids_.begin(); }
    auto end() const { return ids_.end(); }

    bool operator==(const ItemSet&) const = default;

private:
    std::vector<ItemId> ids_;
};

// Ordered recommendation sequence; items must be distinct.
using ItemSeq = std::vector<ItemId>;

// Result of a potential-surprise optimization (exact or greedy).
struct SurpriseBounds {
    double max_value = 0.0;
    double min_value = 0.0;
    ItemSeq max_seq;
    ItemSeq min_seq;
    bool exact = false;
};

// Callable giving the distance between two items.
template <typename D>
concept DistanceFn = requires(const D& d, ItemId a, ItemId b) {
    { d(a, b) } -> std::convertible_to<double>;
};

// Raised for unreadable or malformed input data (maps to exit code 2 in the CLI).
class DataError : public std::runtime_error {
public:
    using std::runtime_error::runtime_error;
};

}  // namespace surprise
