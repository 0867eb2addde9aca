#pragma once

#include <filesystem>
#include <iosfwd>
#include <vector>

#include "surprise/distances.hpp"
#include "surprise/npmi_model.hpp"
#include "surprise/types.hpp"

namespace surprise::dist {

// Dense symmetric pairwise item distances with a zero diagonal. Items are
// indexed by sorted id; lookups by id pay a binary search, lookups by index
// are direct. Construction may be parallelized over rows; every entry is
// computed independently, so the bits do not depend on the worker count.
//
// Cache file layout (little-endian): magic "SBDM", u32 format version (1),
// u32 item count n, n sorted u32 item ids, then the strict upper triangle
// (entries (i, j) with i < j, row-major) as f64. The diagonal is zero by
// construction and is not stored.
class DistanceMatrix {
public:
    DistanceMatrix() = default;

    // Pairwise distances for the five vector kinds. Aitchison vectors are
    // closed and BMT-smoothed per item when zeros are present, then
    // clr-transformed once; Jensen-Shannon vectors are normalised once.
    static DistanceMatrix build(const VectorTable& vectors, Kind kind, int threads = 1);

    // Pairwise NPMI distances over every item in the model.
    static DistanceMatrix build_npmi(const repr::NpmiModel& model, int threads = 1);

    std::size_t size() const { return ids_.size(); }
    const std::vector<ItemId>& items() const { return ids_; }
    std::optional<std::size_t> index_of(ItemId id) const;

    double at_index(std::size_t i, std::size_t j) const { return d_[i * ids_.size() + j]; }

    double operator()(ItemId a, ItemId b) const;

    void save(const std::filesystem::path& path) const;
    static DistanceMatrix load(const std::filesystem::path& path);

    void export_csv(std::ostream& out) const;

private:
    std::vector<ItemId> ids_;  // sorted
    std::vector<double> d_;    // n*n row-major, symmetric, zero diagonal

    template <typename PairFn>
    void fill_parallel(const PairFn& pair_distance, int threads);
};

}  // namespace surprise::dist
