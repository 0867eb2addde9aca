#pragma once

#include <map>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "surprise/npmi_model.hpp"
#include "surprise/types.hpp"

namespace surprise::dist {

enum class Kind { euclidean, cosine, jaccard, jensen_shannon, aitchison, npmi };

Kind parse_kind(std::string_view name);  // "jensen-shannon" etc.
std::string_view kind_name(Kind kind);
inline constexpr Kind kAllKinds[] = {Kind::euclidean,      Kind::cosine,    Kind::jaccard,
                                     Kind::jensen_shannon, Kind::aitchison, Kind::npmi};

// Jaccard / Jensen-Shannon / Aitchison carry a compositional-data premise.
bool requires_compositional(Kind kind);

// Dense per-item vectors, all the same dimensionality, ids sorted ascending.
class VectorTable {
public:
    VectorTable() = default;
    explicit VectorTable(const std::map<ItemId, std::vector<double>>& rows);

    std::size_t size() const { return ids_.size(); }
    std::size_t dim() const { return dim_; }
    const std::vector<ItemId>& ids() const { return ids_; }
    std::optional<std::size_t> index_of(ItemId id) const;
    std::span<const double> row(std::size_t index) const {
        return {data_.data() + index * dim_, dim_};
    }
    std::span<const double> row_of(ItemId id) const;

private:
    std::vector<ItemId> ids_;
    std::size_t dim_ = 0;
    std::vector<double> data_;
};

// --- vector distances ------------------------------------------------------
// All six satisfy d(x,x) = 0, symmetry and non-negativity on valid inputs.

// Non-normalised l2 norm of x - y.
double euclidean(std::span<const double> x, std::span<const double> y);

// 1 - cos(x, y); range [0, 2], [0, 1] for non-negative vectors.
double cosine(std::span<const double> x, std::span<const double> y);

// Weighted (min/max) Jaccard distance, 1 - sum(min)/sum(max); range [0, 1].
// Degrades to the set Jaccard distance on binary vectors.
double weighted_jaccard(std::span<const double> x, std::span<const double> y);

// Base-2 Jensen-Shannon divergence of the inputs normalised to probability
// distributions; range [0, 1]. Zero components are fine: the mixture is
// positive wherever either input is, so no KL term ever divides by zero.
double jensen_shannon(std::span<const double> x, std::span<const double> y);

// Aitchison distance, the l2 norm of clr(x) - clr(y). Components must be
// strictly positive; apply bmt_smooth first when zeros exist.
double aitchison(std::span<const double> x, std::span<const double> y);

// Closure to proportions with Bayesian Multiplicative Treatment of zeros
// under a Perks prior (s = 1, t_i = 1/D): each zero part becomes
// (1/D)/(n + 1) and non-zero parts shrink by the total mass handed out.
// Output sums to 1 with every part positive; ratios of non-zero parts are
// preserved.
std::vector<double> bmt_smooth(std::span<const double> counts);

// Centered log-ratio transform of a strictly positive vector.
std::vector<double> clr(std::span<const double> x);

// NPMI similarity mapped to a distance: d = (1 - npmi)/2, so the image
// [-1, 1] lands on [0, 1] with perfect co-occurrence at 0. Conventions making
// the distance total: p(i,j) = 0 -> 1; i = j or p(i,j) = 1 -> 0.
double npmi_distance(ItemId i, ItemId j, const repr::NpmiModel& model);

// Dispatch over the five vector kinds (not npmi). For aitchison the inputs
// must already be strictly positive.
double vector_distance(Kind kind, std::span<const double> x, std::span<const double> y);

}  // namespace surprise::dist
