#pragma once

#include <cstdint>
#include <unordered_map>

#include "surprise/types.hpp"

namespace surprise::repr {

// Exposure probability model: p_single(i) is the proportion of users exposed
// to item i, p_joint(i,j) the proportion exposed to both. Pairs are stored
// under an unordered key, so the joint distribution is symmetric by
// construction; absent pairs mean zero co-exposure.
struct NpmiModel {
    std::unordered_map<ItemId, double> p_single;
    std::unordered_map<std::uint64_t, double> p_joint;
    std::uint32_t user_count = 0;

    static std::uint64_t pair_key(ItemId a, ItemId b) {
        if (a > b) std::swap(a, b);
        return (static_cast<std::uint64_t>(a) << 32) | b;
    }

    double single(ItemId i) const {
        auto it = p_single.find(i);
        return it == p_single.end() ? 0.0 : it->second;
    }

    double joint(ItemId a, ItemId b) const {
        auto it = p_joint.find(pair_key(a, b));
        return it == p_joint.end() ? 0.0 : it->second;
    }

    bool contains(ItemId i) const { return p_single.count(i) != 0; }
};

}  // namespace surprise::repr
