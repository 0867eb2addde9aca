#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "surprise/distances.hpp"
#include "surprise/representations.hpp"
#include "surprise/types.hpp"

// Seeded synthetic worlds: rating logs with engineered frame overlap and
// 5-star placement for segmentation tests, plus matching description and
// dense-vector files so every representation model can be built.
namespace surprise::io {

enum class OverlapProfile { chain, disjoint };

OverlapProfile parse_overlap(std::string_view name);

struct SynthConfig {
    int users = 40;
    int items = 60;
    int events = 6000;
    int frame_size = 1500;  // alignment target for the overlap engineering
    OverlapProfile overlap = OverlapProfile::chain;
    int overlap_users = 35;  // shared users between consecutive frames (chain)
    int frame_users = 0;     // users active per frame; 0 = derived from `users`
    std::uint64_t seed = 1;
    int vector_dim = 8;
    int desc_terms = 18;  // terms per description, none of them stopwords
};

// Chronological log of exactly `events` events. With the chain profile,
// consecutive frame-sized blocks share exactly `overlap_users` users and each
// shared user gets a 5-star rating in the later block; with disjoint, blocks
// share nobody. Item ids enter gradually so the release-date universe grows
// over time.
std::vector<RatingEvent> synth_ratings(const SynthConfig& config);

// Window of users active in frame `frame` (0-based) under `config`.
std::pair<UserId, UserId> synth_frame_user_range(const SynthConfig& config, int frame);

// One pseudo-word description per item, `desc_terms` words drawn from a
// generated vocabulary that avoids stopwords and inflection-like endings.
repr::Catalog synth_descriptions(const SynthConfig& config);

// Dense vectors in [-1, 1]^dim for every item, none of them zero.
dist::VectorTable synth_vectors(const SynthConfig& config);

void write_descriptions_tsv(const std::filesystem::path& path, const repr::Catalog& catalog);

}  // namespace surprise::io
