#include "surprise/synth.hpp"

#include <cmath>
#include <fstream>

#include "surprise/rng.hpp"

namespace surprise::io {

OverlapProfile parse_overlap(std::string_view name) {
    if (name == "chain") return OverlapProfile::chain;
    if (name == "disjoint") return OverlapProfile::disjoint;
    throw std::invalid_argument("unknown overlap profile: " + std::string(name));
}

namespace {

struct Windows {
    int width = 0;
    int stride = 0;
    int blocks = 0;
};

Windows plan_windows(const SynthConfig& c) {
    if (c.users < 1 || c.items < 1 || c.events < 1 || c.frame_size < 1)
        throw std::invalid_argument("synth: users, items, events and frame-size must be positive");
    Windows w;
    w.blocks = (c.events + c.frame_size - 1) / c.frame_size;
    if (c.overlap == OverlapProfile::chain) {
        if (c.overlap_users < 1)
            throw std::invalid_argument("synth: overlap-users must be positive");
        w.stride = std::max(1, (c.users - c.overlap_users) / w.blocks);
        w.width = c.frame_users > 0 ? c.frame_users : c.overlap_users + w.stride;
        if (w.width <= c.overlap_users)
            throw std::invalid_argument("synth: frame-users must exceed overlap-users");
        w.stride = w.width - c.overlap_users;
    } else {
        w.width = c.frame_users > 0 ? c.frame_users : std::max(1, c.users / w.blocks);
        w.stride = w.width;
    }
    int needed = (w.blocks - 1) * w.stride + w.width;
    if (needed > c.users)
        throw std::invalid_argument("synth: needs " + std::to_string(needed) + " users for " +
                                    std::to_string(w.blocks) + " frames, only " +
                                    std::to_string(c.users) + " available");
    if (w.width > c.frame_size)
        throw std::invalid_argument("synth: frame window of " + std::to_string(w.width) +
                                    " users cannot all appear in " +
                                    std::to_string(c.frame_size) + " events");
    return w;
}

}  // namespace

std::pair<UserId, UserId> synth_frame_user_range(const SynthConfig& config, int frame) {
    Windows w = plan_windows(config);
    UserId lo = static_cast<UserId>(frame * w.stride);
    return {lo, lo + static_cast<UserId>(w.width)};
}

std::vector<RatingEvent> synth_ratings(const SynthConfig& config) {
    Windows w = plan_windows(config);
    Rng rng(derive_seed(config.seed, 0x72, 0));

    std::vector<RatingEvent> events;
    events.reserve(static_cast<std::size_t>(config.events));
    for (int e = 0; e < config.events; ++e) {
        int block = e / config.frame_size;
        int offset = e % config.frame_size;

        RatingEvent ev;
        ev.user = static_cast<UserId>(block * w.stride + offset % w.width);
        // the item pool grows with time, so first-rating dates spread out
        int avail = std::max(1, static_cast<int>(
                                    (static_cast<long long>(config.items) * (block + 1)) / w.blocks));
        ev.item = static_cast<ItemId>(rng.bounded(static_cast<std::uint64_t>(avail)));
        ev.rating = 1 + static_cast<int>(rng.bounded(5));
        // shared users occupy the first overlap_users window slots; give each
        // a 5-star rating on their first event in the later frame
        if (config.overlap == OverlapProfile::chain && block > 0 && offset < config.overlap_users)
            ev.rating = 5;
        ev.timestamp = 1000 + e;
        events.push_back(ev);
    }
    return events;
}

repr::Catalog synth_descriptions(const SynthConfig& config) {
    if (config.desc_terms < 1) throw std::invalid_argument("synth: desc-terms must be positive");
    // pseudo-word vocabulary: CVCVC forms never collide with stopwords and
    // carry no inflectional endings
    constexpr std::string_view consonants = "bdfgklmnprtvz";
    constexpr std::string_view vowels = "aeiou";
    constexpr int vocab_size = 160;
    auto word = [&](int v) {
        std::string s;
        s += consonants[static_cast<std::size_t>(v) % consonants.size()];
        s += vowels[static_cast<std::size_t>(v / 13) % vowels.size()];
        s += consonants[static_cast<std::size_t>(v / 65) % consonants.size()];
        s += vowels[static_cast<std::size_t>(v / 845) % vowels.size()];
        s += consonants[static_cast<std::size_t>(v * 7 + 3) % consonants.size()];
        return s;
    };

    repr::Catalog catalog;
    const int slice = vocab_size / 8;
    for (int i = 0; i < config.items; ++i) {
        Rng rng(derive_seed(config.seed, 0xDE, static_cast<std::uint64_t>(i)));
        int topic = i % 8;
        std::string text;
        for (int t = 0; t < config.desc_terms; ++t) {
            int v;
            if (rng.bounded(2) == 0)
                v = topic * slice + static_cast<int>(rng.bounded(static_cast<std::uint64_t>(slice)));
            else
                v = static_cast<int>(rng.bounded(vocab_size));
            if (t) text += ' ';
            text += word(v);
        }
        catalog[static_cast<ItemId>(i)] = std::move(text);
    }
    return catalog;
}

dist::VectorTable synth_vectors(const SynthConfig& config) {
    if (config.vector_dim < 1) throw std::invalid_argument("synth: vector-dim must be positive");
    std::map<ItemId, std::vector<double>> rows;
    for (int i = 0; i < config.items; ++i) {
        Rng rng(derive_seed(config.seed, 0x5E, static_cast<std::uint64_t>(i)));
        std::vector<double> v(static_cast<std::size_t>(config.vector_dim));
        double norm = 0.0;
        for (double& x : v) {
            x = 2.0 * rng.unit() - 1.0;
            norm += x * x;
        }
        if (norm < 1e-12) v[0] = 0.5;
        rows.emplace(static_cast<ItemId>(i), std::move(v));
    }
    return dist::VectorTable(rows);
}

void write_descriptions_tsv(const std::filesystem::path& path, const repr::Catalog& catalog) {
    std::ofstream out(path, std::ios::trunc);
    if (!out) throw DataError("cannot write descriptions file: " + path.string());
    for (const auto& [id, text] : catalog) out << id << '\t' << text << '\n';
}

}  // namespace surprise::io
