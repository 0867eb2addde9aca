#include "surprise/evaluation.hpp"

#include <charconv>
#include <cmath>
#include <ostream>
#include <thread>

#include "surprise/core.hpp"
#include "surprise/rng.hpp"

namespace surprise::eval {

Mode parse_mode(std::string_view name) {
    if (name == "sampled") return Mode::sampled;
    if (name == "exhaustive") return Mode::exhaustive;
    throw std::invalid_argument("unknown mode: " + std::string(name));
}

std::string_view mode_name(Mode mode) {
    return mode == Mode::sampled ? "sampled" : "exhaustive";
}

Segmentation segment(const std::vector<RatingEvent>& log, int frame_size, int min_common_users) {
    if (frame_size < 1) throw std::domain_error("segment: frame_size must be positive");
    if (min_common_users < 1) throw std::domain_error("segment: min_common_users must be positive");
    for (std::size_t i = 1; i < log.size(); ++i)
        if (chronological_less(log[i], log[i - 1]))
            throw std::invalid_argument("segment: log is not sorted chronologically");

    Segmentation seg;
    const std::size_t fs = static_cast<std::size_t>(frame_size);
    const std::size_t n_frames = log.size() / fs;  // trailing partial frame dropped
    for (std::size_t f = 0; f < n_frames; ++f) {
        Timeframe tf;
        tf.index = static_cast<int>(f) + 1;
        tf.begin = f * fs;
        tf.end = tf.begin + fs;
        std::vector<UserId> users;
        users.reserve(fs);
        for (std::size_t e = tf.begin; e < tf.end; ++e) users.push_back(log[e].user);
        std::sort(users.begin(), users.end());
        users.erase(std::unique(users.begin(), users.end()), users.end());
        tf.users = std::move(users);
        seg.frames.push_back(std::move(tf));
    }

    for (std::size_t f = 1; f < seg.frames.size(); ++f) {
        const Timeframe& prev = seg.frames[f - 1];
        const Timeframe& cur = seg.frames[f];

        std::vector<UserId> five_star;
        for (std::size_t e = cur.begin; e < cur.end; ++e)
            if (log[e].rating == 5) five_star.push_back(log[e].user);
        std::sort(five_star.begin(), five_star.end());
        five_star.erase(std::unique(five_star.begin(), five_star.end()), five_star.end());

        std::vector<UserId> common;
        std::set_intersection(prev.users.begin(), prev.users.end(), cur.users.begin(),
                              cur.users.end(), std::back_inserter(common));
        std::vector<UserId> qualifying;
        std::set_intersection(common.begin(), common.end(), five_star.begin(), five_star.end(),
                              std::back_inserter(qualifying));

        if (qualifying.size() >= static_cast<std::size_t>(min_common_users))
            seg.intervals.push_back({cur.index, std::move(qualifying)});
    }
    return seg;
}

namespace {

// Distance lookups during a measurement run in matrix-index space: item
// "ids" below are matrix row indices, which preserve the sorted-id
// tie-break order.
struct IndexDistance {
    const dist::DistanceMatrix* matrix;
    double operator()(ItemId a, ItemId b) const { return matrix->at_index(a, b); }
};

double measure_user(const std::vector<std::pair<ItemId, double>>& history,
                    const std::vector<ItemId>& universe, const dist::DistanceMatrix& matrix,
                    const Params& params, std::uint64_t user_seed, bool& skipped) {
    rec::UserHistory hist = rec::UserHistory::from_pairs(history);
    std::vector<ItemId> unknown_ids;
    unknown_ids.reserve(universe.size());
    std::set_difference(universe.begin(), universe.end(), hist.exposed.items().begin(),
                        hist.exposed.items().end(), std::back_inserter(unknown_ids));
    if (unknown_ids.empty()) {
        skipped = true;
        return 0.0;
    }
    skipped = false;
    ItemSet unknown = ItemSet::from_sorted(std::move(unknown_ids));
    IndexDistance d{&matrix};

    ItemSeq seq;
    // top_n <= sample_size, so a pool of min(sample_size, |N_u|) items always
    // holds at least k candidates.
    int k = std::min<int>(params.top_n, static_cast<int>(unknown.size()));
    SurpriseBounds bounds = greedy_bounds(unknown, hist.exposed, d, k);
    switch (params.mode) {
        case Mode::sampled: {
            Rng rng(user_seed);
            std::vector<ItemId> pool = sample_without_replacement(
                unknown.items(), static_cast<std::size_t>(params.sample_size), rng);
            std::sort(pool.begin(), pool.end());
            seq = rec::rank_top_n(pool, params.scorer, hist, d, k);
            break;
        }
        case Mode::exhaustive: {
            // MSI/LSI pursue the surprise objective itself, so the greedy
            // selection over the full unknown set is their exhaustive list;
            // kNN ranks all of it with static scores.
            switch (params.scorer.kind) {
                case rec::Algorithm::msi: seq = bounds.max_seq; break;
                case rec::Algorithm::lsi: seq = bounds.min_seq; break;
                case rec::Algorithm::knn:
                    seq = rec::rank_top_n(unknown.items(), params.scorer, hist, d, k);
                    break;
            }
            break;
        }
    }
    double ss = sequence_surprise(seq, hist.exposed, d);
    return detail::normalize_clip(ss, bounds);
}

}  // namespace

Measurement evaluate_interval(const std::vector<RatingEvent>& log, const Segmentation& seg,
                              const EligibleInterval& interval, const dist::DistanceMatrix& matrix,
                              const Params& params) {
    if (params.top_n < 1) throw std::domain_error("evaluate_interval: top_n must be positive");
    if (params.sample_size < 1)
        throw std::domain_error("evaluate_interval: sample_size must be positive");
    if (params.top_n > params.sample_size)
        throw std::domain_error("evaluate_interval: top_n exceeds sample_size");
    const Timeframe& last = seg.frames.at(static_cast<std::size_t>(interval.end_frame) - 1);
    const std::size_t end = last.end;

    // Universe: items released (first rated) within the interval — i.e. every
    // item seen in frames 1..end_frame — as matrix indices.
    std::vector<ItemId> universe;
    {
        std::vector<ItemId> raw;
        raw.reserve(end);
        for (std::size_t e = 0; e < end; ++e) raw.push_back(log[e].item);
        std::sort(raw.begin(), raw.end());
        raw.erase(std::unique(raw.begin(), raw.end()), raw.end());
        universe.reserve(raw.size());
        for (ItemId id : raw) {
            auto idx = matrix.index_of(id);
            if (!idx)
                throw DataError("item " + std::to_string(id) + " missing from distance matrix");
            universe.push_back(static_cast<ItemId>(*idx));
        }
        std::sort(universe.begin(), universe.end());
    }

    // Per-eval-user interval history, in matrix-index space. Events are
    // chronological, so a later duplicate rating overwrites an earlier one.
    const std::vector<UserId>& users = interval.eval_users;
    std::vector<std::vector<std::pair<ItemId, double>>> history(users.size());
    for (std::size_t e = 0; e < end; ++e) {
        auto it = std::lower_bound(users.begin(), users.end(), log[e].user);
        if (it == users.end() || *it != log[e].user) continue;
        std::size_t u = static_cast<std::size_t>(it - users.begin());
        ItemId idx = static_cast<ItemId>(*matrix.index_of(log[e].item));
        history[u].emplace_back(idx, static_cast<double>(log[e].rating));
    }

    std::vector<double> values(users.size(), 0.0);
    std::vector<char> skipped(users.size(), 0);
    auto work = [&](std::size_t start, std::size_t step) {
        for (std::size_t u = start; u < users.size(); u += step) {
            bool skip = false;
            std::uint64_t user_seed =
                derive_seed(params.seed, static_cast<std::uint64_t>(interval.end_frame), users[u]);
            values[u] = measure_user(history[u], universe, matrix, params, user_seed, skip);
            skipped[u] = skip ? 1 : 0;
        }
    };
    int threads = params.threads < 1 ? 1 : params.threads;
    if (static_cast<std::size_t>(threads) > users.size() && !users.empty())
        threads = static_cast<int>(users.size());
    if (threads <= 1) {
        work(0, 1);
    } else {
        std::vector<std::thread> pool;
        pool.reserve(static_cast<std::size_t>(threads));
        for (int t = 0; t < threads; ++t)
            pool.emplace_back(work, static_cast<std::size_t>(t), static_cast<std::size_t>(threads));
        for (auto& th : pool) th.join();
    }

    Measurement m;
    m.end_frame = interval.end_frame;
    double sum = 0.0;
    for (std::size_t u = 0; u < users.size(); ++u) {
        if (skipped[u]) {
            m.skipped.push_back(users[u]);
            continue;
        }
        m.per_user.emplace_back(users[u], values[u]);
        sum += values[u];
        if (m.per_user.size() == 1 || values[u] < m.min_value) m.min_value = values[u];
        if (m.per_user.size() == 1 || values[u] > m.max_value) m.max_value = values[u];
    }
    if (m.per_user.empty())
        throw DataError("interval ending at frame " + std::to_string(interval.end_frame) +
                        ": every eval user has an empty unknown set");
    m.n_users = static_cast<int>(m.per_user.size());
    m.mean = sum / static_cast<double>(m.n_users);
    return m;
}

SurpriseSeries run_series(const std::vector<RatingEvent>& log, const dist::DistanceMatrix& matrix,
                          const Params& params) {
    Segmentation seg = segment(log, params.frame_size, params.min_common_users);
    SurpriseSeries series;
    series.measurements.reserve(seg.intervals.size());
    for (std::size_t i = 0; i < seg.intervals.size(); ++i) {
        Measurement m = evaluate_interval(log, seg, seg.intervals[i], matrix, params);
        m.interval = static_cast<int>(i) + 1;
        series.measurements.push_back(std::move(m));
    }
    return series;
}

Summary summarize(const SurpriseSeries& series) {
    if (series.measurements.empty())
        throw std::domain_error("summarize: empty series");
    std::vector<double> means;
    means.reserve(series.measurements.size());
    for (const Measurement& m : series.measurements) means.push_back(m.mean);
    std::sort(means.begin(), means.end());

    Summary s;
    s.n_intervals = static_cast<int>(means.size());
    const std::size_t n = means.size();
    s.median = n % 2 == 1 ? means[n / 2] : 0.5 * (means[n / 2 - 1] + means[n / 2]);
    double sum = 0.0;
    for (double v : means) sum += v;
    s.mean = sum / static_cast<double>(n);
    if (n == 1) {
        s.stdev = 0.0;
        s.stdev_degenerate = true;
    } else {
        double acc = 0.0;
        for (double v : means) acc += (v - s.mean) * (v - s.mean);
        s.stdev = std::sqrt(acc / static_cast<double>(n - 1));
    }
    return s;
}

void write_series_csv(std::ostream& out, const SurpriseSeries& series) {
    auto emit = [&out](double v) {
        char buf[32];
        auto res = std::to_chars(buf, buf + sizeof(buf), v);
        out.write(buf, res.ptr - buf);
    };
    out << "interval,end_frame,n_users,mean_ssn,min_ssn,max_ssn\n";
    for (const Measurement& m : series.measurements) {
        out << m.interval << ',' << m.end_frame << ',' << m.n_users << ',';
        emit(m.mean);
        out << ',';
        emit(m.min_value);
        out << ',';
        emit(m.max_value);
        out << '\n';
    }
}

}  // namespace surprise::eval
