#include <sstream>

#include <doctest.h>

#include "surprise/evaluation.hpp"
#include "surprise/rng.hpp"
#include "surprise/synth.hpp"

using namespace surprise;
using namespace surprise::eval;

namespace {

// small seeded world: random item vectors + euclidean matrix
dist::DistanceMatrix small_matrix(int items, std::uint64_t seed) {
    io::SynthConfig cfg;
    cfg.items = items;
    cfg.seed = seed;
    cfg.vector_dim = 3;
    return dist::DistanceMatrix::build(io::synth_vectors(cfg), dist::Kind::euclidean);
}

std::vector<RatingEvent> tiny_log() {
    // frame size 3: frame 1 = users {1,2}, frame 2 = users {1,2}; user 1 and 2
    // both rate 5-star in frame 2
    return {
        {1, 0, 4, 10}, {2, 1, 3, 11}, {1, 2, 2, 12},   // frame 1
        {1, 3, 5, 13}, {2, 4, 5, 14}, {2, 0, 3, 15},   // frame 2
        {3, 5, 1, 16},                                  // dropped tail
    };
}

}  // namespace

TEST_CASE("segmentation drops the partial tail and finds qualifying users") {
    Segmentation seg = segment(tiny_log(), 3, 2);
    REQUIRE(seg.frames.size() == 2);
    CHECK(seg.frames[0].users == std::vector<UserId>{1, 2});
    CHECK(seg.frames[1].users == std::vector<UserId>{1, 2});
    REQUIRE(seg.intervals.size() == 1);
    CHECK(seg.intervals[0].end_frame == 2);
    CHECK(seg.intervals[0].eval_users == std::vector<UserId>{1, 2});

    // same log, but the 5-star condition lifts user 2 out
    std::vector<RatingEvent> log = tiny_log();
    log[4].rating = 4;  // user 2 loses the 5-star in frame 2
    Segmentation strict = segment(log, 3, 2);
    CHECK(strict.intervals.empty());
    Segmentation loose = segment(log, 3, 1);
    REQUIRE(loose.intervals.size() == 1);
    CHECK(loose.intervals[0].eval_users == std::vector<UserId>{1});
}

TEST_CASE("a log below one frame yields nothing") {
    std::vector<RatingEvent> log = tiny_log();
    log.resize(2);
    Segmentation seg = segment(log, 3, 1);
    CHECK(seg.frames.empty());
    CHECK(seg.intervals.empty());
}

TEST_CASE("frames with disjoint users yield no eligible intervals") {
    io::SynthConfig cfg;
    cfg.users = 40;
    cfg.items = 30;
    cfg.events = 6000;
    cfg.overlap = io::OverlapProfile::disjoint;
    Segmentation seg = segment(io::synth_ratings(cfg), 1500, 1);
    CHECK(seg.frames.size() == 4);
    CHECK(seg.intervals.empty());
}

TEST_CASE("engineered chain log matches the hand-constructed eligible set") {
    io::SynthConfig cfg;  // 40 users, 6000 events, frame 1500, overlap 35
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    REQUIRE(log.size() == 6000);
    Segmentation seg = segment(log, 1500, 30);
    REQUIRE(seg.frames.size() == 4);
    REQUIRE(seg.intervals.size() == 3);
    for (int i = 0; i < 3; ++i) {
        const EligibleInterval& iv = seg.intervals[static_cast<std::size_t>(i)];
        CHECK(iv.end_frame == i + 2);
        // consecutive windows share exactly users [stride*(i+1), stride*(i+1)+35)
        auto [lo_next, hi_next] = io::synth_frame_user_range(cfg, i + 1);
        auto [lo_prev, hi_prev] = io::synth_frame_user_range(cfg, i);
        std::vector<UserId> expected;
        for (UserId u = std::max(lo_next, lo_prev); u < std::min(hi_next, hi_prev); ++u)
            expected.push_back(u);
        CHECK(iv.eval_users == expected);
        CHECK(iv.eval_users.size() == 35);
    }
}

TEST_CASE("frames partition a prefix of the log") {
    io::SynthConfig cfg;
    cfg.users = 40;
    cfg.items = 30;
    cfg.events = 5000;  // 3 full frames of 1500, 500-event tail dropped
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    Segmentation seg = segment(log, 1500, 30);
    REQUIRE(seg.frames.size() == 3);
    for (std::size_t f = 0; f < seg.frames.size(); ++f) {
        CHECK(seg.frames[f].begin == f * 1500);
        CHECK(seg.frames[f].end == (f + 1) * 1500);
        CHECK(seg.frames[f].index == static_cast<int>(f) + 1);
    }
    CHECK(log.size() - seg.frames.back().end == 5000 % 1500);
}

TEST_CASE("removing one eval user does not perturb the others' draws") {
    io::SynthConfig cfg;
    cfg.users = 30;
    cfg.items = 40;
    cfg.events = 600;
    cfg.frame_size = 200;
    cfg.overlap_users = 10;
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    dist::DistanceMatrix matrix = small_matrix(cfg.items, cfg.seed);
    Segmentation seg = segment(log, 200, 5);
    REQUIRE(!seg.intervals.empty());

    Params params;
    params.frame_size = 200;
    params.min_common_users = 5;
    params.top_n = 5;
    params.sample_size = 10;
    params.scorer.kind = rec::Algorithm::knn;

    const EligibleInterval& full = seg.intervals[0];
    REQUIRE(full.eval_users.size() >= 3);
    Measurement all = evaluate_interval(log, seg, full, matrix, params);

    EligibleInterval fewer = full;
    fewer.eval_users.erase(fewer.eval_users.begin() + 1);  // drop the second user
    Measurement rest = evaluate_interval(log, seg, fewer, matrix, params);

    for (const auto& [user, value] : rest.per_user) {
        auto it = std::find_if(all.per_user.begin(), all.per_user.end(),
                               [u = user](const auto& p) { return p.first == u; });
        REQUIRE(it != all.per_user.end());
        CHECK(it->second == value);
    }
}

TEST_CASE("an interval where every unknown set is empty is an error") {
    // two users, two items; each user ends up exposed to the whole universe
    std::vector<RatingEvent> log{
        {1, 0, 4, 10}, {2, 1, 3, 11},  // frame 1
        {1, 1, 5, 12}, {2, 0, 5, 13},  // frame 2
    };
    io::SynthConfig vcfg;
    vcfg.items = 2;
    dist::DistanceMatrix matrix =
        dist::DistanceMatrix::build(io::synth_vectors(vcfg), dist::Kind::euclidean);
    Segmentation seg = segment(log, 2, 2);
    REQUIRE(seg.intervals.size() == 1);
    Params params;
    params.frame_size = 2;
    params.min_common_users = 2;
    params.top_n = 1;
    CHECK_THROWS_AS(evaluate_interval(log, seg, seg.intervals[0], matrix, params), DataError);
}

TEST_CASE("a log item missing from the matrix is an error") {
    std::vector<RatingEvent> log{
        {1, 0, 4, 10}, {2, 99, 3, 11},  // item 99 has no representation
        {1, 99, 5, 12}, {2, 0, 5, 13},
    };
    io::SynthConfig vcfg;
    vcfg.items = 2;
    dist::DistanceMatrix matrix =
        dist::DistanceMatrix::build(io::synth_vectors(vcfg), dist::Kind::euclidean);
    Params params;
    params.frame_size = 2;
    params.min_common_users = 1;
    params.top_n = 1;
    CHECK_THROWS_WITH_AS(run_series(log, matrix, params), doctest::Contains("99"), DataError);
}

TEST_CASE("segmentation rejects unsorted logs and bad parameters") {
    std::vector<RatingEvent> log = tiny_log();
    std::swap(log[0], log[3]);
    CHECK_THROWS_AS(segment(log, 3, 1), std::invalid_argument);
    CHECK_THROWS_AS(segment(tiny_log(), 0, 1), std::domain_error);
    CHECK_THROWS_AS(segment(tiny_log(), 3, 0), std::domain_error);
}

TEST_CASE("exhaustive msi scores 1 and lsi scores 0 on every user") {
    io::SynthConfig cfg;
    cfg.users = 30;
    cfg.items = 40;
    cfg.events = 600;
    cfg.frame_size = 200;
    cfg.overlap_users = 10;
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    dist::DistanceMatrix matrix = small_matrix(cfg.items, cfg.seed);

    Params params;
    params.frame_size = 200;
    params.min_common_users = 5;
    params.top_n = 5;
    params.mode = Mode::exhaustive;

    params.scorer.kind = rec::Algorithm::msi;
    SurpriseSeries msi = run_series(log, matrix, params);
    REQUIRE(!msi.measurements.empty());
    for (const Measurement& m : msi.measurements) {
        CHECK(m.mean == doctest::Approx(1.0).epsilon(1e-12));
        for (const auto& [user, v] : m.per_user) CHECK(v == doctest::Approx(1.0).epsilon(1e-12));
    }

    params.scorer.kind = rec::Algorithm::lsi;
    SurpriseSeries lsi = run_series(log, matrix, params);
    for (const Measurement& m : lsi.measurements) CHECK(m.mean == doctest::Approx(0.0));
}

TEST_CASE("sampled knn lands strictly inside the unit interval") {
    io::SynthConfig cfg;
    cfg.users = 30;
    cfg.items = 40;
    cfg.events = 600;
    cfg.frame_size = 200;
    cfg.overlap_users = 10;
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    dist::DistanceMatrix matrix = small_matrix(cfg.items, cfg.seed);

    Params params;
    params.frame_size = 200;
    params.min_common_users = 5;
    params.top_n = 5;
    params.sample_size = 20;
    params.mode = Mode::sampled;
    params.scorer.kind = rec::Algorithm::knn;

    SurpriseSeries series = run_series(log, matrix, params);
    REQUIRE(!series.measurements.empty());
    for (const Measurement& m : series.measurements) {
        CHECK(m.mean > 0.0);
        CHECK(m.mean < 1.0);
        CHECK(m.min_value >= 0.0);
        CHECK(m.max_value <= 1.0);
    }
}

TEST_CASE("sampled msi cannot beat the exhaustive value") {
    io::SynthConfig cfg;
    cfg.users = 30;
    cfg.items = 50;
    cfg.events = 600;
    cfg.frame_size = 200;
    cfg.overlap_users = 10;
    cfg.seed = 77;
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    dist::DistanceMatrix matrix = small_matrix(cfg.items, cfg.seed);

    Params params;
    params.frame_size = 200;
    params.min_common_users = 5;
    params.top_n = 5;
    params.sample_size = 10;  // small pool so sampling actually misses items
    params.scorer.kind = rec::Algorithm::msi;

    params.mode = Mode::sampled;
    SurpriseSeries sampled = run_series(log, matrix, params);
    params.mode = Mode::exhaustive;
    SurpriseSeries exhaustive = run_series(log, matrix, params);

    REQUIRE(sampled.measurements.size() == exhaustive.measurements.size());
    for (std::size_t i = 0; i < sampled.measurements.size(); ++i) {
        const Measurement& s = sampled.measurements[i];
        const Measurement& e = exhaustive.measurements[i];
        REQUIRE(s.per_user.size() == e.per_user.size());
        for (std::size_t u = 0; u < s.per_user.size(); ++u)
            CHECK(s.per_user[u].second <= e.per_user[u].second + 1e-12);
    }
}

TEST_CASE("series are identical across runs and thread counts") {
    io::SynthConfig cfg;
    cfg.users = 30;
    cfg.items = 40;
    cfg.events = 600;
    cfg.frame_size = 200;
    cfg.overlap_users = 10;
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    dist::DistanceMatrix matrix = small_matrix(cfg.items, cfg.seed);

    Params params;
    params.frame_size = 200;
    params.min_common_users = 5;
    params.top_n = 5;
    params.sample_size = 15;
    params.scorer.kind = rec::Algorithm::knn;

    params.threads = 1;
    SurpriseSeries a = run_series(log, matrix, params);
    SurpriseSeries b = run_series(log, matrix, params);
    params.threads = 7;
    SurpriseSeries c = run_series(log, matrix, params);

    REQUIRE(a.measurements.size() == b.measurements.size());
    REQUIRE(a.measurements.size() == c.measurements.size());
    for (std::size_t i = 0; i < a.measurements.size(); ++i) {
        CHECK(a.measurements[i].mean == b.measurements[i].mean);
        CHECK(a.measurements[i].mean == c.measurements[i].mean);
        CHECK(a.measurements[i].per_user == c.measurements[i].per_user);
    }
}

TEST_CASE("a log with no eligible intervals gives an empty series") {
    io::SynthConfig cfg;
    cfg.users = 40;
    cfg.items = 30;
    cfg.events = 6000;
    cfg.overlap = io::OverlapProfile::disjoint;
    std::vector<RatingEvent> log = io::synth_ratings(cfg);
    dist::DistanceMatrix matrix = small_matrix(cfg.items, cfg.seed);
    Params params;
    SurpriseSeries series = run_series(log, matrix, params);
    CHECK(series.measurements.empty());
}

TEST_CASE("summarize computes median, mean and sample stdev") {
    SurpriseSeries series;
    for (double v : {0.2, 0.4, 0.6}) {
        Measurement m;
        m.mean = v;
        series.measurements.push_back(m);
    }
    Summary s = summarize(series);
    CHECK(s.median == doctest::Approx(0.4));
    CHECK(s.mean == doctest::Approx(0.4));
    CHECK(s.stdev == doctest::Approx(0.2));
    CHECK_FALSE(s.stdev_degenerate);

    SurpriseSeries one;
    Measurement m;
    m.mean = 0.7;
    one.measurements.push_back(m);
    Summary s1 = summarize(one);
    CHECK(s1.median == doctest::Approx(0.7));
    CHECK(s1.stdev == 0.0);
    CHECK(s1.stdev_degenerate);

    CHECK_THROWS_AS(summarize(SurpriseSeries{}), std::domain_error);
}

TEST_CASE("series csv has the documented header") {
    SurpriseSeries series;
    Measurement m;
    m.interval = 1;
    m.end_frame = 2;
    m.n_users = 3;
    m.mean = 0.5;
    m.min_value = 0.25;
    m.max_value = 0.75;
    series.measurements.push_back(m);
    std::ostringstream out;
    write_series_csv(out, series);
    CHECK(out.str() == "interval,end_frame,n_users,mean_ssn,min_ssn,max_ssn\n1,2,3,0.5,0.25,0.75\n");
}
