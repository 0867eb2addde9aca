#include <cmath>

#include <doctest.h>

#include "surprise/distances.hpp"
#include "surprise/rng.hpp"

using namespace surprise;
using namespace surprise::dist;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = lo + (hi - lo) * rng.unit();
    return v;
}

}  // namespace

TEST_CASE("euclidean") {
    CHECK(euclidean(std::vector{0.0, 0.0}, std::vector{3.0, 4.0}) == doctest::Approx(5.0));
    CHECK(euclidean(std::vector{1.0, 1.0}, std::vector{1.0, 1.0}) == 0.0);
    CHECK(euclidean(std::vector{1.0, 1.0}, std::vector{2.0, 2.0}) ==
          doctest::Approx(std::sqrt(2.0)));
    CHECK_THROWS_AS(euclidean(std::vector{1.0}, std::vector{1.0, 2.0}), std::invalid_argument);
}

TEST_CASE("cosine") {
    CHECK(cosine(std::vector{1.0, 0.0}, std::vector{2.0, 0.0}) == doctest::Approx(0.0));
    CHECK(cosine(std::vector{1.0, 0.0}, std::vector{0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(cosine(std::vector{1.0, 0.0}, std::vector{-1.0, 0.0}) == doctest::Approx(2.0));
    CHECK_THROWS_AS(cosine(std::vector{0.0, 0.0}, std::vector{1.0, 0.0}), std::invalid_argument);
}

TEST_CASE("weighted jaccard") {
    CHECK(weighted_jaccard(std::vector{1.0, 2.0}, std::vector{1.0, 2.0}) == 0.0);
    CHECK(weighted_jaccard(std::vector{1.0, 0.0}, std::vector{0.0, 1.0}) == doctest::Approx(1.0));
    CHECK(weighted_jaccard(std::vector{1.0, 1.0}, std::vector{1.0, 0.0}) == doctest::Approx(0.5));
    CHECK_THROWS_AS(weighted_jaccard(std::vector{-1.0, 1.0}, std::vector{1.0, 0.0}),
                    std::invalid_argument);
    CHECK_THROWS_AS(weighted_jaccard(std::vector{0.0, 0.0}, std::vector{0.0, 0.0}),
                    std::invalid_argument);
}

TEST_CASE("jensen-shannon") {
    CHECK(jensen_shannon(std::vector{0.3, 0.7}, std::vector{0.3, 0.7}) == 0.0);
    CHECK(jensen_shannon(std::vector{1.0, 0.0}, std::vector{0.0, 1.0}) == doctest::Approx(1.0));

    // frozen from a 50-digit direct evaluation of (KL(p||m) + KL(q||m)) / 2
    CHECK(jensen_shannon(std::vector{0.5, 0.5}, std::vector{0.25, 0.75}) ==
          doctest::Approx(0.048794940695398532581).epsilon(1e-14));
    CHECK(jensen_shannon(std::vector{1.0, 2.0, 3.0}, std::vector{3.0, 2.0, 1.0}) ==
          doctest::Approx(0.12581458369391142406).epsilon(1e-14));

    // normalisation is internal: counts and proportions agree
    CHECK(jensen_shannon(std::vector{2.0, 2.0}, std::vector{1.0, 3.0}) ==
          doctest::Approx(0.048794940695398532581).epsilon(1e-14));
    CHECK_THROWS_AS(jensen_shannon(std::vector{-0.1, 1.0}, std::vector{0.5, 0.5}),
                    std::invalid_argument);
}

TEST_CASE("aitchison") {
    CHECK(aitchison(std::vector{0.2, 0.8}, std::vector{0.2, 0.8}) == 0.0);
    CHECK(aitchison(std::vector{1.0, 1.0}, std::vector{std::exp(1.0), 1.0}) ==
          doctest::Approx(1.0 / std::sqrt(2.0)));
    // scale invariance
    Rng rng(42);
    for (int t = 0; t < 100; ++t) {
        std::vector<double> x = random_vec(rng, 5, 0.1, 3.0);
        std::vector<double> y = random_vec(rng, 5, 0.1, 3.0);
        std::vector<double> sx = x;
        for (double& v : sx) v *= 7.5;
        std::vector<double> sy = y;
        for (double& v : sy) v *= 0.003;
        CHECK(aitchison(sx, sy) == doctest::Approx(aitchison(x, y)).epsilon(1e-10));
    }
    CHECK_THROWS_AS(aitchison(std::vector{0.0, 1.0}, std::vector{1.0, 1.0}),
                    std::invalid_argument);
}

TEST_CASE("bmt smoothing") {
    // no zeros: plain closure
    std::vector<double> c = bmt_smooth(std::vector{2.0, 2.0});
    CHECK(c[0] == doctest::Approx(0.5));
    CHECK(c[1] == doctest::Approx(0.5));

    // hand-applied Perks prior: D=2, counts (3,0), n=3
    std::vector<double> s = bmt_smooth(std::vector{3.0, 0.0});
    CHECK(s[0] == doctest::Approx(0.875));
    CHECK(s[1] == doctest::Approx(0.125));

    CHECK_THROWS_AS(bmt_smooth(std::vector{0.0, 0.0}), std::invalid_argument);

    Rng rng(7);
    for (int t = 0; t < 500; ++t) {
        std::size_t dims = 2 + rng.bounded(8);
        std::vector<double> counts(dims);
        for (double& v : counts) v = rng.bounded(2) ? static_cast<double>(rng.bounded(20)) : 0.0;
        if (std::all_of(counts.begin(), counts.end(), [](double v) { return v == 0.0; }))
            counts[0] = 1.0;
        std::vector<double> out = bmt_smooth(counts);

        double sum = 0.0;
        for (double v : out) {
            CHECK(v > 0.0);
            sum += v;
        }
        CHECK(sum == doctest::Approx(1.0).epsilon(1e-12));
        // ratios of non-zero parts preserved
        for (std::size_t i = 0; i < dims; ++i)
            for (std::size_t j = i + 1; j < dims; ++j)
                if (counts[i] > 0.0 && counts[j] > 0.0)
                    CHECK(out[i] / out[j] == doctest::Approx(counts[i] / counts[j]).epsilon(1e-12));
    }
}

TEST_CASE("npmi distance conventions") {
    repr::NpmiModel model;
    model.user_count = 4;
    model.p_single[1] = 0.5;
    model.p_single[2] = 0.5;
    model.p_single[3] = 0.25;
    model.p_joint[repr::NpmiModel::pair_key(1, 2)] = 0.25;

    // independence: npmi = 0 -> distance 0.5
    CHECK(npmi_distance(1, 2, model) == doctest::Approx(0.5));
    // never co-consumed
    CHECK(npmi_distance(1, 3, model) == doctest::Approx(1.0));
    // same item
    CHECK(npmi_distance(2, 2, model) == 0.0);
    CHECK_THROWS_AS(npmi_distance(1, 99, model), std::invalid_argument);

    // perfect co-occurrence: p(i) = p(j) = p(i,j)
    repr::NpmiModel perfect;
    perfect.user_count = 2;
    perfect.p_single[1] = 0.5;
    perfect.p_single[2] = 0.5;
    perfect.p_joint[repr::NpmiModel::pair_key(1, 2)] = 0.5;
    CHECK(npmi_distance(1, 2, perfect) == doctest::Approx(0.0));
}

TEST_CASE("distance axioms hold on random valid inputs") {
    Rng rng(123456);
    repr::NpmiModel model;
    model.user_count = 100;
    for (ItemId i = 0; i < 30; ++i)
        model.p_single[i] = (1.0 + static_cast<double>(rng.bounded(99))) / 100.0;
    for (ItemId i = 0; i < 30; ++i)
        for (ItemId j = i + 1; j < 30; ++j) {
            double cap = std::min(model.p_single[i], model.p_single[j]);
            double v = cap * rng.unit();
            if (rng.bounded(4) == 0) v = 0.0;
            model.p_joint[repr::NpmiModel::pair_key(i, j)] = v;
        }

    for (Kind kind : {Kind::euclidean, Kind::cosine, Kind::jaccard, Kind::jensen_shannon,
                      Kind::aitchison}) {
        for (int t = 0; t < 1000; ++t) {
            std::size_t dims = 2 + rng.bounded(6);
            double lo = kind == Kind::euclidean || kind == Kind::cosine ? -5.0 : 0.01;
            std::vector<double> x = random_vec(rng, dims, lo, 5.0);
            std::vector<double> y = random_vec(rng, dims, lo, 5.0);

            double dxy = vector_distance(kind, x, y);
            double dyx = vector_distance(kind, y, x);
            double dxx = vector_distance(kind, x, x);

            CHECK(dxx == 0.0);
            CHECK(dxy == dyx);
            CHECK(dxy >= 0.0);
            if (kind == Kind::cosine) CHECK(dxy <= 2.0);
            if (kind == Kind::jaccard || kind == Kind::jensen_shannon) CHECK(dxy <= 1.0);
        }
    }

    for (int t = 0; t < 1000; ++t) {
        ItemId i = static_cast<ItemId>(rng.bounded(30));
        ItemId j = static_cast<ItemId>(rng.bounded(30));
        double dij = npmi_distance(i, j, model);
        CHECK(dij == npmi_distance(j, i, model));
        CHECK(dij >= 0.0);
        CHECK(dij <= 1.0);
        CHECK(npmi_distance(i, i, model) == 0.0);
    }

    // cosine stays within [0, 1] on non-negative vectors
    for (int t = 0; t < 1000; ++t) {
        std::vector<double> x = random_vec(rng, 4, 0.01, 5.0);
        std::vector<double> y = random_vec(rng, 4, 0.01, 5.0);
        double d = cosine(x, y);
        CHECK(d >= 0.0);
        CHECK(d <= 1.0);
    }
}

TEST_CASE("kind parsing round-trips") {
    for (Kind kind : kAllKinds) CHECK(parse_kind(kind_name(kind)) == kind);
    CHECK(parse_kind("jensen_shannon") == Kind::jensen_shannon);
    CHECK_THROWS_AS(parse_kind("manhattan"), std::invalid_argument);
    CHECK(requires_compositional(Kind::jaccard));
    CHECK(requires_compositional(Kind::aitchison));
    CHECK_FALSE(requires_compositional(Kind::euclidean));
    CHECK_FALSE(requires_compositional(Kind::npmi));
}
