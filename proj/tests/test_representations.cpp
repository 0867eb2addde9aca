#include <filesystem>
#include <fstream>
#include <set>

#include <doctest.h>

#include "surprise/distances.hpp"
#include "surprise/representations.hpp"
#include "surprise/rng.hpp"

using namespace surprise;
using namespace surprise::repr;

namespace {

std::filesystem::path temp_file(const std::string& name, const std::string& content) {
    std::filesystem::path p = std::filesystem::temp_directory_path() / name;
    std::ofstream out(p, std::ios::trunc);
    out << content;
    return p;
}

bool was_rejected(const BuildResult& r, ItemId id, RejectReason reason) {
    for (const Rejected& rej : r.rejected)
        if (rej.id == id && rej.reason == reason) return true;
    return false;
}

// thirteen distinct non-stopword terms
const std::string kThirteen = "zebra quartz fjord glyph crypt vexing jumbo woven duchy plasma "
                              "oxide knack brine";

}  // namespace

TEST_CASE("tokenize lowercases, splits on non-letters, drops stopwords, stems") {
    auto tokens = tokenize("The Cats, running quickly!", default_stopwords());
    REQUIRE(tokens.size() == 3);
    CHECK(tokens[0] == "cat");
    CHECK(tokens[1] == "run");
    CHECK(tokens[2] == "quick");
}

TEST_CASE("count VSM rejects items below the 13-term floor") {
    Catalog catalog;
    catalog[1] = kThirteen;                                     // exactly 13 -> kept
    catalog[2] = "zebra quartz fjord glyph crypt vexing jumbo "
                 "woven duchy plasma oxide knack";              // 12 -> rejected
    catalog[3] = "anchovy pickle walnut ferret maple sprocket lantern velvet marble "
                 "tundra falcon ember quill casket";            // 14 -> kept

    BuildResult r = build_count_vsm(catalog, default_stopwords(), {1, 2, 3, 4});
    CHECK(r.vectors.index_of(1));
    CHECK(r.vectors.index_of(3));
    CHECK_FALSE(r.vectors.index_of(2));
    CHECK(was_rejected(r, 2, RejectReason::too_short));
    CHECK(was_rejected(r, 4, RejectReason::missing_description));
}

TEST_CASE("a term occurring in every document gets zero weight") {
    Catalog catalog;
    catalog[1] = kThirteen;
    catalog[2] = kThirteen + " unique";
    BuildResult r = build_count_vsm(catalog, default_stopwords(), {1, 2});

    // item 1 carries only ubiquitous terms -> all-zero vector -> rejected
    CHECK_FALSE(r.vectors.index_of(1));
    CHECK(was_rejected(r, 1, RejectReason::zero_vector));

    // item 2's vector is nonzero only in the "unique" dimension
    auto row = r.vectors.row_of(2);
    int nonzero = 0;
    for (double v : row) nonzero += v != 0.0;
    CHECK(nonzero == 1);
}

TEST_CASE("identical descriptions give identical vectors") {
    Catalog catalog;
    catalog[1] = kThirteen;
    catalog[2] = kThirteen;
    catalog[3] = "anchovy pickle walnut ferret maple sprocket lantern velvet marble "
                 "tundra falcon ember quill";
    BuildResult r = build_count_vsm(catalog, default_stopwords(), {1, 2, 3});
    REQUIRE(r.vectors.index_of(1));
    REQUIRE(r.vectors.index_of(2));
    CHECK(dist::cosine(r.vectors.row_of(1), r.vectors.row_of(2)) == 0.0);
}

TEST_CASE("dense vector file round-trips and rejects malformed input") {
    std::filesystem::path good =
        temp_file("surprise_vec_good.txt", "1 0.5 -1.25 3\n7 1 2 3\n3 0 1 0.125\n");
    dist::VectorTable t = load_dense_vectors(good);
    CHECK(t.size() == 3);
    CHECK(t.dim() == 3);
    CHECK(t.row_of(7)[0] == 1.0);

    std::filesystem::path out = temp_file("surprise_vec_rt.txt", "");
    write_dense_vectors(out, t);
    dist::VectorTable rt = load_dense_vectors(out);
    REQUIRE(rt.size() == t.size());
    for (std::size_t i = 0; i < t.size(); ++i) {
        CHECK(rt.ids()[i] == t.ids()[i]);
        for (std::size_t c = 0; c < t.dim(); ++c) CHECK(rt.row(i)[c] == t.row(i)[c]);
    }

    CHECK_THROWS_WITH_AS(
        load_dense_vectors(temp_file("surprise_vec_rag.txt", "1 0.5 1.0\n2 0.5\n")),
        doctest::Contains("line 2"), DataError);
    CHECK_THROWS_WITH_AS(load_dense_vectors(temp_file("surprise_vec_nan.txt", "1 abc\n")),
                         doctest::Contains("non-numeric"), DataError);
    CHECK_THROWS_WITH_AS(
        load_dense_vectors(temp_file("surprise_vec_dup.txt", "1 0.5\n1 0.5\n")),
        doctest::Contains("duplicate item id 1"), DataError);
    for (const char* name :
         {"surprise_vec_good.txt", "surprise_vec_rt.txt", "surprise_vec_rag.txt",
          "surprise_vec_nan.txt", "surprise_vec_dup.txt"})
        std::filesystem::remove(std::filesystem::temp_directory_path() / name);
}

TEST_CASE("user-item model holds ratings in user order and rejects unrated items") {
    std::vector<RatingEvent> log{
        {1, 100, 5, 10},
        {2, 200, 3, 20},
        {3, 200, 4, 30},
    };
    BuildResult r = build_user_item(log, {1, 2, 3}, {100, 200, 300});
    auto row100 = r.vectors.row_of(100);
    CHECK(row100[0] == 5.0);
    CHECK(row100[1] == 0.0);
    CHECK(row100[2] == 0.0);
    auto row200 = r.vectors.row_of(200);
    CHECK(row200[0] == 0.0);
    CHECK(row200[1] == 3.0);
    CHECK(row200[2] == 4.0);
    CHECK(was_rejected(r, 300, RejectReason::unrated));

    // two items rated identically by all users have zero distance
    std::vector<RatingEvent> twin{{1, 5, 4, 1}, {1, 6, 4, 2}, {2, 5, 2, 3}, {2, 6, 2, 4}};
    BuildResult tr = build_user_item(twin, {1, 2}, {5, 6});
    CHECK(dist::euclidean(tr.vectors.row_of(5), tr.vectors.row_of(6)) == 0.0);

    // a later duplicate rating overwrites the earlier one
    std::vector<RatingEvent> dup{{1, 5, 2, 1}, {1, 5, 4, 9}};
    BuildResult dr = build_user_item(dup, {1}, {5});
    CHECK(dr.vectors.row_of(5)[0] == 4.0);
}

TEST_CASE("npmi model probabilities come from exposure proportions") {
    std::vector<RatingEvent> log{
        {1, 10, 5, 1}, {1, 20, 1, 2},  // user 1 exposed to both
        {2, 10, 2, 3},                 // user 2 exposed to item 10 only
    };
    NpmiModel m = build_npmi_model(log);
    CHECK(m.user_count == 2);
    CHECK(m.single(10) == doctest::Approx(1.0));
    CHECK(m.single(20) == doctest::Approx(0.5));
    CHECK(m.joint(10, 20) == doctest::Approx(0.5));
    CHECK(m.joint(20, 10) == doctest::Approx(0.5));

    // disjoint exposures: joint zero -> distance 1
    std::vector<RatingEvent> split{{1, 10, 5, 1}, {2, 20, 5, 2}};
    NpmiModel s = build_npmi_model(split);
    CHECK(s.joint(10, 20) == 0.0);
    CHECK(dist::npmi_distance(10, 20, s) == doctest::Approx(1.0));
}

TEST_CASE("npmi joint never exceeds either marginal on random logs") {
    Rng rng(4242);
    for (int t = 0; t < 1000; ++t) {
        std::vector<RatingEvent> log;
        int users = 2 + static_cast<int>(rng.bounded(6));
        int items = 2 + static_cast<int>(rng.bounded(8));
        int events = 1 + static_cast<int>(rng.bounded(40));
        for (int e = 0; e < events; ++e)
            log.push_back({static_cast<UserId>(rng.bounded(static_cast<std::uint64_t>(users))),
                           static_cast<ItemId>(rng.bounded(static_cast<std::uint64_t>(items))),
                           static_cast<int>(1 + rng.bounded(5)), e});
        NpmiModel m = build_npmi_model(log);

        // independent oracle: direct set-intersection counting
        std::map<ItemId, std::set<UserId>> exposed;
        for (const RatingEvent& e : log) exposed[e.item].insert(e.user);
        std::set<UserId> all_users;
        for (const RatingEvent& e : log) all_users.insert(e.user);

        for (const auto& [i, users_i] : exposed) {
            CHECK(m.single(i) ==
                  doctest::Approx(static_cast<double>(users_i.size()) / all_users.size()));
            for (const auto& [j, users_j] : exposed) {
                if (i >= j) continue;
                std::vector<UserId> common;
                std::set_intersection(users_i.begin(), users_i.end(), users_j.begin(),
                                      users_j.end(), std::back_inserter(common));
                double pj = m.joint(i, j);
                CHECK(pj == doctest::Approx(static_cast<double>(common.size()) / all_users.size()));
                CHECK(pj <= std::min(m.single(i), m.single(j)) + 1e-12);
            }
        }
    }
}

TEST_CASE("model-U rejection is monotone in ratings") {
    Rng rng(2024);
    std::vector<ItemId> items{10, 20, 30, 40};
    for (int t = 0; t < 200; ++t) {
        std::vector<RatingEvent> log;
        int events = 1 + static_cast<int>(rng.bounded(6));
        for (int e = 0; e < events; ++e)
            log.push_back({static_cast<UserId>(1 + rng.bounded(3)),
                           items[rng.bounded(items.size())],
                           static_cast<int>(1 + rng.bounded(5)), e});
        BuildResult before = build_user_item(log, {1, 2, 3}, items);

        log.push_back({static_cast<UserId>(1 + rng.bounded(3)),
                       items[rng.bounded(items.size())], 5, events});
        BuildResult after = build_user_item(log, {1, 2, 3}, items);

        for (const Rejected& r : after.rejected) {
            bool was = false;
            for (const Rejected& b : before.rejected) was = was || b.id == r.id;
            CHECK(was);  // nothing newly rejected
        }
    }
}

TEST_CASE("the count VSM build is deterministic") {
    Catalog catalog;
    catalog[3] = kThirteen;
    catalog[1] = "anchovy pickle walnut ferret maple sprocket lantern velvet marble "
                 "tundra falcon ember quill";
    BuildResult a = build_count_vsm(catalog, default_stopwords(), {1, 3});
    BuildResult b = build_count_vsm(catalog, default_stopwords(), {1, 3});
    REQUIRE(a.vectors.size() == b.vectors.size());
    REQUIRE(a.vectors.dim() == b.vectors.dim());
    CHECK(a.vectors.ids() == b.vectors.ids());
    for (std::size_t i = 0; i < a.vectors.size(); ++i)
        for (std::size_t c = 0; c < a.vectors.dim(); ++c)
            CHECK(a.vectors.row(i)[c] == b.vectors.row(i)[c]);
}

TEST_CASE("stopword file loads one word per line") {
    std::filesystem::path p = temp_file("surprise_stop.txt", "alpha\nbeta\n\ngamma\n");
    auto words = load_stopwords(p);
    CHECK(words.size() == 3);
    CHECK(words.count("beta") == 1);
    std::filesystem::remove(p);
    CHECK_THROWS_AS(load_stopwords(p), DataError);
}

TEST_CASE("descriptions TSV parses and reports bad lines") {
    std::filesystem::path p =
        temp_file("surprise_desc.tsv", "1\tsome text here\n2\tmore text\n");
    Catalog c = load_descriptions_tsv(p);
    CHECK(c.size() == 2);
    CHECK(c[1] == "some text here");
    std::filesystem::remove(p);

    std::filesystem::path bad = temp_file("surprise_desc_bad.tsv", "1\tok\nnot_an_id\toops\n");
    CHECK_THROWS_WITH_AS(load_descriptions_tsv(bad), doctest::Contains("line 2"), DataError);
    std::filesystem::remove(bad);
}
