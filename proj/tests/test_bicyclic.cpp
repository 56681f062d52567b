#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "locus/bicyclic.hpp"
#include "locus/oracle.hpp"

#include <cmath>
#include <random>
#include <set>

using namespace locus;

TEST_CASE("availability code on a 21 x 21 grid over GF(64)")
{
    auto f = Field::create(2, 6);
    auto c = build_bicyclic(21, 2, 6, 9, f);
    CHECK(c.rows_part == 147);
    CHECK(c.cols_part == 63);
    CHECK(c.hyper_part == 20);
    CHECK(c.zeros.size() == 193);
    CHECK(zero_count_inclusion_exclusion(21, 2, 6, 9) == 193);
    CHECK(c.dim() == 248);
    CHECK(hyperbolic_designed_distance(c.zeros) >= 9);
    CHECK(c.dim() >= dimension_lower_bound(21, 2, 6, 9));
    CHECK(dimension_lower_bound(21, 2, 6, 9) == doctest::Approx(441.0 * 12 / 21 - 9 * (1 + std::log(8.0))));
    auto base = product_baseline(21, 2, 6, 3);
    CHECK(base.k1 == 13);
    CHECK(base.k2 == 17);
    CHECK(base.k == 221);
    CHECK(static_cast<std::int64_t>(c.dim()) >= base.k);
}

TEST_CASE("availability certificate for all 441 coordinates")
{
    auto f = Field::create(2, 6);
    auto c = build_bicyclic(21, 2, 6, 9, f);
    auto g = bicyclic_generator(c);
    CHECK(g.rows == 248);
    auto cert = availability_verify(c, g);
    CHECK(cert.coordinates == 441);
    CHECK(cert.ok());
    CHECK(cert.disjoint);
    CHECK(cert.ranks_ok);
    CHECK(cert.distance_ok);
}

TEST_CASE("recovering sets are disjoint line segments")
{
    auto c = build_bicyclic(21, 2, 6, 9, Field::create(2, 6));
    for (std::uint32_t a = 0; a < 21; ++a)
        for (std::uint32_t b = 0; b < 21; ++b) {
            auto rs = recovering_sets(c, a, b);
            REQUIRE(rs.vertical.size() == 2);
            REQUIRE(rs.horizontal.size() == 6);
            std::set<std::size_t> v(rs.vertical.begin(), rs.vertical.end());
            for (auto x : rs.horizontal) REQUIRE(v.count(x) == 0);
            REQUIRE(v.count(c.coord(a, b)) == 0);
            for (auto x : rs.vertical) REQUIRE(x % 21 == b);
            for (auto x : rs.horizontal) REQUIRE(x / 21 == a);
        }
}

TEST_CASE("single erasures repair from either set")
{
    auto f = Field::create(2, 6);
    auto c = build_bicyclic(21, 2, 6, 9, f);
    auto g = bicyclic_generator(c);
    std::mt19937_64 rng(6);
    std::vector<elem> msg(g.rows);
    for (auto& x : msg) x = static_cast<elem>(rng() % 64);
    auto cw = vec_mat(*f, msg, g);
    for (int t = 0; t < 200; ++t) {
        auto a = static_cast<std::uint32_t>(rng() % 21), b = static_cast<std::uint32_t>(rng() % 21);
        auto w = cw;
        w[c.coord(a, b)] = 0;
        REQUIRE(repair_from_set(c, w, a, b, true) == cw[c.coord(a, b)]);
        REQUIRE(repair_from_set(c, w, a, b, false) == cw[c.coord(a, b)]);
    }
}

TEST_CASE("small zero sets")
{
    auto c = build_bicyclic(6, 1, 2, 2, Field::create(7, 1));
    BiZeroSet d;
    d.n = 6;
    for (const auto& pr : c.zeros.pairs)
        if ((pr.first + 1) * (pr.second + 1) < 2) d.pairs.insert(pr);
    CHECK(d.size() == 1);
    CHECK(c.hyper_part == 1);
    BiZeroSet none;
    none.n = 6;
    CHECK(hyperbolic_designed_distance(none) == 1);
}

TEST_CASE("parameter gates")
{
    auto f = Field::create(7, 1);
    CHECK_THROWS_AS(build_bicyclic(6, 2, 1, 4, f), ParameterError);
    CHECK_THROWS_AS(build_bicyclic(6, 3, 3, 4, f), ParameterError);
    CHECK_THROWS_AS(build_bicyclic(6, 1, 1, 1, f), ParameterError);
    CHECK_THROWS_AS(build_bicyclic(4, 1, 1, 4, f), ParameterError);
}

TEST_CASE("tiny bicyclic code: brute force against the designed distance")
{
    auto f = Field::create(7, 1);
    auto c = build_bicyclic(6, 1, 1, 4, f);
    CHECK(c.dim() == 9);
    auto g = bicyclic_generator(c);
    CHECK(rank(*f, g) == 9);
    CHECK(hyperbolic_designed_distance(c.zeros) == 4);
    auto d = min_distance(*f, g, 100000000);
    REQUIRE(d.exhaustive);
    CHECK(d.value >= 4);
    CHECK(d.value == 4);
    CHECK(availability_verify(c, g).ok());
    CHECK(availability_verify_serial(c, g).ok());
    auto base = product_baseline(6, 1, 1, 2);
    CHECK(base.k == 9);
}

TEST_CASE("brute force respects the designed distance on random tiny instances")
{
    auto f = Field::create(7, 1);
    for (std::uint32_t r1 : {1u, 2u})
        for (std::uint32_t r2 : {r1, 2u})
            for (std::uint32_t delta = 2; delta <= 6; ++delta) {
                if (r2 < r1) continue;
                auto c = build_bicyclic(6, r1, r2, delta, f);
                REQUIRE(zero_count_inclusion_exclusion(6, r1, r2, delta) == c.zeros.size());
                auto g = bicyclic_generator(c);
                if (message_space(*f, g.rows) > 50000000) continue;
                auto d = min_distance(*f, g, 100000000);
                REQUIRE(d.exhaustive);
                REQUIRE(d.value >= hyperbolic_designed_distance(c.zeros));
                REQUIRE(availability_verify(c, g).ok());
            }
}

TEST_CASE("product baseline arithmetic")
{
    CHECK(lrc_max_dimension(21, 2, 3) == 13);
    CHECK(lrc_max_dimension(21, 6, 3) == 17);
    CHECK(product_baseline(21, 20, 20, 3).k == 19 * 19);
}
