#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "locus/hlrc.hpp"
#include "locus/simulate.hpp"

using namespace locus;

namespace {

const std::string kPattern = std::string(LOCUS_SOURCE_DIR) + "/configs/staircase_pattern.json";

GridCode small_grid() { return grid_from_block(build_block_code(4, 1, 1, 1, 2, Field::create(3, 2))); }

GridCode pair_grid() { return grid_from_tailbiting(fixtures::shifted_pair_code(), 8, 1, 2, 14); }

} // namespace

TEST_CASE("pattern specs")
{
    auto r = PatternSpec::parse("random:5", 4);
    CHECK(r.kind == PatternSpec::Kind::random);
    CHECK(r.count == 5);
    CHECK(PatternSpec::parse("bernoulli:0.25", 4).probability == doctest::Approx(0.25));
    CHECK(PatternSpec::parse("local:1", 4).kind == PatternSpec::Kind::local);
    CHECK_THROWS_AS(PatternSpec::parse("random:", 4), ParameterError);
    CHECK_THROWS_AS(PatternSpec::parse("bernoulli:1.5", 4), ParameterError);
    CHECK_THROWS_AS(PatternSpec::parse("nonexistent-file.json", 4), ParameterError);
    auto f = PatternSpec::parse(kPattern, 4);
    CHECK(f.kind == PatternSpec::Kind::fixed);
    CHECK(f.fixed.size() == 16);
    CHECK_THROWS_AS(PatternSpec::parse(kPattern, 0), ParameterError);
}

TEST_CASE("drawn patterns have the requested shape")
{
    std::mt19937_64 rng(5);
    std::vector<std::vector<std::size_t>> groups = {{0, 1, 2}, {3, 4, 5}};
    for (int t = 0; t < 50; ++t) {
        auto er = draw_pattern(PatternSpec::parse("random:4", 0), 6, groups, rng);
        REQUIRE(std::count(er.begin(), er.end(), true) == 4);
        auto loc = draw_pattern(PatternSpec::parse("local:1", 0), 6, groups, rng);
        REQUIRE(std::count(loc.begin(), loc.begin() + 3, true) == 1);
        REQUIRE(std::count(loc.begin() + 3, loc.end(), true) == 1);
    }
    CHECK_THROWS(draw_pattern(PatternSpec::parse("random:7", 0), 6, groups, rng));
}

TEST_CASE("seeded simulation is reproducible")
{
    auto grid = small_grid();
    auto a = simulation_csv(repair_simulation(grid, PatternSpec::parse("random:4", grid.n), 1000, 42));
    auto b = simulation_csv(repair_simulation(grid, PatternSpec::parse("random:4", grid.n), 1000, 42));
    CHECK(a == b);
    auto c = simulation_csv(repair_simulation(grid, PatternSpec::parse("bernoulli:0.5", grid.n), 1000, 43));
    CHECK(a != c);
}

TEST_CASE("zero trials give a header-only CSV")
{
    auto grid = small_grid();
    CHECK(simulation_csv(repair_simulation(grid, PatternSpec::parse("random:2", grid.n), 0, 1)) == simulation_csv_header() + "\n");
}

TEST_CASE("at most delta-1 erasures per group always repair locally")
{
    auto grid = pair_grid();
    for (const auto& row : repair_simulation(grid, PatternSpec::parse("local:1", grid.n), 200, 9)) {
        REQUIRE(row.recovered);
        REQUIRE(row.rounds == 1);
        REQUIRE(row.erasures == 16);
    }
    auto c = construct(derive_profile({2, 4}, 2, {4}), Field::create(13, 1));
    HierarchicalRepair h{&c.code, {c.cert.levels[0].locality}};
    for (const auto& row : repair_simulation(h, PatternSpec::parse("local:1", 0), 200, 9)) {
        REQUIRE(row.recovered);
        REQUIRE(row.rounds == 1);
        REQUIRE(row.erasures == 4);
    }
}

TEST_CASE("random patterns below the distance always recover")
{
    auto c = construct(derive_profile({2, 4}, 2, {4}), Field::create(13, 1));
    HierarchicalRepair h{&c.code, {c.cert.levels[0].locality}};
    for (const auto& row : repair_simulation(h, PatternSpec::parse("random:7", 0), 300, 2)) REQUIRE(row.recovered);
    auto grid = small_grid();
    for (const auto& row : repair_simulation(grid, PatternSpec::parse("random:5", grid.n), 300, 2)) REQUIRE(row.recovered);
}

TEST_CASE("staircase pattern from file")
{
    auto grid = pair_grid();
    auto rows = repair_simulation(grid, PatternSpec::parse(kPattern, grid.n), 5, 1);
    REQUIRE(rows.size() == 5);
    for (const auto& r : rows) {
        CHECK(r.recovered);
        CHECK(r.erasures == 16);
        CHECK(r.trace_length == 16);
        CHECK(r.rounds == 3);
    }
}

TEST_CASE("hierarchical repair falls back to a global solve")
{
    auto c = construct(derive_profile({2, 4}, 2, {4}), Field::create(13, 1));
    HierarchicalRepair h{&c.code, {c.cert.levels[0].locality}};
    auto cw = encode(c.code, {1, 2, 3, 4});
    std::vector<bool> er(12, false);
    for (std::size_t i : {0u, 4u, 1u, 5u}) er[i] = true;
    auto w = cw;
    for (std::size_t i = 0; i < 12; ++i)
        if (er[i]) w[i] = 0;
    auto res = hierarchical_repair(h, w, er);
    CHECK(res.success);
    CHECK(res.word == cw);
    CHECK(res.rounds == 1);
    CHECK(res.filled == 4);
}
