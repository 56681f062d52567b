#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "fixtures.hpp"
#include "locus/conv.hpp"
#include "locus/hlrc.hpp"
#include "locus/oracle.hpp"

#include <random>
#include <set>

using namespace locus;

namespace {

QuasiCyclicLrc small_block() { return build_block_code(4, 1, 1, 1, 2, Field::create(3, 2)); }

ConvGenerator random_conv(const FieldPtr& f, std::uint32_t k, std::uint32_t n, std::uint32_t mem, std::mt19937_64& rng)
{
    ConvGenerator g;
    g.field = f;
    g.k = k;
    g.n = n;
    do {
        g.polys.assign(k, std::vector<std::vector<elem>>(n, std::vector<elem>(mem + 1)));
        for (auto& row : g.polys)
            for (auto& p : row)
                for (auto& x : p) x = static_cast<elem>(rng() % f->q());
    } while (rank(*f, g.coefficient(0)) != k);
    return g;
}

// convolutional generator in systematic block form: g_{i, i n/k} = 1 and zero
// on the other multiples of n/k
ConvGenerator random_systematic(const FieldPtr& f, std::uint32_t k, std::uint32_t n, std::uint32_t j, std::mt19937_64& rng)
{
    ConvGenerator g = random_conv(f, k, n, j, rng);
    const std::uint32_t step = n / k;
    for (std::uint32_t i = 0; i < k; ++i)
        for (std::uint32_t l = 0; l < n; l += step) {
            std::fill(g.polys[i][l].begin(), g.polys[i][l].end(), 0);
            if (l == i * step) g.polys[i][l][0] = 1;
        }
    return g;
}

template <class F> void subsets_up_to(std::size_t n, std::size_t e, std::vector<bool>& s, std::size_t from, std::size_t used, F& visit)
{
    visit(s);
    if (used == e) return;
    for (std::size_t i = from; i < n; ++i) {
        s[i] = true;
        subsets_up_to(n, e, s, i + 1, used + 1, visit);
        s[i] = false;
    }
}

} // namespace

TEST_CASE("small quasicyclic block code")
{
    auto b = small_block();
    CHECK(b.block.zeros.e == std::vector<std::uint32_t>{1, 2, 3, 4, 5, 7});
    CHECK(b.block.k() == 2);
    CHECK(b.delta3 == 6);
    CHECK(b.delta3 == bound_delta(8, 2, 1, 2));
    auto d = min_distance(*b.block.field, generator_matrix(b.block), 1000);
    CHECK(d.value == 6);
}

TEST_CASE("block code parameter gates")
{
    auto f9 = Field::create(3, 2);
    CHECK_THROWS_WITH_AS(build_block_code(4, 3, 1, 1, 2, f9), doctest::Contains("k <= j+1"), ParameterError);
    CHECK_THROWS_WITH_AS(build_block_code(4, 1, 2, 1, 2, f9), doctest::Contains("does not divide j+1"), ParameterError);
    CHECK_THROWS_WITH_AS(build_block_code(3, 2, 1, 1, 2, f9), doctest::Contains("does not divide n"), ParameterError);
    CHECK_THROWS_WITH_AS(build_block_code(4, 1, 1, 1, 2, Field::create(7, 1)), doctest::Contains("q-1"), ParameterError);
}

TEST_CASE("the small block code has no identity-form convolutional encoder")
{
    auto b = small_block();
    try {
        to_convolutional(b);
        FAIL("expected a singular G_I");
    } catch (const GIdentityError& e) {
        CHECK(e.rank == 1);
        CHECK(e.size == 2);
    }
    // every codeword is invariant under the one-step time shift
    auto g = generator_matrix(b.block);
    for (std::size_t r = 0; r < g.rows; ++r)
        for (std::uint32_t l = 0; l < 4; ++l) CHECK(g.at(r, l) == g.at(r, l + 4));
}

TEST_CASE("systematic generators survive the block round trip")
{
    std::mt19937_64 rng(31);
    auto f = Field::create(13, 1);
    for (int t = 0; t < 30; ++t) {
        std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 2), n = k * (1 + static_cast<std::uint32_t>(rng() % 3));
        if (n == k) n *= 2;
        std::uint32_t j = static_cast<std::uint32_t>(rng() % 3);
        auto g = random_systematic(f, k, n, j, rng);
        auto back = convolutional_from_block(f, tailbiting_generator(g, j + 1), n, k, j);
        REQUIRE(back.polys == g.polys);
        REQUIRE(back.memory() <= j);
    }
}

TEST_CASE("tailbiting encoder agrees with the circulant generator")
{
    std::mt19937_64 rng(12);
    auto f = Field::create(3, 2);
    for (int t = 0; t < 20; ++t) {
        auto g = random_conv(f, 2, 3, 2, rng);
        const std::uint32_t T = 4;
        auto G = tailbiting_generator(g, T);
        std::vector<std::vector<elem>> u(2, std::vector<elem>(T));
        std::vector<elem> flat;
        for (std::uint32_t s = 0; s < T; ++s)
            for (std::uint32_t i = 0; i < 2; ++i) {
                u[i][s] = static_cast<elem>(rng() % 9);
            }
        // rows of G are ordered (i, s) -> i T + s
        for (std::uint32_t i = 0; i < 2; ++i)
            for (std::uint32_t s = 0; s < T; ++s) flat.push_back(u[i][s]);
        auto c = tailbiting_encode(g, u);
        auto v = vec_mat(*f, flat, G);
        for (std::uint32_t l = 0; l < 3; ++l)
            for (std::uint32_t s = 0; s < T; ++s) REQUIRE(c[l][s] == v[l + 3 * s]);
    }
    auto zero = tailbiting_encode(random_conv(f, 1, 2, 1, rng), {{0, 0, 0}});
    for (const auto& row : zero)
        for (auto x : row) CHECK(x == 0);
}

TEST_CASE("column distance bounds")
{
    CHECK(column_distance_bound(4, 1, 1, 2, 1) == 7);
    CHECK(column_distance_bound(4, 2, 1, 2, 2) == 6);
    for (std::int64_t n = 2; n < 8; ++n)
        for (std::int64_t k = 1; k < n; ++k)
            for (std::int64_t j = 0; j < 5; ++j) REQUIRE(column_distance_bound(n, k, k, 2, j) == singleton_column_bound(n, k, j));
}

TEST_CASE("column distance: parallel, serial and parity-span agree; propagation holds")
{
    std::mt19937_64 rng(2718);
    int instances = 0;
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{2, 1}, {3, 1}, {2, 2}, {5, 1}}) {
        auto f = Field::create(p, m);
        for (int t = 0; t < 12; ++t) {
            std::uint32_t k = 1 + static_cast<std::uint32_t>(rng() % 2);
            std::uint32_t n = k + 1 + static_cast<std::uint32_t>(rng() % 2);
            std::uint32_t mem = static_cast<std::uint32_t>(rng() % 3);
            auto g = random_conv(f, k, n, mem, rng);
            std::uint32_t J = k == 1 ? 3 : 2;
            std::vector<std::int64_t> d;
            for (std::uint32_t j = 0; j <= J; ++j) {
                auto a = column_distance(g, j, 10000000);
                auto b = column_distance_serial(g, j, 10000000);
                REQUIRE(a.exhaustive);
                REQUIRE(b.exhaustive);
                REQUIRE(a.value == b.value);
                REQUIRE(a.value <= singleton_column_bound(n, k, j));
                if (j > 0) REQUIRE(a.value >= d.back());
                d.push_back(a.value);
                auto dv = static_cast<std::uint32_t>(a.value);
                REQUIRE(parity_span_oracle(g, j, dv));
                REQUIRE_FALSE(parity_span_oracle(g, j, dv + 1));
                if (dv > 1) REQUIRE_FALSE(parity_span_oracle(g, j, dv - 1));
            }
            REQUIRE(propagation_consistent(d, n, k, k, 2));
            ++instances;
        }
    }
    CHECK(instances == 48);
}

TEST_CASE("column distance needs a full-rank leading coefficient")
{
    ConvGenerator g;
    g.field = Field::create(3, 1);
    g.k = 2;
    g.n = 3;
    g.polys = {{{1, 1}, {0, 1}, {1, 0}}, {{2, 0}, {0, 2}, {2, 0}}};
    CHECK_THROWS(column_distance(g, 1, 1000000));
}

TEST_CASE("propagation predicate")
{
    // bounds for n=4, k=2, r=1, delta=2 are 2, 4, 6
    CHECK(propagation_consistent({2, 4, 6}, 4, 2, 1, 2));
    CHECK(propagation_consistent({2, 3, 5}, 4, 2, 1, 2));
    CHECK_FALSE(propagation_consistent({2, 3, 6}, 4, 2, 1, 2));
}

TEST_CASE("shifted row groups partition the row")
{
    for (std::uint32_t T : {2u, 4u, 6u, 8u, 12u})
        for (std::uint32_t r = 1; r <= 3; ++r)
            for (std::uint32_t delta = 2; delta <= 3; ++delta) {
                if (T % (r + delta - 1)) {
                    CHECK_THROWS_AS(shifted_row_groups(T, r, delta), ParameterError);
                    continue;
                }
                auto groups = shifted_row_groups(T, r, delta);
                std::multiset<std::uint32_t> seen;
                for (const auto& g : groups) {
                    REQUIRE(g.size() == r + delta - 1);
                    seen.insert(g.begin(), g.end());
                }
                REQUIRE(seen.size() == T);
                for (std::uint32_t s = 0; s < T; ++s) REQUIRE(seen.count(s) == 1);
            }
}

TEST_CASE("row locality of the small block code")
{
    auto grid = grid_from_block(small_block());
    auto rl = row_locality_verify(grid);
    CHECK(rl.pass);
    CHECK(rl.rows_checked == 4);
    REQUIRE(grid.row_groups.size() == 1);
    CHECK(grid.row_groups[0] == std::vector<std::uint32_t>{0, 1});
}

TEST_CASE("shifted-pair fixture")
{
    auto g = fixtures::shifted_pair_code();
    CHECK(g.memory() == 7);
    CHECK(rank(*g.field, g.coefficient(0)) == 2);
    auto G = tailbiting_generator(g, 8);
    CHECK(rank(*g.field, G) == 8);
    auto d = min_distance(*g.field, G, 100000000);
    CHECK(d.exhaustive);
    CHECK(d.value == 14);
    auto grid = grid_from_tailbiting(g, 8, 1, 2, d.value);
    CHECK(row_locality_verify(grid).pass);
}

TEST_CASE("sliding-window repair: empty pattern")
{
    auto grid = grid_from_block(small_block());
    std::vector<elem> w(8, 0);
    auto res = sliding_window_repair(grid, w, std::vector<bool>(8, false));
    CHECK(res.success);
    CHECK(res.trace.empty());
    CHECK(res.rounds == 0);
}

TEST_CASE("sliding-window repair of the staircase pattern")
{
    auto g = fixtures::shifted_pair_code();
    auto grid = grid_from_tailbiting(g, 8, 1, 2, 14);
    std::mt19937_64 rng(1);
    std::vector<elem> msg(grid.G.rows);
    for (auto& x : msg) x = static_cast<elem>(rng() % 7);
    auto cw = vec_mat(*g.field, msg, grid.G);
    auto w = cw;
    std::vector<bool> er(32, false);
    for (auto [row, col] : fixtures::staircase_pattern()) {
        er[grid.coord(row, col)] = true;
        w[grid.coord(row, col)] = 0;
    }
    auto res = sliding_window_repair(grid, w, er);
    CHECK(res.success);
    CHECK(res.word == cw);
    CHECK(res.rounds == 3);
    REQUIRE(res.trace.size() == 16);
    std::vector<std::tuple<std::string, std::uint32_t, std::uint32_t, std::int64_t, std::uint32_t>> want = {
        {"local", 1, 0, -1, 1}, {"local", 1, 5, -1, 1}, {"local", 3, 0, -1, 1}, {"local", 3, 5, -1, 1},
        {"window", 0, 0, 0, 1}, {"window", 2, 0, 0, 1}, {"local", 0, 4, -1, 2}, {"local", 2, 4, -1, 2},
        {"window", 0, 2, 2, 2}, {"window", 1, 2, 2, 2}, {"window", 2, 2, 2, 2}, {"window", 3, 2, 2, 2},
        {"local", 0, 6, -1, 3}, {"local", 1, 6, -1, 3}, {"local", 2, 6, -1, 3}, {"local", 3, 6, -1, 3}};
    for (std::size_t i = 0; i < want.size(); ++i) {
        const auto& t = res.trace[i];
        CAPTURE(i);
        CHECK(std::make_tuple(t.kind, t.row, t.col, t.window_start, t.round) == want[i]);
    }
}

TEST_CASE("sliding-window repair recovers every pattern of at most five erasures on the GF(9) grid")
{
    auto b = small_block();
    auto grid = grid_from_block(b);
    CHECK(grid.d_window == 6);
    auto f = b.block.field;
    auto cw = vec_mat(*f, {4, 7}, grid.G);
    std::size_t patterns = 0;
    std::vector<bool> s(8, false);
    auto visit = [&](const std::vector<bool>& er) {
        auto w = cw;
        for (std::size_t i = 0; i < 8; ++i)
            if (er[i]) w[i] = 0;
        auto res = sliding_window_repair(grid, w, er);
        REQUIRE(res.success);
        REQUIRE(res.word == cw);
        ++patterns;
    };
    subsets_up_to(8, 5, s, 0, 0, visit);
    CHECK(patterns == 219);
}

TEST_CASE("repair reports failure with a residual pattern")
{
    auto b = small_block();
    auto grid = grid_from_block(b);
    std::vector<bool> er(8, true);
    er[3] = false;
    er[7] = false;
    auto res = sliding_window_repair(grid, std::vector<elem>(8, 0), er);
    CHECK_FALSE(res.success);
    CHECK(std::count(res.residual.begin(), res.residual.end(), true) == 6);
}
