#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "locus/cyclic.hpp"
#include "locus/oracle.hpp"

#include <random>
#include <set>

using namespace locus;

namespace {

CyclicCode code_12_4()
{
    auto f = Field::create(13, 1);
    return generator_from_zeros(f, 12, root_of_unity(f, 12), ZeroSet(12, {1, 2, 3, 4, 5, 6, 7, 10}));
}

std::set<std::uint32_t> recovered_zeros(const CyclicCode& c)
{
    std::set<std::uint32_t> z;
    for (std::uint32_t t = 0; t < c.n; ++t)
        if (c.g.eval(c.field->pow(c.alpha, t)) == 0) z.insert(t);
    return z;
}

} // namespace

TEST_CASE("(12,4) generator from zeros")
{
    auto c = code_12_4();
    CHECK(c.g.degree() == 8);
    CHECK(c.k() == 4);
    auto z = recovered_zeros(c);
    CHECK(z == std::set<std::uint32_t>(c.zeros.e.begin(), c.zeros.e.end()));
    auto [h, rev] = check_and_reversed_dual(c);
    CHECK(h.degree() == 4);
    CHECK(h * c.g == x_n_minus_1(c.field, 12));
    CHECK(rev == h);
}

TEST_CASE("trivial zero sets")
{
    auto f = Field::create(13, 1);
    auto a = root_of_unity(f, 12);
    auto all = generator_from_zeros(f, 12, a, ZeroSet::range(12, 0, 11));
    CHECK(all.g == x_n_minus_1(f, 12));
    CHECK(all.k() == 0);
    CHECK(check_and_reversed_dual(all).first == Poly(f, {1}));
    auto none = generator_from_zeros(f, 12, a, ZeroSet(12, {}));
    CHECK(none.g == Poly(f, {1}));
    CHECK(none.k() == 12);
}

TEST_CASE("alpha of the wrong order is rejected")
{
    auto f = Field::create(13, 1);
    CHECK_THROWS(generator_from_zeros(f, 12, FieldElement(f, 3), ZeroSet(12, {1})));
}

TEST_CASE("BCH designed distance")
{
    CHECK(bch_designed_distance(ZeroSet(12, {1, 2, 3, 4, 5, 6, 7, 10})) == 8);
    CHECK(bch_designed_distance(ZeroSet(12, {})) == 1);
    CHECK(bch_designed_distance(ZeroSet::range(12, 0, 10)) == 12);
    CHECK(bch_designed_distance(ZeroSet(12, {11, 0, 1, 5})) == 4);
}

TEST_CASE("encode")
{
    auto c = code_12_4();
    CHECK(weight(encode(c, {0, 0, 0, 0})) == 0);
    auto w = encode(c, {1, 0, 0, 0});
    for (std::size_t i = 0; i < c.g.c.size(); ++i) CHECK(w[i] == c.g.c[i]);
    std::mt19937_64 rng(3);
    for (int t = 0; t < 50; ++t) {
        std::vector<elem> msg(4);
        for (auto& x : msg) x = static_cast<elem>(rng() % 13);
        auto cw = encode(c, msg);
        REQUIRE(is_codeword(c, cw));
        Poly p(c.field, cw);
        for (auto z : c.zeros.e) REQUIRE(p.eval(c.field->pow(c.alpha, z)) == 0);
    }
    CHECK_THROWS(encode(c, {1, 2}));
}

TEST_CASE("lemma vector for the (12,4) code")
{
    auto c = code_12_4();
    auto lz = lemma_zeros_vector(c, 4, 3, 1);
    CHECK(lz.membership);
    CHECK(lz.containment);
    CHECK(lz.annihilator);
    CHECK(weight(lz.b.c) == 3);
    auto other = lemma_zeros_vector(c, 4, 3, 0);
    CHECK_FALSE(other.containment);
    CHECK_FALSE(other.membership);
    CHECK_THROWS(lemma_zeros_vector(c, 5, 3, 0));
}

TEST_CASE("local structure of the (12,4) code")
{
    auto c = code_12_4();
    auto cert = local_structure(c, 3, ZeroSet(3, {1}), 2);
    CHECK(cert.ok());
    CHECK(cert.nu == 4);
    CHECK(cert.punctured_dim == 2);
    CHECK(cert.exact_dimension);
    REQUIRE(cert.groups.size() == 4);
    for (std::uint32_t i = 0; i < 4; ++i) CHECK(cert.groups[i] == std::vector<std::uint32_t>{i, i + 4, i + 8});
    auto rep = local_structure(c, 3, ZeroSet(3, {1, 2}), 3);
    CHECK_FALSE(rep.error.empty());
}

TEST_CASE("repetition-like local code")
{
    auto f = Field::create(13, 1);
    auto c = generator_from_zeros(f, 12, root_of_unity(f, 12), ZeroSet(12, {1, 2, 4, 5, 7, 8, 10, 11}));
    auto cert = local_structure(c, 3, ZeroSet(3, {1, 2}), 3);
    CHECK(cert.ok());
    CHECK(cert.punctured_dim <= 1);
    CHECK(cert.punctured_bch >= 3);
}

TEST_CASE("local repair fills one erasure per group")
{
    auto c = code_12_4();
    auto cert = local_structure(c, 3, ZeroSet(3, {1}), 2);
    auto cw = encode(c, {3, 1, 4, 1});
    auto word = cw;
    std::vector<bool> er(12, false);
    for (std::uint32_t i : {0u, 5u, 10u, 7u}) {
        er[i] = true;
        word[i] = 0;
    }
    CHECK(local_repair(c, cert, word, er) == 4);
    CHECK(word == cw);
}

TEST_CASE("zero recovery on random instances")
{
    std::mt19937_64 rng(2024);
    auto f = Field::create(181, 1);
    std::vector<std::uint32_t> lens;
    for (std::uint32_t n = 2; n <= 180; ++n)
        if (180 % n == 0) lens.push_back(n);
    for (int t = 0; t < 200; ++t) {
        std::uint32_t n = lens[rng() % lens.size()];
        std::vector<std::int64_t> z;
        for (std::uint32_t i = 0; i < n; ++i)
            if (rng() % 3 == 0) z.push_back(i);
        auto c = generator_from_zeros(f, n, root_of_unity(f, n), ZeroSet(n, z));
        auto got = recovered_zeros(c);
        REQUIRE(got == std::set<std::uint32_t>(c.zeros.e.begin(), c.zeros.e.end()));
        REQUIRE(static_cast<std::size_t>(c.g.degree()) == c.zeros.size());
        REQUIRE(divmod(x_n_minus_1(f, n), c.g).second.is_zero());
    }
}

TEST_CASE("lemma biconditional on random codes")
{
    std::mt19937_64 rng(77);
    auto f = Field::create(61, 1);
    int members = 0, non_members = 0;
    for (int t = 0; t < 300; ++t) {
        std::uint32_t nu = 2 + static_cast<std::uint32_t>(rng() % 4), m = 2 + static_cast<std::uint32_t>(rng() % 4);
        std::uint32_t n = nu * m;
        if (60 % n) continue;
        std::uint32_t u = static_cast<std::uint32_t>(rng() % m);
        std::vector<std::int64_t> z;
        bool force = rng() % 2;
        for (std::uint32_t i = 0; i < n; ++i)
            if ((force && i % m == u) || rng() % 2 == 0) z.push_back(i);
        auto c = generator_from_zeros(f, n, root_of_unity(f, n), ZeroSet(n, z));
        auto lz = lemma_zeros_vector(c, nu, m, u);
        REQUIRE(lz.membership == lz.containment);
        REQUIRE(lz.annihilator);
        REQUIRE(weight(lz.b.c) == m);
        (lz.membership ? members : non_members)++;
    }
    CHECK(members >= 50);
    CHECK(non_members >= 50);
}

TEST_CASE("oracle distance is at least the BCH bound on small random codes")
{
    std::mt19937_64 rng(5);
    auto f = Field::create(13, 1);
    for (int t = 0; t < 40; ++t) {
        std::uint32_t n = std::vector<std::uint32_t>{4, 6, 12}[rng() % 3];
        std::vector<std::int64_t> z;
        for (std::uint32_t i = 0; i < n; ++i)
            if (rng() % 2) z.push_back(i);
        auto c = generator_from_zeros(f, n, root_of_unity(f, n), ZeroSet(n, z));
        if (c.k() == 0 || message_space(*f, c.k()) > 2000000) continue;
        auto d = min_distance(*f, generator_matrix(c), 100000000);
        REQUIRE(d.exhaustive);
        REQUIRE(d.value >= bch_designed_distance(c.zeros));
    }
}
