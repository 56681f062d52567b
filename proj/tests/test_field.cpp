#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include "locus/field.hpp"

#include <random>

using namespace locus;

TEST_CASE("prime field GF(13)")
{
    auto f = Field::create(13, 1);
    CHECK(f->q() == 13);
    CHECK(f->generator() == 2);
    CHECK(f->mul(7, 2) == 1);
    CHECK(f->inv(7) == 2);
    for (elem x = 0; x < 13; ++x) CHECK(f->add(x, 0) == x);
}

TEST_CASE("extension moduli are the least primitive polynomials")
{
    CHECK(Field::create(3, 2)->modulus() == std::vector<std::uint32_t>{2, 1, 1});
    CHECK(Field::create(2, 4)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 1});
    CHECK(Field::create(2, 6)->modulus() == std::vector<std::uint32_t>{1, 1, 0, 0, 0, 0, 1});
    CHECK(Field::create(2, 6)->q() == 64);
}

TEST_CASE("rejects bad parameters")
{
    CHECK_THROWS_AS(Field::create(4, 1), ParameterError);
    CHECK_THROWS_AS(Field::create(2, 17), ParameterError);
    CHECK_THROWS_AS(Field::create(1, 1), ParameterError);
}

TEST_CASE("root of unity")
{
    auto f = Field::create(13, 1);
    auto a = root_of_unity(f, 12);
    CHECK(a.value() == 2);
    CHECK(a.pow(12).value() == 1);
    CHECK(a.pow(6).value() != 1);
    CHECK(a.pow(4).value() != 1);
    CHECK(root_of_unity(f, 1).value() == 1);
    CHECK_THROWS_AS(root_of_unity(f, 5), ParameterError);
}

TEST_CASE("mixed-field operands and inverse of zero are errors")
{
    auto f = Field::create(13, 1), g = Field::create(7, 1);
    FieldElement a(f, 3), b(g, 3), z(f, 0);
    CHECK_THROWS(a + b);
    CHECK_THROWS(z.inv());
}

TEST_CASE("table consistency and axioms across fields")
{
    std::mt19937_64 rng(11);
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{
             {2, 1}, {13, 1}, {163, 1}, {3, 2}, {2, 4}, {2, 6}, {5, 3}, {7, 2}, {2, 8}, {3, 7}, {2, 16}}) {
        CAPTURE(p);
        CAPTURE(m);
        auto f = Field::create(p, m);
        const elem q = f->q();
        CHECK(order(*f, f->generator()) == q - 1);
        for (elem a = 1; a < q; ++a) {
            REQUIRE(f->exp(f->log(a)) == a);
            REQUIRE(f->mul(a, f->inv(a)) == 1);
        }
        for (elem a = 1; a < std::min<elem>(q, 300); ++a) REQUIRE(f->pow(a, q - 1) == 1);
        for (int t = 0; t < 2000; ++t) {
            elem a = static_cast<elem>(rng() % q), b = static_cast<elem>(rng() % q), c = static_cast<elem>(rng() % q);
            REQUIRE(f->add(a, b) == f->add(b, a));
            REQUIRE(f->mul(a, b) == f->mul(b, a));
            REQUIRE(f->add(f->add(a, b), c) == f->add(a, f->add(b, c)));
            REQUIRE(f->mul(f->mul(a, b), c) == f->mul(a, f->mul(b, c)));
            REQUIRE(f->mul(a, f->add(b, c)) == f->add(f->mul(a, b), f->mul(a, c)));
            REQUIRE(f->add(a, f->neg(a)) == 0);
        }
    }
}

TEST_CASE("roots of unity have exact order")
{
    for (auto [p, m] : std::vector<std::pair<std::uint32_t, std::uint32_t>>{{13, 1}, {3, 2}, {2, 6}, {163, 1}}) {
        auto f = Field::create(p, m);
        for (std::uint64_t n = 1; n < f->q(); ++n) {
            if ((f->q() - 1) % n) continue;
            auto a = root_of_unity(f, n);
            CHECK(a.pow(static_cast<std::int64_t>(n)).value() == 1);
            for (std::uint64_t t = 1; t < n; ++t) REQUIRE(a.pow(static_cast<std::int64_t>(t)).value() != 1);
        }
    }
}
