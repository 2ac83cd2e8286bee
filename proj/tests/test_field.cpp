#include <catch2/catch_amalgamated.hpp>
#include <random>

#include "minorforge/combi.hpp"
#include "minorforge/field.hpp"

using namespace minorforge;

static void checkAxioms(const Field& f) {
    std::mt19937_64 rng(12345);
    std::uniform_int_distribution<std::uint32_t> d(0, f.q - 1);
    for (int t = 0; t < 2000; ++t) {
        Fel a = static_cast<Fel>(d(rng)), b = static_cast<Fel>(d(rng)), c = static_cast<Fel>(d(rng));
        REQUIRE(f.add(a, b) == f.add(b, a));
        REQUIRE(f.mul(a, b) == f.mul(b, a));
        REQUIRE(f.add(f.add(a, b), c) == f.add(a, f.add(b, c)));
        REQUIRE(f.mul(f.mul(a, b), c) == f.mul(a, f.mul(b, c)));
        REQUIRE(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
        REQUIRE(f.add(a, 0) == a);
        REQUIRE(f.mul(a, 1) == a);
        REQUIRE(f.add(a, f.neg(a)) == 0);
        REQUIRE(f.sub(a, b) == f.add(a, f.neg(b)));
    }
    // characteristic
    Fel s = 0;
    for (std::uint32_t i = 0; i < f.p; ++i) s = f.add(s, 1);
    REQUIRE(s == 0);
}

TEST_CASE("field axioms hold across supported orders") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 11u, 23u, 73u, 211u, 65521u}) checkAxioms(Field::gf(q));
}

TEST_CASE("inverses are exact for table-backed fields") {
    for (std::uint32_t q : {2u, 3u, 4u, 5u, 7u, 11u, 211u}) {
        Field f = Field::gf(q);
        for (std::uint32_t a = 1; a < q; ++a) REQUIRE(f.mul(static_cast<Fel>(a), f.inv(static_cast<Fel>(a))) == 1);
    }
    Field big = Field::gf(65521);
    std::mt19937_64 rng(999);
    for (int t = 0; t < 200; ++t) {
        Fel a = static_cast<Fel>(1 + rng() % (big.q - 1));
        REQUIRE(big.mul(a, big.inv(a)) == 1);
    }
    REQUIRE_THROWS_AS(Field::gf(3).inv(0), MfError);
}

TEST_CASE("GF(4) uses the x^2+x+1 reduction") {
    Field f = Field::gf(4);
    // 2 encodes x, 3 encodes x+1
    REQUIRE(f.mul(2, 2) == 3);
    REQUIRE(f.mul(2, 3) == 1);
    REQUIRE(f.mul(3, 3) == 2);
    REQUIRE(f.add(2, 3) == 1);
    REQUIRE(f.add(1, 1) == 0);
    REQUIRE(f.neg(2) == 2);
    REQUIRE(f.inv(2) == 3);
    REQUIRE(f.inv(3) == 2);
    // Frobenius squaring is an automorphism
    for (Fel a = 0; a < 4; ++a)
        for (Fel b = 0; b < 4; ++b) {
            REQUIRE(f.mul(f.add(a, b), f.add(a, b)) == f.add(f.mul(a, a), f.mul(b, b)));
            REQUIRE(f.mul(f.mul(a, b), f.mul(a, b)) == f.mul(f.mul(a, a), f.mul(b, b)));
        }
}

TEST_CASE("unsupported orders are rejected") {
    REQUIRE_THROWS_AS(Field::gf(6), MfError);
    REQUIRE_THROWS_AS(Field::gf(8), MfError);
    REQUIRE_THROWS_AS(Field::gf(9), MfError);
    REQUIRE_THROWS_AS(Field::gf(1), MfError);
    REQUIRE_THROWS_AS(Field::gf(65537), MfError);  // above the prime cap
}

TEST_CASE("fromInt wraps integers into the prime field") {
    Field f = Field::gf(11);
    REQUIRE(f.fromInt(-1) == 10);
    REQUIRE(f.fromInt(13) == 2);
    REQUIRE(Field::gf(4).fromInt(3) == 3);
    REQUIRE_THROWS_AS(Field::gf(4).fromInt(4), MfError);
}

TEST_CASE("colex subset indexing round-trips") {
    for (int n : {5, 9, 12}) {
        for (int r = 0; r <= n; ++r) {
            std::uint32_t idx = 0;
            std::uint16_t m = firstSubsetMask(r);
            if (r == 0) {
                REQUIRE(colexIndex(0) == 0);
                continue;
            }
            while (m) {
                REQUIRE(colexIndex(m) == idx);
                REQUIRE(colexMask(idx, n, r) == m);
                m = nextSubsetMask(m, n);
                ++idx;
            }
            REQUIRE(idx == binom(n, r));
        }
    }
}
