#include <catch2/catch_amalgamated.hpp>
#include <set>

#include "minorforge/pfield.hpp"

using namespace minorforge;

static std::set<std::string> valStrings(const FundamentalSet& fs) {
    std::set<std::string> s;
    for (int i = 0; i < static_cast<int>(fs.size()); ++i) s.insert(fs.str(i));
    return s;
}

TEST_CASE("ZPoly arithmetic and exact division") {
    ZPoly a = ZPoly::var(0), b = ZPoly::var(1), one = ZPoly::constant(1);
    REQUIRE(((one - a) * (one + a)) == (one - a * a));
    ZPoly p = (one - a) * (a - b) * (a - b) * b;
    auto q = p.divExact(a - b);
    REQUIRE(q.has_value());
    REQUIRE((*q * (a - b)) == p);
    REQUIRE(!p.divExact(one - b).has_value());
    REQUIRE(p.substConst(0, 1).isZero());      // factor 1-a
    REQUIRE(p.substVar(0, 1).isZero());        // factor a-b
    REQUIRE(!p.substConst(0, 0).isZero());
    ZPoly two_a = ZPoly::constant(2) * a;
    REQUIRE(!two_a.divExact(a)->isZero());
    REQUIRE(two_a.divExact(a)->constantValue() == 2);
}

TEST_CASE("Rat reduces and computes exactly") {
    REQUIRE(Rat(6, -4).str() == "-3/2");
    REQUIRE((Rat(1, 2) + Rat(1, 2)).isOne());
    REQUIRE((Rat(2) * Rat(1, 2)).isOne());
    REQUIRE((Rat(1) - Rat(-1)).str() == "2");
}

TEST_CASE("dyadic fundamentals are 0, 1, -1, 2, 1/2") {
    auto pf = PartialField::builtin("D");
    auto fs = fundamentals(pf);
    REQUIRE(fs.size() == 5);
    REQUIRE(valStrings(fs) == std::set<std::string>{"0", "1", "-1", "2", "1/2"});
    // -1 + 2 = 1 and 1/2 + 1/2 = 1 are the only nontrivial unit sums
    int count = 0;
    for (int i = 2; i < 5; ++i)
        for (int j = i; j < 5; ++j)
            if (fs.sumIsOne(i, j)) ++count;
    REQUIRE(count == 2);
}

TEST_CASE("sixth-root fundamentals are 0, 1, z, z^5") {
    auto pf = PartialField::builtin("S");
    auto fs = fundamentals(pf);
    REQUIRE(fs.size() == 4);
    REQUIRE(valStrings(fs) == std::set<std::string>{"0", "1", "z", "1-z"});
}

TEST_CASE("near-regular fundamentals are {0,1} plus the associates of a") {
    auto pf = PartialField::builtin("U1");
    auto fs = fundamentals(pf);
    REQUIRE(fs.size() == 8);
    auto s = valStrings(fs);
    REQUIRE(s.count("a"));
    REQUIRE(s.count("1-a"));
    REQUIRE(s.count("1/a"));
    REQUIRE(s.count("-a/(1-a)"));
}

TEST_CASE("fundamental enumeration is stable in the exponent bound") {
    for (const char* n : {"D", "U1", "K2", "U2"}) {
        auto pf = PartialField::builtin(n);
        auto f3 = fundamentals(pf, 3);
        auto f5 = fundamentals(pf, 5);
        REQUIRE(f3.vals == f5.vals);
    }
}

TEST_CASE("fundamental counts for the larger built-ins") {
    REQUIRE(fundamentals(PartialField::builtin("K2")).size() == 20);
    auto fs = fundamentals(PartialField::builtin("U2"));
    REQUIRE(fs.size() == 32);
    auto s = valStrings(fs);
    REQUIRE(s.count("a"));
    REQUIRE(s.count("b"));
    REQUIRE(s.count("a/b"));
    REQUIRE(s.count("a*(1-b)/(b*(1-a))"));
}

TEST_CASE("GF(11) is a dyadic proxy with F = {2,6,10}") {
    auto pf = PartialField::builtin("D");
    auto fs = fundamentals(pf);
    auto v = verifyProxy(pf, fs, Field::gf(11), {});
    REQUIRE(v.ok());
    REQUIRE(v.proxy.str() == "pf=D q=11 images=2=2 F=2,6,10");
}

TEST_CASE("GF(7) rejects the dyadic partial field on the triple (2,2,2)") {
    auto pf = PartialField::builtin("D");
    auto fs = fundamentals(pf);
    auto v = verifyProxy(pf, fs, Field::gf(7), {});
    REQUIRE(v.kind == ProxyVerdict::ProductViolation);
    REQUIRE(v.witness.size() == 3);
    for (int w : v.witness) REQUIRE(fs.str(w) == "2");
}

TEST_CASE("smallest proxies for D, S, U1") {
    auto d = PartialField::builtin("D");
    auto pd = findProxy(d, fundamentals(d));
    REQUIRE(pd.has_value());
    REQUIRE(pd->field.q == 11);

    auto s = PartialField::builtin("S");
    auto ps = findProxy(s, fundamentals(s));
    REQUIRE(ps.has_value());
    REQUIRE(ps->field.q == 7);
    REQUIRE(ps->images == std::vector<Fel>{3});
    REQUIRE(ps->F == std::vector<Fel>{3, 5});

    auto u1 = PartialField::builtin("U1");
    auto p1 = findProxy(u1, fundamentals(u1));
    REQUIRE(p1.has_value());
    REQUIRE(p1->field.q == 23);
    REQUIRE(p1->images == std::vector<Fel>{5});
    REQUIRE(p1->F == std::vector<Fel>{5, 7, 10, 14, 17, 19});
}

TEST_CASE("stated proxies verify for K2 and U2") {
    auto k2 = PartialField::builtin("K2");
    auto fk = fundamentals(k2);
    REQUIRE(verifyProxy(k2, fk, Field::gf(73), {15}).ok());

    auto u2 = PartialField::builtin("U2");
    auto fu = fundamentals(u2);
    auto v = verifyProxy(u2, fu, Field::gf(211), {4, 44});
    REQUIRE(v.ok());
    REQUIRE(v.proxy.F.size() == 30);
    REQUIRE(confinedSetIsAssociateClosed(v.proxy.field, v.proxy.F));
}

TEST_CASE("field associates partition the field outside {0,1}") {
    for (std::uint32_t q : {7u, 11u, 23u}) {
        Field f = Field::gf(q);
        std::vector<int> cls(q, -1);
        for (Fel p = 2; p < q; ++p) {
            auto a = fieldAssociates(f, p);
            REQUIRE(a.size() <= 6);
            REQUIRE((a.size() == 1 || a.size() == 2 || a.size() == 3 || a.size() == 6));
            for (Fel x : a)
                for (Fel y : a) {
                    auto ax = fieldAssociates(f, x);
                    REQUIRE(std::find(ax.begin(), ax.end(), y) != ax.end());
                }
            (void)cls;
        }
        REQUIRE(fieldAssociates(f, 0) == std::vector<Fel>{0, 1});
        REQUIRE(fieldAssociates(f, 1) == std::vector<Fel>{0, 1});
    }
    // the dyadic confinement set is a single associate class
    REQUIRE(fieldAssociates(Field::gf(11), 2) == std::vector<Fel>{2, 6, 10});
}

TEST_CASE("proxy verdicts for degenerate homomorphisms") {
    auto d = PartialField::builtin("D");
    auto fs = fundamentals(d);
    REQUIRE(verifyProxy(d, fs, Field::gf(2), {}).kind == ProxyVerdict::MinusOneCollapse);
    REQUIRE(verifyProxy(d, fs, Field::gf(3), {}).kind == ProxyVerdict::NotInjective);
    auto s = PartialField::builtin("S");
    auto fss = fundamentals(s);
    REQUIRE(verifyProxy(s, fss, Field::gf(7), {2}).kind == ProxyVerdict::NoHom);  // 2 is not a root
}
