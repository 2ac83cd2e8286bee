#include <catch2/catch_amalgamated.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>

#include "minorforge/catalog.hpp"
#include "minorforge/store.hpp"

using namespace minorforge;

namespace {

std::filesystem::path freshRoot(const std::string& tag) {
    auto p = std::filesystem::temp_directory_path() / ("mf-store-" + tag);
    std::filesystem::remove_all(p);
    return p;
}

// Dyadic-style records: GF(11) proxy with F = {2,6,10}, GF(3) carrier.
std::vector<MemberRecord> sampleRecords() {
    std::vector<Fel> F = {2, 6, 10};
    std::vector<MemberRecord> out;
    for (const char* name : {"F7-", "(F7-)*", "P8"}) {
        BasisMatroid m = catalog(name);
        auto conf = findConfinedRep(m, Field::gf(11), F);
        auto carr = findRep(m, Field::gf(3));
        REQUIRE(conf.has_value());
        REQUIRE(carr.has_value());
        out.push_back(MemberRecord{m, *conf, *carr}.normalized());
    }
    return out;
}

}  // namespace

TEST_CASE("member record serialization round-trips") {
    for (const auto& rec : sampleRecords()) {
        std::string text = rec.serialize();
        auto nl1 = text.find('\n');
        auto nl2 = text.find('\n', nl1 + 1);
        REQUIRE(nl2 != std::string::npos);
        MemberRecord back = MemberRecord::parse(text.substr(0, nl1),
                                                text.substr(nl1 + 1, nl2 - nl1 - 1),
                                                text.substr(nl2 + 1));
        CHECK(back.m == rec.m);
        CHECK(back.serialize() == text);
        CHECK(back.conf.f.q == 11);
        CHECK(back.carr.f.q == 3);
        CHECK(matroidOf(back.conf) == rec.m);
        CHECK(matroidOf(back.carr) == rec.m);
    }
}

TEST_CASE("normalized records use the colex-first basis with sorted labels") {
    for (const auto& rec : sampleRecords()) {
        std::vector<int> rl, cl;
        for (int g = 0; g < rec.m.n; ++g) ((rec.m.bases[0] >> g) & 1 ? rl : cl).push_back(g);
        CHECK(rec.conf.rowLabels == rl);
        CHECK(rec.conf.colLabels == cl);
        CHECK(rec.carr.rowLabels == rl);
        CHECK(rec.carr.colLabels == cl);
    }
}

TEST_CASE("write then read returns identical records") {
    LevelStore store(freshRoot("roundtrip"));
    auto recs = sampleRecords();
    REQUIRE_FALSE(store.levelDone("dyadic", 7));
    // mixed sizes are rejected
    CHECK_THROWS_AS(store.writeLevel("dyadic", 7, recs), MfError);

    std::vector<MemberRecord> sevens(recs.begin(), recs.begin() + 2);
    store.writeLevel("dyadic", 7, sevens);
    REQUIRE(store.levelDone("dyadic", 7));
    auto back = store.readLevel("dyadic", 7);
    REQUIRE(back.size() == 2);
    std::vector<std::string> want, got;
    for (const auto& r : sevens) want.push_back(r.serialize());
    for (const auto& r : back) got.push_back(r.serialize());
    std::sort(want.begin(), want.end());
    CHECK(got == want);  // store output is sorted by record text

    auto counts = store.readCounts("dyadic", 7);
    std::map<int, long long> expect = {{3, 1}, {4, 1}};
    CHECK(counts == expect);
    CHECK(store.doneLevels("dyadic") == std::vector<int>{7});
}

TEST_CASE("completed levels are immutable") {
    LevelStore store(freshRoot("immutable"));
    auto recs = sampleRecords();
    std::vector<MemberRecord> sevens(recs.begin(), recs.begin() + 2);
    store.writeLevel("dyadic", 7, sevens);
    CHECK_THROWS_AS(store.writeLevel("dyadic", 7, sevens), MfError);
}

TEST_CASE("duplicate records are rejected") {
    LevelStore store(freshRoot("dup"));
    auto recs = sampleRecords();
    std::vector<MemberRecord> twice = {recs[0], recs[0]};
    CHECK_THROWS_AS(store.writeLevel("dyadic", 7, twice), MfError);
}

TEST_CASE("corrupted members file fails the checksum") {
    auto root = freshRoot("corrupt");
    LevelStore store(root);
    auto recs = sampleRecords();
    store.writeLevel("dyadic", 8, {recs[2]});
    auto path = store.levelDir("dyadic", 8) / "members.txt";
    std::string body = detail::readFile(path);
    body[body.find('B') + 2] ^= 1;  // flip a byte
    std::ofstream(path, std::ios::binary | std::ios::trunc) << body;
    CHECK_THROWS_AS(store.readLevel("dyadic", 8), MfError);
}

TEST_CASE("reading an incomplete level throws") {
    LevelStore store(freshRoot("incomplete"));
    CHECK_THROWS_AS(store.readLevel("dyadic", 7), MfError);
    CHECK(store.doneLevels("dyadic").empty());
}

TEST_CASE("excluded-minor files round-trip") {
    LevelStore store(freshRoot("excluded"));
    std::vector<std::pair<std::string, BasisMatroid>> xs = {{"TQ8", catalog("TQ8")},
                                                            {"P8-", catalog("P8-")}};
    REQUIRE_FALSE(store.excludedDone("dyadic", 8));
    store.writeExcluded("dyadic", 8, xs);
    REQUIRE(store.excludedDone("dyadic", 8));
    auto back = store.readExcluded("dyadic", 8);
    REQUIRE(back.size() == 2);
    CHECK(back[0].first == "TQ8");
    CHECK(back[0].second == xs[0].second);
    CHECK(back[1].first == "P8-");
    CHECK(back[1].second == xs[1].second);

    store.writeExcluded("dyadic", 9, {});
    CHECK(store.excludedDone("dyadic", 9));
    CHECK(store.readExcluded("dyadic", 9).empty());
}
