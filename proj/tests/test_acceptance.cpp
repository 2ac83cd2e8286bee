// Acceptance battery. Seven criteria, one verdict line each, exit 0 only
// when all pass. Level data lives in a store directory (MINORFORGE_STORE or
// ./acceptance-store) so interrupted runs resume instead of restarting.
// Property checks run before any count run is attempted.

#include <chrono>
#include <cstdio>
#include <iostream>
#include <map>
#include <random>
#include <sstream>
#include <unordered_map>

#include "minorforge/engine.hpp"

using namespace minorforge;

namespace {

using Clock = std::chrono::steady_clock;

double secsSince(Clock::time_point t0) {
    return std::chrono::duration<double>(Clock::now() - t0).count();
}

struct Criterion {
    int id;
    std::string label;
    bool ok = true;
    double secs = 0;
    std::vector<std::string> notes;

    void check(bool cond, const std::string& what) {
        if (!cond) {
            ok = false;
            notes.push_back(what);
        }
    }
    void budget(double secs, double limit, const std::string& what) {
        char buf[96];
        std::snprintf(buf, sizeof buf, "%s took %.0fs, budget %.0fs", what.c_str(), secs, limit);
        check(secs <= limit, buf);
    }
    void note(const std::string& what) { notes.push_back(what); }
};

std::vector<Criterion> results;

template <class Fn>
void run(int id, const std::string& label, Fn&& body) {
    Criterion c{id, label};
    auto t0 = Clock::now();
    try {
        body(c);
    } catch (const std::exception& e) {
        c.ok = false;
        c.notes.push_back(std::string("exception: ") + e.what());
    }
    c.secs = secsSince(t0);
    char line[160];
    std::snprintf(line, sizeof line, "%s  criterion %d: %s  (%.1fs)", c.ok ? "PASS" : "FAIL",
                  c.id, c.label.c_str(), c.secs);
    std::cout << line << "\n";
    for (const auto& n : c.notes) std::cout << "      " << n << "\n";
    std::cout.flush();
    results.push_back(std::move(c));
}

using RankRow = std::map<int, long long>;

const std::map<int, RankRow> kDyadicTable = {
    {7, {{3, 1}, {4, 1}}},
    {8, {{3, 1}, {4, 7}, {5, 1}}},
    {9, {{3, 1}, {4, 24}, {5, 24}, {6, 1}}},
    {10, {{4, 52}, {5, 223}, {6, 52}}},
    {11, {{4, 60}, {5, 1087}, {6, 1087}, {7, 60}}},
    {12, {{4, 44}, {5, 3000}, {6, 10755}, {7, 3000}, {8, 44}}},
};

const std::map<int, RankRow> kTwoRegTable = {
    {5, {{2, 1}, {3, 1}}},
    {6, {{3, 1}}},
    {7, {{3, 2}, {4, 2}}},
    {8, {{3, 4}, {4, 17}, {5, 4}}},
    {9, {{3, 3}, {4, 62}, {5, 62}, {6, 3}}},
    {10, {{3, 2}, {4, 113}, {5, 502}, {6, 113}, {7, 2}}},
    {11, {{4, 132}, {5, 2156}, {6, 2156}, {7, 132}}},
};

void checkCounts(Criterion& c, const ClassSpec& spec, LevelStore& store,
                 const std::map<int, RankRow>& want, const EngineOptions& opt) {
    for (const auto& [n, row] : want) {
        generateLevel(spec, n, store, opt);
        RankRow got;
        for (const auto& [r, cnt] : store.readCounts(spec.name, n)) got[r] = cnt;
        if (got != row) {
            std::ostringstream os;
            os << spec.name << " n=" << n << " counts differ: got";
            for (const auto& [r, cnt] : got) os << " " << r << ":" << cnt;
            c.check(false, os.str());
        }
    }
}

// Discoveries the dyadic run must make beyond the base list.
const std::map<int, std::vector<std::string>> kDyadicFinds = {
    {8, {"T8"}}, {9, {}}, {10, {"N1"}}, {11, {}}, {12, {"N2"}}};

using IsoIndex = std::unordered_multimap<std::uint64_t, BasisMatroid>;

bool isoMember(const BasisMatroid& m, const IsoIndex& idx) {
    auto [lo, hi] = idx.equal_range(invariantKey(m).h);
    for (auto it = lo; it != hi; ++it)
        if (isIsomorphic(m, it->second)) return true;
    return false;
}

IsoIndex levelIndex(const LevelStore& s, const std::string& cls, int n) {
    IsoIndex idx;
    for (const auto& r : s.readLevel(cls, n)) idx.emplace(invariantKey(r.m).h, r.m);
    return idx;
}

}  // namespace

int main() {
    std::string storePath = "acceptance-store";
    if (const char* env = std::getenv("MINORFORGE_STORE")) storePath = env;
    LevelStore store{storePath};
    EngineOptions opt;
    std::cout << "acceptance battery, store=" << storePath << "\n";

    // Discoveries of the dyadic run, reused by criterion 6.
    std::map<std::string, BasisMatroid> found;

    run(1, "proxy table", [&](Criterion& c) {
        auto t0 = Clock::now();
        struct Want {
            const char* pf;
            std::uint32_t q;
            std::vector<Fel> images;
        };
        const std::vector<Want> wants = {
            {"S", 7, {3}}, {"D", 11, {2}}, {"U1", 23, {5}}, {"K2", 73, {15}}, {"U2", 211, {4, 44}}};
        for (const auto& w : wants) {
            auto pf = PartialField::builtin(w.pf);
            auto fs = fundamentals(pf);
            auto p = findProxy(pf, fs);
            if (!p) {
                c.check(false, std::string(w.pf) + ": no proxy found");
                continue;
            }
            c.check(p->field.q == w.q, std::string(w.pf) + ": smallest prime " +
                                           std::to_string(p->field.q) + ", want " + std::to_string(w.q));
            // image tuples may differ as long as they verify; note a change
            if (p->field.q == w.q && p->images != w.images) c.note(std::string(w.pf) + ": " + p->str());
        }
        auto d = PartialField::builtin("D");
        auto fs = fundamentals(d);
        auto v = verifyProxy(d, fs, Field::gf(7), {});
        bool triple = v.kind == ProxyVerdict::ProductViolation && v.witness.size() == 3;
        for (int w : v.witness) triple = triple && fs.str(w) == "2";
        c.check(triple, "GF(7) rejection of D did not cite the (2,2,2) product triple");
        c.budget(secsSince(t0), 3600, "proxy search");
    });

    run(7, "property suites", [&](Criterion& c) {
        // field axioms on the carrier and proxy fields
        for (std::uint32_t q : {3u, 4u, 7u, 11u}) {
            Field f = Field::gf(q);
            bool ax = true;
            for (Fel a = 0; a < q; ++a)
                for (Fel b = 0; b < q; ++b) {
                    ax = ax && f.add(a, b) == f.add(b, a) && f.mul(a, b) == f.mul(b, a);
                    ax = ax && f.add(a, f.neg(a)) == 0;
                    if (a) ax = ax && f.mul(a, f.inv(a)) == 1;
                    for (Fel d = 0; d < q; ++d) {
                        ax = ax && f.add(f.add(a, b), d) == f.add(a, f.add(b, d));
                        ax = ax && f.mul(f.mul(a, b), d) == f.mul(a, f.mul(b, d));
                        ax = ax && f.mul(a, f.add(b, d)) == f.add(f.mul(a, b), f.mul(a, d));
                    }
                }
            c.check(ax, "field axioms fail in GF(" + std::to_string(q) + ")");
        }
        // every confined set is Asc-closed and partitioned by associate orbits
        for (const char* cls : {"dyadic", "2regular"}) {
            ClassSpec spec = ClassSpec::builtin(cls);
            const Field& f = spec.proxy.field;
            c.check(confinedSetIsAssociateClosed(f, spec.proxy.F),
                    std::string(cls) + ": F is not Asc-closed");
            bool part = true;
            std::vector<std::vector<Fel>> orbits;
            for (Fel p : spec.proxy.F) orbits.push_back(fieldAssociates(f, p));
            for (const auto& a : orbits)
                for (const auto& b : orbits) {
                    bool inter = false;
                    for (Fel x : a)
                        for (Fel y : b) inter = inter || x == y;
                    part = part && (!inter || a == b);
                }
            std::vector<bool> covered(f.q, false);
            for (const auto& a : orbits)
                for (Fel x : a) covered[x] = true;
            for (Fel x : spec.proxy.F) part = part && covered[x];
            c.check(part, std::string(cls) + ": associate orbits do not partition F");
        }
        // pivot and scaling invariance of matroidOf and crossRatios
        {
            ClassSpec spec = ClassSpec::builtin("dyadic");
            auto rep = findConfinedRep(catalog("F7-"), spec.proxy.field, spec.proxy.F);
            c.check(rep.has_value(), "no confined representation of F7- over GF(11)");
            if (rep) {
                LinearRep a = *rep;
                BasisMatroid m = matroidOf(a);
                auto cr = crossRatios(a);
                std::mt19937 rng(7);
                bool inv = true;
                for (int t = 0; t < 10; ++t) {
                    int i = static_cast<int>(rng() % static_cast<unsigned>(a.rows()));
                    int j = static_cast<int>(rng() % static_cast<unsigned>(a.cols()));
                    if (a.at(i, j) != 0)
                        a = pivot(a, a.rowLabels[static_cast<std::size_t>(i)],
                                  a.colLabels[static_cast<std::size_t>(j)]);
                    Fel s = static_cast<Fel>(1 + rng() % (a.f.q - 1));
                    for (int k = 0; k < a.cols(); ++k) a.at(i, k) = a.f.mul(a.at(i, k), s);
                    inv = inv && matroidOf(a) == m && crossRatios(a) == cr;
                }
                c.check(inv, "pivot/scaling changed matroidOf or crossRatios");
            }
        }
        // duality is an involution and dualRep represents the dual
        {
            bool ok = true;
            for (const char* nm : {"F7", "P8", "TQ8", "N3"}) {
                BasisMatroid m = catalog(nm);
                ok = ok && m.dual().dual() == m;
            }
            auto rep = findRep(catalog("P8"), Field::gf(3));
            ok = ok && rep && isIsomorphic(matroidOf(dualRep(*rep)), catalog("P8").dual());
            c.check(ok, "duality involution or dualRep failed");
        }
        // circuit-hyperplane relaxation adds exactly one basis
        {
            BasisMatroid f7 = catalog("F7"), p8 = catalog("P8");
            auto chs = p8.circuitHyperplanes();
            bool ok = catalog("F7-").bases.size() == f7.bases.size() + 1 && !chs.empty() &&
                      p8.relax(chs.front()).bases.size() == p8.bases.size() + 1;
            c.check(ok, "relaxation did not add exactly one basis");
        }
        // Delta-Y and Y-Delta round-trip with the expected rank shift
        {
            BasisMatroid m = catalog("M(K4)");
            bool ok = true;
            for (std::uint16_t T = firstSubsetMask(3); T; T = nextSubsetMask(T, m.n)) {
                if (!(isTriangle(m, T) && isCoindependent(m, T))) continue;
                BasisMatroid y = deltaY(m, T);
                ok = ok && y.r == m.r + 1 && y.n == m.n && isTriad(y, T) && y.indep(T);
                ok = ok && wyeDelta(y, T) == m;
            }
            c.check(ok, "deltaY/wyeDelta round-trip failed on M(K4)");
        }
        // cached minor oracle agrees with the naive one on small catalog pairs
        {
            MinorCache cache;
            std::vector<std::string> small;
            for (const auto& nm : catalogNames())
                if (nm != "U(r,n)" && catalog(nm).n <= 8) small.push_back(nm);
            bool ok = true;
            for (const auto& a : small)
                for (const auto& b : small) {
                    BasisMatroid ma = catalog(a), mb = catalog(b);
                    if (mb.n > ma.n) continue;
                    ok = ok && hasMinorIso(ma, mb, &cache) == hasMinorNaive(ma, mb);
                }
            c.check(ok, "cached and naive minor oracles disagree");
        }
        // isomorph filter is deterministic under permuted input and varied g
        {
            std::vector<MemberRecord> seeds = resolveSeeds(ClassSpec::builtin("dyadic"));
            std::vector<MemberRecord> input;
            std::mt19937 rng(17);
            for (int copy = 0; copy < 12; ++copy)
                for (const auto& s : seeds) input.push_back(s);
            std::vector<std::string> outs;
            for (int g : {3, 127}) {
                std::shuffle(input.begin(), input.end(), rng);
                auto dir = store.scratchDir("accept", "det" + std::to_string(g));
                std::filesystem::remove_all(dir);
                IsoFilterSink<MemberRecord> sink(dir, g, 5);
                for (const auto& r : input) sink.add(r);
                std::string flat;
                for (const auto& r : sink.finish()) flat += r.serialize() + "\n";
                outs.push_back(flat);
            }
            c.check(outs[0] == outs[1] && std::count(outs[0].begin(), outs[0].end(), '\n') == 9,
                    "isomorph filter output depends on input order or group count");
        }
        // splice stream equals the dual closure of the pair-deletable
        // extension stream at n <= 10
        {
            ClassSpec spec = ClassSpec::builtin("dyadic");
            for (int k = smallestSeedSize(spec); k <= 9; ++k) generateLevel(spec, k, store, opt);
            bool ok = true;
            for (int n : {9, 10}) {
                auto splices = spliceCandidates(spec, n, store, opt);
                auto exts = extensionCandidates(spec, n, store, opt);
                auto prevIdx = levelIndex(store, spec.name, n - 1);
                auto grandIdx = levelIndex(store, spec.name, n - 2);
                IsoIndex expect;
                std::size_t expectCount = 0;
                auto push = [&](const BasisMatroid& m) {
                    if (isoMember(m, expect)) return;
                    expect.emplace(invariantKey(m).h, m);
                    ++expectCount;
                };
                for (const auto& cand : exts) {
                    bool pairDel = false;
                    for (int x = 0; x < cand.m.n && !pairDel; ++x) {
                        auto dx = cand.m.deleteElem(x);
                        if (!dx.is3Connected() || !isoMember(dx, prevIdx)) continue;
                        for (int y = x + 1; y < cand.m.n && !pairDel; ++y) {
                            auto dy = cand.m.deleteElem(y);
                            if (!dy.is3Connected() || !isoMember(dy, prevIdx)) continue;
                            auto dxy = dx.deleteElem(y - 1);
                            pairDel = dxy.is3Connected() && isoMember(dxy, grandIdx);
                        }
                    }
                    if (pairDel) {
                        push(cand.m);
                        push(cand.m.dual());
                    }
                }
                ok = ok && !splices.empty() && splices.size() == expectCount;
                for (const auto& s : splices) ok = ok && isoMember(s.m, expect);
            }
            c.check(ok, "splice stream differs from pair-deletable extension stream");
        }
        // fast confinement matches exact confinement on every instance n <= 9
        {
            bool ok = true;
            for (const char* cls : {"dyadic", "2regular"}) {
                ClassSpec spec = ClassSpec::builtin(cls);
                LevelStore fastStore{store.scratchDir("accept", std::string("fast-") + cls)};
                EngineOptions fopt = opt;
                fopt.fastConfinement = true;
                for (int n = smallestSeedSize(spec); n <= 9; ++n) {
                    generateLevel(spec, n, store, opt);
                    generateLevel(spec, n, fastStore, fopt);
                    auto a = store.readLevel(spec.name, n);
                    auto b = fastStore.readLevel(spec.name, n);
                    ok = ok && a.size() == b.size();
                    for (std::size_t i = 0; ok && i < a.size(); ++i)
                        ok = ok && a[i].serialize() == b[i].serialize();
                }
            }
            c.check(ok, "fast confinement diverges from exact confinement");
        }
    });

    run(2, "dyadic generation counts", [&](Criterion& c) {
        ClassSpec spec = ClassSpec::builtin("dyadic");
        auto t0 = Clock::now();
        checkCounts(c, spec, store, {kDyadicTable.begin(), kDyadicTable.find(12)}, opt);
        c.budget(secsSince(t0), 1800, "n<=11");
        auto t1 = Clock::now();
        checkCounts(c, spec, store, {{12, kDyadicTable.at(12)}}, opt);
        c.budget(secsSince(t1), 14400, "n=12");
    });

    run(3, "2-regular generation counts", [&](Criterion& c) {
        ClassSpec spec = ClassSpec::builtin("2regular");
        auto t0 = Clock::now();
        checkCounts(c, spec, store, {kTwoRegTable.begin(), kTwoRegTable.find(11)}, opt);
        c.budget(secsSince(t0), 3600, "n<=10");
        checkCounts(c, spec, store, {{11, kTwoRegTable.at(11)}}, opt);
    });

    run(4, "dyadic excluded minors to n=12", [&](Criterion& c) {
        ClassSpec spec = ClassSpec::builtin("dyadic");
        auto rep = excludedMinors(spec, 12, store, opt);
        c.check(rep.base.allPass, "a base excluded minor failed verification");
        for (const auto& [n, want] : kDyadicFinds) {
            std::vector<std::string> got;
            if (auto it = rep.foundAt.find(n); it != rep.foundAt.end()) got = it->second;
            if (got != want) {
                std::string s = "n=" + std::to_string(n) + " discoveries:";
                for (const auto& g : got) s += " " + g;
                c.check(false, s);
            }
        }
        c.check(rep.all.size() == spec.baseExcluded.size() + 3,
                "excluded-minor list has " + std::to_string(rep.all.size()) + " entries");
        for (const auto& e : rep.all)
            if (e.name == "T8" || e.name == "N1" || e.name == "N2") {
                found.emplace(e.name, e.m);
                c.check(deltaYClosure(e.m).size() == 1, "|Delta(" + e.name + ")| != 1");
                c.check(isSelfDual(e.m), e.name + " is not self-dual");
            }
        c.check(found.size() == 3, "missing discoveries among T8, N1, N2");
        if (auto it = found.find("T8"); it != found.end())
            c.check(it->second.n == 8 && it->second.r == 4, "T8 has wrong size or rank");
        if (auto it = found.find("N1"); it != found.end())
            c.check(it->second.n == 10 && it->second.r == 5, "N1 has wrong size or rank");
        if (auto it = found.find("N2"); it != found.end())
            c.check(it->second.n == 12 && it->second.r == 6, "N2 has wrong size or rank");
        // Delta-closure sizes listed for the base classes
        c.check(deltaYClosure(catalog("U(2,5)")).size() == 2, "|Delta(U(2,5))| != 2");
        c.check(deltaYClosure(catalog("F7")).size() == 2, "|Delta(F7)| != 2");
        c.check(deltaYClosure(catalog("AG23-e")).size() == 3, "|Delta(AG23-e)| != 3");
    });

    run(5, "2-regular excluded minors", [&](Criterion& c) {
        ClassSpec spec = ClassSpec::builtin("2regular");
        auto base = verifyBaseExcluded(spec);
        c.check(base.lines.size() == 17,
                "base list has " + std::to_string(base.lines.size()) + " entries");
        for (const auto& l : base.lines)
            c.check(l.notMember && l.minorsOk, l.name + " failed verification");
        auto rep = excludedMinors(spec, 10, store, opt);
        for (int n : {9, 10}) {
            auto it = rep.foundAt.find(n);
            c.check(it == rep.foundAt.end() || it->second.empty(),
                    "sieve reports a discovery at n=" + std::to_string(n));
        }
        c.check(rep.all.size() == spec.baseExcluded.size(), "excluded list grew below n=11");
    });

    run(6, "catalog cross-checks", [&](Criterion& c) {
        auto t0 = Clock::now();
        BasisMatroid n3 = catalog("N3"), n4 = catalog("N4");
        c.check(n3.n == 14 && n3.r == 7, "N3 is not rank-7 on 14 elements");
        c.check(n3.is3Connected(), "N3 is not 3-connected");
        c.check(isSelfDual(n3), "N3 is not self-dual");
        MinorCache cache(500000);
        ClassSpec spec = ClassSpec::builtin("dyadic");
        for (const auto& nm : spec.baseExcluded)
            c.check(!hasMinorIso(n3, catalog(nm), &cache), "N3 has a " + nm + " minor");
        c.check(found.size() == 3, "criterion 4 discoveries unavailable for the N3 check");
        for (const auto& [nm, m] : found)
            c.check(!hasMinorIso(n3, m, &cache), "N3 has a " + nm + " minor");
        c.check(n4.n == 16 && n4.r == 8, "N4 is not rank-8 on 16 elements");
        bool disjoint = true;
        try {
            detail::disjointCHPair(n4);
        } catch (const MfError&) {
            disjoint = false;
        }
        c.check(disjoint, "N4 has no disjoint circuit-hyperplane pair");
        Field f73 = Field::gf(73);
        for (const char* nm : {"F7=", "TQ8", "P8-"}) {
            LinearRep a = applyHom(k2Representation(nm), f73, {15});
            c.check(isIsomorphic(matroidOf(a), catalog(nm)),
                    std::string(nm) + ": evaluated matrix is not isomorphic");
        }
        c.budget(secsSince(t0), 600, "cross-checks");
    });

    int passed = 0;
    for (const auto& r : results) passed += r.ok;
    std::sort(results.begin(), results.end(),
              [](const Criterion& a, const Criterion& b) { return a.id < b.id; });
    std::cout << "----\n";
    for (const auto& r : results)
        std::cout << (r.ok ? "PASS" : "FAIL") << "  criterion " << r.id << ": " << r.label << "\n";
    std::cout << "acceptance: " << passed << "/" << results.size() << " criteria passed\n";
    return passed == static_cast<int>(results.size()) ? 0 : 1;
}
