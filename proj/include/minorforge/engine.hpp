#pragma once

// Search pipeline: level-by-level generation of the 3-connected members of a
// confined class, batched isomorph filtering, extension and splice candidate
// streams, the excluded-minor sieve, and the circuit-hyperplane hunt.

#include <atomic>
#include <cstdio>
#include <functional>
#include <mutex>
#include <set>
#include <thread>
#include <unordered_map>

#include "minorforge/catalog.hpp"
#include "minorforge/deltawye.hpp"
#include "minorforge/minorcheck.hpp"
#include "minorforge/pfield.hpp"
#include "minorforge/store.hpp"

namespace minorforge {

struct EngineOptions {
    int jobs = 1;
    int groups = 127;
    std::size_t batchSize = 100000;
    bool fastConfinement = false;
    std::size_t cacheCap = 500000;  // minor-cache entries; 0 = unbounded
};

namespace detail {

template <class Fn>
inline void parallelFor(std::size_t count, int jobs, Fn&& fn) {
    if (jobs <= 1 || count <= 1) {
        for (std::size_t i = 0; i < count; ++i) fn(i);
        return;
    }
    std::atomic<std::size_t> next{0};
    std::exception_ptr err;
    std::mutex errMu;
    auto worker = [&] {
        for (;;) {
            std::size_t i = next.fetch_add(1);
            if (i >= count) return;
            try {
                fn(i);
            } catch (...) {
                std::lock_guard<std::mutex> lk(errMu);
                if (!err) err = std::current_exception();
                return;
            }
        }
    };
    std::vector<std::thread> ts;
    std::size_t nj = std::min<std::size_t>(static_cast<std::size_t>(jobs), count);
    for (std::size_t t = 0; t < nj; ++t) ts.emplace_back(worker);
    for (auto& t : ts) t.join();
    if (err) std::rethrow_exception(err);
}

inline std::vector<std::string> splitLines(const std::string& s) {
    std::vector<std::string> out;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t nl = s.find('\n', pos);
        if (nl == std::string::npos) {
            if (pos < s.size()) out.push_back(s.substr(pos));
            break;
        }
        out.push_back(s.substr(pos, nl - pos));
        pos = nl + 1;
    }
    return out;
}

}  // namespace detail

// A class of matroids confined to F over a proxy field, searched through a
// carrier field that holds all its large excluded minors.
struct ClassSpec {
    std::string name;
    PartialField pf;
    Proxy proxy;
    Field carrier;
    int carrierThreshold = 0;
    std::vector<std::string> seeds;
    std::vector<std::string> baseExcluded;

    static ClassSpec make(const std::string& name, const std::string& pfName, std::uint32_t q,
                          const std::vector<Fel>& varImages, std::uint32_t carrierQ, int thresh,
                          std::vector<std::string> seeds, std::vector<std::string> baseEx) {
        ClassSpec s;
        s.name = name;
        s.pf = PartialField::builtin(pfName);
        FundamentalSet fs = fundamentals(s.pf);
        ProxyVerdict v = verifyProxy(s.pf, fs, Field::gf(q), varImages);
        require(v.ok(), "class " + name + ": GF(" + std::to_string(q) + ") is not a proxy for " + pfName);
        s.proxy = v.proxy;
        s.carrier = Field::gf(carrierQ);
        s.carrierThreshold = thresh;
        s.seeds = std::move(seeds);
        s.baseExcluded = std::move(baseEx);
        return s;
    }

    static ClassSpec builtin(const std::string& n) {
        if (n == "dyadic")
            return make("dyadic", "D", 11, {}, 3, 8, {"F7-", "(F7-)*", "P8"},
                        {"U(2,5)", "U(3,5)", "F7", "F7*", "AG23-e", "(AG23-e)*", "(AG23-e)^dY"});
        if (n == "2regular")
            return make("2regular", "U2", 211, {4, 44}, 4, 9, {"U(2,5)", "U(3,5)"},
                        {"U(2,6)", "U(3,6)", "U(4,6)", "P6", "F7", "F7*", "F7-", "(F7-)*", "F7=",
                         "(F7=)*", "AG23-e", "(AG23-e)*", "(AG23-e)^dY", "P8", "P8-", "P8=",
                         "TQ8"});
        throw MfError("unknown class: " + n);
    }

    // stanza file: one `key value...` pair per line, # comments
    static ClassSpec fromFile(const std::string& path) {
        std::istringstream in(detail::readFile(path));
        std::string name, pfName;
        std::uint32_t q = 0, carrierQ = 0;
        int thresh = -1;
        std::vector<Fel> imgs;
        std::vector<std::string> seeds, baseEx;
        for (std::string line; std::getline(in, line);) {
            if (line.empty() || line[0] == '#') continue;
            std::istringstream ls(line);
            std::string key;
            ls >> key;
            if (key == "name") ls >> name;
            else if (key == "pf") ls >> pfName;
            else if (key == "proxy") {
                ls >> q;
                for (std::uint32_t v = 0; ls >> v;) imgs.push_back(static_cast<Fel>(v));
            } else if (key == "carrier") ls >> carrierQ;
            else if (key == "carrier_threshold") ls >> thresh;
            else if (key == "seeds")
                for (std::string s2; ls >> s2;) seeds.push_back(s2);
            else if (key == "base_excluded")
                for (std::string s2; ls >> s2;) baseEx.push_back(s2);
            else throw MfError("config: unknown key " + key);
        }
        require(!name.empty() && !pfName.empty() && q != 0, "config: incomplete stanza");
        require(carrierQ == 3 || carrierQ == 4, "config: carrier must be GF(3) or GF(4)");
        require(thresh > 0 && !seeds.empty(), "config: incomplete stanza");
        return make(name, pfName, q, imgs, carrierQ, thresh, std::move(seeds), std::move(baseEx));
    }
};

// Candidate for the excluded-minor sieve: matroid plus carrier rep only.
struct CandRecord {
    BasisMatroid m;
    LinearRep carr;

    std::string serialize() const { return m.serialize() + "\n" + carr.serialize(); }

    InvariantKey invariant() const { return invariantKey(m); }

    CandRecord normalized() const { return {m, reducedRepWrtBasis(carr, m.bases.at(0))}; }

    static CandRecord fromLines(const std::vector<std::string>& ls) {
        require(ls.size() == 2, "candidate record needs 2 lines");
        BasisMatroid m = BasisMatroid::deserialize(ls[0]);
        std::uint16_t b0 = m.bases.at(0);
        std::vector<int> rl, cl;
        for (int g = 0; g < m.n; ++g) ((b0 >> g) & 1 ? rl : cl).push_back(g);
        LinearRep carr = LinearRep::deserialize(ls[1], rl, cl);
        return {std::move(m), std::move(carr)};
    }
};

// Two-pass batched isomorph filter. Pass 1 spills records to g on-disk groups
// keyed by invariant hash mod g; pass 2 sorts each group by (hash, text) and
// keeps one representative per isomorphism class within equal-hash runs. The
// survivor set and its serializations are independent of insertion order,
// batch size, group count, and thread count.
template <class Rec>
class IsoFilterSink {
  public:
    IsoFilterSink(std::filesystem::path dir, int groups, std::size_t batchSize)
        : dir_(std::move(dir)),
          g_(std::max(groups, 1)),
          batch_(std::max<std::size_t>(batchSize, 1)),
          bufs_(static_cast<std::size_t>(g_)) {
        std::filesystem::remove_all(dir_);
        std::filesystem::create_directories(dir_);
    }

    IsoFilterSink(const IsoFilterSink&) = delete;
    IsoFilterSink& operator=(const IsoFilterSink&) = delete;

    ~IsoFilterSink() {
        std::error_code ec;
        std::filesystem::remove_all(dir_, ec);
    }

    void add(const Rec& rec) {
        std::uint64_t h = invariantKey(rec.m).h;
        char head[18];
        std::snprintf(head, sizeof head, "%016llx", static_cast<unsigned long long>(h));
        std::string block = std::string(head) + "\n" + rec.serialize() + "\n\n";
        std::lock_guard<std::mutex> lk(mu_);
        bufs_[static_cast<std::size_t>(h % static_cast<std::uint64_t>(g_))].push_back(std::move(block));
        ++raw_;
        if (++pending_ >= batch_) flushLocked();
    }

    std::size_t rawCount() const { return raw_; }

    std::vector<Rec> finish(int jobs = 1) {
        {
            std::lock_guard<std::mutex> lk(mu_);
            flushLocked();
        }
        std::vector<std::string> survivors;
        std::mutex smu;
        detail::parallelFor(static_cast<std::size_t>(g_), jobs, [&](std::size_t k) {
            auto path = groupPath(k);
            if (!std::filesystem::exists(path)) return;
            auto lines = detail::splitLines(detail::readFile(path));
            std::vector<std::pair<std::string, std::string>> blocks;  // (hash, record text)
            std::string hash, body;
            for (const auto& line : lines) {
                if (line.empty()) {
                    if (!hash.empty()) blocks.emplace_back(std::move(hash), std::move(body));
                    hash.clear();
                    body.clear();
                } else if (hash.empty()) {
                    hash = line;
                } else {
                    if (!body.empty()) body += '\n';
                    body += line;
                }
            }
            require(hash.empty(), "filter: truncated group file " + std::to_string(k));
            std::sort(blocks.begin(), blocks.end());
            std::vector<std::string> keep;
            std::vector<BasisMatroid> reps;
            for (std::size_t i = 0; i < blocks.size(); ++i) {
                if (i > 0 && blocks[i].first != blocks[i - 1].first) reps.clear();
                if (i > 0 && blocks[i] == blocks[i - 1]) continue;
                auto bl = detail::splitLines(blocks[i].second);
                BasisMatroid m = BasisMatroid::deserialize(bl.at(0));
                bool dup = false;
                for (const auto& r : reps) dup = dup || isIsomorphic(m, r);
                if (dup) continue;
                reps.push_back(std::move(m));
                keep.push_back(blocks[i].second);
            }
            std::lock_guard<std::mutex> lk(smu);
            for (auto& s : keep) survivors.push_back(std::move(s));
        });
        std::sort(survivors.begin(), survivors.end());
        std::vector<Rec> out;
        out.reserve(survivors.size());
        for (const auto& s : survivors) out.push_back(Rec::fromLines(detail::splitLines(s)));
        return out;
    }

  private:
    std::filesystem::path groupPath(std::size_t k) const {
        return dir_ / ("g" + std::to_string(k));
    }

    void flushLocked() {
        for (std::size_t k = 0; k < bufs_.size(); ++k) {
            if (bufs_[k].empty()) continue;
            std::ofstream out(groupPath(k), std::ios::binary | std::ios::app);
            require(bool(out), "filter: cannot open group " + std::to_string(k));
            for (const auto& b : bufs_[k]) out << b;
            require(bool(out), "filter: write failed for group " + std::to_string(k));
            bufs_[k].clear();
        }
        pending_ = 0;
    }

    std::filesystem::path dir_;
    int g_;
    std::size_t batch_;
    std::vector<std::vector<std::string>> bufs_;
    std::size_t pending_ = 0;
    std::size_t raw_ = 0;
    std::mutex mu_;
};

inline std::vector<MemberRecord> resolveSeeds(const ClassSpec& spec) {
    std::vector<MemberRecord> out;
    for (const auto& nm : spec.seeds) {
        BasisMatroid m = catalog(nm);
        auto conf = findConfinedRep(m, spec.proxy.field, spec.proxy.F);
        require(conf.has_value(), "seed " + nm + " has no confined representation");
        auto carr = findRep(m, spec.carrier);
        require(carr.has_value(), "seed " + nm + " is not representable over the carrier");
        out.push_back(MemberRecord{std::move(m), std::move(*conf), std::move(*carr)}.normalized());
    }
    return out;
}

inline int smallestSeedSize(const ClassSpec& spec) {
    int n0 = kMaxGround + 1;
    for (const auto& nm : spec.seeds) n0 = std::min(n0, catalog(nm).n);
    require(n0 <= kMaxGround, "class has no seeds");
    return n0;
}

// All members of the class at n elements: confined simple extensions of the
// (n-1)-members with lockstep carrier columns, closed under duality, plus any
// seed of size n, isomorph-filtered.
inline void generateLevel(const ClassSpec& spec, int n, const LevelStore& store,
                          const EngineOptions& opt = {}) {
    if (store.levelDone(spec.name, n)) return;
    std::vector<MemberRecord> seeds = resolveSeeds(spec);
    int n0 = smallestSeedSize(spec);
    require(n >= n0, "generate: below the smallest seed size");
    std::vector<MemberRecord> parents;
    if (n > n0) parents = store.readLevel(spec.name, n - 1);
    IsoFilterSink<MemberRecord> sink(store.scratchDir(spec.name, "gen" + std::to_string(n)),
                                     opt.groups, opt.batchSize);
    detail::parallelFor(parents.size(), opt.jobs, [&](std::size_t pi) {
        const MemberRecord& p = parents[pi];
        auto cols = confinedSimpleExtensions(p.conf, spec.proxy.F, p.m, opt.fastConfinement);
        if (cols.empty()) return;
        ExtensionContext pctx = ExtensionContext::build(p.conf, p.m);
        ExtensionContext cctx = ExtensionContext::build(p.carr, p.m);
        for (const auto& z : cols) {
            auto pattern = pctx.patternOf(p.conf.f, z);
            BasisMatroid em = extendMatroid(p.m, pctx, pattern);
            auto cz = matchColumn(spec.carrier, cctx, p.m.r, pattern);
            require(cz.has_value(), "generate: no carrier column matches an extension");
            LinearRep extConf = withColumn(p.conf, z, p.m.n);
            LinearRep extCarr = withColumn(p.carr, *cz, p.m.n);
            sink.add(MemberRecord{em, extConf, extCarr}.normalized());
            sink.add(MemberRecord{em.dual(), dualRep(extConf), dualRep(extCarr)}.normalized());
        }
    });
    for (const auto& s : seeds)
        if (s.m.n == n) sink.add(s);
    store.writeLevel(spec.name, n, sink.finish(opt.jobs));
}

// All simple single-element carrier extensions of the (n-1)-members, plus the
// duals of all of them, isomorph-filtered. Every candidate is 3-connected: a
// 2-separation of a simple cosimple extension would cut the 3-connected
// parent below a triad or triangle.
inline std::vector<CandRecord> extensionCandidates(const ClassSpec& spec, int n,
                                                   const LevelStore& store,
                                                   const EngineOptions& opt = {}) {
    require(n >= spec.carrierThreshold, "candidates: below the carrier threshold");
    auto parents = store.readLevel(spec.name, n - 1);
    IsoFilterSink<CandRecord> sink(store.scratchDir(spec.name, "cand" + std::to_string(n)),
                                   opt.groups, opt.batchSize);
    detail::parallelFor(parents.size(), opt.jobs, [&](std::size_t pi) {
        const MemberRecord& p = parents[pi];
        for (const auto& z : allCarrierExtensions(p.carr)) {
            LinearRep ext = withColumn(p.carr, z, p.m.n);
            BasisMatroid em = matroidOf(ext);
            sink.add(CandRecord{em, ext}.normalized());
            sink.add(CandRecord{em.dual(), dualRep(ext)}.normalized());
        }
    });
    return sink.finish(opt.jobs);
}

// Splices: for each (n-2)-member with carrier rep A', columns v whose
// extension matroid is an (n-1)-member form the X-sets; every ordered pair
// (v_e, v_f) of such columns yields [A'|v_e|v_f], kept when simple and
// cosimple. Closed under duality, isomorph-filtered.
inline std::vector<CandRecord> spliceCandidates(const ClassSpec& spec, int n,
                                                const LevelStore& store,
                                                const EngineOptions& opt = {}) {
    auto grand = store.readLevel(spec.name, n - 2);
    auto prev = store.readLevel(spec.name, n - 1);
    std::unordered_multimap<std::uint64_t, const BasisMatroid*> prevIdx;
    for (const auto& r : prev) prevIdx.emplace(invariantKey(r.m).h, &r.m);
    IsoFilterSink<CandRecord> sink(store.scratchDir(spec.name, "splice" + std::to_string(n)),
                                   opt.groups, opt.batchSize);
    detail::parallelFor(grand.size(), opt.jobs, [&](std::size_t gi) {
        const MemberRecord& p = grand[gi];
        std::vector<std::vector<Fel>> valid;
        for (const auto& v : allCarrierExtensions(p.carr)) {
            BasisMatroid m1 = matroidOf(withColumn(p.carr, v, p.m.n));
            auto [lo, hi] = prevIdx.equal_range(invariantKey(m1).h);
            bool member = false;
            for (auto it = lo; it != hi && !member; ++it) member = isIsomorphic(m1, *it->second);
            if (member) valid.push_back(v);
        }
        for (const auto& ve : valid)
            for (const auto& vf : valid) {
                if (&ve == &vf) continue;
                LinearRep ext = withColumn(withColumn(p.carr, ve, p.m.n), vf, p.m.n + 1);
                BasisMatroid em = matroidOf(ext);
                if (!em.isSimple() || !em.isCosimple()) continue;
                sink.add(CandRecord{em, ext}.normalized());
                sink.add(CandRecord{em.dual(), dualRep(ext)}.normalized());
            }
    });
    return sink.finish(opt.jobs);
}

namespace detail {

// Drop members and candidates containing a known excluded minor; close the
// survivors under duality and Delta-Y moves, dedup by isomorphism, and return
// them sorted by serialization.
inline std::vector<BasisMatroid> sieveCore(
    const std::vector<CandRecord>& cands, const std::function<bool(const CandRecord&)>& isMember,
    const std::vector<std::pair<std::string, BasisMatroid>>& known, MinorCache* cache, int jobs) {
    std::vector<BasisMatroid> surv;
    std::mutex mu;
    parallelFor(cands.size(), jobs, [&](std::size_t i) {
        const CandRecord& c = cands[i];
        if (isMember(c)) return;
        for (const auto& [nm, x] : known) {
            (void)nm;
            if (x.n > c.m.n) continue;
            if (hasMinorIso(c.m, x, cache)) return;
        }
        std::lock_guard<std::mutex> lk(mu);
        surv.push_back(c.m);
    });
    std::sort(surv.begin(), surv.end(),
              [](const BasisMatroid& a, const BasisMatroid& b) { return a.serialize() < b.serialize(); });
    std::vector<BasisMatroid> closed;
    auto seen = [&](const BasisMatroid& m) {
        for (const auto& e : closed)
            if (isIsomorphic(e, m)) return true;
        return false;
    };
    std::vector<BasisMatroid> queue = surv;
    while (!queue.empty()) {
        BasisMatroid m = queue.back();
        queue.pop_back();
        if (seen(m)) continue;
        closed.push_back(m);
        queue.push_back(m.dual());
        for (const auto& t : deltaYClosure(m, true)) queue.push_back(t);
    }
    std::sort(closed.begin(), closed.end(),
              [](const BasisMatroid& a, const BasisMatroid& b) { return a.serialize() < b.serialize(); });
    return closed;
}

}  // namespace detail

// The size-n excluded minors reachable from the candidate stream: candidates
// that are not members of level n and contain no smaller excluded minor.
inline std::vector<BasisMatroid> sieveExcluded(
    const ClassSpec& spec, int n, const std::vector<CandRecord>& cands,
    const std::vector<std::pair<std::string, BasisMatroid>>& knownExcluded, const LevelStore& store,
    MinorCache* cache = nullptr, const EngineOptions& opt = {}) {
    std::unordered_multimap<std::uint64_t, BasisMatroid> idx;
    for (const auto& r : store.readLevel(spec.name, n)) idx.emplace(invariantKey(r.m).h, r.m);
    MinorCache local(opt.cacheCap);
    if (!cache) cache = &local;
    auto isMember = [&idx](const CandRecord& c) {
        auto [lo, hi] = idx.equal_range(c.invariant().h);
        for (auto it = lo; it != hi; ++it)
            if (isIsomorphic(c.m, it->second)) return true;
        return false;
    };
    return detail::sieveCore(cands, isMember, knownExcluded, cache, opt.jobs);
}

struct BaseVerifyLine {
    std::string name;
    bool notMember = false;
    bool minorsOk = false;
};

struct BaseVerifyReport {
    std::vector<BaseVerifyLine> lines;
    bool allPass = true;
};

// Each base excluded minor must fail membership while all its single-element
// deletions and contractions pass it.
inline BaseVerifyReport verifyBaseExcluded(const ClassSpec& spec, int jobs = 1) {
    BaseVerifyReport rep;
    rep.lines.resize(spec.baseExcluded.size());
    detail::parallelFor(spec.baseExcluded.size(), jobs, [&](std::size_t i) {
        BasisMatroid b = catalog(spec.baseExcluded[i]);
        BaseVerifyLine line;
        line.name = spec.baseExcluded[i];
        line.notMember = !findConfinedRep(b, spec.proxy.field, spec.proxy.F).has_value();
        line.minorsOk = true;
        for (int e = 0; e < b.n && line.minorsOk; ++e) {
            if (!findConfinedRep(b.deleteElem(e), spec.proxy.field, spec.proxy.F)) line.minorsOk = false;
            if (line.minorsOk &&
                !findConfinedRep(b.contractElem(e), spec.proxy.field, spec.proxy.F))
                line.minorsOk = false;
        }
        rep.lines[i] = line;
    });
    for (const auto& l : rep.lines) rep.allPass = rep.allPass && l.notMember && l.minorsOk;
    return rep;
}

struct ChHuntReport {
    long long selected = 0;    // members with a circuit-hyperplane with independent complement
    long long extended = 0;    // selected members contributing a qualifying extension
    long long candidates = 0;  // filtered candidates with two disjoint circuit-hyperplanes
    std::vector<BasisMatroid> survivors;
};

// Extend level-n members that have a circuit-hyperplane with independent
// complement; keep carrier extensions with two disjoint circuit-hyperplanes;
// sieve with membership decided by findConfinedRep (hinted with the carrier
// basis) since level n+1 need not exist. Known excluded minors of size <= n
// are read from the base list and the store.
inline ChHuntReport chHunt(const ClassSpec& spec, int n, const LevelStore& store,
                           const EngineOptions& opt = {}) {
    auto level = store.readLevel(spec.name, n);
    std::vector<std::pair<std::string, BasisMatroid>> known;
    for (const auto& nm : spec.baseExcluded) known.emplace_back(nm, catalog(nm));
    for (int k = 5; k <= n; ++k)
        if (store.excludedDone(spec.name, k))
            for (const auto& kv : store.readExcluded(spec.name, k)) known.push_back(kv);
    auto hasDisjointCHs = [](const BasisMatroid& m) {
        auto chs = m.circuitHyperplanes();
        for (std::size_t i = 0; i < chs.size(); ++i)
            for (std::size_t j = i + 1; j < chs.size(); ++j)
                if ((chs[i] & chs[j]) == 0) return true;
        return false;
    };
    ChHuntReport rep;
    IsoFilterSink<CandRecord> sink(store.scratchDir(spec.name, "ch" + std::to_string(n)),
                                   opt.groups, opt.batchSize);
    std::atomic<long long> sel{0}, ext{0};
    detail::parallelFor(level.size(), opt.jobs, [&](std::size_t i) {
        const MemberRecord& p = level[i];
        std::uint16_t full = static_cast<std::uint16_t>((1u << p.m.n) - 1);
        bool qualifies = false;
        for (std::uint16_t H : p.m.circuitHyperplanes())
            if (p.m.indep(static_cast<std::uint16_t>(full & ~H))) {
                qualifies = true;
                break;
            }
        if (!qualifies) return;
        ++sel;
        bool any = false;
        for (const auto& z : allCarrierExtensions(p.carr)) {
            LinearRep e2 = withColumn(p.carr, z, p.m.n);
            BasisMatroid em = matroidOf(e2);
            if (!hasDisjointCHs(em)) continue;
            any = true;
            sink.add(CandRecord{em, e2}.normalized());
        }
        if (any) ++ext;
    });
    rep.selected = sel;
    rep.extended = ext;
    auto cands = sink.finish(opt.jobs);
    rep.candidates = static_cast<long long>(cands.size());
    MinorCache cache(opt.cacheCap);
    auto isMember = [&spec](const CandRecord& c) {
        return findConfinedRep(c.m, spec.proxy.field, spec.proxy.F, c.m.bases.at(0)).has_value();
    };
    rep.survivors = detail::sieveCore(cands, isMember, known, &cache, opt.jobs);
    return rep;
}

// Tab-separated rank-by-size table over all completed levels.
inline std::string countsReport(const std::string& cls, const LevelStore& store) {
    auto ns = store.doneLevels(cls);
    require(!ns.empty(), "counts: no completed levels for " + cls);
    std::map<int, std::map<int, long long>> byN;
    std::set<int> ranks;
    for (int n : ns) {
        byN[n] = store.readCounts(cls, n);
        for (const auto& [r, c] : byN[n]) {
            (void)c;
            ranks.insert(r);
        }
    }
    std::ostringstream out;
    out << "rank";
    for (int n : ns) out << "\tn=" << n;
    out << "\n";
    for (int r : ranks) {
        out << r;
        for (int n : ns) {
            auto it = byN[n].find(r);
            out << "\t" << (it == byN[n].end() ? 0 : it->second);
        }
        out << "\n";
    }
    out << "total";
    for (int n : ns) {
        long long sum = 0;
        for (const auto& [r, c] : byN[n]) {
            (void)r;
            sum += c;
        }
        out << "\t" << sum;
    }
    out << "\n";
    return out.str();
}

struct ExcludedEntry {
    std::string name;
    int size = 0;
    BasisMatroid m;
};

struct ExcludedReport {
    BaseVerifyReport base;
    std::vector<ExcludedEntry> all;                   // base list plus discoveries
    std::map<int, std::vector<std::string>> foundAt;  // discoveries per size
};

inline std::string discoveryName(const ClassSpec& spec, int n, int idx) {
    if (spec.name == "dyadic") {
        static const std::map<int, std::string> names = {
            {8, "T8"}, {10, "N1"}, {12, "N2"}, {14, "N3"}, {16, "N4"}};
        auto it = names.find(n);
        if (it != names.end())
            return idx == 0 ? it->second : it->second + "." + std::to_string(idx + 1);
    }
    return spec.name + "-x" + std::to_string(n) + "." + std::to_string(idx + 1);
}

// Full driver: verify the base list, then per size generate the level, build
// the candidate stream (extensions below the splice threshold, splices at and
// above it), and sieve. Discoveries are persisted, named, registered in the
// catalog, and fed back as known excluded minors.
inline ExcludedReport excludedMinors(const ClassSpec& spec, int maxN, const LevelStore& store,
                                     const EngineOptions& opt = {}, bool crossValidate = false) {
    ExcludedReport rep;
    rep.base = verifyBaseExcluded(spec, opt.jobs);
    require(rep.base.allPass, "base excluded-minor verification failed for " + spec.name);
    std::vector<std::pair<std::string, BasisMatroid>> known;
    for (const auto& nm : spec.baseExcluded) {
        BasisMatroid b = catalog(nm);
        rep.all.push_back({nm, b.n, b});
        known.emplace_back(nm, b);
    }
    int n0 = smallestSeedSize(spec);
    int spliceFrom = std::max(13, n0 + 6);
    MinorCache cache(opt.cacheCap);
    for (int n = n0; n <= maxN; ++n) {
        generateLevel(spec, n, store, opt);
        if (n < spec.carrierThreshold) continue;
        std::vector<std::pair<std::string, BasisMatroid>> found;
        if (store.excludedDone(spec.name, n)) {
            found = store.readExcluded(spec.name, n);
        } else {
            auto cands = n >= spliceFrom ? spliceCandidates(spec, n, store, opt)
                                         : extensionCandidates(spec, n, store, opt);
            auto survivors = sieveExcluded(spec, n, cands, known, store, &cache, opt);
            if (crossValidate && n >= spliceFrom) {
                auto other = sieveExcluded(spec, n, extensionCandidates(spec, n, store, opt),
                                           known, store, &cache, opt);
                require(other.size() == survivors.size(),
                        "cross-validation: splice and extension sieves disagree");
                for (std::size_t i = 0; i < survivors.size(); ++i)
                    require(isIsomorphic(survivors[i], other[i]),
                            "cross-validation: splice and extension sieves disagree");
            }
            for (std::size_t i = 0; i < survivors.size(); ++i)
                found.emplace_back(discoveryName(spec, n, static_cast<int>(i)), survivors[i]);
            store.writeExcluded(spec.name, n, found);
        }
        for (const auto& [nm, m] : found) {
            rep.foundAt[n].push_back(nm);
            rep.all.push_back({nm, n, m});
            known.emplace_back(nm, m);
            catalogRegister(nm, m);
        }
    }
    return rep;
}

}  // namespace minorforge
