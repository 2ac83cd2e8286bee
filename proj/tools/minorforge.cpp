// Command-line front end: proxy search, level generation, excluded-minor
// runs, catalog queries, and ad-hoc matroid checks, all against a store
// directory with per-invocation logs.

#include <CLI11.hpp>

#include <unistd.h>

#include <chrono>
#include <ctime>
#include <iostream>

#include "minorforge/engine.hpp"

using namespace minorforge;

namespace {

constexpr const char* kVersion = "0.1.0";

struct Output {
    std::ofstream log;

    void open(const std::filesystem::path& storeRoot, const std::string& cmd) {
        auto dir = storeRoot / "log";
        std::filesystem::create_directories(dir);
        auto now = std::chrono::system_clock::now();
        std::time_t t = std::chrono::system_clock::to_time_t(now);
        char stamp[32];
        std::strftime(stamp, sizeof stamp, "%Y%m%d-%H%M%S", std::gmtime(&t));
        auto pid = static_cast<long>(::getpid());
        log.open(dir / (std::string(stamp) + "-" + std::to_string(pid) + "-" + cmd + ".log"));
    }

    void line(const std::string& s, bool console = true) {
        if (console) std::cout << s << "\n";
        if (log.is_open()) log << s << "\n";
    }
};

// Registered names from prior runs: every discovery stored under
// <store>/<class>/excluded/n=<k>.txt becomes resolvable again.
void registerStoreDiscoveries(const LevelStore& store) {
    std::error_code ec;
    for (const auto& cls : std::filesystem::directory_iterator(store.root(), ec)) {
        if (!cls.is_directory()) continue;
        auto exdir = cls.path() / "excluded";
        if (!std::filesystem::exists(exdir)) continue;
        for (const auto& f : std::filesystem::directory_iterator(exdir)) {
            int n = 0;
            if (std::sscanf(f.path().filename().string().c_str(), "n=%d.txt", &n) != 1) continue;
            for (const auto& [name, m] : store.readExcluded(cls.path().filename().string(), n))
                catalogRegister(name, m);
        }
    }
}

BasisMatroid resolveMatroid(const std::string& arg) {
    if (arg.rfind("B ", 0) == 0) return BasisMatroid::deserialize(arg);
    return catalog(arg);
}

std::string countsLine(const LevelStore& store, const std::string& cls, int n) {
    auto counts = store.readCounts(cls, n);
    long long tot = 0;
    std::string per;
    for (const auto& [r, c] : counts) {
        tot += c;
        if (!per.empty()) per += " ";
        per += std::to_string(r) + ":" + std::to_string(c);
    }
    return cls + " n=" + std::to_string(n) + " total=" + std::to_string(tot) + " (" + per + ")";
}

const char* verdictName(ProxyVerdict::Kind k) {
    switch (k) {
        case ProxyVerdict::Ok: return "ok";
        case ProxyVerdict::NoHom: return "no ring homomorphism";
        case ProxyVerdict::MinusOneCollapse: return "-1 collapses to 1";
        case ProxyVerdict::NotInjective: return "fundamentals not injective";
        case ProxyVerdict::SumViolation: return "sum violation";
        case ProxyVerdict::ProductViolation: return "product violation";
    }
    return "?";
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"minorforge: exhaustive generation of confined matroid classes"};
    app.require_subcommand(1);

    std::string storePath = "store";
    if (const char* env = std::getenv("MINORFORGE_STORE")) storePath = env;
    EngineOptions opt;
    std::uint32_t primeCeiling = 1000;
    app.add_option("--store", storePath, "store directory (env MINORFORGE_STORE)");
    app.add_option("--jobs", opt.jobs, "worker threads");
    app.add_option("--groups", opt.groups, "isomorph-filter spill groups");
    app.add_option("--batch-size", opt.batchSize, "records buffered before spilling");
    app.add_flag("--fast-confinement", opt.fastConfinement,
                 "restrict cross-ratio checks to the new element");
    app.add_option("--prime-ceiling", primeCeiling, "largest prime tried by proxy find");

    std::string pfName, className, configPath;
    std::uint32_t verifyQ = 0;
    std::vector<std::uint32_t> verifyImages;
    int maxN = 0, huntN = 0;
    std::string argA, argB;
    bool withDuals = false;

    auto* proxy = app.add_subcommand("proxy", "partial-field proxy search");
    auto* proxyFind = proxy->add_subcommand("find", "smallest prime proxy");
    proxyFind->add_option("--pf", pfName, "partial field name")->required();
    auto* proxyVerify = proxy->add_subcommand("verify", "check a specific image assignment");
    proxyVerify->add_option("--pf", pfName, "partial field name")->required();
    proxyVerify->add_option("--q", verifyQ, "field order")->required();
    proxyVerify->add_option("--images", verifyImages, "generator images")->delimiter(',');
    proxy->require_subcommand(1);

    auto addClassOpts = [&](CLI::App* cmd) {
        cmd->add_option("--class", className, "built-in class name");
        cmd->add_option("--config", configPath, "class stanza file");
    };
    auto* generate = app.add_subcommand("generate", "build levels up to --max-n");
    addClassOpts(generate);
    generate->add_option("--max-n", maxN, "largest ground-set size")->required();
    auto* excluded = app.add_subcommand("excluded", "full excluded-minor run");
    addClassOpts(excluded);
    excluded->add_option("--max-n", maxN, "largest ground-set size")->required();
    auto* counts = app.add_subcommand("counts", "rank-by-size table of completed levels");
    addClassOpts(counts);
    auto* cat = app.add_subcommand("catalog", "named matroids");
    auto* catShow = cat->add_subcommand("show", "one matroid in detail");
    catShow->add_option("name", argA, "catalog name")->required();
    cat->add_subcommand("list", "all known names");
    cat->require_subcommand(1);
    auto* iso = app.add_subcommand("iso", "isomorphism test (exit 1 when not isomorphic)");
    iso->add_option("a", argA, "catalog name or B-line")->required();
    iso->add_option("b", argB, "catalog name or B-line")->required();
    auto* minor = app.add_subcommand("minor", "minor test (exit 1 when absent)");
    minor->add_option("m", argA, "host: catalog name or B-line")->required();
    minor->add_option("t", argB, "target: catalog name or B-line")->required();
    auto* deltay = app.add_subcommand("deltay", "Delta-Y closure");
    deltay->add_option("m", argA, "catalog name or B-line")->required();
    deltay->add_flag("--with-duals", withDuals, "close under duality too");
    auto* chhunt = app.add_subcommand("chhunt", "circuit-hyperplane hunt at level --n");
    addClassOpts(chhunt);
    chhunt->add_option("--n", huntN, "level to extend")->required();
    auto* verifyBase = app.add_subcommand("verify-base", "check the base excluded minors");
    addClassOpts(verifyBase);

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp& e) {
        return app.exit(e);
    } catch (const CLI::CallForAllHelp& e) {
        return app.exit(e);
    } catch (const CLI::ParseError& e) {
        std::cerr << e.what() << "\n" << app.help() << "\n";
        return 2;
    }

    CLI::App* sub = app.get_subcommands().front();
    std::string cmd = sub->get_name();
    if (!sub->get_subcommands().empty()) cmd += "-" + sub->get_subcommands().front()->get_name();

    try {
        LevelStore store{storePath};
        Output out;
        out.open(store.root(), cmd);
        out.line("minorforge " + std::string(kVersion) + " " + cmd, false);
        {
            std::string full;
            for (int i = 0; i < argc; ++i) full += std::string(i ? " " : "") + argv[i];
            out.line("argv: " + full, false);
            out.line("store=" + storePath + " jobs=" + std::to_string(opt.jobs) +
                         " groups=" + std::to_string(opt.groups) +
                         " batch=" + std::to_string(opt.batchSize) +
                         " fast_confinement=" + std::to_string(opt.fastConfinement) +
                         " prime_ceiling=" + std::to_string(primeCeiling),
                     false);
        }
        registerStoreDiscoveries(store);

        auto loadClass = [&]() {
            require(className.empty() || configPath.empty(), "give --class or --config, not both");
            if (!configPath.empty()) return ClassSpec::fromFile(configPath);
            require(!className.empty(), "missing --class or --config");
            return ClassSpec::builtin(className);
        };

        if (cmd == "proxy-find") {
            PartialField pf = PartialField::builtin(pfName);
            auto fs = fundamentals(pf);
            auto p = findProxy(pf, fs, primeCeiling);
            if (!p) {
                out.line("no proxy for " + pfName + " below " + std::to_string(primeCeiling));
                return 1;
            }
            out.line(p->str());
            return 0;
        }
        if (cmd == "proxy-verify") {
            PartialField pf = PartialField::builtin(pfName);
            auto fs = fundamentals(pf);
            std::vector<Fel> imgs(verifyImages.begin(), verifyImages.end());
            auto v = verifyProxy(pf, fs, Field::gf(verifyQ), imgs);
            if (v.ok()) {
                out.line(v.proxy.str());
                return 0;
            }
            std::string w;
            for (std::size_t i = 0; i < v.witness.size(); ++i)
                w += (i ? "," : "") + fs.str(v.witness[i]);
            out.line("rejected: " + std::string(verdictName(v.kind)) + (w.empty() ? "" : " on (" + w + ")"));
            return 1;
        }
        if (cmd == "generate") {
            ClassSpec spec = loadClass();
            int n0 = smallestSeedSize(spec);
            require(maxN >= n0, "generate: --max-n is below the smallest seed size");
            for (int n = n0; n <= maxN; ++n) {
                generateLevel(spec, n, store, opt);
                out.line(countsLine(store, spec.name, n));
            }
            return 0;
        }
        if (cmd == "excluded") {
            ClassSpec spec = loadClass();
            auto rep = excludedMinors(spec, maxN, store, opt);
            for (const auto& l : rep.base.lines)
                out.line("base " + l.name + " not_member=" + std::to_string(l.notMember) +
                         " minors_ok=" + std::to_string(l.minorsOk));
            for (const auto& [n, names] : rep.foundAt) {
                std::string joined;
                for (const auto& nm : names) joined += (joined.empty() ? "" : " ") + nm;
                out.line("found n=" + std::to_string(n) + ":" + (joined.empty() ? " none" : " " + joined));
            }
            out.line("excluded minors of " + spec.name + " up to n=" + std::to_string(maxN) + ":");
            for (const auto& e : rep.all)
                out.line(e.name + "\t" + e.m.serialize());
            return 0;
        }
        if (cmd == "counts") {
            ClassSpec spec = loadClass();
            std::istringstream in(countsReport(spec.name, store));
            for (std::string l; std::getline(in, l);) out.line(l);
            return 0;
        }
        if (cmd == "catalog-list") {
            for (const auto& nm : catalogNames()) out.line(nm);
            return 0;
        }
        if (cmd == "catalog-show") {
            BasisMatroid m = catalog(argA);
            out.line("name: " + argA);
            out.line("elements: " + std::to_string(m.n) + "  rank: " + std::to_string(m.r) +
                     "  bases: " + std::to_string(m.bases.size()));
            out.line("3connected: " + std::to_string(m.is3Connected()) +
                     "  selfdual: " + std::to_string(isSelfDual(m)));
            out.line(m.serialize());
            return 0;
        }
        if (cmd == "iso") {
            bool r = isIsomorphic(resolveMatroid(argA), resolveMatroid(argB));
            out.line(r ? "isomorphic" : "not isomorphic");
            return r ? 0 : 1;
        }
        if (cmd == "minor") {
            BasisMatroid host = resolveMatroid(argA), target = resolveMatroid(argB);
            bool r = target.n <= host.n && hasMinorIso(host, target);
            out.line(r ? "minor present" : "minor absent");
            return r ? 0 : 1;
        }
        if (cmd == "deltay") {
            for (const auto& m : deltaYClosure(resolveMatroid(argA), withDuals))
                out.line(m.serialize());
            return 0;
        }
        if (cmd == "chhunt") {
            ClassSpec spec = loadClass();
            auto rep = chHunt(spec, huntN, store, opt);
            out.line("selected=" + std::to_string(rep.selected) +
                     " extended=" + std::to_string(rep.extended) +
                     " candidates=" + std::to_string(rep.candidates) +
                     " survivors=" + std::to_string(rep.survivors.size()));
            for (const auto& m : rep.survivors) out.line(m.serialize());
            return 0;
        }
        if (cmd == "verify-base") {
            ClassSpec spec = loadClass();
            auto rep = verifyBaseExcluded(spec, opt.jobs);
            for (const auto& l : rep.lines)
                out.line(l.name + " not_member=" + std::to_string(l.notMember) +
                         " minors_ok=" + std::to_string(l.minorsOk));
            out.line(rep.allPass ? "all pass" : "FAIL");
            return rep.allPass ? 0 : 1;
        }
        std::cerr << "unhandled subcommand " << cmd << "\n";
        return 2;
    } catch (const MfError& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 1;
    }
}
