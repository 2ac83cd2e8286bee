#pragma once

// Named matroids. Most entries are built from fixed small constructions;
// a few (T8, N1, N2) are discovered by the search and registered at runtime.

#include <map>
#include <mutex>
#include <string>
#include <vector>

#include "minorforge/deltawye.hpp"
#include "minorforge/linrep.hpp"
#include "minorforge/zpoly.hpp"

namespace minorforge {

inline BasisMatroid makeUniform(int r, int n) {
    require(0 <= r && r <= n && n <= kMaxGround, "makeUniform: bad parameters");
    std::vector<std::uint16_t> bases;
    for (std::uint16_t v = firstSubsetMask(r); v; v = nextSubsetMask(v, n)) bases.push_back(v);
    if (r == 0) bases.push_back(0);
    return BasisMatroid::fromBases(n, r, bases);
}

namespace detail {

inline BasisMatroid repMatroid(std::uint32_t q, int r, int c, std::vector<int> vals) {
    Field f = Field::gf(q);
    std::vector<int> rows(r), cols(c);
    for (int i = 0; i < r; ++i) rows[i] = i;
    for (int j = 0; j < c; ++j) cols[j] = r + j;
    std::vector<Fel> a(vals.size());
    for (std::size_t i = 0; i < vals.size(); ++i) a[i] = f.fromInt(vals[i]);
    return matroidOf(LinearRep(f, rows, cols, a));
}

inline BasisMatroid fano() {
    return repMatroid(2, 3, 4, {0, 1, 1, 1, 1, 0, 1, 1, 1, 1, 0, 1});
}

inline BasisMatroid mk4() { return repMatroid(2, 3, 3, {1, 1, 0, 1, 0, 1, 0, 1, 1}); }

// first circuit-hyperplane in ascending mask order
inline std::uint16_t firstCH(const BasisMatroid& m) {
    auto chs = m.circuitHyperplanes();
    require(!chs.empty(), "firstCH: none");
    return chs.front();
}

inline BasisMatroid ag23() {
    // points (1, x, y) over GF(3), element 3x+y
    std::vector<std::uint16_t> bases;
    auto det = [](int i, int j, int k) {
        int x1 = i / 3, y1 = i % 3, x2 = j / 3, y2 = j % 3, x3 = k / 3, y3 = k % 3;
        int d = (x2 * y3 - x3 * y2) - (x1 * y3 - x3 * y1) + (x1 * y2 - x2 * y1);
        return ((d % 3) + 3) % 3;
    };
    for (int i = 0; i < 9; ++i)
        for (int j = i + 1; j < 9; ++j)
            for (int k = j + 1; k < 9; ++k)
                if (det(i, j, k) != 0)
                    bases.push_back(static_cast<std::uint16_t>((1 << i) | (1 << j) | (1 << k)));
    return BasisMatroid::fromBases(9, 3, bases);
}

inline BasisMatroid ag23me() { return ag23().deleteElem(8); }

inline BasisMatroid ag23meDeltaY() {
    BasisMatroid m = ag23me();
    for (std::uint16_t t = firstSubsetMask(3); t; t = nextSubsetMask(t, m.n))
        if (isTriangle(m, t) && isCoindependent(m, t)) return deltaY(m, t);
    throw MfError("catalog: no coindependent triangle in AG23-e");
}

inline BasisMatroid p6() {
    // rank-3 on six elements with exactly one 3-point line
    std::vector<std::uint16_t> bases;
    for (std::uint16_t v = firstSubsetMask(3); v; v = nextSubsetMask(v, 6))
        if (v != 0b111000) bases.push_back(v);
    return BasisMatroid::fromBases(6, 3, bases);
}

inline BasisMatroid p8() {
    return repMatroid(3, 4, 4, {0, 1, 1, -1, 1, 0, 1, 1, 1, 1, 0, 1, -1, 1, 1, 0});
}

// the lexicographically first disjoint pair of circuit-hyperplanes
inline std::pair<std::uint16_t, std::uint16_t> disjointCHPair(const BasisMatroid& m) {
    auto chs = m.circuitHyperplanes();
    for (std::size_t i = 0; i < chs.size(); ++i)
        for (std::size_t j = i + 1; j < chs.size(); ++j)
            if ((chs[i] & chs[j]) == 0) return {chs[i], chs[j]};
    throw MfError("catalog: no disjoint circuit-hyperplane pair");
}

inline BasisMatroid tq8() {
    std::vector<std::uint16_t> circuits;
    for (int i = 0; i < 8; ++i)
        circuits.push_back(static_cast<std::uint16_t>(
            (1 << i) | (1 << ((i + 2) % 8)) | (1 << ((i + 4) % 8)) | (1 << ((i + 5) % 8))));
    std::vector<std::uint16_t> bases;
    for (std::uint16_t v = firstSubsetMask(4); v; v = nextSubsetMask(v, 8)) {
        bool circ = false;
        for (std::uint16_t c : circuits) circ = circ || (v == c);
        if (!circ) bases.push_back(v);
    }
    return BasisMatroid::fromBases(8, 4, bases);
}

inline BasisMatroid n3() {
    return repMatroid(3, 7, 7,
                      {1, 2, 0, 0, 1, 2, 2,
                       2, 2, 2, 0, 1, 1, 2,
                       0, 2, 0, 0, 1, 1, 2,
                       0, 0, 0, 0, 2, 1, 2,
                       1, 1, 1, 2, 1, 2, 2,
                       2, 1, 1, 1, 2, 1, 1,
                       2, 2, 2, 2, 2, 1, 0});
}

inline BasisMatroid n4() {
    return repMatroid(3, 8, 8,
                      {1, 0, 1, 1, 1, 1, 2, 1,
                       0, 2, 0, 0, 1, 0, 0, 1,
                       1, 0, 2, 1, 0, 1, 2, 1,
                       1, 0, 1, 0, 0, 0, 1, 0,
                       1, 1, 0, 0, 0, 1, 0, 0,
                       1, 0, 1, 0, 1, 1, 0, 1,
                       2, 0, 2, 1, 0, 0, 2, 1,
                       1, 1, 1, 0, 0, 1, 1, 0});
}

inline std::map<std::string, BasisMatroid>& catalogRegistry() {
    static std::map<std::string, BasisMatroid> reg;
    return reg;
}

inline std::mutex& catalogMutex() {
    static std::mutex mu;
    return mu;
}

}  // namespace detail

inline void catalogRegister(const std::string& name, const BasisMatroid& m) {
    std::lock_guard<std::mutex> lk(detail::catalogMutex());
    detail::catalogRegistry().insert_or_assign(name, m);
}

inline std::vector<std::string> catalogNames() {
    std::vector<std::string> names = {"AG23",  "AG23-e", "(AG23-e)*", "(AG23-e)^dY",
                                      "F7",    "F7*",    "F7-",       "(F7-)*",
                                      "F7=",   "(F7=)*", "M(K4)",     "P6",
                                      "P8",    "P8-",    "P8=",       "TQ8",
                                      "N3",    "N4",     "U(r,n)"};
    {
        std::lock_guard<std::mutex> lk(detail::catalogMutex());
        for (const auto& [k, v] : detail::catalogRegistry()) names.push_back(k);
    }
    std::sort(names.begin(), names.end());
    names.erase(std::unique(names.begin(), names.end()), names.end());
    return names;
}

inline BasisMatroid catalog(const std::string& name) {
    // trailing * takes the dual; parenthesized inner names are unwrapped
    if (!name.empty() && name.back() == '*') {
        std::string inner = name.substr(0, name.size() - 1);
        if (inner.size() >= 2 && inner.front() == '(' && inner.back() == ')')
            inner = inner.substr(1, inner.size() - 2);
        return catalog(inner).dual();
    }
    if (name.size() >= 4 && name.front() == 'U' && name[1] == '(') {
        int r = -1, n = -1;
        if (std::sscanf(name.c_str(), "U(%d,%d)", &r, &n) == 2 && r >= 0 && n >= r &&
            n <= kMaxGround)
            return makeUniform(r, n);
        throw MfError("catalog: bad uniform name " + name);
    }
    if (name == "F7") return detail::fano();
    if (name == "F7-") {
        BasisMatroid f = detail::fano();
        return f.relax(detail::firstCH(f));
    }
    if (name == "F7=") {
        BasisMatroid f = catalog("F7-");
        return f.relax(detail::firstCH(f));
    }
    if (name == "M(K4)") return detail::mk4();
    if (name == "AG23") return detail::ag23();
    if (name == "AG23-e") return detail::ag23me();
    if (name == "(AG23-e)^dY") return detail::ag23meDeltaY();
    if (name == "P6") return detail::p6();
    if (name == "P8") return detail::p8();
    if (name == "P8-") {
        BasisMatroid p = detail::p8();
        return p.relax(detail::disjointCHPair(p).first);
    }
    if (name == "P8=") {
        BasisMatroid p = detail::p8();
        auto [c1, c2] = detail::disjointCHPair(p);
        return p.relax(c1).relax(c2);
    }
    if (name == "TQ8") return detail::tq8();
    if (name == "N3") return detail::n3();
    if (name == "N4") return detail::n4();
    {
        std::lock_guard<std::mutex> lk(detail::catalogMutex());
        auto it = detail::catalogRegistry().find(name);
        if (it != detail::catalogRegistry().end()) return it->second;
    }
    throw MfError("catalog: unknown name " + name);
}

// Reduced representations over the rank-1 free partial field on alpha
// (variable 0) for the three excluded minors that are representable over all
// fields of size at least four.
inline SymbolicRep k2Representation(const std::string& name) {
    auto C = [](long long v) { return ZPoly::constant(v); };
    ZPoly al = ZPoly::var(0);
    SymbolicRep s;
    if (name == "F7=") {
        s.rowLabels = {0, 1, 2};
        s.colLabels = {3, 4, 5, 6};
        s.entries = {C(1), C(1), C(0), C(1),
                     C(1), C(0), C(1), C(1),
                     C(0), C(1), al,   C(1)};
        return s;
    }
    if (name == "TQ8") {
        s.rowLabels = {0, 1, 2, 3};
        s.colLabels = {4, 5, 6, 7};
        s.entries = {C(0), al,          C(1), C(1),
                     C(1), C(0),        al,   al + C(-1),
                     C(1), al,          C(0), al,
                     C(1), al + C(-1),  C(1), C(0)};
        return s;
    }
    if (name == "P8-") {
        s.rowLabels = {0, 1, 2, 3};
        s.colLabels = {4, 5, 6, 7};
        s.entries = {C(1), C(1),        C(1),        al + C(1),
                     C(1), C(0),        al + C(1),   al + C(1),
                     C(1), C(0) - al,   C(1),        C(0),
                     C(0), C(1),        C(1),        C(1)};
        return s;
    }
    throw MfError("k2Representation: unknown name " + name);
}

}  // namespace minorforge
