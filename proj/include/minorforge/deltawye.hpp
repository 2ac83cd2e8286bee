#pragma once

#include <cstdint>
#include <vector>

#include "minorforge/combi.hpp"
#include "minorforge/common.hpp"
#include "minorforge/iso.hpp"
#include "minorforge/matroid.hpp"

namespace minorforge {

namespace detail {

// M(K4) on local elements a=0, b=1, c=2, a'=3, b'=4, c'=5 with triangles
// {a,b,c}, {a,b',c'}, {a',b,c'}, {a',b',c}; bases are the 16 spanning trees.
inline const BasisMatroid& k4Matroid() {
    static const BasisMatroid k4 = [] {
        std::vector<std::uint16_t> bs;
        for (std::uint16_t s = firstSubsetMask(3); s; s = nextSubsetMask(s, 6))
            if (s != 0x07 && s != 0x31 && s != 0x2A && s != 0x1C) bs.push_back(s);
        return BasisMatroid::fromBases(6, 3, std::move(bs));
    }();
    return k4;
}

}  // namespace detail

inline bool isTriangle(const BasisMatroid& m, std::uint16_t T) {
    if (popcount16(T) != 3 || m.rank(T) != 2) return false;
    std::uint16_t x = T;
    while (x) {
        std::uint16_t bit = static_cast<std::uint16_t>(x & (~x + 1));
        if (!m.indep(static_cast<std::uint16_t>(T ^ bit))) return false;
        x = static_cast<std::uint16_t>(x ^ bit);
    }
    return true;
}

inline bool isCoindependent(const BasisMatroid& m, std::uint16_t T) {
    return m.rank(static_cast<std::uint16_t>(m.full() & ~T)) == m.r;
}

inline bool isTriad(const BasisMatroid& m, std::uint16_t T) { return isTriangle(m.dual(), T); }

// Delta-Y exchange on a coindependent triangle T: generalized parallel
// connection of M with M(K4) along T, delete T, give a',b',c' the labels of
// a,b,c. Result has rank r(M)+1 on the same groundset.
inline BasisMatroid deltaY(const BasisMatroid& m, std::uint16_t T) {
    require(isTriangle(m, T), "deltaY: T is not a triangle");
    require(isCoindependent(m, T), "deltaY: T is not coindependent");
    require(m.n + 3 <= kMaxGround, "deltaY: groundset too large");
    const BasisMatroid& k4 = detail::k4Matroid();

    int t[3], tc;
    maskElems(T, t, tc);
    int n = m.n;
    std::uint32_t pFull = (1u << (n + 3)) - 1;
    std::uint32_t e1 = T | (7u << n);  // K4 copy: t0,t1,t2,a',b',c'
    std::uint32_t e2 = (1u << n) - 1;  // E(M)

    // local <-> global element maps for the K4 copy
    auto toLocal = [&](std::uint32_t X) {
        std::uint16_t l = 0;
        for (int i = 0; i < 3; ++i) {
            if ((X >> t[i]) & 1) l |= static_cast<std::uint16_t>(1u << i);
            if ((X >> (n + i)) & 1) l |= static_cast<std::uint16_t>(1u << (3 + i));
        }
        return l;
    };
    auto fromLocal = [&](std::uint16_t l) {
        std::uint32_t X = 0;
        for (int i = 0; i < 3; ++i) {
            if ((l >> i) & 1) X |= 1u << t[i];
            if ((l >> (3 + i)) & 1) X |= 1u << (n + i);
        }
        return X;
    };

    // closure in the parallel connection: fixpoint of the two local closures
    auto clP = [&](std::uint32_t X) {
        for (;;) {
            std::uint32_t nx = X;
            nx |= fromLocal(k4.closure(toLocal(X & e1)));
            nx |= m.closure(static_cast<std::uint16_t>(X & e2));
            if (nx == X) return X;
            X = nx;
        }
    };
    auto rkP = [&](std::uint32_t X) {
        std::uint32_t I = 0;
        int rI = 0;
        std::uint32_t C = clP(0);
        for (int e = 0; e < n + 3; ++e) {
            if (!((X >> e) & 1)) continue;
            if ((C >> e) & 1) continue;
            I |= 1u << e;
            ++rI;
            C = clP(I);
        }
        return rI;
    };

    std::uint32_t ground = pFull & ~static_cast<std::uint32_t>(T);  // P \ T
    require(rkP(ground) == m.r + 1, "deltaY: unexpected rank of result");
    int ge[kMaxGround], gc = 0;
    for (int e = 0; e < n + 3; ++e)
        if ((ground >> e) & 1) ge[gc++] = e;
    // relabel: elements of E(M)\T keep their labels; a'->t0, b'->t1, c'->t2
    int relab[kMaxGround + 3];
    for (int e = 0; e < n; ++e) relab[e] = e;
    for (int i = 0; i < 3; ++i) relab[n + i] = t[i];

    std::vector<std::uint16_t> nb;
    int nr = m.r + 1;
    for (std::uint16_t s = firstSubsetMask(nr); s; s = nextSubsetMask(s, gc)) {
        std::uint32_t X = 0;
        for (int i = 0; i < gc; ++i)
            if ((s >> i) & 1) X |= 1u << ge[i];
        if (rkP(X) != nr) continue;
        std::uint16_t mask = 0;
        for (int i = 0; i < gc; ++i)
            if ((s >> i) & 1) mask |= static_cast<std::uint16_t>(1u << relab[ge[i]]);
        nb.push_back(mask);
    }
    return BasisMatroid::fromBases(n, nr, std::move(nb));
}

inline BasisMatroid wyeDelta(const BasisMatroid& m, std::uint16_t T) {
    require(isTriad(m, T), "wyeDelta: T is not a triad");
    require(m.indep(T), "wyeDelta: T is not independent");
    return deltaY(m.dual(), T).dual();
}

// Delta(M): closure under deltaY on coindependent triangles and wyeDelta on
// independent triads, up to isomorphism. withDuals additionally closes under
// duality (the Delta^(*) variant).
inline std::vector<BasisMatroid> deltaYClosure(const BasisMatroid& m, bool withDuals = false) {
    std::vector<BasisMatroid> out;
    std::vector<InvariantKey> keys;
    auto add = [&](const BasisMatroid& x) {
        InvariantKey k = invariantKey(x);
        for (std::size_t i = 0; i < out.size(); ++i)
            if (keys[i] == k && isIsomorphic(out[i], x)) return false;
        out.push_back(x);
        keys.push_back(k);
        return true;
    };
    add(m);
    for (std::size_t head = 0; head < out.size(); ++head) {
        BasisMatroid cur = out[head];
        for (std::uint16_t T = firstSubsetMask(3); T; T = nextSubsetMask(T, cur.n)) {
            if (isTriangle(cur, T) && isCoindependent(cur, T)) add(deltaY(cur, T));
            if (isTriad(cur, T) && cur.indep(T)) add(wyeDelta(cur, T));
        }
        if (withDuals) add(cur.dual());
    }
    return out;
}

}  // namespace minorforge
