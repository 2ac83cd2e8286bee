#pragma once

#include <algorithm>
#include <array>
#include <cstdint>
#include <utility>
#include <vector>

#include "minorforge/common.hpp"
#include "minorforge/matroid.hpp"

namespace minorforge {

// Label-independent 64-bit fingerprint. Equal keys are necessary (not
// sufficient) for isomorphism; the engine buckets by key and settles ties
// with isIsomorphic.
struct InvariantKey {
    std::uint64_t h = 0;
    bool operator==(const InvariantKey& o) const { return h == o.h; }
    bool operator!=(const InvariantKey& o) const { return h != o.h; }
    bool operator<(const InvariantKey& o) const { return h < o.h; }
};

namespace detail {

struct IsoCounts {
    int c1[kMaxGround];                 // # bases through e
    int c2[kMaxGround][kMaxGround];     // # bases through {e,f}
    std::uint64_t col[kMaxGround];      // refined element colors
};

inline void buildIsoCounts(const BasisMatroid& m, IsoCounts& ic) {
    for (int i = 0; i < m.n; ++i) {
        ic.c1[i] = 0;
        for (int j = 0; j < m.n; ++j) ic.c2[i][j] = 0;
    }
    int el[kMaxGround], cnt;
    for (std::uint16_t b : m.bases) {
        maskElems(b, el, cnt);
        for (int i = 0; i < cnt; ++i) {
            ++ic.c1[el[i]];
            for (int j = i + 1; j < cnt; ++j) {
                ++ic.c2[el[i]][el[j]];
                ++ic.c2[el[j]][el[i]];
            }
        }
    }
    // colors start as c1 and refine until the induced partition stabilizes
    for (int e = 0; e < m.n; ++e) ic.col[e] = static_cast<std::uint64_t>(ic.c1[e]);
    auto partitionOf = [&](std::array<int, kMaxGround>& part) {
        part.fill(0);
        std::array<std::uint64_t, kMaxGround> u;
        std::copy(ic.col, ic.col + m.n, u.begin());
        std::sort(u.begin(), u.begin() + m.n);
        auto end = std::unique(u.begin(), u.begin() + m.n);
        for (int e = 0; e < m.n; ++e)
            part[static_cast<std::size_t>(e)] =
                static_cast<int>(std::lower_bound(u.begin(), end, ic.col[e]) - u.begin());
    };
    std::array<int, kMaxGround> prev, cur;
    partitionOf(prev);
    for (int round = 0; round < m.n + 2; ++round) {
        std::uint64_t nc[kMaxGround];
        for (int e = 0; e < m.n; ++e) {
            std::array<std::pair<std::uint64_t, int>, kMaxGround> nb;
            int k = 0;
            for (int f = 0; f < m.n; ++f)
                if (f != e) nb[static_cast<std::size_t>(k++)] = {ic.col[f], ic.c2[e][f]};
            std::sort(nb.begin(), nb.begin() + k);
            Fnv h;
            h.u64(ic.col[e]);
            for (int i = 0; i < k; ++i) {
                h.u64(nb[static_cast<std::size_t>(i)].first);
                h.u32(static_cast<std::uint32_t>(nb[static_cast<std::size_t>(i)].second));
            }
            nc[e] = h.h;
        }
        std::copy(nc, nc + m.n, ic.col);
        partitionOf(cur);
        if (cur == prev) break;
        prev = cur;
    }
}

}  // namespace detail

inline InvariantKey invariantKey(const BasisMatroid& m) {
    detail::IsoCounts ic;
    detail::buildIsoCounts(m, ic);
    Fnv h;
    h.u32(static_cast<std::uint32_t>(m.n));
    h.u32(static_cast<std::uint32_t>(m.r));
    h.u32(static_cast<std::uint32_t>(m.bases.size()));
    std::array<std::uint64_t, kMaxGround> cols;
    std::copy(ic.col, ic.col + m.n, cols.begin());
    std::sort(cols.begin(), cols.begin() + m.n);
    for (int i = 0; i < m.n; ++i) h.u64(cols[static_cast<std::size_t>(i)]);
    return {h.h};
}

namespace detail {

struct IsoSearch {
    const BasisMatroid* a;
    const BasisMatroid* b;
    IsoCounts ca, cb;
    int order[kMaxGround];   // a-elements, most constrained first
    int map[kMaxGround];     // a-element -> b-element
    std::uint16_t used = 0;

    bool leafCheck() const {
        for (std::uint16_t bm : a->bases) {
            std::uint16_t img = 0;
            std::uint16_t m = bm;
            while (m) {
                int e = std::countr_zero(m);
                m = static_cast<std::uint16_t>(m & (m - 1));
                img |= static_cast<std::uint16_t>(1u << map[e]);
            }
            if (!b->isBasis(img)) return false;
        }
        return true;
    }

    bool extend(int depth) {
        if (depth == a->n) return leafCheck();
        int e = order[depth];
        for (int f = 0; f < b->n; ++f) {
            if ((used >> f) & 1) continue;
            if (cb.col[f] != ca.col[e] || cb.c1[f] != ca.c1[e]) continue;
            bool ok = true;
            for (int d = 0; d < depth && ok; ++d)
                ok = ca.c2[e][order[d]] == cb.c2[f][map[order[d]]];
            if (!ok) continue;
            map[e] = f;
            used |= static_cast<std::uint16_t>(1u << f);
            if (extend(depth + 1)) return true;
            used &= static_cast<std::uint16_t>(~(1u << f));
        }
        return false;
    }
};

}  // namespace detail

inline bool isIsomorphic(const BasisMatroid& a, const BasisMatroid& b,
                         std::vector<int>* witness = nullptr) {
    if (a.n != b.n || a.r != b.r || a.bases.size() != b.bases.size()) return false;
    if (a.bases == b.bases && !witness) return true;
    detail::IsoSearch s;
    s.a = &a;
    s.b = &b;
    detail::buildIsoCounts(a, s.ca);
    detail::buildIsoCounts(b, s.cb);
    std::array<std::uint64_t, kMaxGround> sa, sb;
    std::copy(s.ca.col, s.ca.col + a.n, sa.begin());
    std::copy(s.cb.col, s.cb.col + b.n, sb.begin());
    std::sort(sa.begin(), sa.begin() + a.n);
    std::sort(sb.begin(), sb.begin() + b.n);
    if (!std::equal(sa.begin(), sa.begin() + a.n, sb.begin())) return false;
    // rarer colors first
    int classSize[kMaxGround];
    for (int e = 0; e < a.n; ++e) {
        classSize[e] = 0;
        for (int f = 0; f < a.n; ++f)
            if (s.ca.col[f] == s.ca.col[e]) ++classSize[e];
    }
    for (int i = 0; i < a.n; ++i) s.order[i] = i;
    std::sort(s.order, s.order + a.n, [&](int x, int y) {
        if (classSize[x] != classSize[y]) return classSize[x] < classSize[y];
        if (s.ca.col[x] != s.ca.col[y]) return s.ca.col[x] < s.ca.col[y];
        return x < y;
    });
    if (!s.extend(0)) return false;
    if (witness) witness->assign(s.map, s.map + a.n);
    return true;
}

inline bool isSelfDual(const BasisMatroid& m) { return isIsomorphic(m, m.dual()); }

}  // namespace minorforge
