#pragma once

#include <algorithm>
#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "minorforge/combi.hpp"
#include "minorforge/common.hpp"

namespace minorforge {

// A matroid on ground set {0,...,n-1} stored as the sorted list of its basis
// masks. Rank/independence oracles are lazy 2^n tables.
class BasisMatroid {
public:
    int n = 0;
    int r = 0;
    std::vector<std::uint16_t> bases;  // ascending; numeric order == colex order

    BasisMatroid() = default;

    static BasisMatroid fromBases(int n, int r, std::vector<std::uint16_t> bases) {
        require(n >= 1 && n <= kMaxGround, "fromBases: ground set size out of range");
        require(r >= 0 && r <= n, "fromBases: rank out of range");
        require(!bases.empty(), "fromBases: no bases");
        std::sort(bases.begin(), bases.end());
        bases.erase(std::unique(bases.begin(), bases.end()), bases.end());
        for (std::uint16_t b : bases) {
            require(popcount16(b) == r, "fromBases: basis of wrong size");
            require((b >> n) == 0, "fromBases: basis outside ground set");
        }
        BasisMatroid m;
        m.n = n;
        m.r = r;
        m.bases = std::move(bases);
        return m;
    }

    std::uint16_t full() const { return static_cast<std::uint16_t>((1u << n) - 1); }

    bool isBasis(std::uint16_t mask) const {
        return std::binary_search(bases.begin(), bases.end(), mask);
    }

    // basis-exchange axiom, pairwise; O(|B|^2 r^2 log|B|), for tests and
    // untrusted input only
    bool isValidMatroid() const {
        for (std::uint16_t a : bases)
            for (std::uint16_t b : bases) {
                std::uint16_t onlyA = a & ~b;
                if (!onlyA) continue;
                for (int x = 0; x < n; ++x) {
                    if (!((onlyA >> x) & 1)) continue;
                    std::uint16_t base = a ^ static_cast<std::uint16_t>(1u << x);
                    bool ok = false;
                    std::uint16_t onlyB = b & ~a;
                    for (int y = 0; y < n && !ok; ++y)
                        if ((onlyB >> y) & 1)
                            ok = isBasis(base | static_cast<std::uint16_t>(1u << y));
                    if (!ok) return false;
                }
            }
        return true;
    }

    // --- rank oracle ---------------------------------------------------

    int rank(std::uint16_t X) const {
        ensureTables();
        return rk[X];
    }

    bool indep(std::uint16_t X) const {
        ensureTables();
        return (ind[X >> 6] >> (X & 63)) & 1;
    }

    std::uint16_t closure(std::uint16_t X) const {
        ensureTables();
        std::uint16_t c = X;
        int rx = rk[X];
        for (int e = 0; e < n; ++e) {
            std::uint16_t b = static_cast<std::uint16_t>(1u << e);
            if (!(X & b) && rk[X | b] == rx) c |= b;
        }
        return c;
    }

    // --- duality and minors --------------------------------------------

    BasisMatroid dual() const {
        std::vector<std::uint16_t> db;
        db.reserve(bases.size());
        std::uint16_t f = full();
        for (std::uint16_t b : bases) db.push_back(static_cast<std::uint16_t>(f ^ b));
        std::sort(db.begin(), db.end());
        BasisMatroid m;
        m.n = n;
        m.r = n - r;
        m.bases = std::move(db);
        return m;
    }

    BasisMatroid deleteElem(int e) const {
        require(e >= 0 && e < n, "deleteElem: out of range");
        std::uint16_t bit = static_cast<std::uint16_t>(1u << e);
        std::vector<std::uint16_t> nb;
        for (std::uint16_t b : bases)
            if (!(b & bit)) nb.push_back(dropBit(b, e));
        BasisMatroid m;
        m.n = n - 1;
        if (nb.empty()) {  // e is a coloop
            for (std::uint16_t b : bases) nb.push_back(dropBit(static_cast<std::uint16_t>(b ^ bit), e));
            std::sort(nb.begin(), nb.end());
            nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
            m.r = r - 1;
        } else {
            m.r = r;
        }
        m.bases = std::move(nb);
        return m;
    }

    BasisMatroid contractElem(int e) const {
        require(e >= 0 && e < n, "contractElem: out of range");
        std::uint16_t bit = static_cast<std::uint16_t>(1u << e);
        std::vector<std::uint16_t> nb;
        for (std::uint16_t b : bases)
            if (b & bit) nb.push_back(dropBit(static_cast<std::uint16_t>(b ^ bit), e));
        BasisMatroid m;
        m.n = n - 1;
        if (nb.empty()) {  // e is a loop; contraction == deletion
            for (std::uint16_t b : bases) nb.push_back(dropBit(b, e));
            m.r = r;
        } else {
            m.r = r - 1;
        }
        std::sort(nb.begin(), nb.end());
        nb.erase(std::unique(nb.begin(), nb.end()), nb.end());
        m.bases = std::move(nb);
        return m;
    }

    // M / con \ del, ground set relabelled order-preservingly
    BasisMatroid minor(std::uint16_t del, std::uint16_t con) const {
        require((del & con) == 0, "minor: delete and contract sets overlap");
        ensureTables();
        std::uint16_t keep = static_cast<std::uint16_t>(full() & ~(del | con));
        int m = popcount16(keep);
        require(m >= 1, "minor: empty ground set");
        int rc = rk[con];
        int nr = rk[static_cast<std::uint16_t>(full() & ~del)] - rc;
        int elems[kMaxGround], cnt = 0;
        maskElems(keep, elems, cnt);
        std::vector<std::uint16_t> nb;
        // Gosper over nr-subsets of the m relabelled elements
        if (nr == 0) {
            nb.push_back(0);
        } else {
            for (std::uint16_t s = firstSubsetMask(nr); s; s = nextSubsetMask(s, m)) {
                std::uint16_t X = 0;
                for (int i = 0; i < m; ++i)
                    if ((s >> i) & 1) X |= static_cast<std::uint16_t>(1u << elems[i]);
                if (rk[X | con] - rc == nr) nb.push_back(s);
            }
        }
        BasisMatroid res;
        res.n = m;
        res.r = nr;
        res.bases = std::move(nb);
        return res;
    }

    BasisMatroid permuted(const std::vector<int>& perm) const {
        require(static_cast<int>(perm.size()) == n, "permuted: wrong size");
        std::vector<std::uint16_t> nb;
        nb.reserve(bases.size());
        for (std::uint16_t b : bases) {
            std::uint16_t x = 0;
            for (int i = 0; i < n; ++i)
                if ((b >> i) & 1) x |= static_cast<std::uint16_t>(1u << perm[static_cast<std::size_t>(i)]);
            nb.push_back(x);
        }
        std::sort(nb.begin(), nb.end());
        BasisMatroid m;
        m.n = n;
        m.r = r;
        m.bases = std::move(nb);
        return m;
    }

    // --- predicates ----------------------------------------------------

    bool isSimple() const {
        ensureTables();
        for (int e = 0; e < n; ++e)
            if (rk[1u << e] != 1) return false;
        for (int e = 0; e < n; ++e)
            for (int f = e + 1; f < n; ++f)
                if (rk[(1u << e) | (1u << f)] != 2) return false;
        return true;
    }

    bool isCosimple() const { return dual().isSimple(); }

    int lambda(std::uint16_t X) const {
        ensureTables();
        return rk[X] + rk[static_cast<std::uint16_t>(full() & ~X)] - r;
    }

    // no 1- or 2-separations
    bool is3Connected() const {
        ensureTables();
        std::uint16_t f = full();
        for (std::uint16_t X = 1; X < f; ++X) {
            if (!(X & 1)) continue;  // fix element 0 on one side
            int a = popcount16(X), b = n - a;
            int mn = a < b ? a : b;
            if (mn < 1) continue;
            int l = rk[X] + rk[static_cast<std::uint16_t>(f ^ X)] - r;
            if (l < 1) return false;
            if (mn >= 2 && l < 2) return false;
        }
        return true;
    }

    bool isConnected() const {
        ensureTables();
        std::uint16_t f = full();
        if (n == 1) return true;
        for (std::uint16_t X = 1; X < f; ++X) {
            if (!(X & 1)) continue;
            if (rk[X] + rk[static_cast<std::uint16_t>(f ^ X)] - r < 1) return false;
        }
        return true;
    }

    // --- circuit-hyperplanes and relaxation ----------------------------

    bool isCircuitHyperplane(std::uint16_t X) const {
        ensureTables();
        if (popcount16(X) != r || rk[X] != r - 1) return false;
        for (int e = 0; e < n; ++e) {
            std::uint16_t b = static_cast<std::uint16_t>(1u << e);
            if (X & b) {
                if (!((ind[(X ^ b) >> 6] >> ((X ^ b) & 63)) & 1)) return false;  // not a circuit
            } else {
                if (rk[X | b] == r - 1) return false;  // not a flat
            }
        }
        return true;
    }

    std::vector<std::uint16_t> circuitHyperplanes() const {
        std::vector<std::uint16_t> out;
        if (r == 0) return out;
        for (std::uint16_t X = firstSubsetMask(r); X; X = nextSubsetMask(X, n))
            if (isCircuitHyperplane(X)) out.push_back(X);
        return out;
    }

    BasisMatroid relax(std::uint16_t ch) const {
        require(isCircuitHyperplane(ch), "relax: not a circuit-hyperplane");
        std::vector<std::uint16_t> nb = bases;
        nb.insert(std::lower_bound(nb.begin(), nb.end(), ch), ch);
        BasisMatroid m;
        m.n = n;
        m.r = r;
        m.bases = std::move(nb);
        return m;
    }

    // --- serialization -------------------------------------------------

    std::vector<std::uint8_t> bitmap() const {
        std::uint32_t total = binom(n, r);
        std::vector<std::uint8_t> bm((total + 7) / 8, 0);
        for (std::uint16_t b : bases) {
            std::uint32_t j = colexIndex(b);
            bm[j >> 3] |= static_cast<std::uint8_t>(1u << (j & 7));
        }
        return bm;
    }

    std::string serialize() const {
        static const char* hex = "0123456789ABCDEF";
        std::string s = "B " + std::to_string(n) + " " + std::to_string(r) + " ";
        for (std::uint8_t byte : bitmap()) {
            s += hex[byte >> 4];
            s += hex[byte & 15];
        }
        return s;
    }

    static BasisMatroid deserialize(const std::string& line) {
        std::istringstream in(line);
        std::string tag, hexs;
        int n = 0, r = 0;
        in >> tag >> n >> r >> hexs;
        require(bool(in) && tag == "B", "deserialize: malformed matroid line");
        require(n >= 1 && n <= kMaxGround && r >= 0 && r <= n, "deserialize: bad dimensions");
        std::uint32_t total = binom(n, r);
        require(hexs.size() == 2 * ((total + 7) / 8), "deserialize: bitmap length mismatch");
        std::vector<std::uint16_t> bs;
        for (std::uint32_t j = 0; j < total; ++j) {
            char c = hexs[(j >> 3) * 2 + ((j & 4) ? 0 : 1)];
            int v = c >= '0' && c <= '9' ? c - '0' : c >= 'A' && c <= 'F' ? c - 'A' + 10 : -1;
            require(v >= 0, "deserialize: bad hex digit");
            if ((v >> (j & 3)) & 1) bs.push_back(colexMask(j, n, r));
        }
        return fromBases(n, r, std::move(bs));
    }

    bool operator==(const BasisMatroid& o) const { return n == o.n && r == o.r && bases == o.bases; }
    bool operator!=(const BasisMatroid& o) const { return !(*this == o); }

private:
    mutable std::vector<std::uint8_t> rk;        // rank of every subset
    mutable std::vector<std::uint64_t> ind;      // independence bitset

    static std::uint16_t dropBit(std::uint16_t mask, int e) {
        std::uint16_t low = static_cast<std::uint16_t>((1u << e) - 1);
        return static_cast<std::uint16_t>((mask & low) | ((mask >> 1) & ~low));
    }

    void ensureTables() const {
        if (!rk.empty()) return;
        std::size_t sz = std::size_t{1} << n;
        ind.assign((sz + 63) / 64, 0);
        for (std::uint16_t b : bases) ind[b >> 6] |= 1ull << (b & 63);
        for (std::size_t X = sz; X-- > 0;) {
            if (!((ind[X >> 6] >> (X & 63)) & 1)) continue;
            std::uint16_t m = static_cast<std::uint16_t>(X);
            while (m) {
                std::uint16_t bit = static_cast<std::uint16_t>(m & (~m + 1));
                std::size_t Y = X ^ bit;
                ind[Y >> 6] |= 1ull << (Y & 63);
                m = static_cast<std::uint16_t>(m ^ bit);
            }
        }
        rk.assign(sz, 0);
        for (std::size_t X = 1; X < sz; ++X) {
            if ((ind[X >> 6] >> (X & 63)) & 1) {
                rk[X] = static_cast<std::uint8_t>(popcount16(static_cast<std::uint16_t>(X)));
            } else {
                std::uint8_t best = 0;
                std::uint16_t m = static_cast<std::uint16_t>(X);
                while (m) {
                    std::uint16_t bit = static_cast<std::uint16_t>(m & (~m + 1));
                    std::uint8_t v = rk[X ^ bit];
                    if (v > best) best = v;
                    m = static_cast<std::uint16_t>(m ^ bit);
                }
                rk[X] = best;
            }
        }
    }
};

}  // namespace minorforge
