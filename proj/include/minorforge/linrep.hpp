#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "minorforge/combi.hpp"
#include "minorforge/common.hpp"
#include "minorforge/field.hpp"
#include "minorforge/matroid.hpp"
#include "minorforge/zpoly.hpp"

namespace minorforge {

// Reduced representation [I | A] given by the X x Y matrix A; rowLabels are
// the basis X, colLabels the cobasis Y, together a partition of 0..n-1.
class LinearRep {
public:
    Field f = Field::gf(2);
    std::vector<int> rowLabels;
    std::vector<int> colLabels;
    std::vector<Fel> a;  // row-major rows() x cols()

    LinearRep() = default;
    LinearRep(Field field, std::vector<int> rl, std::vector<int> cl, std::vector<Fel> entries)
        : f(field), rowLabels(std::move(rl)), colLabels(std::move(cl)), a(std::move(entries)) {
        require(a.size() == rowLabels.size() * colLabels.size(), "LinearRep: entry count mismatch");
    }

    int rows() const { return static_cast<int>(rowLabels.size()); }
    int cols() const { return static_cast<int>(colLabels.size()); }
    int n() const { return rows() + cols(); }

    Fel at(int i, int j) const { return a[static_cast<std::size_t>(i) * colLabels.size() + static_cast<std::size_t>(j)]; }
    Fel& at(int i, int j) { return a[static_cast<std::size_t>(i) * colLabels.size() + static_cast<std::size_t>(j)]; }

    std::string serialize() const {
        std::string s = "L " + std::to_string(f.q) + " " + std::to_string(rows()) + " " + std::to_string(cols());
        for (Fel e : a) s += " " + std::to_string(e);
        return s;
    }

    static LinearRep deserialize(const std::string& line, std::vector<int> rowLabels,
                                 std::vector<int> colLabels) {
        std::istringstream in(line);
        std::string tag;
        std::uint32_t q = 0;
        int r = 0, c = 0;
        in >> tag >> q >> r >> c;
        require(bool(in) && tag == "L", "deserialize: malformed rep line");
        require(r == static_cast<int>(rowLabels.size()) && c == static_cast<int>(colLabels.size()),
                "deserialize: label count mismatch");
        std::vector<Fel> es(static_cast<std::size_t>(r) * static_cast<std::size_t>(c));
        for (auto& e : es) {
            unsigned v = 0;
            in >> v;
            require(bool(in) && v < q, "deserialize: bad entry");
            e = static_cast<Fel>(v);
        }
        return LinearRep(Field::gf(q), std::move(rowLabels), std::move(colLabels), std::move(es));
    }
};

namespace detail {

// D = [I | A] with columns indexed by ground element label; row i is the
// coordinate of rowLabels[i].
struct FullMat {
    Field f = Field::gf(2);
    int r = 0, n = 0;
    std::vector<Fel> d;  // row-major r x n

    Fel at(int i, int g) const { return d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(g)]; }
    Fel& at(int i, int g) { return d[static_cast<std::size_t>(i) * static_cast<std::size_t>(n) + static_cast<std::size_t>(g)]; }

    static FullMat of(const LinearRep& A) {
        FullMat m;
        m.f = A.f;
        m.r = A.rows();
        m.n = A.n();
        m.d.assign(static_cast<std::size_t>(m.r) * static_cast<std::size_t>(m.n), 0);
        std::vector<char> seen(static_cast<std::size_t>(m.n), 0);
        for (int i = 0; i < m.r; ++i) {
            int g = A.rowLabels[static_cast<std::size_t>(i)];
            require(g >= 0 && g < m.n && !seen[static_cast<std::size_t>(g)], "labels do not partition 0..n-1");
            seen[static_cast<std::size_t>(g)] = 1;
            m.at(i, g) = 1;
        }
        for (int j = 0; j < A.cols(); ++j) {
            int g = A.colLabels[static_cast<std::size_t>(j)];
            require(g >= 0 && g < m.n && !seen[static_cast<std::size_t>(g)], "labels do not partition 0..n-1");
            seen[static_cast<std::size_t>(g)] = 1;
            for (int i = 0; i < m.r; ++i) m.at(i, g) = A.at(i, j);
        }
        return m;
    }

    bool subsetNonsingular(std::uint16_t mask) const {
        std::array<Fel, kMaxGround * kMaxGround> w;
        int cols[kMaxGround], cc = 0;
        maskElems(mask, cols, cc);
        for (int i = 0; i < r; ++i)
            for (int j = 0; j < cc; ++j) w[static_cast<std::size_t>(i * cc + j)] = at(i, cols[j]);
        // elimination; mask has r columns
        for (int k = 0; k < cc; ++k) {
            int p = -1;
            for (int i = k; i < r && p < 0; ++i)
                if (w[static_cast<std::size_t>(i * cc + k)] != 0) p = i;
            if (p < 0) return false;
            if (p != k)
                for (int j = k; j < cc; ++j) std::swap(w[static_cast<std::size_t>(p * cc + j)], w[static_cast<std::size_t>(k * cc + j)]);
            Fel inv = f.inv(w[static_cast<std::size_t>(k * cc + k)]);
            for (int i = k + 1; i < r; ++i) {
                Fel m2 = f.mul(w[static_cast<std::size_t>(i * cc + k)], inv);
                if (m2 == 0) continue;
                for (int j = k; j < cc; ++j)
                    w[static_cast<std::size_t>(i * cc + j)] =
                        f.sub(w[static_cast<std::size_t>(i * cc + j)], f.mul(m2, w[static_cast<std::size_t>(k * cc + j)]));
            }
        }
        return true;
    }

    // reduce so that the columns of basisMask form the identity with rows
    // ordered by ascending basis element; throws if the set is dependent
    void reduceToBasis(std::uint16_t basisMask) {
        int bs[kMaxGround], bc = 0;
        maskElems(basisMask, bs, bc);
        require(bc == r, "reduceToBasis: wrong size");
        for (int k = 0; k < r; ++k) {
            int col = bs[k];
            int p = -1;
            for (int i = k; i < r && p < 0; ++i)
                if (at(i, col) != 0) p = i;
            require(p >= 0, "reduceToBasis: dependent set");
            if (p != k)
                for (int g = 0; g < n; ++g) std::swap(at(p, g), at(k, g));
            Fel inv = f.inv(at(k, col));
            if (inv != 1)
                for (int g = 0; g < n; ++g) at(k, g) = f.mul(at(k, g), inv);
            for (int i = 0; i < r; ++i) {
                if (i == k) continue;
                Fel m2 = at(i, col);
                if (m2 == 0) continue;
                for (int g = 0; g < n; ++g) at(i, g) = f.sub(at(i, g), f.mul(m2, at(k, g)));
            }
        }
    }
};

// 256-bit subset of field elements (q <= 256 always holds for our fields
// except GF(65521), which never reaches these paths)
struct FelSet {
    std::uint64_t w[4] = {0, 0, 0, 0};
    void set(Fel v) { w[v >> 6] |= 1ull << (v & 63); }
    bool test(Fel v) const { return (w[v >> 6] >> (v & 63)) & 1; }
    void intersect(const FelSet& o) {
        for (int i = 0; i < 4; ++i) w[i] &= o.w[i];
    }
    bool empty() const { return !(w[0] | w[1] | w[2] | w[3]); }
};

}  // namespace detail

inline BasisMatroid matroidOf(const LinearRep& A) {
    detail::FullMat D = detail::FullMat::of(A);
    int n = D.n, r = D.r;
    require(n <= kMaxGround, "matroidOf: groundset too large");
    std::vector<std::uint16_t> bs;
    if (r == 0) {
        bs.push_back(0);
    } else {
        for (std::uint16_t s = firstSubsetMask(r); s; s = nextSubsetMask(s, n))
            if (D.subsetNonsingular(s)) bs.push_back(s);
    }
    return BasisMatroid::fromBases(n, r, std::move(bs));
}

inline LinearRep reducedRepWrtBasis(const LinearRep& A, std::uint16_t basisMask) {
    detail::FullMat D = detail::FullMat::of(A);
    D.reduceToBasis(basisMask);
    std::vector<int> rl, cl;
    for (int g = 0; g < D.n; ++g)
        ((basisMask >> g) & 1 ? rl : cl).push_back(g);
    std::vector<Fel> es;
    es.reserve(static_cast<std::size_t>(D.r) * cl.size());
    for (int i = 0; i < D.r; ++i)
        for (int g : cl) es.push_back(D.at(i, g));
    return LinearRep(A.f, std::move(rl), std::move(cl), std::move(es));
}

inline LinearRep pivot(const LinearRep& A, int x, int y) {
    int xi = -1, yj = -1;
    for (int i = 0; i < A.rows(); ++i)
        if (A.rowLabels[static_cast<std::size_t>(i)] == x) xi = i;
    for (int j = 0; j < A.cols(); ++j)
        if (A.colLabels[static_cast<std::size_t>(j)] == y) yj = j;
    require(xi >= 0 && yj >= 0, "pivot: labels not found");
    Fel p = A.at(xi, yj);
    require(p != 0, "pivot: zero entry");
    const Field& f = A.f;
    Fel ip = f.inv(p);
    LinearRep B = A;
    B.rowLabels[static_cast<std::size_t>(xi)] = y;
    B.colLabels[static_cast<std::size_t>(yj)] = x;
    for (int i = 0; i < A.rows(); ++i)
        for (int j = 0; j < A.cols(); ++j) {
            if (i == xi && j == yj) B.at(i, j) = ip;
            else if (i == xi) B.at(i, j) = f.mul(A.at(xi, j), ip);
            else if (j == yj) B.at(i, j) = f.neg(f.mul(A.at(i, yj), ip));
            else B.at(i, j) = f.sub(A.at(i, j), f.mul(A.at(i, yj), f.mul(A.at(xi, j), ip)));
        }
    return B;
}

inline LinearRep dualRep(const LinearRep& A) {
    std::vector<Fel> es(A.a.size());
    for (int j = 0; j < A.cols(); ++j)
        for (int i = 0; i < A.rows(); ++i)
            es[static_cast<std::size_t>(j) * static_cast<std::size_t>(A.rows()) + static_cast<std::size_t>(i)] =
                A.f.neg(A.at(i, j));
    return LinearRep(A.f, A.colLabels, A.rowLabels, std::move(es));
}

namespace detail {

// Visit the cross ratios of every all-nonzero 2x2 submatrix of the reduced
// representation w.r.t. every basis. onlyLabel >= 0 restricts to submatrices
// whose row or column set contains that element. Returns false if the
// visitor aborts (visitor returns false to abort).
template <class Visitor>
inline bool scanCrossRatios(const LinearRep& A, const BasisMatroid& m, Visitor&& vis,
                            int onlyLabel = -1) {
    const Field& f = A.f;
    FullMat D0 = FullMat::of(A);
    int n = D0.n, r = D0.r;
    std::vector<int> cl;
    for (std::uint16_t b : m.bases) {
        FullMat D = D0;
        D.reduceToBasis(b);
        cl.clear();
        for (int g = 0; g < n; ++g)
            if (!((b >> g) & 1)) cl.push_back(g);
        int rowOf[kMaxGround];
        {
            int bs[kMaxGround], bc = 0;
            maskElems(b, bs, bc);
            for (int i = 0; i < bc; ++i) rowOf[bs[i]] = i;
        }
        int c = static_cast<int>(cl.size());
        for (int i = 0; i < r; ++i)
            for (int i2 = i + 1; i2 < r; ++i2) {
                bool rowHit = onlyLabel < 0;
                if (!rowHit && ((b >> onlyLabel) & 1))
                    rowHit = rowOf[onlyLabel] == i || rowOf[onlyLabel] == i2;
                for (int j = 0; j < c; ++j) {
                    Fel aa = D.at(i, cl[static_cast<std::size_t>(j)]);
                    Fel cc = D.at(i2, cl[static_cast<std::size_t>(j)]);
                    if (aa == 0 || cc == 0) continue;
                    for (int j2 = j + 1; j2 < c; ++j2) {
                        Fel bb = D.at(i, cl[static_cast<std::size_t>(j2)]);
                        Fel dd = D.at(i2, cl[static_cast<std::size_t>(j2)]);
                        if (bb == 0 || dd == 0) continue;
                        if (!rowHit && cl[static_cast<std::size_t>(j)] != onlyLabel &&
                            cl[static_cast<std::size_t>(j2)] != onlyLabel)
                            continue;
                        Fel ad = f.mul(aa, dd), bc2 = f.mul(bb, cc);
                        Fel ratio = f.mul(ad, f.inv(bc2));
                        if (!vis(ratio)) return false;
                        if (!vis(f.inv(ratio))) return false;
                    }
                }
            }
    }
    return true;
}

inline detail::FelSet confinementSet(const Field& f, const std::vector<Fel>& F) {
    require(f.q <= 256, "confinement only supported over fields of order <= 256");
    detail::FelSet s;
    s.set(f.one());
    for (Fel v : F) {
        require(v != 0 && v < f.q, "confinement set element out of range");
        s.set(v);
    }
    return s;
}

}  // namespace detail

inline std::vector<Fel> crossRatios(const LinearRep& A) {
    BasisMatroid m = matroidOf(A);
    detail::FelSet seen;
    detail::scanCrossRatios(A, m, [&](Fel x) {
        seen.set(x);
        return true;
    });
    std::vector<Fel> out;
    for (std::uint32_t v = 1; v < A.f.q; ++v)
        if (seen.test(static_cast<Fel>(v))) out.push_back(static_cast<Fel>(v));
    return out;
}

inline bool isConfined(const LinearRep& A, const std::vector<Fel>& F, const BasisMatroid& m,
                       bool fastMode = false, int newLabel = -1) {
    detail::FelSet ok = detail::confinementSet(A.f, F);
    return detail::scanCrossRatios(
        A, m, [&](Fel x) { return ok.test(x); }, fastMode ? newLabel : -1);
}

inline bool isConfined(const LinearRep& A, const std::vector<Fel>& F) {
    return isConfined(A, F, matroidOf(A));
}

// --- single-element extension machinery ---------------------------------

// Per-parent data: the independent (r-1)-subsets of the groundset and their
// hyperplane normals in a given representation. A new column z yields the
// basis pattern { I : u_I . z != 0 }, which determines the extension matroid.
struct ExtensionContext {
    std::vector<std::uint16_t> subsets;       // rank-(r-1) subsets of size r-1
    std::vector<std::vector<Fel>> normals;    // one normal per subset

    static ExtensionContext build(const LinearRep& A, const BasisMatroid& m) {
        ExtensionContext ctx;
        detail::FullMat D = detail::FullMat::of(A);
        const Field& f = A.f;
        int r = D.r, n = D.n;
        if (r == 0) return ctx;
        std::array<Fel, kMaxGround * kMaxGround> w;
        for (std::uint16_t s = firstSubsetMask(r - 1); r >= 1 && s; s = nextSubsetMask(s, n)) {
            if (r >= 2 && m.rank(s) != r - 1) continue;
            // solve u^T D[:,s] = 0, unique up to scale
            int cols[kMaxGround], cc = 0;
            maskElems(s, cols, cc);
            // row-reduce the (r-1) x r transpose system
            for (int i = 0; i < cc; ++i)
                for (int k = 0; k < r; ++k) w[static_cast<std::size_t>(i * r + k)] = D.at(k, cols[i]);
            int pivCol[kMaxGround], nr = 0;
            std::uint32_t usedCols = 0;
            for (int i = 0; i < cc; ++i) {
                int pc = -1;
                for (int k = 0; k < r && pc < 0; ++k)
                    if (!((usedCols >> k) & 1) && w[static_cast<std::size_t>(i * r + k)] != 0) pc = k;
                require(pc >= 0, "ExtensionContext: dependent subset");
                usedCols |= 1u << pc;
                pivCol[nr++] = pc;
                Fel inv = f.inv(w[static_cast<std::size_t>(i * r + pc)]);
                for (int k = 0; k < r; ++k) w[static_cast<std::size_t>(i * r + k)] = f.mul(w[static_cast<std::size_t>(i * r + k)], inv);
                for (int i2 = 0; i2 < cc; ++i2) {
                    if (i2 == i) continue;
                    Fel m2 = w[static_cast<std::size_t>(i2 * r + pc)];
                    if (m2 == 0) continue;
                    for (int k = 0; k < r; ++k)
                        w[static_cast<std::size_t>(i2 * r + k)] =
                            f.sub(w[static_cast<std::size_t>(i2 * r + k)], f.mul(m2, w[static_cast<std::size_t>(i * r + k)]));
                }
            }
            int freeCol = -1;
            for (int k = 0; k < r && freeCol < 0; ++k)
                if (!((usedCols >> k) & 1)) freeCol = k;
            std::vector<Fel> u(static_cast<std::size_t>(r), 0);
            u[static_cast<std::size_t>(freeCol)] = 1;
            for (int i = 0; i < cc; ++i)
                u[static_cast<std::size_t>(pivCol[i])] = f.neg(w[static_cast<std::size_t>(i * r + freeCol)]);
            ctx.subsets.push_back(s);
            ctx.normals.push_back(std::move(u));
        }
        return ctx;
    }

    std::vector<std::uint64_t> patternOf(const Field& f, const std::vector<Fel>& z) const {
        std::vector<std::uint64_t> bits((subsets.size() + 63) / 64, 0);
        for (std::size_t i = 0; i < subsets.size(); ++i) {
            Fel acc = 0;
            for (std::size_t k = 0; k < z.size(); ++k)
                acc = f.add(acc, f.mul(normals[i][k], z[k]));
            if (acc != 0) bits[i >> 6] |= 1ull << (i & 63);
        }
        return bits;
    }
};

// extension matroid from the parent's bases plus the new-element bases given
// by a pattern over ctx.subsets; the new element gets label n
inline BasisMatroid extendMatroid(const BasisMatroid& m, const ExtensionContext& ctx,
                                  const std::vector<std::uint64_t>& pattern) {
    std::vector<std::uint16_t> bs = m.bases;
    std::uint16_t nb = static_cast<std::uint16_t>(1u << m.n);
    for (std::size_t i = 0; i < ctx.subsets.size(); ++i)
        if ((pattern[i >> 6] >> (i & 63)) & 1) bs.push_back(static_cast<std::uint16_t>(ctx.subsets[i] | nb));
    return BasisMatroid::fromBases(m.n + 1, m.r, std::move(bs));
}

// find a column over ctx's field reproducing the required basis pattern;
// nullspace of the zero-constraints, then check the nonzero constraints
inline std::optional<std::vector<Fel>> matchColumn(const Field& f, const ExtensionContext& ctx,
                                                   int r, const std::vector<std::uint64_t>& pattern) {
    std::vector<std::vector<Fel>> rowsp;  // row space of zero-normals, reduced
    std::uint32_t pivMask = 0;
    std::vector<int> pivs;
    for (std::size_t i = 0; i < ctx.subsets.size(); ++i) {
        if ((pattern[i >> 6] >> (i & 63)) & 1) continue;
        std::vector<Fel> v = ctx.normals[i];
        for (std::size_t t = 0; t < rowsp.size(); ++t) {
            Fel x = v[static_cast<std::size_t>(pivs[t])];
            if (x == 0) continue;
            for (int k = 0; k < r; ++k) v[static_cast<std::size_t>(k)] = f.sub(v[static_cast<std::size_t>(k)], f.mul(x, rowsp[t][static_cast<std::size_t>(k)]));
        }
        int pc = -1;
        for (int k = 0; k < r && pc < 0; ++k)
            if (v[static_cast<std::size_t>(k)] != 0) pc = k;
        if (pc < 0) continue;
        Fel inv = f.inv(v[static_cast<std::size_t>(pc)]);
        for (int k = 0; k < r; ++k) v[static_cast<std::size_t>(k)] = f.mul(v[static_cast<std::size_t>(k)], inv);
        // back-substitute into existing rows
        for (std::size_t t = 0; t < rowsp.size(); ++t) {
            Fel x = rowsp[t][static_cast<std::size_t>(pc)];
            if (x == 0) continue;
            for (int k = 0; k < r; ++k)
                rowsp[t][static_cast<std::size_t>(k)] = f.sub(rowsp[t][static_cast<std::size_t>(k)], f.mul(x, v[static_cast<std::size_t>(k)]));
        }
        rowsp.push_back(std::move(v));
        pivs.push_back(pc);
        pivMask |= 1u << pc;
        if (static_cast<int>(rowsp.size()) == r) return std::nullopt;  // only z = 0 left
    }
    // nullspace basis: one vector per free coordinate
    std::vector<std::vector<Fel>> ns;
    for (int k = 0; k < r; ++k) {
        if ((pivMask >> k) & 1) continue;
        std::vector<Fel> v(static_cast<std::size_t>(r), 0);
        v[static_cast<std::size_t>(k)] = 1;
        for (std::size_t t = 0; t < rowsp.size(); ++t)
            v[static_cast<std::size_t>(pivs[t])] = f.neg(rowsp[t][static_cast<std::size_t>(k)]);
        ns.push_back(std::move(v));
    }
    int d = static_cast<int>(ns.size());
    if (d == 0) return std::nullopt;
    // enumerate normalized combinations (first nonzero coefficient = 1)
    std::vector<Fel> coef(static_cast<std::size_t>(d), 0), z(static_cast<std::size_t>(r));
    for (int lead = 0; lead < d; ++lead) {
        std::fill(coef.begin(), coef.end(), 0);
        coef[static_cast<std::size_t>(lead)] = 1;
        for (;;) {
            for (int k = 0; k < r; ++k) {
                Fel acc = 0;
                for (int t = lead; t < d; ++t)
                    if (coef[static_cast<std::size_t>(t)] != 0)
                        acc = f.add(acc, f.mul(coef[static_cast<std::size_t>(t)], ns[static_cast<std::size_t>(t)][static_cast<std::size_t>(k)]));
                z[static_cast<std::size_t>(k)] = acc;
            }
            bool ok = true;
            for (std::size_t i = 0; i < ctx.subsets.size() && ok; ++i) {
                if (!((pattern[i >> 6] >> (i & 63)) & 1)) continue;
                Fel acc = 0;
                for (int k = 0; k < r; ++k)
                    acc = f.add(acc, f.mul(ctx.normals[i][static_cast<std::size_t>(k)], z[static_cast<std::size_t>(k)]));
                ok = acc != 0;
            }
            if (ok) return z;
            // next coefficient tuple: positions lead+1..d-1 run over all values
            int t = d - 1;
            while (t > lead && coef[static_cast<std::size_t>(t)] == f.q - 1) {
                coef[static_cast<std::size_t>(t)] = 0;
                --t;
            }
            if (t == lead) break;
            ++coef[static_cast<std::size_t>(t)];
        }
    }
    return std::nullopt;
}

// --- extension generation ------------------------------------------------

// the scaling classes (first nonzero entry 1) of simple extension columns
inline std::vector<std::vector<Fel>> allCarrierExtensions(const LinearRep& A) {
    const Field& f = A.f;
    int r = A.rows(), c = A.cols();
    // normalized existing columns for the parallel test
    std::vector<std::vector<Fel>> existing;
    for (int j = 0; j < c; ++j) {
        std::vector<Fel> v(static_cast<std::size_t>(r));
        Fel lead = 0;
        for (int i = 0; i < r; ++i) {
            v[static_cast<std::size_t>(i)] = A.at(i, j);
            if (lead == 0) lead = v[static_cast<std::size_t>(i)];
        }
        if (lead != 0 && lead != 1) {
            Fel inv = f.inv(lead);
            for (auto& x : v) x = f.mul(x, inv);
        }
        existing.push_back(std::move(v));
    }
    std::vector<std::vector<Fel>> out;
    std::vector<Fel> z(static_cast<std::size_t>(r), 0);
    for (int p = 0; p + 1 < r; ++p) {  // first nonzero at p; need >= 2 nonzeros, so p < r-1
        std::fill(z.begin(), z.end(), 0);
        z[static_cast<std::size_t>(p)] = 1;
        for (;;) {
            int nz = 0;
            for (int i = p; i < r; ++i)
                if (z[static_cast<std::size_t>(i)] != 0) ++nz;
            if (nz >= 2) {
                bool par = false;
                for (const auto& e : existing)
                    if (e == z) {
                        par = true;
                        break;
                    }
                if (!par) out.push_back(z);
            }
            int t = r - 1;
            while (t > p && z[static_cast<std::size_t>(t)] == f.q - 1) {
                z[static_cast<std::size_t>(t)] = 0;
                --t;
            }
            if (t == p) break;
            ++z[static_cast<std::size_t>(t)];
        }
    }
    return out;
}

inline LinearRep withColumn(const LinearRep& A, const std::vector<Fel>& z, int label) {
    std::vector<int> cl = A.colLabels;
    cl.push_back(label);
    std::vector<Fel> es;
    es.reserve(static_cast<std::size_t>(A.rows()) * cl.size());
    for (int i = 0; i < A.rows(); ++i) {
        for (int j = 0; j < A.cols(); ++j) es.push_back(A.at(i, j));
        es.push_back(z[static_cast<std::size_t>(i)]);
    }
    return LinearRep(A.f, A.rowLabels, std::move(cl), std::move(es));
}

// Confined simple single-element extensions of a confined representation.
// Candidate entries are constrained row-by-row: once row i holds a nonzero
// z_i, any later nonzero z_j must, for every existing column with support in
// rows i and j, lie in z_i * (A[j,c]/A[i,c]) * (F u {1}). Survivors get the
// real confinement check on [A|z].
inline std::vector<std::vector<Fel>> confinedSimpleExtensions(const LinearRep& A,
                                                              const std::vector<Fel>& F,
                                                              const BasisMatroid& parent,
                                                              bool fastMode = false) {
    const Field& f = A.f;
    int r = A.rows(), c = A.cols();
    detail::FelSet FU1 = detail::confinementSet(f, F);
    // scaled[v] = v * (F u {1})
    std::vector<detail::FelSet> scaled(f.q);
    for (std::uint32_t v = 1; v < f.q; ++v)
        for (std::uint32_t x = 1; x < f.q; ++x)
            if (FU1.test(static_cast<Fel>(x))) scaled[v].set(f.mul(static_cast<Fel>(v), static_cast<Fel>(x)));
    // unique ratios A[j,c]/A[i,c] per ordered row pair
    std::vector<std::vector<Fel>> ratios(static_cast<std::size_t>(r) * static_cast<std::size_t>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            if (i == j) continue;
            detail::FelSet seen;
            auto& lst = ratios[static_cast<std::size_t>(i * r + j)];
            for (int col = 0; col < c; ++col) {
                Fel ai = A.at(i, col), aj = A.at(j, col);
                if (ai == 0 || aj == 0) continue;
                Fel t = f.mul(aj, f.inv(ai));
                if (!seen.test(t)) {
                    seen.set(t);
                    lst.push_back(t);
                }
            }
        }
    std::vector<std::vector<Fel>> existing;  // normalized columns of [I|A]
    for (int j = 0; j < c; ++j) {
        std::vector<Fel> v(static_cast<std::size_t>(r));
        Fel lead = 0;
        for (int i = 0; i < r; ++i) {
            v[static_cast<std::size_t>(i)] = A.at(i, j);
            if (lead == 0) lead = v[static_cast<std::size_t>(i)];
        }
        if (lead != 0 && lead != 1) {
            Fel inv = f.inv(lead);
            for (auto& x : v) x = f.mul(x, inv);
        }
        existing.push_back(std::move(v));
    }

    ExtensionContext ctx = ExtensionContext::build(A, parent);
    std::vector<std::vector<Fel>> out;
    std::vector<Fel> z(static_cast<std::size_t>(r), 0);
    std::vector<int> nzRows;
    int newLabel = r + c;

    auto leaf = [&]() {
        if (nzRows.size() < 2) return;  // parallel to a unit column or zero
        for (const auto& e : existing)
            if (e == z) return;
        LinearRep ext = withColumn(A, z, newLabel);
        BasisMatroid em = extendMatroid(parent, ctx, ctx.patternOf(f, z));
        if (isConfined(ext, F, em, fastMode, newLabel)) out.push_back(z);
    };

    auto dfs = [&](auto&& self, int row) -> void {
        if (row == r) {
            leaf();
            return;
        }
        z[static_cast<std::size_t>(row)] = 0;
        self(self, row + 1);
        if (nzRows.empty()) {
            z[static_cast<std::size_t>(row)] = 1;  // scaling normalization
            nzRows.push_back(row);
            self(self, row + 1);
            nzRows.pop_back();
        } else {
            detail::FelSet allowed;
            for (int i = 0; i < 4; ++i) allowed.w[i] = ~0ull;
            for (int i : nzRows)
                for (Fel t : ratios[static_cast<std::size_t>(i * r + row)])
                    allowed.intersect(scaled[f.mul(z[static_cast<std::size_t>(i)], t)]);
            for (std::uint32_t v = 1; v < f.q; ++v) {
                if (!allowed.test(static_cast<Fel>(v))) continue;
                z[static_cast<std::size_t>(row)] = static_cast<Fel>(v);
                nzRows.push_back(row);
                self(self, row + 1);
                nzRows.pop_back();
            }
        }
        z[static_cast<std::size_t>(row)] = 0;
    };
    dfs(dfs, 0);
    return out;
}

inline std::vector<std::vector<Fel>> confinedSimpleExtensions(const LinearRep& A,
                                                              const std::vector<Fel>& F,
                                                              bool fastMode = false) {
    return confinedSimpleExtensions(A, F, matroidOf(A), fastMode);
}

// --- representation search ----------------------------------------------

// Backtracking search for an F-confined reduced representation of M over f
// w.r.t. a fixed basis (the colex-first basis unless a hint is given). The
// support is forced by the matroid; a spanning forest of the support
// bipartite graph is normalized to ones; every 2x2 subdeterminant constraint
// is checked as soon as its cells are assigned, and full matroid equality
// plus exact confinement gate the final witness.
inline std::optional<LinearRep> findConfinedRep(const BasisMatroid& M, const Field& f,
                                                const std::vector<Fel>& F,
                                                std::optional<std::uint16_t> basisHint = {}) {
    std::uint16_t B0 = basisHint.value_or(M.bases.empty() ? 0 : M.bases[0]);
    require(M.isBasis(B0), "findConfinedRep: hint is not a basis");
    int r = M.r, n = M.n, c = n - r;
    std::vector<int> rl, cl;
    for (int g = 0; g < n; ++g)
        ((B0 >> g) & 1 ? rl : cl).push_back(g);
    if (r == 0 || c == 0) {
        // empty matrix; trivially representable
        return LinearRep(f, rl, cl, std::vector<Fel>(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0));
    }

    std::vector<char> support(static_cast<std::size_t>(r) * static_cast<std::size_t>(c));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            support[static_cast<std::size_t>(i * c + j)] = M.isBasis(static_cast<std::uint16_t>(
                B0 ^ (1u << rl[static_cast<std::size_t>(i)]) ^ (1u << cl[static_cast<std::size_t>(j)])));

    // spanning forest of the support graph: those cells are fixed to 1
    std::vector<int> uf(static_cast<std::size_t>(r + c));
    for (int i = 0; i < r + c; ++i) uf[static_cast<std::size_t>(i)] = i;
    auto find = [&](int x) {
        while (uf[static_cast<std::size_t>(x)] != x) {
            uf[static_cast<std::size_t>(x)] = uf[static_cast<std::size_t>(uf[static_cast<std::size_t>(x)])];
            x = uf[static_cast<std::size_t>(x)];
        }
        return x;
    };
    std::vector<std::pair<int, int>> freeCells;
    std::vector<Fel> a(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j) {
            if (!support[static_cast<std::size_t>(i * c + j)]) continue;
            int ri = find(i), cj = find(r + j);
            if (ri != cj) {
                uf[static_cast<std::size_t>(ri)] = cj;
                a[static_cast<std::size_t>(i * c + j)] = 1;
            } else {
                freeCells.push_back({i, j});
            }
        }

    detail::FelSet FU1 = detail::confinementSet(f, F);
    // value order: confinement-set values first (witnesses tend to live there)
    std::vector<Fel> valueOrder;
    for (std::uint32_t v = 1; v < f.q; ++v)
        if (FU1.test(static_cast<Fel>(v))) valueOrder.push_back(static_cast<Fel>(v));
    for (std::uint32_t v = 1; v < f.q; ++v)
        if (!FU1.test(static_cast<Fel>(v))) valueOrder.push_back(static_cast<Fel>(v));

    std::vector<char> assigned(static_cast<std::size_t>(r) * static_cast<std::size_t>(c), 0);
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (!support[static_cast<std::size_t>(i * c + j)] || a[static_cast<std::size_t>(i * c + j)] == 1)
                assigned[static_cast<std::size_t>(i * c + j)] = 1;

    // check every 2x2 whose four cells are assigned and that involves (i,j)
    auto checkAt = [&](int i, int j) {
        for (int i2 = 0; i2 < r; ++i2) {
            if (i2 == i) continue;
            for (int j2 = 0; j2 < c; ++j2) {
                if (j2 == j) continue;
                if (!assigned[static_cast<std::size_t>(i2 * c + j)] || !assigned[static_cast<std::size_t>(i * c + j2)] ||
                    !assigned[static_cast<std::size_t>(i2 * c + j2)])
                    continue;
                Fel aa = a[static_cast<std::size_t>(i * c + j)], bb = a[static_cast<std::size_t>(i * c + j2)];
                Fel cc = a[static_cast<std::size_t>(i2 * c + j)], dd = a[static_cast<std::size_t>(i2 * c + j2)];
                Fel det = f.sub(f.mul(aa, dd), f.mul(bb, cc));
                bool wantNonzero = M.isBasis(static_cast<std::uint16_t>(
                    B0 ^ (1u << rl[static_cast<std::size_t>(i)]) ^ (1u << rl[static_cast<std::size_t>(i2)]) ^
                    (1u << cl[static_cast<std::size_t>(j)]) ^ (1u << cl[static_cast<std::size_t>(j2)])));
                if (wantNonzero != (det != 0)) return false;
                if (aa != 0 && bb != 0 && cc != 0 && dd != 0) {
                    Fel ratio = f.mul(f.mul(aa, dd), f.inv(f.mul(bb, cc)));
                    if (!FU1.test(ratio)) return false;
                }
            }
        }
        return true;
    };

    // seed check: forest cells alone can already violate a 2x2
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < c; ++j)
            if (support[static_cast<std::size_t>(i * c + j)] && a[static_cast<std::size_t>(i * c + j)] == 1 &&
                !checkAt(i, j))
                return std::nullopt;

    std::optional<LinearRep> found;
    auto dfs = [&](auto&& self, std::size_t k) -> bool {
        if (k == freeCells.size()) {
            LinearRep cand(f, rl, cl, a);
            BasisMatroid mm = matroidOf(cand);
            if (mm == M && isConfined(cand, F, mm)) {
                found = cand;
                return true;
            }
            return false;
        }
        auto [i, j] = freeCells[k];
        for (Fel v : valueOrder) {
            a[static_cast<std::size_t>(i * c + j)] = v;
            assigned[static_cast<std::size_t>(i * c + j)] = 1;
            if (checkAt(i, j) && self(self, k + 1)) return true;
            assigned[static_cast<std::size_t>(i * c + j)] = 0;
        }
        a[static_cast<std::size_t>(i * c + j)] = 0;
        return false;
    };
    dfs(dfs, 0);
    return found;
}

// unconstrained representation search over a small field: confinement set is
// the whole multiplicative group
inline std::optional<LinearRep> findRep(const BasisMatroid& M, const Field& f,
                                        std::optional<std::uint16_t> basisHint = {}) {
    std::vector<Fel> all;
    for (std::uint32_t v = 2; v < f.q; ++v) all.push_back(static_cast<Fel>(v));
    return findConfinedRep(M, f, all, basisHint);
}

// --- symbolic matrices ---------------------------------------------------

// matrix whose entries are integer polynomials in the partial-field
// indeterminates; applyHom evaluates them in a finite field
struct SymbolicRep {
    std::vector<int> rowLabels;
    std::vector<int> colLabels;
    std::vector<ZPoly> entries;  // row-major
};

inline LinearRep applyHom(const SymbolicRep& S, const Field& f, const std::vector<Fel>& varImages) {
    Fel imgs[ZPoly::kMaxVars] = {0, 0, 0, 0};
    for (std::size_t i = 0; i < varImages.size() && i < ZPoly::kMaxVars; ++i) imgs[i] = varImages[i];
    std::vector<Fel> es;
    es.reserve(S.entries.size());
    for (const ZPoly& p : S.entries) es.push_back(p.eval(f, imgs));
    return LinearRep(f, S.rowLabels, S.colLabels, std::move(es));
}

}  // namespace minorforge
