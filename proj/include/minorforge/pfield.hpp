#pragma once

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minorforge/field.hpp"
#include "minorforge/zpoly.hpp"

namespace minorforge {

enum class PfKind { rationalConstants, quotientRing, freeRational };

// Element of the univariate quotient ring Z[x]/(modulus); coefficients of
// degrees 0..deg(modulus)-1.
struct QRElem {
    std::vector<long long> c;

    bool operator==(const QRElem& o) const { return c == o.c; }
    bool operator<(const QRElem& o) const { return c < o.c; }
};

// A partial-field presentation P = (R, G). The group G always contains -1;
// monomial kinds carry it as a sign, so generator lists never include -1.
// Generators must be pairwise non-associate irreducibles (primes for the
// rational-constants kind) so that sign + exponent vectors are canonical.
class PartialField {
public:
    std::string name;
    PfKind kind = PfKind::freeRational;
    bool minusOneDistinct = true;

    // freeRational
    std::vector<std::string> varNames;
    std::vector<ZPoly> genPolys;

    // rationalConstants
    std::vector<long long> genInts;

    // quotientRing (univariate in x, monic modulus)
    ZPoly modulus;
    std::string qrSymbol = "z";

    int numGens() const {
        switch (kind) {
            case PfKind::rationalConstants: return static_cast<int>(genInts.size());
            case PfKind::freeRational: return static_cast<int>(genPolys.size());
            case PfKind::quotientRing: return 1;
        }
        return 0;
    }
    int numVars() const {
        switch (kind) {
            case PfKind::rationalConstants: return 0;
            case PfKind::quotientRing: return 1;
            case PfKind::freeRational: return static_cast<int>(varNames.size());
        }
        return 0;
    }
    // Names keying the image tuple in proxy serialization.
    std::vector<std::string> imageNames() const {
        switch (kind) {
            case PfKind::rationalConstants: {
                std::vector<std::string> v;
                for (long long g : genInts) v.push_back(std::to_string(g));
                return v;
            }
            case PfKind::quotientRing: return {qrSymbol};
            case PfKind::freeRational: return varNames;
        }
        return {};
    }

    static PartialField builtin(const std::string& n);

    // --- quotient ring arithmetic -------------------------------------
    int qrDeg() const {
        int e[ZPoly::kMaxVars];
        ZPoly::unpack(modulus.terms[0].key, e);
        return e[0];
    }
    QRElem qrConst(long long v) const {
        QRElem r;
        r.c.assign(static_cast<std::size_t>(qrDeg()), 0);
        r.c[0] = v;
        return r;
    }
    QRElem qrX() const {
        QRElem r;
        r.c.assign(static_cast<std::size_t>(qrDeg()), 0);
        if (qrDeg() > 1) r.c[1] = 1;
        return r;
    }
    QRElem qrMul(const QRElem& a, const QRElem& b) const {
        int d = qrDeg();
        std::vector<long long> full(static_cast<std::size_t>(2 * d - 1), 0);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) full[static_cast<std::size_t>(i + j)] += a.c[static_cast<std::size_t>(i)] * b.c[static_cast<std::size_t>(j)];
        // reduce by the monic modulus
        std::vector<long long> m(static_cast<std::size_t>(d + 1), 0);
        for (const auto& t : modulus.terms) {
            int e[ZPoly::kMaxVars];
            ZPoly::unpack(t.key, e);
            m[static_cast<std::size_t>(e[0])] = t.coef;
        }
        require(m[static_cast<std::size_t>(d)] == 1, "PartialField: modulus must be monic");
        for (int i = 2 * d - 2; i >= d; --i) {
            long long c = full[static_cast<std::size_t>(i)];
            if (c == 0) continue;
            for (int j = 0; j <= d; ++j) full[static_cast<std::size_t>(i - d + j)] -= c * m[static_cast<std::size_t>(j)];
        }
        QRElem r;
        r.c.assign(full.begin(), full.begin() + d);
        return r;
    }
    QRElem qrSub(const QRElem& a, const QRElem& b) const {
        QRElem r = a;
        for (std::size_t i = 0; i < r.c.size(); ++i) r.c[i] -= b.c[i];
        return r;
    }
    bool qrIsZero(const QRElem& a) const {
        for (long long v : a.c)
            if (v != 0) return false;
        return true;
    }
    // Unit group as the multiplicative closure of the generators.
    std::vector<QRElem> qrGroup() const {
        std::set<QRElem> g;
        std::vector<QRElem> frontier{qrConst(1), qrConst(-1), qrX()};
        for (auto& e : frontier) g.insert(e);
        int guard = 0;
        while (!frontier.empty()) {
            require(++guard < 64 && g.size() < 4096, "PartialField: unit group closure did not stabilize");
            std::vector<QRElem> next;
            for (const auto& a : frontier) {
                QRElem m = qrMul(a, qrX());
                if (g.insert(m).second) next.push_back(m);
                QRElem n = qrMul(a, qrConst(-1));
                if (g.insert(n).second) next.push_back(n);
            }
            frontier = std::move(next);
        }
        return {g.begin(), g.end()};
    }
};

// Value drawn from F(P): zero, one, or a group element in normal form.
struct PfVal {
    enum Kind { Zero, One, Grp } kind = Zero;
    int sign = 1;               // monomial kinds
    std::vector<int> exps;      // monomial kinds, one slot per generator
    QRElem qr;                  // quotientRing

    bool operator<(const PfVal& o) const {
        if (kind != o.kind) return kind < o.kind;
        if (exps != o.exps) return exps < o.exps;
        if (sign != o.sign) return sign < o.sign;
        return qr < o.qr;
    }
    bool operator==(const PfVal& o) const { return kind == o.kind && sign == o.sign && exps == o.exps && qr == o.qr; }
};

namespace detail {

// Divisibility oracle for a fixed generator list. Linear generators get a
// substitution-based vanishing test so the expensive exact division only
// runs when it will succeed.
class GenDivTester {
public:
    explicit GenDivTester(const std::vector<ZPoly>& gens) : gens_(gens) {
        for (const auto& g : gens_) {
            Test t;
            long long lin[ZPoly::kMaxVars] = {0, 0, 0, 0};
            long long c0 = 0;
            bool linear = true;
            for (const auto& term : g.terms) {
                int e[ZPoly::kMaxVars];
                ZPoly::unpack(term.key, e);
                int deg = e[0] + e[1] + e[2] + e[3];
                if (deg == 0)
                    c0 = term.coef;
                else if (deg == 1) {
                    for (int v = 0; v < ZPoly::kMaxVars; ++v)
                        if (e[v]) lin[v] = term.coef;
                } else
                    linear = false;
            }
            if (linear) {
                int nv = 0, v1 = -1, v2 = -1;
                for (int v = 0; v < ZPoly::kMaxVars; ++v)
                    if (lin[v]) {
                        if (v1 < 0)
                            v1 = v;
                        else
                            v2 = v;
                        ++nv;
                    }
                if (nv == 1 && lin[v1] != 0 && c0 % lin[v1] == 0) {
                    t.kind = Test::ConstSubst;
                    t.v1 = v1;
                    t.c = -c0 / lin[v1];
                } else if (nv == 2 && c0 == 0 && lin[v1] == -lin[v2]) {
                    t.kind = Test::VarSubst;
                    t.v1 = v1;
                    t.v2 = v2;
                }
            }
            tests_.push_back(t);
        }
    }

    // Strip every generator factor from p; true iff what remains is +-1,
    // i.e. p lies in the group generated by the generators and -1.
    bool inGroup(ZPoly p) const {
        if (p.isZero()) return false;
        for (std::size_t i = 0; i < gens_.size(); ++i) {
            for (;;) {
                if (p.isConstant()) break;
                const Test& t = tests_[i];
                if (t.kind == Test::ConstSubst && !p.substConst(t.v1, t.c).isZero()) break;
                if (t.kind == Test::VarSubst && !p.substVar(t.v1, t.v2).isZero()) break;
                auto q = p.divExact(gens_[i]);
                if (!q) break;
                p = *q;
            }
        }
        return p.isConstant() && (p.constantValue() == 1 || p.constantValue() == -1);
    }

private:
    struct Test {
        enum Kind { None, ConstSubst, VarSubst } kind = None;
        int v1 = 0, v2 = 0;
        long long c = 0;
    };
    std::vector<ZPoly> gens_;
    std::vector<Test> tests_;
};

inline bool ratInGroup(Rat v, const std::vector<long long>& gens) {
    if (v.isZero()) return false;
    long long n = v.num < 0 ? -v.num : v.num, d = v.den;
    for (long long g : gens) {
        long long ag = g < 0 ? -g : g;
        if (ag <= 1) continue;
        while (n % ag == 0) n /= ag;
        while (d % ag == 0) d /= ag;
    }
    return n == 1 && d == 1;
}

}  // namespace detail

// F(P) with precomputed ground-truth relations used by proxy verification.
class FundamentalSet {
public:
    PartialField pf;
    std::vector<PfVal> vals;  // vals[0] = 0, vals[1] = 1, rest sorted

    // relations: sumOne[i] bit j <=> vals[i] + vals[j] == 1;
    // prodOne marks sorted index triples with product 1.
    std::vector<std::uint64_t> sumOne;
    std::vector<std::uint64_t> prodOneBits;

    std::size_t size() const { return vals.size(); }

    bool sumIsOne(int i, int j) const { return (sumOne[static_cast<std::size_t>(i)] >> j) & 1; }
    bool prodIsOne(int i, int j, int k) const {
        int a = i, b = j, c = k;
        if (a > b) std::swap(a, b);
        if (b > c) std::swap(b, c);
        if (a > b) std::swap(a, b);
        std::size_t bit = (static_cast<std::size_t>(a) * 64 + static_cast<std::size_t>(b)) * 64 + static_cast<std::size_t>(c);
        return (prodOneBits[bit >> 6] >> (bit & 63)) & 1;
    }

    // phi(vals[i]) for a homomorphism given by generator images.
    Fel eval(int i, const Field& f, const std::vector<Fel>& genImages, const std::vector<Fel>& varImages) const {
        const PfVal& v = vals[static_cast<std::size_t>(i)];
        if (v.kind == PfVal::Zero) return 0;
        if (v.kind == PfVal::One) return 1;
        if (pf.kind == PfKind::quotientRing) {
            Fel acc = 0, x = varImages[0], xp = 1;
            for (std::size_t d = 0; d < v.qr.c.size(); ++d) {
                acc = f.add(acc, f.mul(f.fromInt(v.qr.c[d]), xp));
                xp = f.mul(xp, x);
            }
            return acc;
        }
        Fel acc = v.sign < 0 ? f.neg(1) : f.one();
        for (std::size_t g = 0; g < genImages.size(); ++g) {
            int e = v.exps[g];
            if (e > 0) acc = f.mul(acc, f.powf(genImages[g], static_cast<std::uint32_t>(e)));
            if (e < 0) acc = f.mul(acc, f.powf(f.inv(genImages[g]), static_cast<std::uint32_t>(-e)));
        }
        return acc;
    }

    std::string str(int i) const;

private:
    friend FundamentalSet fundamentals(const PartialField& pf, int boundB);
    void buildRelations();
    bool valSumIsOne(const PfVal& a, const PfVal& b) const;
    bool valProdIsOne(const PfVal& a, const PfVal& b, const PfVal& c) const;
};

inline bool FundamentalSet::valSumIsOne(const PfVal& a, const PfVal& b) const {
    if (a.kind == PfVal::Zero) return b.kind == PfVal::One;
    if (b.kind == PfVal::Zero) return a.kind == PfVal::One;
    if (a.kind == PfVal::One) return b.kind == PfVal::Zero;
    if (b.kind == PfVal::One) return a.kind == PfVal::Zero;
    switch (pf.kind) {
        case PfKind::quotientRing: {
            QRElem s = a.qr;
            for (std::size_t i = 0; i < s.c.size(); ++i) s.c[i] += b.qr.c[i];
            return pf.qrIsZero(pf.qrSub(s, pf.qrConst(1)));
        }
        case PfKind::rationalConstants: {
            Rat va(1), vb(1);
            for (std::size_t g = 0; g < pf.genInts.size(); ++g) {
                for (int e = 0; e < a.exps[g]; ++e) va = va * Rat(pf.genInts[g]);
                for (int e = 0; e > a.exps[g]; --e) va = va * Rat(pf.genInts[g]).inverse();
                for (int e = 0; e < b.exps[g]; ++e) vb = vb * Rat(pf.genInts[g]);
                for (int e = 0; e > b.exps[g]; --e) vb = vb * Rat(pf.genInts[g]).inverse();
            }
            if (a.sign < 0) va = Rat(0) - va;
            if (b.sign < 0) vb = Rat(0) - vb;
            return (va + vb).isOne();
        }
        case PfKind::freeRational: {
            // clear denominators of s*prod g^e + t*prod g^f - 1
            std::vector<int> m(pf.genPolys.size());
            for (std::size_t g = 0; g < m.size(); ++g) m[g] = std::max(std::max(-a.exps[g], -b.exps[g]), 0);
            ZPoly ta = ZPoly::constant(a.sign), tb = ZPoly::constant(b.sign), td = ZPoly::constant(1);
            for (std::size_t g = 0; g < m.size(); ++g) {
                ta = ta * pf.genPolys[g].pow(a.exps[g] + m[g]);
                tb = tb * pf.genPolys[g].pow(b.exps[g] + m[g]);
                td = td * pf.genPolys[g].pow(m[g]);
            }
            return (ta + tb - td).isZero();
        }
    }
    return false;
}

inline bool FundamentalSet::valProdIsOne(const PfVal& a, const PfVal& b, const PfVal& c) const {
    if (a.kind == PfVal::Zero || b.kind == PfVal::Zero || c.kind == PfVal::Zero) return false;
    if (pf.kind == PfKind::quotientRing) {
        auto v = [&](const PfVal& x) { return x.kind == PfVal::One ? pf.qrConst(1) : x.qr; };
        return pf.qrIsZero(pf.qrSub(pf.qrMul(pf.qrMul(v(a), v(b)), v(c)), pf.qrConst(1)));
    }
    int sign = 1;
    std::vector<int> e(static_cast<std::size_t>(pf.numGens()), 0);
    for (const PfVal* x : {&a, &b, &c}) {
        if (x->kind == PfVal::One) continue;
        sign *= x->sign;
        for (std::size_t g = 0; g < e.size(); ++g) e[g] += x->exps[g];
    }
    if (sign != 1) return false;
    for (int v : e)
        if (v != 0) return false;
    return true;
}

inline void FundamentalSet::buildRelations() {
    std::size_t n = vals.size();
    require(n <= 64, "FundamentalSet: more than 64 fundamentals");
    sumOne.assign(n, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = 0; j < n; ++j)
            if (valSumIsOne(vals[i], vals[j])) sumOne[i] |= 1ull << j;
    prodOneBits.assign((64ull * 64 * 64) / 64, 0);
    for (std::size_t i = 0; i < n; ++i)
        for (std::size_t j = i; j < n; ++j)
            for (std::size_t k = j; k < n; ++k)
                if (valProdIsOne(vals[i], vals[j], vals[k])) {
                    std::size_t bit = (i * 64 + j) * 64 + k;
                    prodOneBits[bit >> 6] |= 1ull << (bit & 63);
                }
}

// Enumerate F(P). Monomial kinds scan sign * generator exponents bounded by
// boundB; the quotient-ring kind scans its finite unit group.
inline FundamentalSet fundamentals(const PartialField& pf, int boundB = 3) {
    FundamentalSet fs;
    fs.pf = pf;
    PfVal zero, one;
    zero.kind = PfVal::Zero;
    one.kind = PfVal::One;
    std::vector<PfVal> rest;

    if (pf.kind == PfKind::quotientRing) {
        auto group = pf.qrGroup();
        for (const auto& g : group) {
            QRElem om = pf.qrSub(pf.qrConst(1), g);  // 1 - g
            bool fund = pf.qrIsZero(om);
            if (!fund)
                for (const auto& h : group)
                    if (om == h) {
                        fund = true;
                        break;
                    }
            if (!fund) continue;
            if (g == pf.qrConst(1)) continue;  // recorded as One
            PfVal v;
            v.kind = PfVal::Grp;
            v.qr = g;
            rest.push_back(v);
        }
    } else {
        int g = pf.numGens();
        std::vector<std::vector<ZPoly>> powTab;
        std::optional<detail::GenDivTester> tester;
        if (pf.kind == PfKind::freeRational) {
            tester.emplace(pf.genPolys);
            powTab.resize(static_cast<std::size_t>(g));
            for (int i = 0; i < g; ++i) {
                powTab[static_cast<std::size_t>(i)].push_back(ZPoly::constant(1));
                for (int k = 1; k <= boundB; ++k)
                    powTab[static_cast<std::size_t>(i)].push_back(powTab[static_cast<std::size_t>(i)].back() * pf.genPolys[static_cast<std::size_t>(i)]);
            }
        }
        std::vector<int> e(static_cast<std::size_t>(g), -boundB);
        for (;;) {
            for (int sign : {1, -1}) {
                bool allZero = std::all_of(e.begin(), e.end(), [](int x) { return x == 0; });
                if (allZero && sign == 1) continue;  // the element 1, recorded as One
                bool fund = false;
                if (pf.kind == PfKind::rationalConstants) {
                    Rat p(sign);
                    for (int i = 0; i < g; ++i) {
                        for (int k = 0; k < e[static_cast<std::size_t>(i)]; ++k) p = p * Rat(pf.genInts[static_cast<std::size_t>(i)]);
                        for (int k = 0; k > e[static_cast<std::size_t>(i)]; --k) p = p * Rat(pf.genInts[static_cast<std::size_t>(i)]).inverse();
                    }
                    Rat om = Rat(1) - p;
                    fund = om.isZero() || detail::ratInGroup(om, pf.genInts);
                } else {
                    // P = D - s*N where p = s N / D with positive-exponent parts
                    ZPoly N = ZPoly::constant(sign), D = ZPoly::constant(1);
                    for (int i = 0; i < g; ++i) {
                        int ei = e[static_cast<std::size_t>(i)];
                        if (ei > 0) N = N * powTab[static_cast<std::size_t>(i)][static_cast<std::size_t>(ei)];
                        if (ei < 0) D = D * powTab[static_cast<std::size_t>(i)][static_cast<std::size_t>(-ei)];
                    }
                    ZPoly P = D - N;
                    fund = P.isZero() || tester->inGroup(P);
                }
                if (fund) {
                    PfVal v;
                    v.kind = PfVal::Grp;
                    v.sign = sign;
                    v.exps = e;
                    rest.push_back(v);
                }
            }
            int i = 0;
            while (i < g && e[static_cast<std::size_t>(i)] == boundB) e[static_cast<std::size_t>(i++)] = -boundB;
            if (i == g) break;
            ++e[static_cast<std::size_t>(i)];
        }
    }

    std::sort(rest.begin(), rest.end());
    fs.vals.push_back(zero);
    fs.vals.push_back(one);
    for (auto& v : rest) fs.vals.push_back(std::move(v));
    fs.buildRelations();
    return fs;
}

inline std::string FundamentalSet::str(int i) const {
    const PfVal& v = vals[static_cast<std::size_t>(i)];
    if (v.kind == PfVal::Zero) return "0";
    if (v.kind == PfVal::One) return "1";
    switch (pf.kind) {
        case PfKind::rationalConstants: {
            Rat p(v.sign);
            for (std::size_t g = 0; g < pf.genInts.size(); ++g) {
                for (int k = 0; k < v.exps[g]; ++k) p = p * Rat(pf.genInts[g]);
                for (int k = 0; k > v.exps[g]; --k) p = p * Rat(pf.genInts[g]).inverse();
            }
            return p.str();
        }
        case PfKind::quotientRing: {
            ZPoly p;
            for (std::size_t d = 0; d < v.qr.c.size(); ++d)
                if (v.qr.c[d] != 0) p = p + ZPoly::var(0).pow(static_cast<int>(d)) * ZPoly::constant(v.qr.c[d]);
            return p.str({pf.qrSymbol});
        }
        case PfKind::freeRational: {
            int nf = 0, df = 0;
            for (std::size_t g = 0; g < pf.genPolys.size(); ++g) {
                if (v.exps[g] > 0) ++nf;
                if (v.exps[g] < 0) ++df;
            }
            std::string num, den;
            auto emit = [&](std::string& s, const ZPoly& gp, int e, bool solo) {
                std::string t = gp.str(pf.varNames);
                if (gp.terms.size() > 1 && !(solo && e == 1)) t = "(" + t + ")";
                if (e > 1) t += "^" + std::to_string(e);
                if (!s.empty()) s += "*";
                s += t;
            };
            bool numSolo = v.sign > 0 && df == 0 && nf == 1;
            for (std::size_t g = 0; g < pf.genPolys.size(); ++g) {
                if (v.exps[g] > 0) emit(num, pf.genPolys[g], v.exps[g], numSolo);
                if (v.exps[g] < 0) emit(den, pf.genPolys[g], -v.exps[g], false);
            }
            std::string s = v.sign < 0 ? "-" : "";
            s += num.empty() ? "1" : num;
            if (!den.empty()) s += "/" + (den.find('*') != std::string::npos ? "(" + den + ")" : den);
            return s;
        }
    }
    return "?";
}

// ---------------------------------------------------------------------
// Proxies

struct Proxy {
    std::string pfName;
    Field field;
    std::vector<std::string> imageNames;
    std::vector<Fel> images;   // per imageName
    std::vector<Fel> F;        // phi(F(P)) minus {0,1}, ascending

    std::string str() const {
        std::string s = "pf=" + pfName + " q=" + std::to_string(field.q) + " images=";
        for (std::size_t i = 0; i < images.size(); ++i) {
            if (i) s += ",";
            s += imageNames[i] + "=" + std::to_string(images[i]);
        }
        s += " F=";
        for (std::size_t i = 0; i < F.size(); ++i) {
            if (i) s += ",";
            s += std::to_string(F[i]);
        }
        return s;
    }
};

struct ProxyVerdict {
    enum Kind { Ok, NoHom, MinusOneCollapse, NotInjective, SumViolation, ProductViolation } kind = Ok;
    std::vector<int> witness;  // fundamental indices involved
    Proxy proxy;               // populated when Ok

    bool ok() const { return kind == Ok; }
};

// Generator images induced by an image tuple; nullopt when some generator
// would map to zero (no ring homomorphism).
inline std::optional<std::vector<Fel>> genImages(const PartialField& pf, const Field& f, const std::vector<Fel>& varImages) {
    std::vector<Fel> gi;
    switch (pf.kind) {
        case PfKind::rationalConstants:
            for (long long g : pf.genInts) {
                Fel v = f.fromInt(g);
                if (v == 0) return std::nullopt;
                gi.push_back(v);
            }
            break;
        case PfKind::quotientRing: {
            // the image of x must be a root of the modulus
            Fel img[ZPoly::kMaxVars] = {varImages[0], 0, 0, 0};
            if (pf.modulus.eval(f, img) != 0) return std::nullopt;
            if (varImages[0] == 0) return std::nullopt;
            gi.push_back(varImages[0]);
            break;
        }
        case PfKind::freeRational: {
            Fel img[ZPoly::kMaxVars] = {0, 0, 0, 0};
            for (std::size_t i = 0; i < varImages.size(); ++i) img[i] = varImages[i];
            for (const auto& g : pf.genPolys) {
                Fel v = g.eval(f, img);
                if (v == 0) return std::nullopt;
                gi.push_back(v);
            }
            break;
        }
    }
    return gi;
}

inline ProxyVerdict verifyProxy(const PartialField& pf, const FundamentalSet& fs, const Field& f, const std::vector<Fel>& varImages) {
    ProxyVerdict r;
    if (pf.minusOneDistinct && f.minusOneIsOne()) {
        r.kind = ProxyVerdict::MinusOneCollapse;
        return r;
    }
    auto gi = genImages(pf, f, varImages);
    if (!gi) {
        r.kind = ProxyVerdict::NoHom;
        return r;
    }
    int n = static_cast<int>(fs.size());
    std::vector<Fel> img(static_cast<std::size_t>(n));
    std::vector<int> byImage(f.q, -1);
    for (int i = 0; i < n; ++i) {
        img[static_cast<std::size_t>(i)] = fs.eval(i, f, *gi, varImages);
        int& slot = byImage[img[static_cast<std::size_t>(i)]];
        if (slot >= 0) {
            r.kind = ProxyVerdict::NotInjective;
            r.witness = {slot, i};
            return r;
        }
        slot = i;
    }
    // scan fundamentals in ascending image order so reported witnesses are
    // deterministic
    std::vector<int> order(static_cast<std::size_t>(n));
    for (int i = 0; i < n; ++i) order[static_cast<std::size_t>(i)] = i;
    std::sort(order.begin(), order.end(), [&](int a, int b) { return img[static_cast<std::size_t>(a)] < img[static_cast<std::size_t>(b)]; });

    for (int oi = 0; oi < n; ++oi)
        for (int oj = oi; oj < n; ++oj) {
            int i = order[static_cast<std::size_t>(oi)], j = order[static_cast<std::size_t>(oj)];
            if (f.add(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]) == 1 && !fs.sumIsOne(i, j)) {
                r.kind = ProxyVerdict::SumViolation;
                r.witness = {i, j};
                return r;
            }
        }
    for (int oi = 0; oi < n; ++oi)
        for (int oj = oi; oj < n; ++oj) {
            int i = order[static_cast<std::size_t>(oi)], j = order[static_cast<std::size_t>(oj)];
            Fel pij = f.mul(img[static_cast<std::size_t>(i)], img[static_cast<std::size_t>(j)]);
            if (pij == 0) continue;
            Fel need = f.inv(pij);
            int k = byImage[need];
            if (k < 0) continue;
            // keep triples sorted by image order to scan each once
            if (img[static_cast<std::size_t>(k)] < img[static_cast<std::size_t>(j)]) continue;
            if (!fs.prodIsOne(i, j, k)) {
                r.kind = ProxyVerdict::ProductViolation;
                r.witness = {i, j, k};
                return r;
            }
        }

    r.kind = ProxyVerdict::Ok;
    r.proxy.pfName = pf.name;
    r.proxy.field = f;
    r.proxy.imageNames = pf.imageNames();
    r.proxy.images = varImages;
    if (pf.kind == PfKind::rationalConstants) r.proxy.images = *gi;
    for (int i = 0; i < n; ++i)
        if (img[static_cast<std::size_t>(i)] != 0 && img[static_cast<std::size_t>(i)] != 1) r.proxy.F.push_back(img[static_cast<std::size_t>(i)]);
    std::sort(r.proxy.F.begin(), r.proxy.F.end());
    return r;
}

// Smallest prime proxy: primes ascending, image tuples in lexicographic
// order, first verified assignment wins.
inline std::optional<Proxy> findProxy(const PartialField& pf, const FundamentalSet& fs, std::uint32_t primeCeiling = 1000) {
    std::size_t needed = fs.size() - 2;
    for (std::uint32_t p = 2; p <= primeCeiling; ++p) {
        if (!isPrime(p)) continue;
        if (p < needed + 2) continue;  // injectivity needs q-2 slots outside {0,1}
        Field f = Field::gf(p);
        if (pf.minusOneDistinct && f.minusOneIsOne()) continue;
        switch (pf.kind) {
            case PfKind::rationalConstants: {
                ProxyVerdict v = verifyProxy(pf, fs, f, {});
                if (v.ok()) return v.proxy;
                break;
            }
            case PfKind::quotientRing: {
                for (std::uint32_t t = 0; t < p; ++t) {
                    ProxyVerdict v = verifyProxy(pf, fs, f, {static_cast<Fel>(t)});
                    if (v.ok()) return v.proxy;
                }
                break;
            }
            case PfKind::freeRational: {
                int nv = pf.numVars();
                std::vector<Fel> t(static_cast<std::size_t>(nv), 0);
                for (;;) {
                    ProxyVerdict v = verifyProxy(pf, fs, f, t);
                    if (v.ok()) return v.proxy;
                    int i = nv - 1;
                    while (i >= 0 && t[static_cast<std::size_t>(i)] == p - 1) t[static_cast<std::size_t>(i--)] = 0;
                    if (i < 0) break;
                    ++t[static_cast<std::size_t>(i)];
                }
                break;
            }
        }
    }
    return std::nullopt;
}

// The six associates of p in a field; {0,1} collapses to itself.
inline std::vector<Fel> fieldAssociates(const Field& f, Fel p) {
    if (p == 0 || p == 1) return {0, 1};
    Fel om = f.sub(1, p);  // 1-p, nonzero since p != 1
    std::vector<Fel> a{p, om, f.inv(p), f.inv(om), f.neg(f.div(p, om)), f.neg(f.div(om, p))};
    std::sort(a.begin(), a.end());
    a.erase(std::unique(a.begin(), a.end()), a.end());
    return a;
}

inline bool confinedSetIsAssociateClosed(const Field& f, const std::vector<Fel>& F) {
    std::vector<bool> in(f.q, false);
    for (Fel x : F) in[x] = true;
    for (Fel x : F)
        for (Fel a : fieldAssociates(f, x))
            if (a != 0 && a != 1 && !in[a]) return false;
    return true;
}

// ---------------------------------------------------------------------
// Built-in presentations

inline PartialField PartialField::builtin(const std::string& n) {
    PartialField pf;
    pf.name = n;
    auto a = ZPoly::var(0), b = ZPoly::var(1), one = ZPoly::constant(1);
    if (n == "D") {  // dyadic: (Z[1/2], <-1, 2>)
        pf.kind = PfKind::rationalConstants;
        pf.genInts = {2};
    } else if (n == "S") {  // sixth-roots: (Z[zeta], <zeta>), zeta^2 = zeta - 1
        pf.kind = PfKind::quotientRing;
        pf.modulus = ZPoly::var(0).pow(2) - ZPoly::var(0) + one;
        pf.qrSymbol = "z";
    } else if (n == "U1") {  // near-regular
        pf.kind = PfKind::freeRational;
        pf.varNames = {"a"};
        pf.genPolys = {a, one - a};
    } else if (n == "U2") {  // 2-regular
        pf.kind = PfKind::freeRational;
        pf.varNames = {"a", "b"};
        pf.genPolys = {a, b, one - a, one - b, a - b};
    } else if (n == "K2") {
        pf.kind = PfKind::freeRational;
        pf.varNames = {"a"};
        pf.genPolys = {a - one, a, a + one};
    } else {
        throw MfError("unknown built-in partial field: " + n);
    }
    return pf;
}

}  // namespace minorforge
