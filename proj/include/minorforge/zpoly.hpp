#pragma once

#include <algorithm>
#include <cstdint>
#include <numeric>
#include <optional>
#include <string>
#include <vector>

#include "minorforge/common.hpp"
#include "minorforge/field.hpp"

namespace minorforge {

// Exact rational on int64 (reduced, positive denominator). Magnitudes stay
// tiny here: these are values of partial-field group monomials at small
// exponent bounds.
struct Rat {
    long long num = 0;
    long long den = 1;

    Rat() = default;
    Rat(long long n, long long d = 1) : num(n), den(d) { normalize(); }

    void normalize() {
        require(den != 0, "Rat: zero denominator");
        if (den < 0) {
            num = -num;
            den = -den;
        }
        long long g = std::gcd(num < 0 ? -num : num, den);
        if (g > 1) {
            num /= g;
            den /= g;
        }
        if (num == 0) den = 1;
    }
    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat inverse() const {
        require(num != 0, "Rat: inverse of zero");
        return Rat(den, num);
    }
    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
    bool isZero() const { return num == 0; }
    bool isOne() const { return num == 1 && den == 1; }

    std::string str() const {
        std::string s = std::to_string(num);
        if (den != 1) s += "/" + std::to_string(den);
        return s;
    }
};

// Sparse polynomial over Z in at most 4 variables. Terms are kept sorted by
// packed exponent (variable 0 in the most significant byte), so numeric
// order on keys is lex order on exponent vectors.
class ZPoly {
public:
    static constexpr int kMaxVars = 4;

    struct Term {
        std::uint32_t key;  // exponents packed 8 bits per var, var0 at MSB
        long long coef;
    };

    std::vector<Term> terms;  // sorted by key descending, nonzero coefs

    static std::uint32_t pack(const int* e) {
        std::uint32_t k = 0;
        for (int i = 0; i < kMaxVars; ++i) {
            require(e[i] >= 0 && e[i] < 256, "ZPoly: exponent out of range");
            k |= static_cast<std::uint32_t>(e[i]) << (8 * (kMaxVars - 1 - i));
        }
        return k;
    }
    static void unpack(std::uint32_t k, int* e) {
        for (int i = 0; i < kMaxVars; ++i) e[i] = static_cast<int>((k >> (8 * (kMaxVars - 1 - i))) & 0xff);
    }

    static ZPoly constant(long long c) {
        ZPoly p;
        if (c != 0) p.terms.push_back({0, c});
        return p;
    }
    static ZPoly var(int i, long long coef = 1) {
        int e[kMaxVars] = {0, 0, 0, 0};
        e[i] = 1;
        ZPoly p;
        if (coef != 0) p.terms.push_back({pack(e), coef});
        return p;
    }

    bool isZero() const { return terms.empty(); }
    bool isConstant() const { return terms.empty() || (terms.size() == 1 && terms[0].key == 0); }
    long long constantValue() const { return terms.empty() ? 0 : terms[0].coef; }

    bool operator==(const ZPoly& o) const {
        if (terms.size() != o.terms.size()) return false;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i].key != o.terms[i].key || terms[i].coef != o.terms[i].coef) return false;
        return true;
    }

    ZPoly operator-() const {
        ZPoly r = *this;
        for (auto& t : r.terms) t.coef = -t.coef;
        return r;
    }

    ZPoly operator+(const ZPoly& o) const {
        ZPoly r;
        std::size_t i = 0, j = 0;
        while (i < terms.size() || j < o.terms.size()) {
            if (j == o.terms.size() || (i < terms.size() && terms[i].key > o.terms[j].key)) {
                r.terms.push_back(terms[i++]);
            } else if (i == terms.size() || o.terms[j].key > terms[i].key) {
                r.terms.push_back(o.terms[j++]);
            } else {
                long long c = terms[i].coef + o.terms[j].coef;
                if (c != 0) r.terms.push_back({terms[i].key, c});
                ++i;
                ++j;
            }
        }
        return r;
    }
    ZPoly operator-(const ZPoly& o) const { return *this + (-o); }

    static ZPoly fromTerms(std::vector<Term> acc) {
        std::sort(acc.begin(), acc.end(), [](const Term& x, const Term& y) { return x.key > y.key; });
        ZPoly r;
        for (const auto& t : acc) {
            if (!r.terms.empty() && r.terms.back().key == t.key)
                r.terms.back().coef += t.coef;
            else
                r.terms.push_back(t);
        }
        r.terms.erase(std::remove_if(r.terms.begin(), r.terms.end(), [](const Term& t) { return t.coef == 0; }), r.terms.end());
        return r;
    }

    ZPoly operator*(const ZPoly& o) const {
        std::vector<Term> acc;
        acc.reserve(terms.size() * o.terms.size());
        for (const auto& a : terms)
            for (const auto& b : o.terms) acc.push_back({a.key + b.key, a.coef * b.coef});
        return fromTerms(std::move(acc));
    }

    // Substitute variable v := c.
    ZPoly substConst(int v, long long c) const {
        std::vector<Term> acc;
        acc.reserve(terms.size());
        for (const auto& t : terms) {
            int e[kMaxVars];
            unpack(t.key, e);
            long long coef = t.coef;
            for (int k = 0; k < e[v]; ++k) coef *= c;
            e[v] = 0;
            acc.push_back({pack(e), coef});
        }
        return fromTerms(std::move(acc));
    }

    // Substitute variable vi := vj.
    ZPoly substVar(int vi, int vj) const {
        std::vector<Term> acc;
        acc.reserve(terms.size());
        for (const auto& t : terms) {
            int e[kMaxVars];
            unpack(t.key, e);
            e[vj] += e[vi];
            e[vi] = 0;
            acc.push_back({pack(e), t.coef});
        }
        return fromTerms(std::move(acc));
    }

    ZPoly pow(int e) const {
        require(e >= 0, "ZPoly: negative power");
        ZPoly r = constant(1);
        for (int i = 0; i < e; ++i) r = r * *this;
        return r;
    }

    // Exact division; nullopt unless *this == q * d exactly over Z.
    std::optional<ZPoly> divExact(const ZPoly& d) const {
        require(!d.isZero(), "ZPoly: division by zero");
        ZPoly rem = *this, q;
        const Term& lt = d.terms[0];
        while (!rem.isZero()) {
            const Term& rt = rem.terms[0];
            int er[kMaxVars], ed[kMaxVars];
            unpack(rt.key, er);
            unpack(lt.key, ed);
            bool divisible = rt.coef % lt.coef == 0;
            for (int i = 0; i < kMaxVars && divisible; ++i)
                if (er[i] < ed[i]) divisible = false;
            if (!divisible) return std::nullopt;
            ZPoly t;
            t.terms.push_back({rt.key - lt.key, rt.coef / lt.coef});
            q = q + t;
            rem = rem - t * d;
        }
        return q;
    }

    Fel eval(const Field& f, const Fel* images) const {
        Fel acc = 0;
        for (const auto& t : terms) {
            int e[kMaxVars];
            unpack(t.key, e);
            Fel v = f.fromInt(t.coef);
            for (int i = 0; i < kMaxVars; ++i)
                if (e[i]) v = f.mul(v, f.powf(images[i], static_cast<std::uint32_t>(e[i])));
            acc = f.add(acc, v);
        }
        return acc;
    }

    std::string str(const std::vector<std::string>& varNames) const {
        if (terms.empty()) return "0";
        // positive terms first so differences read as "1-a" rather than "-a+1"
        std::vector<std::size_t> order;
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i].coef > 0) order.push_back(i);
        for (std::size_t i = 0; i < terms.size(); ++i)
            if (terms[i].coef < 0) order.push_back(i);
        std::string s;
        for (std::size_t oi = 0; oi < order.size(); ++oi) {
            long long c = terms[order[oi]].coef;
            int e[kMaxVars];
            unpack(terms[order[oi]].key, e);
            bool anyVar = terms[order[oi]].key != 0;
            if (oi == 0) {
                if (c < 0) s += "-";
            } else {
                s += c < 0 ? "-" : "+";
            }
            long long ac = c < 0 ? -c : c;
            if (ac != 1 || !anyVar) s += std::to_string(ac);
            for (int v = 0; v < kMaxVars; ++v) {
                if (!e[v]) continue;
                s += varNames[static_cast<std::size_t>(v)];
                if (e[v] > 1) s += "^" + std::to_string(e[v]);
            }
        }
        return s;
    }
};

}  // namespace minorforge
