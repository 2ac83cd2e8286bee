#pragma once

#include <cstdint>
#include <memory>
#include <vector>

#include "minorforge/common.hpp"

namespace minorforge {

using Fel = std::uint16_t;  // field element; always < q

inline bool isPrime(std::uint32_t n) {
    if (n < 2) return false;
    for (std::uint32_t d = 2; d * d <= n; ++d)
        if (n % d == 0) return false;
    return true;
}

// GF(q) for prime q <= 65521, plus GF(4) with the fixed reduction
// x^2 + x + 1 and encoding 0, 1, 2 = x, 3 = x + 1. Fields with q <= 256
// use dense multiply/inverse tables; larger primes fall back to modular
// arithmetic with inverses by exponentiation.
class Field {
public:
    std::uint32_t q = 0;  // order
    std::uint32_t p = 0;  // characteristic

    Field() = default;

    static Field gf(std::uint32_t q) {
        Field f;
        f.q = q;
        if (q == 4) {
            f.p = 2;
        } else {
            require(q >= 2 && q <= 65521 && isPrime(q), "Field: order must be prime <= 65521 or 4");
            f.p = q;
        }
        if (q <= 256) f.buildTables();
        return f;
    }

    bool operator==(const Field& o) const { return q == o.q; }
    bool operator!=(const Field& o) const { return q != o.q; }

    Fel zero() const { return 0; }
    Fel one() const { return 1; }

    // Canonical element from a (possibly negative) integer; GF(4) only
    // accepts 0..3 literally since its elements are not integers mod 4.
    Fel fromInt(long long v) const {
        if (q == 4) {
            require(v >= 0 && v < 4, "Field: GF(4) literals are 0..3");
            return static_cast<Fel>(v);
        }
        long long m = v % static_cast<long long>(p);
        if (m < 0) m += p;
        return static_cast<Fel>(m);
    }

    Fel add(Fel a, Fel b) const {
        if (q == 4) return a ^ b;
        std::uint32_t s = static_cast<std::uint32_t>(a) + b;
        if (s >= q) s -= q;
        return static_cast<Fel>(s);
    }
    Fel sub(Fel a, Fel b) const {
        if (q == 4) return a ^ b;
        return a >= b ? static_cast<Fel>(a - b) : static_cast<Fel>(a + q - b);
    }
    Fel neg(Fel a) const {
        if (q == 4 || a == 0) return a;
        return static_cast<Fel>(q - a);
    }
    Fel mul(Fel a, Fel b) const {
        if (mulTab_) return (*mulTab_)[static_cast<std::size_t>(a) * q + b];
        return static_cast<Fel>(static_cast<std::uint64_t>(a) * b % q);
    }
    Fel inv(Fel a) const {
        require(a != 0, "Field: inverse of zero");
        if (invTab_) return (*invTab_)[a];
        return powf(a, q - 2);
    }
    Fel div(Fel a, Fel b) const { return mul(a, inv(b)); }

    Fel powf(Fel a, std::uint32_t e) const {
        Fel r = 1, b = a;
        while (e) {
            if (e & 1) r = mul(r, b);
            b = mul(b, b);
            e >>= 1;
        }
        return r;
    }

    bool minusOneIsOne() const { return p == 2; }

private:
    // shared so that Field copies are cheap (representations carry one each)
    std::shared_ptr<const std::vector<Fel>> mulTab_;
    std::shared_ptr<const std::vector<Fel>> invTab_;

    Fel mulSlow(Fel a, Fel b) const {
        if (q == 4) {
            // carryless multiply of degree<2 polynomials mod x^2+x+1
            std::uint32_t prod = 0;
            for (int i = 0; i < 2; ++i)
                if (b & (1u << i)) prod ^= static_cast<std::uint32_t>(a) << i;
            if (prod & 8u) prod ^= 0b1110u;  // x^3 = x^2 + x
            if (prod & 4u) prod ^= 0b0111u;  // x^2 = x + 1
            return static_cast<Fel>(prod & 3u);
        }
        return static_cast<Fel>(static_cast<std::uint64_t>(a) * b % q);
    }

    void buildTables() {
        std::vector<Fel> mt(static_cast<std::size_t>(q) * q, 0);
        for (std::uint32_t a = 0; a < q; ++a)
            for (std::uint32_t b = 0; b < q; ++b)
                mt[a * q + b] = mulSlow(static_cast<Fel>(a), static_cast<Fel>(b));
        std::vector<Fel> it(q, 0);
        for (std::uint32_t a = 1; a < q; ++a)
            for (std::uint32_t b = 1; b < q; ++b)
                if (mt[a * q + b] == 1) {
                    it[a] = static_cast<Fel>(b);
                    break;
                }
        mulTab_ = std::make_shared<const std::vector<Fel>>(std::move(mt));
        invTab_ = std::make_shared<const std::vector<Fel>>(std::move(it));
    }
};

}  // namespace minorforge
