#pragma once

#include <array>
#include <bit>
#include <cstdint>

#include "minorforge/common.hpp"

namespace minorforge {

// Groundsets have at most 16 elements; subsets are uint16_t bitmasks.
constexpr int kMaxGround = 16;

// Pascal table, C(n,k) for n,k <= 24 (enough headroom over kMaxGround).
struct Binom {
    std::array<std::array<std::uint32_t, 25>, 25> c{};
    constexpr Binom() {
        for (int n = 0; n <= 24; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
        }
    }
};
inline constexpr Binom kBinom{};

inline std::uint32_t binom(int n, int k) {
    if (k < 0 || k > n || n < 0) return 0;
    return kBinom.c[n][k];
}

// Colexicographic index of an r-subset given as a bitmask: with elements
// s_0 < s_1 < ... < s_{r-1}, the index is sum C(s_i, i+1). Enumerating
// same-popcount masks in increasing numeric order visits colex order.
inline std::uint32_t colexIndex(std::uint16_t mask) {
    std::uint32_t idx = 0;
    int i = 0;
    while (mask) {
        int b = std::countr_zero(mask);
        mask = static_cast<std::uint16_t>(mask & (mask - 1));
        idx += binom(b, ++i);
    }
    return idx;
}

// Inverse of colexIndex for r-subsets of an n-set.
inline std::uint16_t colexMask(std::uint32_t idx, int n, int r) {
    std::uint16_t mask = 0;
    for (int i = r; i >= 1; --i) {
        int b = i - 1;
        while (b + 1 <= n - 1 && binom(b + 1, i) <= idx) ++b;
        mask = static_cast<std::uint16_t>(mask | (1u << b));
        idx -= binom(b, i);
    }
    return mask;
}

// Next same-popcount mask in increasing numeric order (Gosper). Returns 0
// after the last one.
inline std::uint16_t nextSubsetMask(std::uint16_t v, int n) {
    std::uint32_t x = v;
    std::uint32_t c = x & (0u - x);
    std::uint32_t r = x + c;
    std::uint32_t next = (((x ^ r) >> 2) / c) | r;
    if (next >= (1u << n)) return 0;
    return static_cast<std::uint16_t>(next);
}

inline std::uint16_t firstSubsetMask(int r) {
    return static_cast<std::uint16_t>((1u << r) - 1);
}

inline int popcount16(std::uint16_t mask) { return std::popcount(static_cast<unsigned>(mask)); }

// Positions of set bits, ascending.
inline void maskElems(std::uint16_t mask, int* out, int& cnt) {
    cnt = 0;
    while (mask) {
        out[cnt++] = std::countr_zero(mask);
        mask = static_cast<std::uint16_t>(mask & (mask - 1));
    }
}

}  // namespace minorforge
