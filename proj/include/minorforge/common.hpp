#pragma once

#include <cstdint>
#include <cstddef>
#include <stdexcept>
#include <string>
#include <vector>

namespace minorforge {

// Error for violated preconditions and malformed external input.
class MfError : public std::runtime_error {
public:
    explicit MfError(const std::string& what) : std::runtime_error(what) {}
};

inline void require(bool cond, const char* msg) {
    if (!cond) throw MfError(msg);
}

inline void require(bool cond, const std::string& msg) {
    if (!cond) throw MfError(msg);
}

// 64-bit FNV-1a. All persistent hashes feed bytes through this, in a fixed
// little-endian encoding, so values are stable across platforms and runs.
struct Fnv {
    static constexpr std::uint64_t kOffset = 14695981039346656037ull;
    static constexpr std::uint64_t kPrime = 1099511628211ull;
    std::uint64_t h = kOffset;

    void byte(std::uint8_t b) {
        h ^= b;
        h *= kPrime;
    }
    void u16(std::uint16_t v) {
        byte(static_cast<std::uint8_t>(v & 0xff));
        byte(static_cast<std::uint8_t>(v >> 8));
    }
    void u32(std::uint32_t v) {
        u16(static_cast<std::uint16_t>(v & 0xffff));
        u16(static_cast<std::uint16_t>(v >> 16));
    }
    void u64(std::uint64_t v) {
        u32(static_cast<std::uint32_t>(v & 0xffffffffull));
        u32(static_cast<std::uint32_t>(v >> 32));
    }
    void bytes(const std::uint8_t* p, std::size_t len) {
        for (std::size_t i = 0; i < len; ++i) byte(p[i]);
    }
};

inline std::uint64_t fnvBytes(const std::vector<std::uint8_t>& v) {
    Fnv f;
    f.bytes(v.data(), v.size());
    return f.h;
}

}  // namespace minorforge
