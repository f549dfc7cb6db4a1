#ifndef SRQ_COMMON_HPP
#define SRQ_COMMON_HPP

#include <bit>
#include <cstdint>
#include <cstddef>
#include <cassert>
#include <limits>
#include <stdexcept>
#include <string>
#include <vector>

namespace srq {

using u8 = std::uint8_t;
using u16 = std::uint16_t;
using u32 = std::uint32_t;
using u64 = std::uint64_t;
using i16 = std::int16_t;
using i32 = std::int32_t;
using i64 = std::int64_t;

inline constexpr u64 kNone = std::numeric_limits<u64>::max();

inline u64 words_for_bits(u64 nbits) { return (nbits + 63) / 64; }

// Bit i is 0-based here; bit 0 = LSB of word 0.
inline bool get_bit(const u64* w, u64 i) { return (w[i >> 6] >> (i & 63)) & 1; }
inline void set_bit(u64* w, u64 i) { w[i >> 6] |= u64(1) << (i & 63); }
inline void clear_bit(u64* w, u64 i) { w[i >> 6] &= ~(u64(1) << (i & 63)); }

// Extracts len (<= 64) bits starting at 0-based bit position i.
inline u64 get_bits(const u64* w, u64 i, unsigned len) {
    if (len == 0) return 0;
    u64 block = i >> 6, off = i & 63;
    u64 lo = w[block] >> off;
    if (off + len > 64) lo |= w[block + 1] << (64 - off);
    if (len == 64) return lo;
    return lo & ((u64(1) << len) - 1);
}

inline void set_bits(u64* w, u64 i, unsigned len, u64 v) {
    if (len == 0) return;
    u64 block = i >> 6, off = i & 63;
    u64 mask = (len == 64) ? ~u64(0) : ((u64(1) << len) - 1);
    v &= mask;
    w[block] = (w[block] & ~(mask << off)) | (v << off);
    if (off + len > 64) {
        unsigned hi = unsigned(off + len - 64);
        u64 hmask = (u64(1) << hi) - 1;
        w[block + 1] = (w[block + 1] & ~hmask) | (v >> (64 - off));
    }
}

// Position (0-based) of the j-th (1-based) set bit of a word.
inline unsigned select_in_word(u64 w, unsigned j) {
    for (unsigned k = 0; k < 8; ++k) {
        unsigned c = unsigned(std::popcount(w & 0xffu));
        if (c >= j) {
            unsigned b = 0;
            while (true) {
                if (w & 1) { if (--j == 0) return k * 8 + b; }
                w >>= 1;
                ++b;
            }
        }
        j -= c;
        w >>= 8;
    }
    assert(false);
    return 64;
}

// Binomial coefficients up to 64, saturated at u64 max (exact for all n <= 64).
struct Binom64 {
    u64 c[65][65];
    Binom64() {
        for (int n = 0; n <= 64; ++n) {
            c[n][0] = 1;
            for (int k = 1; k <= n; ++k)
                c[n][k] = c[n - 1][k - 1] + (k <= n - 1 ? c[n - 1][k] : 0);
            for (int k = n + 1; k <= 64; ++k) c[n][k] = 0;
        }
    }
};

inline const Binom64& binom64() {
    static const Binom64 b;
    return b;
}

inline unsigned ceil_log2_u64(u64 v) {
    if (v <= 1) return 0;
    return 64 - unsigned(std::countl_zero(v - 1));
}

struct SrqError : std::runtime_error {
    explicit SrqError(const std::string& m) : std::runtime_error(m) {}
};

} // namespace srq

#endif
