#ifndef SRQ_PARENSEQ_HPP
#define SRQ_PARENSEQ_HPP

#include <algorithm>
#include <array>
#include <cstring>
#include <limits>
#include <vector>

#include "srq/bitseq.hpp"
#include "srq/common.hpp"

namespace srq {

// Per-byte excess summaries, LSB-first ('(' = 1, ')' = 0).
struct ExcessTables {
    std::array<int8_t, 256> net{};
    std::array<int8_t, 256> fwd_min{};   // min running excess, scanning bits 0..7
    std::array<int8_t, 256> fwd_max{};
    std::array<u8, 256> fwd_min_idx{};   // first bit index attaining fwd_min
    std::array<int8_t, 256> sfx_min{};   // min over net(suffix t..7), t = 1..8
    std::array<int8_t, 256> sfx_max{};
    ExcessTables() {
        for (int b = 0; b < 256; ++b) {
            int e = 0, mn = 127, mx = -128, mi = 0;
            for (int i = 0; i < 8; ++i) {
                e += ((b >> i) & 1) ? 1 : -1;
                if (e < mn) { mn = e; mi = i; }
                if (e > mx) mx = e;
            }
            net[b] = int8_t(e);
            fwd_min[b] = int8_t(mn);
            fwd_max[b] = int8_t(mx);
            fwd_min_idx[b] = u8(mi);
            int smn = 0, smx = 0, s = 0;
            for (int t = 7; t >= 0; --t) {
                s += ((b >> t) & 1) ? 1 : -1;
                smn = std::min(smn, s);
                smx = std::max(smx, s);
            }
            sfx_min[b] = int8_t(smn);
            sfx_max[b] = int8_t(smx);
        }
    }
};

inline const ExcessTables& excess_tables() {
    static const ExcessTables t;
    return t;
}

// Non-owning plain word view; start positions are 0-based.
struct PlainBits {
    const u64* words = nullptr;
    u64 nbits = 0;
    u64 size() const { return nbits; }
    void window(u64 start0, u64 len, u64* out) const {
        for (u64 k = 0; k * 64 < len; ++k) {
            u64 p = start0 + k * 64;
            unsigned take = unsigned(std::min<u64>(64, len - k * 64));
            u64 avail = (p >= nbits) ? 0 : std::min<u64>(take, nbits - p);
            out[k] = avail ? get_bits(words, p, unsigned(avail)) : 0;
        }
    }
};

// Owning variant of PlainBits.
struct OwnedBits {
    std::vector<u64> w;
    u64 nbits = 0;
    static OwnedBits from_parens(std::string_view s) {
        OwnedBits b;
        b.nbits = s.size();
        b.w.assign(words_for_bits(s.size()), 0);
        for (size_t i = 0; i < s.size(); ++i)
            if (s[i] == '(' || s[i] == '1') set_bit(b.w.data(), i);
        return b;
    }
    u64 size() const { return nbits; }
    void window(u64 start0, u64 len, u64* out) const {
        PlainBits{w.data(), nbits}.window(start0, len, out);
    }
};

// Balanced-parenthesis support over a bit source: excess, findopen/findclose,
// leftmost-minimum-excess search, plus close/open and "((" rank/select used by
// the tree layer. Positions are 1-based; '(' = 1.
template <class Src>
class ParenSeq {
public:
    static constexpr u64 kDirBlock = 2048;
    static constexpr u64 kDirSuper = 65536;

    ParenSeq() = default;
    explicit ParenSeq(Src src) : src_(std::move(src)) { build(); }

    const Src& source() const { return src_; }
    u64 size() const { return len_; }
    bool balanced() const { return balanced_; }

    bool bit(u64 i) const {
        u64 w;
        src_.window(i - 1, 1, &w);
        return w & 1;
    }
    bool is_open(u64 i) const { return bit(i); }

    u64 rank_close(u64 i) const {
        if (i > len_) throw SrqError("parenseq: rank out of range");
        if (i == 0) return 0;
        u64 b = i / kDirBlock;
        u64 r = (b < close_blk_.size())
                    ? close_sb_[b / kBlocksPerSuper] + close_blk_[b]
                    : closes_;
        u64 lo = b * kDirBlock;
        if (lo >= i) return r;
        u64 buf[kDirBlock / 64];
        src_.window(lo, i - lo, buf);
        u64 span = i - lo;
        for (u64 p = 0; p < span; p += 64) {
            unsigned take = unsigned(std::min<u64>(64, span - p));
            u64 w = buf[p / 64];
            if (take < 64) w &= (u64(1) << take) - 1;
            r += take - std::popcount(w);
        }
        return r;
    }

    u64 rank_open(u64 i) const { return i - rank_close(i); }
    u64 total_closes() const { return closes_; }
    u64 total_opens() const { return len_ - closes_; }

    u64 select_close(u64 j) const {
        if (j < 1 || j > closes_) throw SrqError("parenseq: select_close out of range");
        return select_by_rank(j, [this](u64 i) { return rank_close(i); });
    }

    u64 select_open(u64 j) const {
        if (j < 1 || j > len_ - closes_) throw SrqError("parenseq: select_open out of range");
        return select_by_rank(j, [this](u64 i) { return rank_open(i); });
    }

    // #occurrences of "((" with start position <= i (start convention).
    u64 pair_rank(u64 i) const {
        if (i > len_) i = len_;
        if (i == 0) return 0;
        u64 b = i / kDirBlock;
        u64 r = (b < pair_blk_.size())
                    ? pair_sb_[b / kBlocksPerSuper] + pair_blk_[b]
                    : pairs_;
        u64 lo = b * kDirBlock;
        if (lo < i) r += scan_pairs(lo, i);
        return r;
    }

    u64 total_pairs() const { return pairs_; }

    u64 pair_select(u64 j) const {
        if (j < 1 || j > pairs_) throw SrqError("parenseq: pair select out of range");
        return select_by_rank(j, [this](u64 i) { return pair_rank(i); });
    }

    i64 excess(u64 i) const {
        if (i > len_) throw SrqError("parenseq: excess out of range");
        return i64(i) - 2 * i64(rank_close(i));
    }

    u64 fwd_excess(u64 from, i64 target) const;
    u64 bwd_excess(u64 from, i64 target) const;

    u64 findclose(u64 i) const {
        if (!balanced_) throw SrqError("parenseq: sequence not balanced");
        if (i < 1 || i > len_ || !bit(i)) throw SrqError("parenseq: findclose needs '('");
        u64 j = fwd_excess(i + 1, excess(i) - 1);
        if (j == kNone) throw SrqError("parenseq: unmatched '('");
        return j;
    }

    u64 findopen(u64 i) const {
        if (!balanced_) throw SrqError("parenseq: sequence not balanced");
        if (i < 1 || i > len_ || bit(i)) throw SrqError("parenseq: findopen needs ')'");
        u64 j = bwd_excess(i - 1, excess(i));
        if (j == kNone) throw SrqError("parenseq: unmatched ')'");
        return j + 1;
    }

    u64 min_excess_pos(u64 i, u64 j) const;

    u64 dir_bits() const { return dir_bits_; }

private:
    static constexpr u64 kBlocksPerSuper = kDirSuper / kDirBlock;

    Src src_{};
    u64 len_ = 0;
    u64 closes_ = 0;
    u64 pairs_ = 0;
    bool balanced_ = false;
    u64 dir_bits_ = 0;

    std::vector<u64> close_sb_, pair_sb_;
    std::vector<u16> close_blk_, pair_blk_;
    std::vector<i16> min_rel_, max_rel_;
    std::vector<i64> sb_min_, sb_max_;
    u64 nblk_ = 0;

    void build();

    i64 block_entry_excess(u64 b) const {
        u64 i = b * kDirBlock;
        u64 r = close_sb_[b / kBlocksPerSuper] + close_blk_[b];
        return i64(i) - 2 * i64(r);
    }

    u64 scan_pairs(u64 from0, u64 upto0) const {
        u64 max_start_excl = (len_ >= 2) ? len_ - 1 : 0;
        upto0 = std::min(upto0, max_start_excl);
        if (from0 >= upto0) return 0;
        u64 span = upto0 - from0;
        u64 buf[kDirBlock / 64 + 1];
        src_.window(from0, span + 1, buf);
        u64 cnt = 0;
        for (u64 p = 0; p < span; p += 64) {
            unsigned take = unsigned(std::min<u64>(64, span - p));
            u64 w = buf[p / 64];
            u64 next = (p + 64 <= span) ? buf[p / 64 + 1] : 0;
            u64 m = w & ((w >> 1) | (next << 63));
            if (take < 64) m &= (u64(1) << take) - 1;
            cnt += std::popcount(m);
        }
        return cnt;
    }

    template <class RankFn>
    u64 select_by_rank(u64 j, RankFn rank) const {
        u64 lo = 1, hi = len_;
        while (lo < hi) {
            u64 mid = lo + (hi - lo) / 2;
            if (rank(mid) >= j) hi = mid; else lo = mid + 1;
        }
        return lo;
    }

    // Scans positions [lo..hi] (1-based) with E(lo-1) = entry; returns first
    // position whose excess equals target, or kNone.
    u64 scan_fwd_target(u64 lo, u64 hi, i64 entry, i64 target) const {
        if (lo > hi) return kNone;
        u64 buf[kDirBlock / 64];
        src_.window(lo - 1, hi - lo + 1, buf);
        const auto& T = excess_tables();
        i64 e = entry;
        u64 span = hi - lo + 1;
        for (u64 p = 0; p < span; p += 8) {
            unsigned take = unsigned(std::min<u64>(8, span - p));
            unsigned byte = unsigned(get_bits(buf, p, take));
            if (take == 8 && (e + T.fwd_min[byte] > target || e + T.fwd_max[byte] < target)) {
                e += T.net[byte];
                continue;
            }
            for (unsigned t = 0; t < take; ++t) {
                e += ((byte >> t) & 1) ? 1 : -1;
                if (e == target) return lo + p + t;
            }
        }
        return kNone;
    }

    // Scans positions [lo..hi] backward; E(hi) = exit. Returns largest j in
    // [lo-1..hi] wait: returns largest position q in [lo..hi] with E(q) ==
    // target, or kNone. Caller handles q = lo-1 boundaries.
    u64 scan_bwd_target(u64 lo, u64 hi, i64 exit_e, i64 target) const {
        if (lo > hi) return kNone;
        u64 buf[kDirBlock / 64];
        src_.window(lo - 1, hi - lo + 1, buf);
        const auto& T = excess_tables();
        i64 e = exit_e;  // E at the position under the cursor
        u64 p = hi - lo + 1;
        while (p > 0) {
            unsigned take = unsigned(std::min<u64>(8, p));
            unsigned base = unsigned(p - take);
            unsigned byte = unsigned(get_bits(buf, base, take));
            if (take == 8) {
                // E values over this byte are e - net(suffix); quick reject
                i64 reach_lo = e - T.sfx_max[byte], reach_hi = e - T.sfx_min[byte];
                i64 here = e;
                if ((target < std::min(reach_lo, here) || target > std::max(reach_hi, here))) {
                    e -= T.net[byte];
                    p -= take;
                    continue;
                }
            }
            for (unsigned t = take; t-- > 0;) {
                if (e == target) return lo + base + t;
                e -= ((byte >> t) & 1) ? 1 : -1;
            }
            p -= take;
        }
        return kNone;
    }

public:
    // Exposed for the tree layer: E(lo..hi) leftmost minimum with known entry.
    std::pair<i64, u64> scan_min(u64 lo, u64 hi) const {
        i64 e = excess(lo - 1);
        u64 buf[kDirBlock / 64];
        src_.window(lo - 1, hi - lo + 1, buf);
        const auto& T = excess_tables();
        i64 best = std::numeric_limits<i64>::max();
        u64 best_pos = kNone;
        u64 span = hi - lo + 1;
        for (u64 p = 0; p < span; p += 8) {
            unsigned take = unsigned(std::min<u64>(8, span - p));
            unsigned byte = unsigned(get_bits(buf, p, take));
            if (take == 8) {
                if (e + T.fwd_min[byte] < best) {
                    best = e + T.fwd_min[byte];
                    best_pos = lo + p + T.fwd_min_idx[byte];
                }
                e += T.net[byte];
            } else {
                for (unsigned t = 0; t < take; ++t) {
                    e += ((byte >> t) & 1) ? 1 : -1;
                    if (e < best) { best = e; best_pos = lo + p + t; }
                }
            }
        }
        return {best, best_pos};
    }
};

template <class Src>
void ParenSeq<Src>::build() {
    len_ = src_.size();
    nblk_ = len_ / kDirBlock + 1;
    u64 nsb = nblk_ / kBlocksPerSuper + 1;
    close_sb_.assign(nsb, 0);
    pair_sb_.assign(nsb, 0);
    close_blk_.assign(nblk_, 0);
    pair_blk_.assign(nblk_, 0);
    min_rel_.assign(nblk_, 0);
    max_rel_.assign(nblk_, 0);

    u64 buf[kDirBlock / 64 + 1];
    u64 closes = 0, pairs = 0;
    i64 exc = 0, global_min = 0;
    const auto& T = excess_tables();
    for (u64 b = 0; b < nblk_; ++b) {
        if (b % kBlocksPerSuper == 0) {
            close_sb_[b / kBlocksPerSuper] = closes;
            pair_sb_[b / kBlocksPerSuper] = pairs;
        }
        close_blk_[b] = u16(closes - close_sb_[b / kBlocksPerSuper]);
        pair_blk_[b] = u16(pairs - pair_sb_[b / kBlocksPerSuper]);
        u64 lo = b * kDirBlock, hi = std::min(len_, lo + kDirBlock);
        if (lo >= hi) continue;
        u64 span = hi - lo;
        src_.window(lo, span + 1, buf);  // sources zero-pad past the end
        // "((" starts within [lo, hi)
        {
            u64 upto = std::min(hi, (len_ >= 2) ? len_ - 1 : 0);
            for (u64 p = 0; lo + p < upto; p += 64) {
                unsigned take = unsigned(std::min<u64>(64, upto - (lo + p)));
                u64 w = buf[p / 64];
                u64 next = (p + 64 <= span) ? buf[p / 64 + 1] : 0;
                u64 m = w & ((w >> 1) | (next << 63));
                if (take < 64) m &= (u64(1) << take) - 1;
                pairs += std::popcount(m);
            }
        }
        i64 rel = 0;
        i64 mn = std::numeric_limits<i64>::max(), mx = std::numeric_limits<i64>::min();
        for (u64 p = 0; p < span; p += 8) {
            unsigned take = unsigned(std::min<u64>(8, span - p));
            unsigned byte = unsigned(get_bits(buf, p, take));
            if (take == 8) {
                mn = std::min<i64>(mn, rel + T.fwd_min[byte]);
                mx = std::max<i64>(mx, rel + T.fwd_max[byte]);
                rel += T.net[byte];
                closes += 8 - std::popcount(u64(byte));
            } else {
                for (unsigned t = 0; t < take; ++t) {
                    bool open = (byte >> t) & 1;
                    rel += open ? 1 : -1;
                    closes += open ? 0 : 1;
                    mn = std::min(mn, rel);
                    mx = std::max(mx, rel);
                }
            }
        }
        min_rel_[b] = i16(mn);
        max_rel_[b] = i16(mx);
        global_min = std::min(global_min, exc + mn);
        exc += rel;
    }
    closes_ = closes;
    pairs_ = pairs;
    balanced_ = (exc == 0 && global_min >= 0);

    u64 nsb2 = nblk_ / kBlocksPerSuper + 1;
    sb_min_.assign(nsb2, std::numeric_limits<i64>::max());
    sb_max_.assign(nsb2, std::numeric_limits<i64>::min());
    for (u64 b = 0; b < nblk_; ++b) {
        if (b * kDirBlock >= len_) break;
        i64 base = block_entry_excess(b);
        u64 sb = b / kBlocksPerSuper;
        sb_min_[sb] = std::min(sb_min_[sb], base + min_rel_[b]);
        sb_max_[sb] = std::max(sb_max_[sb], base + max_rel_[b]);
    }
    dir_bits_ = close_sb_.size() * 64 + pair_sb_.size() * 64 +
                close_blk_.size() * 16 + pair_blk_.size() * 16 +
                min_rel_.size() * 16 + max_rel_.size() * 16 +
                (sb_min_.size() + sb_max_.size()) * 64;
}

template <class Src>
u64 ParenSeq<Src>::fwd_excess(u64 from, i64 target) const {
    if (from > len_) return kNone;
    if (from < 1) from = 1;
    u64 b = (from - 1) / kDirBlock;
    u64 hi = std::min(len_, (b + 1) * kDirBlock);
    u64 r = scan_fwd_target(from, hi, excess(from - 1), target);
    if (r != kNone) return r;
    u64 last_blk = (len_ - 1) / kDirBlock;
    auto straddles = [&](u64 blk) {
        i64 base = block_entry_excess(blk);
        return base + min_rel_[blk] <= target && target <= base + max_rel_[blk];
    };
    u64 blk = b + 1;
    while (blk <= last_blk) {
        u64 sb = blk / kBlocksPerSuper;
        if (blk % kBlocksPerSuper == 0 &&
            !(sb_min_[sb] <= target && target <= sb_max_[sb])) {
            blk = (sb + 1) * kBlocksPerSuper;
            continue;
        }
        u64 end = std::min(last_blk, (sb + 1) * kBlocksPerSuper - 1);
        for (; blk <= end; ++blk)
            if (straddles(blk))
                return scan_fwd_target(blk * kDirBlock + 1,
                                       std::min(len_, (blk + 1) * kDirBlock),
                                       block_entry_excess(blk), target);
    }
    return kNone;
}

template <class Src>
u64 ParenSeq<Src>::bwd_excess(u64 from, i64 target) const {
    if (from > len_) from = len_;
    if (from >= 1) {
        u64 b = (from - 1) / kDirBlock;
        u64 lo = b * kDirBlock + 1;
        u64 r = scan_bwd_target(lo, from, excess(from), target);
        if (r != kNone) return r;
        auto straddles = [&](u64 blk) {
            i64 base = block_entry_excess(blk);
            return base + min_rel_[blk] <= target && target <= base + max_rel_[blk];
        };
        u64 blk = b;
        while (blk-- > 0) {
            u64 sb = blk / kBlocksPerSuper;
            if (blk % kBlocksPerSuper == kBlocksPerSuper - 1 &&
                !(sb_min_[sb] <= target && target <= sb_max_[sb])) {
                if (sb == 0) break;
                blk = sb * kBlocksPerSuper;  // loop decrement moves into sb-1
                continue;
            }
            if (straddles(blk)) {
                u64 lo2 = blk * kDirBlock + 1;
                u64 hi2 = std::min(len_, (blk + 1) * kDirBlock);
                return scan_bwd_target(lo2, hi2, excess(hi2), target);
            }
        }
    }
    return (target == 0) ? 0 : kNone;
}

template <class Src>
u64 ParenSeq<Src>::min_excess_pos(u64 i, u64 j) const {
    if (i < 1 || j > len_ || i > j) throw SrqError("parenseq: empty excess range");
    u64 bi = (i - 1) / kDirBlock, bj = (j - 1) / kDirBlock;
    if (bi == bj) return scan_min(i, j).second;
    auto [best, best_pos] = scan_min(i, std::min(len_, (bi + 1) * kDirBlock));
    // arithmetic-only walk over full middle blocks; the winner is scanned once
    u64 win = kNone;
    i64 win_val = std::numeric_limits<i64>::max();
    for (u64 blk = bi + 1; blk < bj;) {
        u64 sb = blk / kBlocksPerSuper;
        bool whole_super = blk % kBlocksPerSuper == 0 &&
                           (sb + 1) * kBlocksPerSuper <= bj;
        if (whole_super && sb_min_[sb] >= std::min(best, win_val)) {
            blk = (sb + 1) * kBlocksPerSuper;
            continue;
        }
        u64 end = std::min(bj, (sb + 1) * kBlocksPerSuper);
        for (; blk < end; ++blk) {
            i64 bmin = block_entry_excess(blk) + min_rel_[blk];
            if (bmin < win_val && bmin < best) {
                win_val = bmin;
                win = blk;
            }
        }
    }
    if (win != kNone && win_val < best) {
        auto [val, pos] = scan_min(win * kDirBlock + 1,
                                   std::min(len_, (win + 1) * kDirBlock));
        best = val;
        best_pos = pos;
    }
    auto [lval, lpos] = scan_min(bj * kDirBlock + 1, j);
    if (lval < best) { best = lval; best_pos = lpos; }
    return best_pos;
}

} // namespace srq

#endif
