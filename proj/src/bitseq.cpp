#include "srq/bitseq.hpp"

#include <algorithm>
#include <cstring>
#include <istream>
#include <ostream>

namespace srq {

namespace {

constexpr char kMagic[4] = {'S', 'R', 'Q', '1'};

void write_u64(std::ostream& os, u64 v) {
    u8 b[8];
    for (int i = 0; i < 8; ++i) b[i] = u8(v >> (8 * i));
    os.write(reinterpret_cast<const char*>(b), 8);
}

u64 read_u64(std::istream& is) {
    u8 b[8];
    is.read(reinterpret_cast<char*>(b), 8);
    if (!is) throw SrqError("bitseq: truncated stream");
    u64 v = 0;
    for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
    return v;
}

// Offset width for a block of `len` bits with `m` ones.
unsigned offset_width(u64 len, unsigned m) {
    return ceil_log2_u64(binom64().c[len][m]);
}

u64 encode_offset(u64 bits, u64 len, unsigned m) {
    const auto& C = binom64().c;
    u64 o = 0;
    unsigned rem = m;
    for (u64 pos = 0; pos < len && rem > 0; ++pos) {
        if ((bits >> pos) & 1) {
            o += C[len - 1 - pos][rem];
            --rem;
        }
    }
    return o;
}

u64 decode_offset(u64 o, u64 len, unsigned m) {
    const auto& C = binom64().c;
    u64 bits = 0;
    unsigned rem = m;
    for (u64 pos = 0; pos < len && rem > 0; ++pos) {
        u64 z = C[len - 1 - pos][rem];
        if (o >= z) {
            o -= z;
            bits |= u64(1) << pos;
            --rem;
        }
    }
    return bits;
}

} // namespace

void BitSeq::check_pattern(std::string_view p) {
    if (p.empty()) throw SrqError("bitseq: empty pattern");
    if (p.size() > 8) throw SrqError("bitseq: pattern longer than 8 bits");
    for (char c : p)
        if (c != '0' && c != '1' && c != '(' && c != ')')
            throw SrqError("bitseq: bad pattern character");
}

u64 BitSeq::pattern_word(std::string_view p) {
    u64 w = 0;
    for (size_t i = 0; i < p.size(); ++i)
        if (p[i] == '1' || p[i] == '(') w |= u64(1) << i;
    return w;
}

BitSeq BitSeq::build(const std::vector<bool>& bits, BitMode mode,
                     std::span<const std::string> indexed_patterns) {
    std::vector<u64> w(words_for_bits(bits.size()), 0);
    for (size_t i = 0; i < bits.size(); ++i)
        if (bits[i]) set_bit(w.data(), i);
    return from_words(std::move(w), bits.size(), mode, indexed_patterns);
}

BitSeq BitSeq::from_paren_string(std::string_view parens, BitMode mode,
                                 std::span<const std::string> indexed_patterns) {
    std::vector<u64> w(words_for_bits(parens.size()), 0);
    for (size_t i = 0; i < parens.size(); ++i) {
        char c = parens[i];
        if (c == '(' || c == '1') set_bit(w.data(), i);
        else if (c != ')' && c != '0') throw SrqError("bitseq: bad paren char");
    }
    return from_words(std::move(w), parens.size(), mode, indexed_patterns);
}

BitSeq BitSeq::from_words(std::vector<u64> words, u64 nbits, BitMode mode,
                          std::span<const std::string> indexed_patterns) {
    BitSeq s;
    s.build_from_words(std::move(words), nbits, mode, indexed_patterns);
    return s;
}

void BitSeq::build_from_words(std::vector<u64>&& w, u64 nbits, BitMode mode,
                              std::span<const std::string> indexed_patterns) {
    n_ = nbits;
    mode_ = mode;
    w.resize(words_for_bits(nbits), 0);
    if (nbits % 64) w[nbits / 64] &= (u64(1) << (nbits % 64)) - 1;
    ones_ = 0;
    for (u64 x : w) ones_ += std::popcount(x);

    if (mode == BitMode::plain) {
        words_ = std::move(w);
        payload_bits_ = n_;
        build_rank_dirs_plain();
    } else {
        build_compressed(w);
    }
    aux_bits_ = rank_sb_.size() * 64 + rank_blk_.size() * 16 +
                c_off_base_.size() * 64 + classes_.size() * 64;
    for (const auto& p : indexed_patterns) build_pattern_dir(p);
}

void BitSeq::build_rank_dirs_plain() {
    u64 nsb = n_ / kSuper + 1, nblk = n_ / kBlock + 1;
    rank_sb_.assign(nsb, 0);
    rank_blk_.assign(nblk, 0);
    u64 cum = 0;
    for (u64 b = 0; b < nblk; ++b) {
        if (b % (kSuper / kBlock) == 0) rank_sb_[b / (kSuper / kBlock)] = cum;
        rank_blk_[b] = u16(cum - rank_sb_[b / (kSuper / kBlock)]);
        u64 lo = b * kBlock, hi = std::min(n_, lo + kBlock);
        for (u64 i = lo; i < hi; i += 64)
            cum += std::popcount(get_bits(words_.data(), i, unsigned(std::min<u64>(64, hi - i))));
    }
}

u64 BitSeq::cblock_size(u64 b) const {
    u64 nb = (n_ + kCBlock - 1) / kCBlock;
    return (b + 1 < nb) ? kCBlock : n_ - b * kCBlock;
}

unsigned BitSeq::cblock_class(u64 b) const {
    return unsigned(get_bits(classes_.data(), b * 6, 6));
}

void BitSeq::build_compressed(const std::vector<u64>& w) {
    u64 nb = (n_ + kCBlock - 1) / kCBlock;
    classes_.assign(words_for_bits(nb * 6), 0);
    u64 nsb = nb / kCPerSuper + 1;
    c_off_base_.assign(nsb, 0);
    rank_sb_.assign(nsb, 0);
    rank_blk_.assign(nb + 1, 0);

    u64 off_bits = 0, cum = 0;
    std::vector<std::pair<u64, unsigned>> pend;  // offset value, width
    pend.reserve(nb);
    for (u64 b = 0; b < nb; ++b) {
        if (b % kCPerSuper == 0) {
            c_off_base_[b / kCPerSuper] = off_bits;
            rank_sb_[b / kCPerSuper] = cum;
        }
        rank_blk_[b] = u16(cum - rank_sb_[b / kCPerSuper]);
        u64 len = cblock_size(b);
        u64 bits = get_bits(w.data(), b * kCBlock, unsigned(len));
        unsigned m = unsigned(std::popcount(bits));
        set_bits(classes_.data(), b * 6, 6, m);
        unsigned width = offset_width(len, m);
        pend.emplace_back(encode_offset(bits, len, m), width);
        off_bits += width;
        cum += m;
    }
    payload_bits_ = off_bits;
    offsets_.assign(words_for_bits(off_bits), 0);
    u64 pos = 0;
    for (auto [v, width] : pend) {
        set_bits(offsets_.data(), pos, width, v);
        pos += width;
    }
}

u64 BitSeq::decode_cblock(u64 b) const {
    u64 sb = b / kCPerSuper;
    u64 pos = c_off_base_[sb];
    for (u64 t = sb * kCPerSuper; t < b; ++t)
        pos += offset_width(cblock_size(t), cblock_class(t));
    u64 len = cblock_size(b);
    unsigned m = cblock_class(b);
    unsigned width = offset_width(len, m);
    return decode_offset(get_bits(offsets_.data(), pos, width), len, m);
}

bool BitSeq::get(u64 i) const {
    if (i < 1 || i > n_) throw SrqError("bitseq: position out of range");
    if (mode_ == BitMode::plain) return get_bit(words_.data(), i - 1);
    u64 b = (i - 1) / kCBlock;
    return (decode_cblock(b) >> ((i - 1) % kCBlock)) & 1;
}

void BitSeq::check_rank_pos(u64 i) const {
    if (i > n_) throw SrqError("bitseq: rank position out of range");
}

u64 BitSeq::rank1(u64 i) const {
    check_rank_pos(i);
    if (i == 0) return 0;
    if (mode_ == BitMode::plain) {
        u64 b = i / kBlock;  // count bits [0, i)
        u64 r = rank_sb_[b / (kSuper / kBlock)] + rank_blk_[b];
        for (u64 p = b * kBlock; p < i; p += 64)
            r += std::popcount(get_bits(words_.data(), p, unsigned(std::min<u64>(64, i - p))));
        return r;
    }
    u64 b = i / kCBlock;
    u64 r;
    if (b * kCBlock >= n_) {  // i == n_ on an exact tail boundary
        return ones_;
    }
    r = rank_sb_[b / kCPerSuper] + rank_blk_[b];
    u64 rem = i - b * kCBlock;
    if (rem) {
        u64 bits = decode_cblock(b);
        r += std::popcount(bits & ((rem >= 64) ? ~u64(0) : ((u64(1) << rem) - 1)));
    }
    return r;
}

u64 BitSeq::select1(u64 j) const {
    if (j < 1 || j > ones_) throw SrqError("bitseq: select1 out of range");
    u64 lo = 1, hi = n_;  // min pos with rank1(pos) >= j
    while (lo < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (rank1(mid) >= j) hi = mid; else lo = mid + 1;
    }
    return lo;
}

u64 BitSeq::select0(u64 j) const {
    if (j < 1 || j > n_ - ones_) throw SrqError("bitseq: select0 out of range");
    u64 lo = 1, hi = n_;
    while (lo < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (rank0(mid) >= j) hi = mid; else lo = mid + 1;
    }
    return lo;
}

void BitSeq::window(u64 start0, u64 len, u64* out) const {
    u64 nw = words_for_bits(len);
    if (mode_ == BitMode::plain) {
        for (u64 k = 0; k < nw; ++k) {
            u64 p = start0 + k * 64;
            u64 take = std::min<u64>(64, len - k * 64);
            u64 avail = (p >= n_) ? 0 : std::min<u64>(take, n_ - p);
            out[k] = avail ? get_bits(words_.data(), p, unsigned(avail)) : 0;
        }
        return;
    }
    std::fill(out, out + nw, 0);
    if (start0 >= n_) return;
    u64 end0 = std::min(n_, start0 + len);
    u64 b = start0 / kCBlock;
    u64 sb = b / kCPerSuper;
    u64 pos = c_off_base_[sb];
    for (u64 t = sb * kCPerSuper; t < b; ++t)
        pos += offset_width(cblock_size(t), cblock_class(t));
    for (; b * kCBlock < end0; ++b) {
        u64 blen = cblock_size(b);
        unsigned m = cblock_class(b);
        unsigned width = offset_width(blen, m);
        u64 bits = decode_offset(get_bits(offsets_.data(), pos, width), blen, m);
        pos += width;
        u64 lo = std::max(start0, b * kCBlock), hi = std::min(end0, b * kCBlock + blen);
        u64 chunk = (bits >> (lo - b * kCBlock)) &
                    ((hi - lo >= 64) ? ~u64(0) : ((u64(1) << (hi - lo)) - 1));
        set_bits(out, lo - start0, unsigned(hi - lo), chunk);
    }
}

u64 BitSeq::extract_word(u64 i, unsigned len) const {
    if (len > 64) throw SrqError("bitseq: extract wider than a word");
    if (i < 1 || (len > 0 && i + len - 1 > n_)) throw SrqError("bitseq: extract out of range");
    if (len == 0) return 0;
    if (mode_ == BitMode::plain) return get_bits(words_.data(), i - 1, len);
    u64 out[2] = {0, 0};
    window(i - 1, len, out);
    return out[0];
}

std::string BitSeq::extract(u64 i, unsigned len) const {
    u64 w = extract_word(i, len);
    std::string s(len, '0');
    for (unsigned k = 0; k < len; ++k)
        if ((w >> k) & 1) s[k] = '1';
    return s;
}

std::string BitSeq::to_string() const {
    std::string s;
    s.reserve(n_);
    for (u64 i = 0; i < n_; i += 64) {
        unsigned take = unsigned(std::min<u64>(64, n_ - i));
        u64 w = extract_word(i + 1, take);
        for (unsigned k = 0; k < take; ++k) s.push_back(((w >> k) & 1) ? '1' : '0');
    }
    return s;
}

std::string BitSeq::to_paren_string() const {
    std::string s = to_string();
    for (char& c : s) c = (c == '1') ? '(' : ')';
    return s;
}

u64 BitSeq::pattern_starts_in_block(u64 blk_idx, std::string_view p) const {
    u64 lo = blk_idx * kBlock;
    u64 hi = std::min(n_, lo + kBlock);
    return scan_pattern_starts(lo, hi, p);
}

// Counts matches with 0-based start position in [from0, upto0).
u64 BitSeq::scan_pattern_starts(u64 from0, u64 upto0, std::string_view p) const {
    unsigned L = unsigned(p.size());
    u64 max_start_excl = (n_ >= L) ? n_ - L + 1 : 0;
    upto0 = std::min(upto0, max_start_excl);
    if (from0 >= upto0) return 0;
    u64 pw = pattern_word(p);
    u64 mask = (u64(1) << L) - 1;
    u64 cnt = 0;
    u64 buf[18];
    constexpr u64 kChunk = 1024;
    for (u64 base = from0; base < upto0; base += kChunk) {
        u64 starts = std::min(kChunk, upto0 - base);
        window(base, starts + L - 1, buf);
        for (u64 s = 0; s < starts; ++s)
            if ((get_bits(buf, s, L) & mask) == pw) ++cnt;
    }
    return cnt;
}

void BitSeq::build_pattern_dir(std::string_view pattern) {
    check_pattern(pattern);
    PatternDir d;
    d.pattern.assign(pattern.begin(), pattern.end());
    for (char& c : d.pattern) c = (c == '(') ? '1' : (c == ')') ? '0' : c;
    u64 nblk = n_ / kBlock + 1;
    u64 nsb = n_ / kSuper + 1;
    d.sb.assign(nsb, 0);
    d.blk.assign(nblk, 0);
    u64 cum = 0;
    for (u64 b = 0; b < nblk; ++b) {
        if (b % (kSuper / kBlock) == 0) d.sb[b / (kSuper / kBlock)] = cum;
        d.blk[b] = u16(cum - d.sb[b / (kSuper / kBlock)]);
        cum += pattern_starts_in_block(b, d.pattern);
    }
    d.total = cum;
    aux_bits_ += d.sb.size() * 64 + d.blk.size() * 16;
    pattern_dirs_.push_back(std::move(d));
}

const BitSeq::PatternDir* BitSeq::find_pattern_dir(std::string_view p) const {
    for (const auto& d : pattern_dirs_)
        if (d.pattern == p) return &d;
    return nullptr;
}

u64 BitSeq::pattern_count(std::string_view pattern) const {
    return rank(n_, pattern);
}

u64 BitSeq::rank(u64 i, std::string_view pattern) const {
    check_pattern(pattern);
    check_rank_pos(i);
    std::string p(pattern);
    for (char& c : p) c = (c == '(') ? '1' : (c == ')') ? '0' : c;
    unsigned L = unsigned(p.size());
    if (i < L) return 0;
    u64 upto0 = i - L + 1;  // starts s0 in [0, upto0) => occurrence ends <= i
    if (L == 1) {
        return (p[0] == '1') ? rank1(i) : rank0(i);
    }
    if (const PatternDir* d = find_pattern_dir(p)) {
        u64 b = upto0 / kBlock;
        u64 r = d->sb[b / (kSuper / kBlock)] + d->blk[b];
        return r + scan_pattern_starts(b * kBlock, upto0, p);
    }
    return scan_pattern_starts(0, upto0, p);
}

u64 BitSeq::select(u64 j, std::string_view pattern) const {
    check_pattern(pattern);
    if (j == 0) throw SrqError("bitseq: select index is 1-based");
    std::string p(pattern);
    for (char& c : p) c = (c == '(') ? '1' : (c == ')') ? '0' : c;
    if (p.size() == 1) return (p[0] == '1') ? select1(j) : select0(j);
    unsigned L = unsigned(p.size());
    if (n_ + 1 < L) throw SrqError("bitseq: select exceeds occurrence count");
    // Smallest end position e with rank(e, p) == j; start = e - L + 1.
    u64 lo = L, hi = n_;
    if (rank(n_, p) < j) throw SrqError("bitseq: select exceeds occurrence count");
    while (lo < hi) {
        u64 mid = lo + (hi - lo) / 2;
        if (rank(mid, p) >= j) hi = mid; else lo = mid + 1;
    }
    return lo - L + 1;
}

void BitSeq::save(std::ostream& os, bool with_dirs) const {
    os.write(kMagic, 4);
    write_u64(os, n_);
    os.put(char(mode_));
    if (mode_ == BitMode::plain) {
        for (u64 w : words_) write_u64(os, w);
    } else {
        write_u64(os, payload_bits_);
        for (u64 w : classes_) write_u64(os, w);
        for (u64 w : offsets_) write_u64(os, w);
    }
    os.put(with_dirs ? 1 : 0);
    if (with_dirs) {
        write_u64(os, rank_sb_.size());
        for (u64 v : rank_sb_) write_u64(os, v);
        write_u64(os, rank_blk_.size());
        for (u16 v : rank_blk_) { os.put(char(v & 0xff)); os.put(char(v >> 8)); }
    }
}

BitSeq BitSeq::load(std::istream& is, std::span<const std::string> indexed_patterns) {
    char m[4];
    is.read(m, 4);
    if (!is || std::memcmp(m, kMagic, 4) != 0) throw SrqError("bitseq: bad magic");
    u64 n = read_u64(is);
    int mode_byte = is.get();
    if (mode_byte != 0 && mode_byte != 1) throw SrqError("bitseq: bad mode byte");
    BitMode mode = BitMode(mode_byte);
    std::vector<u64> w;
    if (mode == BitMode::plain) {
        w.resize(words_for_bits(n));
        for (auto& x : w) x = read_u64(is);
    } else {
        u64 off_bits = read_u64(is);
        u64 nb = (n + kCBlock - 1) / kCBlock;
        std::vector<u64> classes(words_for_bits(nb * 6));
        for (auto& x : classes) x = read_u64(is);
        std::vector<u64> offs(words_for_bits(off_bits));
        for (auto& x : offs) x = read_u64(is);
        // Re-expand and rebuild; keeps a single construction path.
        w.assign(words_for_bits(n), 0);
        u64 pos = 0;
        for (u64 b = 0; b < nb; ++b) {
            u64 len = (b + 1 < nb) ? kCBlock : n - b * kCBlock;
            unsigned cls = unsigned(get_bits(classes.data(), b * 6, 6));
            unsigned width = offset_width(len, cls);
            u64 bits = decode_offset(get_bits(offs.data(), pos, width), len, cls);
            pos += width;
            set_bits(w.data(), b * kCBlock, unsigned(len), bits);
        }
    }
    int has_dirs = is.get();
    if (has_dirs == 1) {  // skip; directories are rebuilt deterministically
        u64 c1 = read_u64(is);
        for (u64 i = 0; i < c1; ++i) read_u64(is);
        u64 c2 = read_u64(is);
        for (u64 i = 0; i < c2; ++i) { is.get(); is.get(); }
    }
    return from_words(std::move(w), n, mode, indexed_patterns);
}

bool BitSeq::operator==(const BitSeq& o) const {
    if (n_ != o.n_) return false;
    for (u64 i = 0; i < n_; i += 64) {
        unsigned take = unsigned(std::min<u64>(64, n_ - i));
        if (extract_word(i + 1, take) != o.extract_word(i + 1, take)) return false;
    }
    return true;
}

} // namespace srq
