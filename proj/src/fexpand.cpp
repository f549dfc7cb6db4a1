#include "srq/fexpand.hpp"

#include <algorithm>

namespace srq {

std::string f_expand(std::string_view s, std::string_view c) {
    std::string out;
    out.reserve(s.size() + c.size());
    size_t sp = 0;
    for (size_t cp = 0; cp < c.size(); ++cp) {
        if (sp == s.size()) return out;
        if (c[cp] == '1') {
            out.push_back(')');
            continue;
        }
        while (sp < s.size() && s[sp] == '(') out.push_back(s[sp++]);
        if (sp == s.size()) return out;  // group never closes: nothing more to emit
        out.push_back(s[sp++]);          // the group's ')'
    }
    out.append(s.substr(sp));
    return out;
}

std::string f_prime_expand(std::string_view s, std::string_view c) {
    std::string out;
    size_t sp = s.size();
    for (size_t cp = c.size(); cp-- > 0;) {
        if (sp == 0) break;
        if (c[cp] == '1') {
            out.push_back(')');
            continue;
        }
        out.push_back(s[--sp]);  // the group's ')'
        while (sp > 0 && s[sp - 1] == '(') out.push_back(s[--sp]);
    }
    while (sp > 0) out.push_back(s[--sp]);
    std::reverse(out.begin(), out.end());
    return out;
}

namespace {

FChunk eval_fwd(unsigned chunk, unsigned phase, unsigned s8, unsigned c8) {
    FChunk r{0, 0, 0, 0, phase ? u8(1) : u8(0)};
    unsigned sp = 0, cp = 0;
    bool in_group = phase;
    auto emit = [&](bool open) {
        r.out |= u16(open ? 1 : 0) << r.out_len;
        ++r.out_len;
    };
    while (true) {
        if (in_group) {
            if (sp == chunk) break;
            bool open = (s8 >> sp) & 1;
            ++sp;
            emit(open);
            if (!open) in_group = false;
        } else {
            // emitting on a c-bit needs a provably nonempty s
            if (cp == chunk || sp == chunk) break;
            bool one = (c8 >> cp) & 1;
            ++cp;
            if (one) {
                emit(false);
            } else {
                in_group = true;
            }
        }
    }
    r.s_used = u8(sp);
    r.c_used = u8(cp);
    r.end_phase = in_group ? 1 : 0;
    return r;
}

// Backward chunks are packed reversed: index t holds the t-th bit counting
// from the chunk's right end. Output is likewise emitted right-to-left.
FChunk eval_bwd(unsigned chunk, unsigned phase, unsigned s8, unsigned c8) {
    FChunk r{0, 0, 0, 0, phase ? u8(1) : u8(0)};
    unsigned sp = 0, cp = 0;
    bool in_group = phase;  // copying a group's opens, close already emitted
    auto emit = [&](bool open) {
        r.out |= u16(open ? 1 : 0) << r.out_len;
        ++r.out_len;
    };
    while (true) {
        if (in_group) {
            if (sp == chunk) break;
            bool open = (s8 >> sp) & 1;
            if (!open) {  // next group's close: hand control back to c
                in_group = false;
                continue;
            }
            ++sp;
            emit(true);
        } else {
            if (cp == chunk || sp == chunk) break;
            bool one = (c8 >> cp) & 1;
            ++cp;
            if (one) {
                emit(false);
            } else {
                // group consumed right-to-left: close first, then opens
                ++sp;
                emit(false);
                in_group = true;
            }
        }
    }
    r.s_used = u8(sp);
    r.c_used = u8(cp);
    r.end_phase = in_group ? 1 : 0;
    return r;
}

} // namespace

FTables::FTables(unsigned chunk_bits) : chunk_(chunk_bits) {
    if (chunk_bits == 0 || chunk_bits > 16)
        throw SrqError("fexpand: chunk size must be 1..16");
    u64 per_phase = u64(1) << (2 * chunk_);
    fwd_.resize(2 * per_phase);
    bwd_.resize(2 * per_phase);
    for (unsigned phase = 0; phase < 2; ++phase)
        for (u64 cc = 0; cc < (u64(1) << chunk_); ++cc)
            for (u64 ss = 0; ss < (u64(1) << chunk_); ++ss) {
                fwd_[(u64(phase) << (2 * chunk_)) | (cc << chunk_) | ss] =
                    eval_fwd(chunk_, phase, unsigned(ss), unsigned(cc));
                bwd_[(u64(phase) << (2 * chunk_)) | (cc << chunk_) | ss] =
                    eval_bwd(chunk_, phase, unsigned(ss), unsigned(cc));
            }
}

FTables build_tables(unsigned chunk_bits) { return FTables(chunk_bits); }

const FTables& f_tables() {
    static const FTables t(8);
    return t;
}

} // namespace srq
