#ifndef SRQ_BITSEQ_HPP
#define SRQ_BITSEQ_HPP

#include <iosfwd>
#include <optional>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "srq/common.hpp"

namespace srq {

enum class BitMode : u8 { plain = 0, compressed = 1 };

// Immutable bit sequence with rank/select for single bits and short patterns
// (length <= 8), plus word extraction. Positions are 1-based. In compressed
// mode the payload is a class/offset code over 63-bit blocks; enumerative
// offsets count as payload, class fields and directories as aux.
//
// rank(i, p) counts occurrences of p that end at or before position i.
// select(j, p) returns the start position of the j-th occurrence.
class BitSeq {
public:
    BitSeq() = default;

    static BitSeq build(const std::vector<bool>& bits, BitMode mode,
                        std::span<const std::string> indexed_patterns = {});
    static BitSeq from_paren_string(std::string_view parens, BitMode mode,
                                    std::span<const std::string> indexed_patterns = {});
    static BitSeq from_words(std::vector<u64> words, u64 nbits, BitMode mode,
                             std::span<const std::string> indexed_patterns = {});

    u64 size() const { return n_; }
    BitMode mode() const { return mode_; }
    bool empty() const { return n_ == 0; }

    bool get(u64 i) const;                  // 1 <= i <= n
    u64 ones() const { return ones_; }

    u64 rank1(u64 i) const;                 // 0 <= i <= n
    u64 rank0(u64 i) const { check_rank_pos(i); return i - rank1(i); }
    u64 select1(u64 j) const;               // 1 <= j <= ones
    u64 select0(u64 j) const;

    u64 rank(u64 i, std::string_view pattern) const;
    u64 select(u64 j, std::string_view pattern) const;
    u64 pattern_count(std::string_view pattern) const;

    // Bits S[i..i+len-1], LSB-first in the returned word. len <= 64.
    u64 extract_word(u64 i, unsigned len) const;
    std::string extract(u64 i, unsigned len) const;
    // 0-based window fill for streaming consumers; out must hold
    // words_for_bits(len) words.
    void window(u64 start0, u64 len, u64* out) const;

    u64 payload_bits() const { return payload_bits_; }
    u64 aux_bits() const { return aux_bits_; }

    void save(std::ostream& os, bool with_dirs = true) const;
    static BitSeq load(std::istream& is,
                       std::span<const std::string> indexed_patterns = {});

    bool operator==(const BitSeq& o) const;
    std::string to_string() const;
    std::string to_paren_string() const;

private:
    static constexpr u64 kBlock = 1024;        // plain-mode rank block
    static constexpr u64 kSuper = 4096;        // plain-mode superblock
    static constexpr u64 kCBlock = 63;         // compressed code block
    static constexpr u64 kCPerSuper = 64;      // code blocks per superblock

    u64 n_ = 0;
    BitMode mode_ = BitMode::plain;
    u64 ones_ = 0;
    u64 payload_bits_ = 0;
    u64 aux_bits_ = 0;

    std::vector<u64> words_;                   // plain payload

    std::vector<u64> classes_;                 // packed 6-bit classes
    std::vector<u64> offsets_;                 // packed enumerative offsets
    std::vector<u64> c_off_base_;              // offset bit base per superblock
    std::vector<u64> rank_sb_;                 // cum ones per superblock
    std::vector<u16> rank_blk_;                // cum ones per block, rel to sb

    struct PatternDir {
        std::string pattern;
        u64 total = 0;
        std::vector<u64> sb;                   // cum starts per 4096 bits
        std::vector<u16> blk;                  // rel cum per 1024 bits
    };
    std::vector<PatternDir> pattern_dirs_;

    void build_from_words(std::vector<u64>&& w, u64 nbits, BitMode mode,
                          std::span<const std::string> indexed_patterns);
    void build_rank_dirs_plain();
    void build_compressed(const std::vector<u64>& w);
    void build_pattern_dir(std::string_view pattern);
    const PatternDir* find_pattern_dir(std::string_view p) const;

    u64 decode_cblock(u64 b) const;            // 63-bit (or tail) block content
    u64 cblock_size(u64 b) const;
    unsigned cblock_class(u64 b) const;
    u64 scan_pattern_starts(u64 from0, u64 upto_start0, std::string_view p) const;
    u64 pattern_starts_in_block(u64 blk_idx, std::string_view p) const;
    void check_rank_pos(u64 i) const;

    static void check_pattern(std::string_view p);
    static u64 pattern_word(std::string_view p);
};

} // namespace srq

#endif
