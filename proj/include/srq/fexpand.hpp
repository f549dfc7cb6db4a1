#ifndef SRQ_FEXPAND_HPP
#define SRQ_FEXPAND_HPP

#include <array>
#include <string>
#include <string_view>
#include <vector>

#include "srq/common.hpp"

namespace srq {

// Left-anchored merge of a group sequence s with duplicate bits c: a 1-bit
// emits a bare ')', a 0-bit emits one whole group "(^d )" from s; an
// exhausted c copies the rest of s, an exhausted s ends the output.
std::string f_expand(std::string_view s, std::string_view c);

// Right-anchored mirror: consumes s and c from their ends, emitting to the
// front of the output.
std::string f_prime_expand(std::string_view s, std::string_view c);

// Chunked evaluation tables. A key is (phase, s-chunk, c-chunk) where phase 1
// means a group's opens are still being copied (its 0-bit already consumed).
// Chained lookups reproduce f (f') on arbitrary strings as long as full
// chunks are supplied; tails are evaluated bitwise by the caller.
struct FChunk {
    u16 out;       // emitted bits, LSB-first ('(' = 1); for f' reversed order
    u8 out_len;
    u8 s_used;
    u8 c_used;
    u8 end_phase;
};

class FTables {
public:
    explicit FTables(unsigned chunk_bits);

    unsigned chunk_bits() const { return chunk_; }
    const FChunk& fwd(unsigned phase, unsigned s_chunk, unsigned c_chunk) const {
        return fwd_[(phase << (2 * chunk_)) | (c_chunk << chunk_) | s_chunk];
    }
    const FChunk& bwd(unsigned phase, unsigned s_chunk, unsigned c_chunk) const {
        return bwd_[(phase << (2 * chunk_)) | (c_chunk << chunk_) | s_chunk];
    }
    u64 entry_count() const { return u64(1) << (2 * chunk_); }  // per phase
    u64 table_bits() const {
        return (fwd_.size() + bwd_.size()) * sizeof(FChunk) * 8;
    }

private:
    unsigned chunk_;
    std::vector<FChunk> fwd_, bwd_;
};

// Shared instance with 8-bit chunks.
const FTables& f_tables();

// Builds tables of the given chunk size (<= 16 per the memory budget).
FTables build_tables(unsigned chunk_bits);

} // namespace srq

#endif
