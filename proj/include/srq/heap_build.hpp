#ifndef SRQ_HEAP_BUILD_HPP
#define SRQ_HEAP_BUILD_HPP

#include <span>
#include <string>
#include <vector>

#include "srq/oracle.hpp"

namespace srq {

// Stack-built DFUDS of the 2d-Min (Max) heap on A; 2(n+1) parens, node
// labels = preorder ranks = array positions, parent(i) = PSV(i) (PLV for max).
std::string build_min_dfuds(std::span<const i64> a);
std::string build_max_dfuds(std::span<const i64> a);
std::string build_dfuds(std::span<const i64> a, Side side);

// Color bits in "((" occurrence order; bit 0 is the sentinel 1, then one bit
// per non-leftmost child (1 = blue, 0 = red).
std::vector<bool> build_colors(std::span<const i64> a, Side side);

struct DedupResult {
    std::vector<i64> a_prime;   // values at C-zero positions
    std::vector<bool> c_bits;   // size n; c_bits[i-1] = (A[i-1] == A[i])
    u64 k = 0;                  // ones in C
    std::vector<u64> run_starts;  // 1-based positions of C-zeros (pos_1..pos_{n-k})
};

DedupResult dedup(std::span<const i64> a);

struct TUEncoding {
    std::string t;              // group per element: (^{pops-1} ) ... final ")"
    std::vector<bool> u;        // u[i-1] for element i; false = min popped
    u64 root_min_count = 0;
    u64 root_max_count = 0;
    std::vector<u64> group_opens;  // opens of group i at [i-1]; size = input length
};

// Requires no consecutive equal elements.
TUEncoding build_tu(std::span<const i64> a_prime);

struct TPrimeResult {
    std::string t_prime;        // groups widened by the duplicate pops of A's run
    std::vector<bool> u_prime;  // identical to U of A'
    DedupResult dd;
    TUEncoding tu;              // T/U of A'
    u64 root_min_a = 0;         // A-run stack leftovers, duplicates included
    u64 root_max_a = 0;
    std::vector<u64> group_opens_a;  // A-run side pops per group, minus 1
};

TPrimeResult build_tpup(std::span<const i64> a);

struct DPrimeSeq {
    std::string bits;           // body groups only; exactly n-k closes
};

DPrimeSeq build_dprime(std::span<const i64> a, Side side);

// Merge rule: D_side(A') from (T, U, root counts) alone.
std::string dfuds_from_tu(const TUEncoding& tu, Side side);

// Payload-only derivation of the widened-group info: given the group opens of
// T (on A'), the U bits, and the duplicate-run lengths from C, reconstructs
// the extra pops each group performs in A's run and the A-run root counts.
struct RunDerived {
    std::vector<u64> eps_min, eps_max;  // indexed by group (0-based), size = #groups
    u64 root_min_a = 0, root_max_a = 0;
};

RunDerived derive_run_info(std::span<const u64> t_group_opens,
                           const std::vector<bool>& u,
                           std::span<const u64> run_lengths,
                           u64 root_min_prime, u64 root_max_prime);

} // namespace srq

#endif
