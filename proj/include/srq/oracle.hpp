#ifndef SRQ_ORACLE_HPP
#define SRQ_ORACLE_HPP

#include <optional>
#include <span>
#include <string>
#include <vector>

#include "srq/common.hpp"

namespace srq {

enum class QueryKind : u8 {
    RMinQ, RLMinQ, RRMinQ, RkMinQ,
    RMaxQ, RLMaxQ, RRMaxQ, RkMaxQ,
    PSV, NSV, PLV, NLV,
};

bool is_range_kind(QueryKind k);
bool is_kth_kind(QueryKind k);
bool needs_colors(QueryKind k);
const char* kind_name(QueryKind k);
std::optional<QueryKind> kind_from_name(std::string_view name);

struct QuerySpec {
    QueryKind kind;
    u64 i = 0;
    u64 j = 0;
    u64 k = 1;
};

enum class Side : u8 { min = 0, max = 1 };

// Reference answers by linear scan. Sentinels: 0 on the left, n+1 on the
// right. RMinQ/RMaxQ resolve to the rightmost extremal position. Returns
// nullopt only when a k-th query asks beyond the occurrence count.
std::optional<u64> oracle_answer(std::span<const i64> a, const QuerySpec& q);

// Explicit heap built from the definitions: parent(i) = PSV(i) (min side) or
// PLV(i) (max side), children ordered by label, colors by left-sibling
// comparison, DFUDS by the definitional recursion.
struct OracleTree {
    u64 n = 0;
    Side side = Side::min;
    std::vector<u64> parent;               // size n+1; parent[0] = kNone
    std::vector<std::vector<u64>> children;
    std::vector<bool> red;                 // size n+1; root and leftmost children blue
    std::string dfuds;                     // 2(n+1) parens
    std::vector<u64> depth;                // root depth 0

    bool is_leftmost_child(u64 x) const {
        return x != 0 && children[parent[x]].front() == x;
    }
};

OracleTree oracle_min_tree(std::span<const i64> a, Side side = Side::min);

// Color bitstring in "((" occurrence order (sentinel 1 first); the oracle
// route to V_min / V_max.
std::vector<bool> oracle_colors(const OracleTree& t);

} // namespace srq

#endif
