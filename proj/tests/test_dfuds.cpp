#include "doctest.h"

#include <functional>

#include "srq/dfuds.hpp"
#include "srq/heap_build.hpp"
#include "srq/oracle.hpp"

using namespace srq;

namespace {

DfudsTree<OwnedBits> make_tree(const std::string& d) {
    return DfudsTree<OwnedBits>(OwnedBits::from_parens(d));
}

// every array of length 1..max_len over {1..3}
void for_all_small_arrays(u64 max_len, const std::function<void(const std::vector<i64>&)>& fn) {
    for (u64 len = 1; len <= max_len; ++len) {
        std::vector<i64> a(len, 1);
        while (true) {
            fn(a);
            u64 p = 0;
            while (p < len && a[p] == 3) a[p++] = 1;
            if (p == len) break;
            ++a[p];
        }
    }
}

} // namespace

TEST_CASE("fig3 rows") {
    const std::string fig = "((((()(())((())))))()(()))";
    auto t = make_tree(fig);
    CHECK(t.node_count() == 13);
    const u64 pre_rank_row[26] = {0, 0, 0, 0, 0, 0, 1, 1, 1, 2, 3, 3, 3,
                                  3, 4, 5, 6, 7, 8, 9, 9, 10, 10, 10, 11, 12};
    for (u64 i = 1; i <= 26; ++i) CHECK(t.pre_rank(i) == pre_rank_row[i - 1]);
    const u64 pre_select_row[13] = {1, 7, 10, 11, 15, 16, 17, 18, 19, 20, 22, 25, 26};
    for (u64 x = 0; x < 13; ++x) CHECK(t.pre_select(x) == pre_select_row[x]);
    CHECK(t.pre_rank(11) == 3);
    CHECK(t.pre_select(3) == 11);
    CHECK(t.degree(0) == 4);
    CHECK(t.parent(0) == kNone);
    CHECK(t.depth(0) == 0);
    // the root's children per the matched structure
    CHECK(t.child(0, 1) == 1);
    CHECK(t.child(0, 2) == 7);
    CHECK(t.child(0, 3) == 8);
    CHECK(t.child(0, 4) == 9);
    CHECK(t.parent(3) == 1);
    CHECK(t.next_sibling(2) == 3);
    CHECK(t.subtree_size(0) == 13);
    CHECK(t.subtree_size(1) == 6);
    CHECK(t.lca(4, 8) == 0);
    CHECK(t.lca(2, 5) == 1);
}

TEST_CASE("exhaustive differential vs explicit oracle tree") {
    for_all_small_arrays(7, [](const std::vector<i64>& a) {
        OracleTree ot = oracle_min_tree(a);
        auto t = make_tree(ot.dfuds);
        u64 N = a.size() + 1;
        REQUIRE(t.node_count() == N);
        // depths and parents
        for (u64 x = 0; x < N; ++x) {
            if (x == 0) CHECK(t.parent(x) == kNone);
            else CHECK(t.parent(x) == ot.parent[x]);
            CHECK(t.depth(x) == ot.depth[x]);
            CHECK(t.degree(x) == ot.children[x].size());
            // subtree sizes by counting labels in the oracle
            u64 sz = 0;
            std::function<void(u64)> cnt = [&](u64 y) {
                ++sz;
                for (u64 c : ot.children[y]) cnt(c);
            };
            cnt(x);
            CHECK(t.subtree_size(x) == sz);
            // children, child_rank, next_sibling
            for (size_t r = 0; r < ot.children[x].size(); ++r) {
                u64 c = ot.children[x][r];
                CHECK(t.child(x, r + 1) == c);
                CHECK(t.child_rank(c) == r);
                if (r + 1 < ot.children[x].size())
                    CHECK(t.next_sibling(c) == ot.children[x][r + 1]);
                else
                    CHECK(t.next_sibling(c) == kNone);
            }
        }
        // pre_select/pre_rank consistency
        for (u64 x = 0; x < N; ++x) CHECK(t.pre_rank(t.pre_select(x)) == x);
        for (u64 x = 1; x < N; ++x) CHECK(t.pre_select(x - 1) < t.pre_select(x));
        // level ancestors by repeated parent
        for (u64 x = 0; x < N; ++x) {
            u64 cur = x;
            for (u64 d = t.depth(x);; --d) {
                CHECK(t.level_anc(x, d) == cur);
                if (d == 0) break;
                cur = t.parent(cur);
            }
        }
        // lca by ancestor-set intersection
        auto ancestors = [&](u64 x) {
            std::vector<u64> v{x};
            while (x != 0) {
                x = ot.parent[x];
                v.push_back(x);
            }
            return v;
        };
        for (u64 x = 0; x < N; ++x)
            for (u64 y = x; y < N; ++y) {
                auto ax = ancestors(x);
                u64 best = 0;
                for (u64 cand : ancestors(y)) {
                    for (u64 e : ax)
                        if (e == cand) { best = cand; goto found; }
                }
            found:
                CHECK(t.lca(x, y) == best);
                CHECK(t.lca(y, x) == best);
            }
        // degree sum
        u64 degsum = 0;
        for (u64 x = 0; x < N; ++x) degsum += t.degree(x);
        CHECK(degsum == N - 1);
    });
}

TEST_CASE("deep chain sampling") {
    // strictly increasing array: min-heap is a single chain; exercises the
    // depth samples and long level-ancestor jumps
    std::vector<i64> a(400);
    for (u64 i = 0; i < 400; ++i) a[i] = i64(i);
    std::string d = build_min_dfuds(a);
    auto t = make_tree(d);
    CHECK(t.depth(400) == 400);
    CHECK(t.level_anc(400, 0) == 0);
    CHECK(t.level_anc(400, 117) == 117);
    CHECK(t.level_anc(399, 63) == 63);
    CHECK(t.lca(200, 400) == 200);
}
