#include "doctest.h"

#include <functional>
#include <random>

#include "srq/array_io.hpp"
#include "srq/heap_build.hpp"
#include "srq/heap_encoding.hpp"

using namespace srq;

namespace {

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

struct DirectHeap {
    OwnedBits bits;
    BitSeq v;
    DfudsTree<OwnedBits> tree;
    HeapEncoding<OwnedBits> heap;

    DirectHeap(std::span<const i64> a, Side side)
        : bits(OwnedBits::from_parens(build_dfuds(a, side))),
          v(BitSeq::build(build_colors(a, side), BitMode::plain)),
          tree(bits),
          heap(&tree, ColorBits{&v, 0, v.size()}, side) {}
};

const std::vector<i64> kFigArray = {2, 5, 4, 6, 6, 6, 2, 1, 1, 7, 9, 8};

} // namespace

TEST_CASE("color index round trip on the figure") {
    DirectHeap h(kFigArray, Side::min);
    CHECK(h.heap.node_color_index(3) == 4);
    CHECK(h.heap.node_color_index(9) == 1);
    CHECK(h.heap.node_color_index(12) == 7);
    CHECK(h.heap.node_color_index(1) == kNone);   // leftmost child of the root
    CHECK(h.heap.node_color_index(0) == kNone);
    CHECK(h.heap.node_of_color_index(4) == 3);
    CHECK(h.heap.node_of_color_index(7) == 12);
    for (u64 v = 1; v < h.v.size(); ++v)
        CHECK(h.heap.node_color_index(h.heap.node_of_color_index(v)) == v);
}

TEST_CASE("simple shapes") {
    {
        std::vector<i64> a{3, 2, 1};  // strictly decreasing: nsv(i) = i+1
        DirectHeap h(a, Side::min);
        for (u64 i = 1; i <= 3; ++i) CHECK(h.heap.nsv(i) == i + 1);
        CHECK(h.heap.psv(1) == 0);
    }
    {
        std::vector<i64> a{1, 2, 3};  // strictly increasing chain
        DirectHeap h(a, Side::min);
        for (u64 i = 1; i <= 3; ++i) CHECK(h.heap.psv(i) == i - 1);
        CHECK(h.heap.nsv(3) == 4);
        for (u64 i = 1; i <= 3; ++i)
            for (u64 j = i; j <= 3; ++j) CHECK(h.heap.rrminq(i, j) == i);
        DirectHeap hx(a, Side::max);
        for (u64 i = 1; i <= 3; ++i) CHECK(hx.heap.nsv(i) == i + 1);  // NLV dual
    }
    {
        std::vector<i64> a{2, 1, 1, 2};
        DirectHeap h(a, Side::min);
        CHECK(h.heap.rlminq(1, 4) == 2);
        CHECK(h.heap.rrminq(1, 4) == 3);
        CHECK(h.heap.rkminq(1, 4, 1) == 2);
        CHECK(h.heap.rkminq(1, 4, 2) == 3);
        CHECK(h.heap.rkminq(1, 4, 3) == std::nullopt);
    }
}

TEST_CASE("figure array spot checks") {
    DirectHeap h(kFigArray, Side::min);
    // A = 2 5 4 6 6 6 2 1 1 7 9 8
    CHECK(h.heap.rrminq(7, 9) == 9);
    CHECK(h.heap.rlminq(7, 9) == 8);
    CHECK(h.heap.rlminq(4, 6) == 4);
    CHECK(h.heap.rrminq(4, 6) == 6);
    CHECK(h.heap.rkminq(4, 6, 2) == 5);
    CHECK(h.heap.nsv(7) == 8);
    CHECK(h.heap.nsv(1) == 8);
    CHECK(h.heap.psv(10) == 9);
}

TEST_CASE("exhaustive equivalence with the oracle") {
    for_all_small_arrays(7, [](const std::vector<i64>& a) {
        u64 n = a.size();
        DirectHeap hmin(a, Side::min), hmax(a, Side::max);
        for (u64 i = 1; i <= n; ++i) {
            CHECK(hmin.heap.psv(i) == *oracle_answer(a, {QueryKind::PSV, i, 0, 1}));
            CHECK(hmin.heap.nsv(i) == *oracle_answer(a, {QueryKind::NSV, i, 0, 1}));
            CHECK(hmax.heap.psv(i) == *oracle_answer(a, {QueryKind::PLV, i, 0, 1}));
            CHECK(hmax.heap.nsv(i) == *oracle_answer(a, {QueryKind::NLV, i, 0, 1}));
            for (u64 j = i; j <= n; ++j) {
                CHECK(hmin.heap.rrminq(i, j) ==
                      *oracle_answer(a, {QueryKind::RRMinQ, i, j, 1}));
                CHECK(hmin.heap.rlminq(i, j) ==
                      *oracle_answer(a, {QueryKind::RLMinQ, i, j, 1}));
                CHECK(hmax.heap.rrminq(i, j) ==
                      *oracle_answer(a, {QueryKind::RRMaxQ, i, j, 1}));
                CHECK(hmax.heap.rlminq(i, j) ==
                      *oracle_answer(a, {QueryKind::RLMaxQ, i, j, 1}));
                for (u64 k = 1; k <= j - i + 2; ++k) {
                    auto want = oracle_answer(a, {QueryKind::RkMinQ, i, j, k});
                    auto got = hmin.heap.rkminq(i, j, k);
                    CHECK(got == want);
                    auto wantx = oracle_answer(a, {QueryKind::RkMaxQ, i, j, k});
                    auto gotx = hmax.heap.rkminq(i, j, k);
                    CHECK(gotx == wantx);
                }
            }
        }
    });
}

TEST_CASE("query invariants on random arrays") {
    std::mt19937_64 rng(77);
    for (int t = 0; t < 40; ++t) {
        u64 n = 50 + rng() % 200;
        auto a = random_array(n, 0.3, rng());
        DirectHeap h(a, Side::min);
        for (int q = 0; q < 200; ++q) {
            u64 i = 1 + rng() % n;
            u64 j = i + rng() % (n - i + 1);
            u64 rr = h.heap.rrminq(i, j);
            u64 rl = h.heap.rlminq(i, j);
            CHECK(i <= rl);
            CHECK(rl <= rr);
            CHECK(rr <= j);
            CHECK(a[rl - 1] == a[rr - 1]);
            for (u64 p = i; p <= j; ++p) CHECK(a[p - 1] >= a[rr - 1]);
            u64 ps = h.heap.psv(i), nv = h.heap.nsv(i);
            CHECK(ps < i);
            CHECK(i < nv);
            if (ps > 0) CHECK(a[ps - 1] < a[i - 1]);
            for (u64 qq = ps + 1; qq < i; ++qq) CHECK(a[qq - 1] >= a[i - 1]);
            if (nv <= n) CHECK(a[nv - 1] < a[i - 1]);
        }
    }
}

TEST_CASE("query errors") {
    DirectHeap h(kFigArray, Side::min);
    CHECK_THROWS_AS(h.heap.psv(0), SrqError);
    CHECK_THROWS_AS(h.heap.psv(13), SrqError);
    CHECK_THROWS_AS(h.heap.rrminq(3, 2), SrqError);
    CHECK_THROWS_AS(h.heap.rkminq(1, 2, 0), SrqError);
}
