#ifndef SRQ_HEAP_ENCODING_HPP
#define SRQ_HEAP_ENCODING_HPP

#include <optional>

#include "srq/bitseq.hpp"
#include "srq/dfuds.hpp"
#include "srq/oracle.hpp"

namespace srq {

// View of a color bitstring stored inside a larger BitSeq. Indices are the
// 0-based V positions; bit 0 is the sentinel 1, a 0 bit means red.
struct ColorBits {
    const BitSeq* seq = nullptr;
    u64 off = 0;   // bits preceding V inside seq
    u64 len = 0;

    bool get(u64 idx) const { return seq->get(off + idx + 1); }
    u64 zeros_through(u64 idx) const {
        return (idx + 1) - (seq->rank1(off + idx + 1) - seq->rank1(off));
    }
    u64 zeros() const { return len ? zeros_through(len - 1) : 0; }
    u64 select0(u64 j) const {  // 0-based V index of the j-th zero
        u64 lo = 0, hi = len - 1;
        while (lo < hi) {
            u64 mid = lo + (hi - lo) / 2;
            if (zeros_through(mid) >= j) hi = mid; else lo = mid + 1;
        }
        return lo;
    }
};

// One colored 2d-Min (or Max) heap: tree navigation plus color lookups. On a
// max-side instance psv/nsv and the range operations answer the larger-value
// duals (PLV, NLV, RRMaxQ, ...): the code is identical, only the underlying
// heap differs.
template <class Src>
class HeapEncoding {
public:
    HeapEncoding() = default;
    HeapEncoding(const DfudsTree<Src>* tree, ColorBits v, Side side)
        : tree_(tree), v_(v), side_(side), n_(tree->node_count() - 1) {}

    Side side() const { return side_; }
    u64 array_length() const { return n_; }
    const DfudsTree<Src>& tree() const { return *tree_; }
    const ColorBits& colors() const { return v_; }

    // V index holding x's color; kNone for the root and leftmost children.
    u64 node_color_index(u64 x) const {
        if (x > n_) throw SrqError("heap: label out of range");
        if (x == 0) return kNone;
        const auto& ps = tree_->parens();
        u64 o = ps.findopen(tree_->pre_select(x) - 1);
        if (!ps.bit(o + 1)) return kNone;  // last open of the group: leftmost child
        return ps.pair_rank(o) - 1;
    }

    u64 node_of_color_index(u64 v) const {
        if (v < 1 || v >= v_.len) throw SrqError("heap: color index out of range");
        const auto& ps = tree_->parens();
        u64 s = ps.pair_select(v + 1);
        return tree_->pre_rank(ps.findclose(s) + 1);
    }

    // Previous strictly smaller (min side) / larger (max side); 0 = sentinel.
    u64 psv(u64 i) const {
        check_pos(i);
        return tree_->parent(i);
    }

    // Next strictly smaller (larger); n+1 = sentinel.
    u64 nsv(u64 i) const {
        check_pos(i);
        u64 p = tree_->parent(i);
        u64 deg = tree_->degree(p);
        u64 cr = tree_->child_rank(i);
        if (cr + 1 < deg) {
            u64 ns = tree_->child(p, cr + 2);
            u64 vi = node_color_index(ns);
            u64 z = v_.zeros_through(vi);
            if (z >= 1) {
                u64 u = v_.select0(z);  // nearest red at index <= vi
                u64 cand = node_of_color_index(u);
                if (tree_->parent(cand) == p) return cand;
            }
        }
        u64 r = tree_->child(p, deg);
        return r + tree_->subtree_size(r);
    }

    // Rightmost position of the range extremum.
    u64 rrminq(u64 i, u64 j) const {
        check_range(i, j);
        if (i == j) return i;
        const auto& ps = tree_->parens();
        u64 w = ps.min_excess_pos(ps.select_close(i), ps.select_close(j));
        return ps.rank_close(w);
    }

    // Leftmost position of the range extremum.
    u64 rlminq(u64 i, u64 j) const {
        check_range(i, j);
        u64 m = rrminq(i, j);
        u64 vi = node_color_index(m);
        if (vi == kNone) return m;       // leftmost child: no left siblings
        if (!v_.get(vi)) return m;       // red: strictly below its left sibling
        u64 p = tree_->parent(m);
        u64 runleft = kNone;
        u64 z = v_.zeros_through(vi);
        if (z + 1 <= v_.zeros()) {
            u64 u = v_.select0(z + 1);   // first red at an index beyond vi
            u64 cand = node_of_color_index(u);
            if (tree_->parent(cand) == p) runleft = cand;
        }
        if (runleft == kNone) runleft = tree_->child(p, 1);
        u64 lm = leftmost_in_range(i, m);
        return tree_->child_rank(runleft) >= tree_->child_rank(lm) ? runleft : lm;
    }

    std::optional<u64> rkminq(u64 i, u64 j, u64 k) const {
        if (k < 1) throw SrqError("heap: k must be positive");
        u64 rl = rlminq(i, j);
        u64 rr = rrminq(i, j);
        if (tree_->child_rank(rr) - tree_->child_rank(rl) < k - 1) return std::nullopt;
        if (k == 1) return rl;
        return tree_->child(tree_->parent(rr), tree_->child_rank(rl) + k);
    }

private:
    const DfudsTree<Src>* tree_ = nullptr;
    ColorBits v_{};
    Side side_ = Side::min;
    u64 n_ = 0;

    void check_pos(u64 i) const {
        if (i < 1 || i > n_) throw SrqError("heap: position out of range");
    }
    void check_range(u64 i, u64 j) const {
        if (i < 1 || i > j || j > n_) throw SrqError("heap: bad range");
    }

    // Leftmost sibling of m whose label is still >= i.
    u64 leftmost_in_range(u64 i, u64 m) const {
        u64 dm = tree_->depth(m);
        u64 di = tree_->depth(i);
        if (di == dm) return i;
        return tree_->next_sibling(tree_->level_anc(i, dm));
    }
};

} // namespace srq

#endif
