#ifndef SRQ_DFUDS_HPP
#define SRQ_DFUDS_HPP

#include <algorithm>
#include <vector>

#include "srq/parenseq.hpp"

namespace srq {

// Ordinal-tree navigation over a DFUDS sequence. Nodes are preorder labels
// 0..N-1; the sequence holds N closes, one terminating each node's group,
// with one extra wrapper '(' at position 1. Root depth is 0 and
// child_rank(root) = 0.
template <class Src>
class DfudsTree {
public:
    DfudsTree() = default;

    explicit DfudsTree(Src src) : ps_(std::move(src)) {
        if (ps_.size() == 0) throw SrqError("dfuds: empty sequence");
        if (!ps_.balanced() || !ps_.bit(1))
            throw SrqError("dfuds: not a DFUDS sequence");
        n_ = ps_.total_closes();
        build_depth_samples();
    }

    const ParenSeq<Src>& parens() const { return ps_; }
    u64 node_count() const { return n_; }

    u64 pre_select(u64 x) const {
        check_label(x);
        return x == 0 ? 1 : ps_.select_close(x) + 1;
    }

    u64 pre_rank(u64 i) const {
        if (i < 1 || i > ps_.size()) throw SrqError("dfuds: position out of range");
        return ps_.rank_close(i - 1);
    }

    u64 degree(u64 x) const {
        check_label(x);
        u64 gend = ps_.select_close(x + 1);
        return gend - pre_select(x) - (x == 0 ? 1 : 0);
    }

    // kNone for the root.
    u64 parent(u64 x) const {
        check_label(x);
        if (x == 0) return kNone;
        return pre_rank(ps_.findopen(pre_select(x) - 1));
    }

    u64 child(u64 x, u64 t) const {
        if (t < 1 || t > degree(x)) throw SrqError("dfuds: child index out of range");
        u64 lastopen = ps_.select_close(x + 1) - 1;
        return pre_rank(ps_.findclose(lastopen - t + 1) + 1);
    }

    // Number of siblings to the left; 0 for the root.
    u64 child_rank(u64 x) const {
        check_label(x);
        if (x == 0) return 0;
        u64 o = ps_.findopen(pre_select(x) - 1);
        u64 p = pre_rank(o);
        return ps_.select_close(p + 1) - 1 - o;
    }

    u64 next_sibling(u64 x) const {
        check_label(x);
        if (x == 0) return kNone;
        u64 o = ps_.findopen(pre_select(x) - 1);
        if (o < 3 || !ps_.bit(o - 1)) return kNone;
        return pre_rank(ps_.findclose(o - 1) + 1);
    }

    u64 subtree_size(u64 x) const {
        check_label(x);
        if (x == 0) return n_;
        u64 v = pre_select(x);
        u64 e = ps_.fwd_excess(v, ps_.excess(v - 1) - 1);
        return ps_.rank_close(e) - x;
    }

    bool is_ancestor(u64 a, u64 b) const {  // a ancestor-or-self of b
        return a <= b && b < a + subtree_size(a);
    }

    u64 depth(u64 x) const {
        check_label(x);
        u64 d = 0;
        while (x != 0) {
            if (auto s = sample_at(x)) return d + s->depth;
            x = parent(x);
            ++d;
        }
        return d;
    }

    u64 level_anc(u64 x, u64 d) const {
        u64 dx = depth(x);
        if (d > dx) throw SrqError("dfuds: level ancestor below node");
        while (dx > d) {
            if (dx - d >= 128) {
                if (auto s = sample_at(x)) {
                    x = s->anc;
                    dx -= 64;
                    continue;
                }
            }
            x = parent(x);
            --dx;
        }
        return x;
    }

    u64 lca(u64 x, u64 y) const {
        check_label(x);
        check_label(y);
        if (x == y) return x;
        u64 a = std::min(x, y), b = std::max(x, y);
        if (is_ancestor(a, b)) return a;
        u64 m = ps_.min_excess_pos(pre_select(a), pre_select(b) - 1);
        return parent(pre_rank(m + 1));
    }

    u64 sample_bits() const { return samples_.size() * (64 + 64 + 32); }

private:
    struct Sample {
        u64 node;
        u64 anc;
        u32 depth;
    };

    ParenSeq<Src> ps_;
    u64 n_ = 0;
    std::vector<Sample> samples_;  // nodes at depth 64k (k >= 1), label order

    void check_label(u64 x) const {
        if (x >= n_) throw SrqError("dfuds: label out of range");
    }

    const Sample* sample_at(u64 x) const {
        auto it = std::lower_bound(samples_.begin(), samples_.end(), x,
                                   [](const Sample& s, u64 v) { return s.node < v; });
        return (it != samples_.end() && it->node == x) ? &*it : nullptr;
    }

    void build_depth_samples() {
        std::vector<std::pair<u64, u64>> stack;  // (label, remaining children)
        u64 buf[ParenSeq<Src>::kDirBlock / 64];
        u64 len = ps_.size();
        u64 node = 0, opens = 0;
        for (u64 base = 0; base < len; base += ParenSeq<Src>::kDirBlock) {
            u64 take = std::min<u64>(ParenSeq<Src>::kDirBlock, len - base);
            ps_.source().window(base, take, buf);
            for (u64 p = 0; p < take; ++p) {
                if (get_bit(buf, p)) {
                    ++opens;
                    continue;
                }
                u64 deg = opens - (node == 0 ? 1 : 0);
                opens = 0;
                u64 d = stack.size();
                if (d >= 64 && d % 64 == 0)
                    samples_.push_back({node, stack[d - 64].first, u32(d)});
                if (deg > 0) {
                    stack.emplace_back(node, deg);
                } else {
                    while (!stack.empty() && --stack.back().second == 0)
                        stack.pop_back();
                }
                ++node;
            }
        }
    }
};

} // namespace srq

#endif
