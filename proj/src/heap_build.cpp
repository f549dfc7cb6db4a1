#include "srq/heap_build.hpp"

#include <algorithm>

namespace srq {

namespace {

bool pops_before(Side side, i64 stack_top, i64 incoming) {
    return side == Side::min ? stack_top > incoming : stack_top < incoming;
}

} // namespace

std::string build_dfuds(std::span<const i64> a, Side side) {
    u64 n = a.size();
    if (n == 0) throw SrqError("heap_build: empty array");
    std::vector<i64> st;
    st.reserve(64);
    std::vector<u32> pops(n + 1, 0);
    for (u64 i = n; i >= 1; --i) {
        u32 c = 0;
        while (!st.empty() && pops_before(side, st.back(), a[i - 1])) {
            st.pop_back();
            ++c;
        }
        st.push_back(a[i - 1]);
        pops[i] = c;
    }
    std::string d;
    d.reserve(2 * n + 2);
    d.append(st.size() + 1, '(');
    d.push_back(')');
    for (u64 i = 1; i <= n; ++i) {
        d.append(pops[i], '(');
        d.push_back(')');
    }
    return d;
}

std::string build_min_dfuds(std::span<const i64> a) { return build_dfuds(a, Side::min); }
std::string build_max_dfuds(std::span<const i64> a) { return build_dfuds(a, Side::max); }

std::vector<bool> build_colors(std::span<const i64> a, Side side) {
    std::string d = build_dfuds(a, side);
    u64 len = d.size();
    // child_of[o] = label of the child whose group follows the close matching
    // the open at position o (0-based); filled by one matching pass.
    std::vector<u64> child_of(len, kNone);
    std::vector<u64> open_stack;
    u64 closes = 0;
    for (u64 p = 0; p < len; ++p) {
        if (d[p] == '(') {
            open_stack.push_back(p);
        } else {
            ++closes;
            u64 o = open_stack.back();
            open_stack.pop_back();
            if (p + 1 < len) child_of[o] = closes;  // pre_rank of position p+2
        }
    }
    std::vector<bool> v{true};
    bool first = true;
    for (u64 p = 0; p + 1 < len; ++p) {
        if (d[p] != '(' || d[p + 1] != '(') continue;
        if (first) {
            first = false;
            continue;
        }
        u64 me = child_of[p], left = child_of[p + 1];
        bool strictly = (side == Side::min) ? a[me - 1] < a[left - 1]
                                            : a[me - 1] > a[left - 1];
        v.push_back(!strictly);  // red = 0
    }
    return v;
}

DedupResult dedup(std::span<const i64> a) {
    u64 n = a.size();
    if (n == 0) throw SrqError("heap_build: empty array");
    DedupResult r;
    r.c_bits.assign(n, false);
    for (u64 i = 2; i <= n; ++i)
        if (a[i - 1] == a[i - 2]) {
            r.c_bits[i - 1] = true;
            ++r.k;
        }
    for (u64 i = 1; i <= n; ++i)
        if (!r.c_bits[i - 1]) {
            r.a_prime.push_back(a[i - 1]);
            r.run_starts.push_back(i);
        }
    return r;
}

TUEncoding build_tu(std::span<const i64> a) {
    u64 n = a.size();
    if (n == 0) throw SrqError("heap_build: empty array");
    for (u64 i = 1; i < n; ++i)
        if (a[i] == a[i - 1]) throw SrqError("heap_build: consecutive equal elements");
    TUEncoding e;
    e.u.assign(n >= 1 ? n - 1 : 0, false);
    e.group_opens.assign(n, 0);
    std::vector<i64> mn{a[n - 1]}, mx{a[n - 1]};
    for (u64 i = n - 1; i >= 1; --i) {
        bool max_side = a[i - 1] > a[i];  // compared with the previously pushed element
        auto& st = max_side ? mx : mn;
        Side s = max_side ? Side::max : Side::min;
        u64 c = 0;
        while (!st.empty() && pops_before(s, st.back(), a[i - 1])) {
            st.pop_back();
            ++c;
        }
        if (c == 0) throw SrqError("heap_build: pop-free step on deduplicated input");
        st.push_back(a[i - 1]);
        (max_side ? mn : mx).push_back(a[i - 1]);
        e.u[i - 1] = max_side;
        e.group_opens[i - 1] = c - 1;
    }
    e.root_min_count = mn.size();
    e.root_max_count = mx.size();
    std::string t;
    for (u64 i = 0; i + 1 < n; ++i) {
        t.append(e.group_opens[i], '(');
        t.push_back(')');
    }
    t.push_back(')');  // shared close for the last element; no U bit
    e.group_opens[n - 1] = 0;
    e.t = std::move(t);
    return e;
}

std::string dfuds_from_tu(const TUEncoding& tu, Side side) {
    u64 n = tu.group_opens.size();
    u64 root = (side == Side::min) ? tu.root_min_count : tu.root_max_count;
    std::string d;
    d.append(root + 1, '(');
    d.push_back(')');
    for (u64 i = 0; i + 1 < n; ++i) {
        bool mine = (tu.u[i] == (side == Side::max));
        if (mine) d.append(tu.group_opens[i] + 1, '(');
        d.push_back(')');
    }
    d.push_back(')');
    return d;
}

TPrimeResult build_tpup(std::span<const i64> a) {
    TPrimeResult r;
    r.dd = dedup(a);
    r.tu = build_tu(r.dd.a_prime);
    r.u_prime = r.tu.u;
    u64 n = a.size();
    u64 np = r.dd.a_prime.size();

    // A's own stack run, duplicates included; events align with A' groups.
    std::vector<i64> mn, mx;
    r.group_opens_a.assign(np, 0);
    u64 seen_events = 0;
    std::vector<u64> pops_at(np + 1, 0);
    for (u64 i = n; i >= 1; --i) {
        if (i == n) {
            mn.push_back(a[i - 1]);
            mx.push_back(a[i - 1]);
            continue;
        }
        if (a[i - 1] == a[i]) {  // duplicate push, no pops on either side
            mn.push_back(a[i - 1]);
            mx.push_back(a[i - 1]);
            continue;
        }
        bool max_side = a[i - 1] > a[i];
        auto& st = max_side ? mx : mn;
        Side s = max_side ? Side::max : Side::min;
        u64 c = 0;
        while (!st.empty() && pops_before(s, st.back(), a[i - 1])) {
            st.pop_back();
            ++c;
        }
        st.push_back(a[i - 1]);
        (max_side ? mn : mx).push_back(a[i - 1]);
        ++seen_events;
        u64 group = np - 1 - (seen_events - 1);  // events arrive right to left
        if (r.tu.u[group - 1] != max_side)
            throw SrqError("heap_build: run sides diverge");
        pops_at[group] = c;
    }
    r.root_min_a = mn.size();
    r.root_max_a = mx.size();
    std::string tp;
    for (u64 g = 1; g + 1 <= np; ++g) {
        if (g + 1 <= np && g <= np - 1) {
            u64 opens = (g <= np - 1 && pops_at[g] > 0) ? pops_at[g] - 1 : 0;
            r.group_opens_a[g - 1] = opens;
            tp.append(opens, '(');
            tp.push_back(')');
        }
    }
    tp.push_back(')');
    r.group_opens_a[np - 1] = 0;
    r.t_prime = std::move(tp);
    return r;
}

DPrimeSeq build_dprime(std::span<const i64> a, Side side) {
    TPrimeResult r = build_tpup(a);
    u64 np = r.dd.a_prime.size();
    DPrimeSeq d;
    for (u64 g = 1; g < np; ++g) {
        bool mine = (r.u_prime[g - 1] == (side == Side::max));
        if (mine) d.bits.append(r.group_opens_a[g - 1] + 1, '(');
        d.bits.push_back(')');
    }
    d.bits.push_back(')');
    return d;
}

RunDerived derive_run_info(std::span<const u64> t_group_opens,
                           const std::vector<bool>& u,
                           std::span<const u64> run_lengths,
                           u64 root_min_prime, u64 root_max_prime) {
    u64 np = t_group_opens.size();
    if (run_lengths.size() != np) throw SrqError("heap_build: run/group mismatch");
    RunDerived d;
    d.eps_min.assign(np, 0);
    d.eps_max.assign(np, 0);
    // Symbolic replay: stacks hold A' indices; group g pops t_opens[g]+1
    // indices from the U-selected side. Popped index r gets parent g on that
    // side; survivors get parent 0.
    std::vector<u64> mn{np}, mx{np};
    std::vector<u64> min_parent(np + 1, 0), max_parent(np + 1, 0);
    for (u64 g = np - 1; g >= 1; --g) {
        bool max_side = u[g - 1];
        auto& st = max_side ? mx : mn;
        u64 c = t_group_opens[g - 1] + 1;
        while (c-- > 0) {
            if (st.empty()) throw SrqError("heap_build: underflow in replay");
            u64 r = st.back();
            st.pop_back();
            (max_side ? max_parent : min_parent)[r] = g;
        }
        mn.push_back(g);
        mx.push_back(g);
    }
    if (mn.size() != root_min_prime || mx.size() != root_max_prime)
        throw SrqError("heap_build: root counts diverge in replay");
    d.root_min_a = root_min_prime;
    d.root_max_a = root_max_prime;
    for (u64 r = 1; r <= np; ++r) {
        u64 lam = run_lengths[r - 1] - 1;
        if (lam == 0) continue;
        if (min_parent[r] == 0) d.root_min_a += lam;
        else d.eps_min[min_parent[r] - 1] += lam;
        if (max_parent[r] == 0) d.root_max_a += lam;
        else d.eps_max[max_parent[r] - 1] += lam;
    }
    return d;
}

} // namespace srq
