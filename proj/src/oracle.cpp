#include "srq/oracle.hpp"

#include <algorithm>
#include <cctype>

namespace srq {

bool is_range_kind(QueryKind k) {
    switch (k) {
        case QueryKind::PSV: case QueryKind::NSV:
        case QueryKind::PLV: case QueryKind::NLV: return false;
        default: return true;
    }
}

bool is_kth_kind(QueryKind k) {
    return k == QueryKind::RkMinQ || k == QueryKind::RkMaxQ;
}

bool needs_colors(QueryKind k) {
    switch (k) {
        case QueryKind::RMinQ: case QueryKind::RMaxQ:
        case QueryKind::RRMinQ: case QueryKind::RRMaxQ:
        case QueryKind::PSV: case QueryKind::PLV: return false;
        default: return true;
    }
}

const char* kind_name(QueryKind k) {
    switch (k) {
        case QueryKind::RMinQ: return "RMINQ";
        case QueryKind::RLMinQ: return "RLMINQ";
        case QueryKind::RRMinQ: return "RRMINQ";
        case QueryKind::RkMinQ: return "RKMINQ";
        case QueryKind::RMaxQ: return "RMAXQ";
        case QueryKind::RLMaxQ: return "RLMAXQ";
        case QueryKind::RRMaxQ: return "RRMAXQ";
        case QueryKind::RkMaxQ: return "RKMAXQ";
        case QueryKind::PSV: return "PSV";
        case QueryKind::NSV: return "NSV";
        case QueryKind::PLV: return "PLV";
        case QueryKind::NLV: return "NLV";
    }
    return "?";
}

std::optional<QueryKind> kind_from_name(std::string_view name) {
    std::string up(name);
    for (char& c : up) c = char(std::toupper(u8(c)));
    static const QueryKind all[] = {
        QueryKind::RMinQ, QueryKind::RLMinQ, QueryKind::RRMinQ, QueryKind::RkMinQ,
        QueryKind::RMaxQ, QueryKind::RLMaxQ, QueryKind::RRMaxQ, QueryKind::RkMaxQ,
        QueryKind::PSV, QueryKind::NSV, QueryKind::PLV, QueryKind::NLV,
    };
    for (QueryKind k : all)
        if (up == kind_name(k)) return k;
    return std::nullopt;
}

std::optional<u64> oracle_answer(std::span<const i64> a, const QuerySpec& q) {
    u64 n = a.size();
    if (n == 0) throw SrqError("oracle: empty array");
    auto at = [&](u64 p) { return a[p - 1]; };
    if (is_range_kind(q.kind)) {
        if (q.i < 1 || q.i > q.j || q.j > n) throw SrqError("oracle: bad range");
        bool mx = (q.kind == QueryKind::RMaxQ || q.kind == QueryKind::RLMaxQ ||
                   q.kind == QueryKind::RRMaxQ || q.kind == QueryKind::RkMaxQ);
        i64 best = at(q.i);
        for (u64 p = q.i + 1; p <= q.j; ++p)
            best = mx ? std::max(best, at(p)) : std::min(best, at(p));
        std::vector<u64> pos;
        for (u64 p = q.i; p <= q.j; ++p)
            if (at(p) == best) pos.push_back(p);
        switch (q.kind) {
            case QueryKind::RLMinQ: case QueryKind::RLMaxQ: return pos.front();
            case QueryKind::RkMinQ: case QueryKind::RkMaxQ:
                if (q.k < 1) throw SrqError("oracle: k must be positive");
                if (q.k > pos.size()) return std::nullopt;
                return pos[q.k - 1];
            default: return pos.back();  // RMinQ/RMaxQ resolve rightmost
        }
    }
    if (q.i < 1 || q.i > n) throw SrqError("oracle: bad position");
    switch (q.kind) {
        case QueryKind::PSV:
            for (u64 p = q.i; p-- > 1;) if (at(p) < at(q.i)) return p;
            return u64(0);
        case QueryKind::NSV:
            for (u64 p = q.i + 1; p <= n; ++p) if (at(p) < at(q.i)) return p;
            return n + 1;
        case QueryKind::PLV:
            for (u64 p = q.i; p-- > 1;) if (at(p) > at(q.i)) return p;
            return u64(0);
        case QueryKind::NLV:
            for (u64 p = q.i + 1; p <= n; ++p) if (at(p) > at(q.i)) return p;
            return n + 1;
        default: throw SrqError("oracle: malformed spec");
    }
}

namespace {

std::string definitional_dfuds(const OracleTree& t, u64 root) {
    // D(single) = "()"; D(T with subtrees T1..Tk) = (^{k+1} ) d_T1 ... d_Tk
    // where d_Ti drops the leading '('. Explicit stack to avoid deep recursion.
    std::string out;
    struct Frame { u64 node; size_t next_child; bool drop_first; };
    std::vector<Frame> st{{root, 0, false}};
    while (!st.empty()) {
        Frame& f = st.back();
        if (f.next_child == 0) {
            u64 k = t.children[f.node].size();
            std::string g(k + 1, '(');
            g.push_back(')');
            if (f.drop_first) g.erase(g.begin());
            out += g;
        }
        if (f.next_child < t.children[f.node].size()) {
            u64 c = t.children[f.node][f.next_child++];
            st.push_back({c, 0, true});
        } else {
            st.pop_back();
        }
    }
    return out;
}

} // namespace

OracleTree oracle_min_tree(std::span<const i64> a, Side side) {
    u64 n = a.size();
    OracleTree t;
    t.n = n;
    t.side = side;
    t.parent.assign(n + 1, kNone);
    t.children.assign(n + 1, {});
    t.red.assign(n + 1, false);
    t.depth.assign(n + 1, 0);
    QuerySpec q{side == Side::min ? QueryKind::PSV : QueryKind::PLV, 0, 0, 1};
    for (u64 i = 1; i <= n; ++i) {
        q.i = i;
        u64 p = *oracle_answer(a, q);
        t.parent[i] = p;
        t.children[p].push_back(i);
    }
    for (u64 x = 0; x <= n; ++x) {
        const auto& ch = t.children[x];
        for (size_t r = 1; r < ch.size(); ++r) {
            bool smaller = a[ch[r] - 1] < a[ch[r - 1] - 1];
            bool larger = a[ch[r] - 1] > a[ch[r - 1] - 1];
            t.red[ch[r]] = (side == Side::min) ? smaller : larger;
        }
        for (u64 c : ch) t.depth[c] = t.depth[x] + 1;
    }
    t.dfuds = definitional_dfuds(t, 0);
    return t;
}

std::vector<bool> oracle_colors(const OracleTree& t) {
    const std::string& d = t.dfuds;
    std::vector<bool> v{true};
    bool first = true;
    for (size_t s = 0; s + 1 < d.size(); ++s) {
        if (d[s] != '(' || d[s + 1] != '(') continue;
        if (first) {  // sentinel slot covers the first occurrence
            first = false;
            continue;
        }
        // match the open at s by scanning, then take the node that follows
        int depth = 0;
        size_t m = s;
        for (;; ++m) {
            depth += (d[m] == '(') ? 1 : -1;
            if (depth == 0) break;
        }
        u64 node = u64(std::count(d.begin(), d.begin() + i64(m) + 1, ')'));
        v.push_back(!t.red[node]);
    }
    return v;
}

} // namespace srq
