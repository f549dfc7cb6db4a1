#include "doctest.h"

#include <random>

#include "srq/fexpand.hpp"

using namespace srq;

namespace {

std::string random_groups(std::mt19937_64& rng, u64 groups, u64 max_opens) {
    std::string s;
    for (u64 g = 0; g < groups; ++g) {
        s.append(rng() % (max_opens + 1), '(');
        s.push_back(')');
    }
    return s;
}

std::string random_bits(std::mt19937_64& rng, u64 n) {
    std::string c;
    for (u64 i = 0; i < n; ++i) c.push_back((rng() & 1) ? '1' : '0');
    return c;
}

// chained chunk evaluation over full strings; tails fall back to the direct
// recurrence, which is what the decoder does as well
std::string chained_f(const FTables& tb, std::string_view s, std::string_view c) {
    unsigned ch = tb.chunk_bits();
    std::string out;
    size_t sp = 0, cp = 0;
    unsigned phase = 0;
    while (sp + ch <= s.size() && cp + ch <= c.size()) {
        unsigned sc = 0, cc = 0;
        for (unsigned t = 0; t < ch; ++t) {
            if (s[sp + t] == '(') sc |= 1u << t;
            if (c[cp + t] == '1') cc |= 1u << t;
        }
        const FChunk& e = tb.fwd(phase, sc, cc);
        for (unsigned t = 0; t < e.out_len; ++t)
            out.push_back(((e.out >> t) & 1) ? '(' : ')');
        sp += e.s_used;
        cp += e.c_used;
        phase = e.end_phase;
    }
    // finish bitwise
    while (true) {
        if (phase == 1) {
            if (sp == s.size()) break;
            out.push_back(s[sp]);
            if (s[sp++] == ')') phase = 0;
        } else {
            if (cp == c.size()) {
                out.append(s.substr(sp));
                break;
            }
            if (sp == s.size()) break;
            if (c[cp++] == '1') out.push_back(')');
            else phase = 1;
        }
    }
    return out;
}

} // namespace

TEST_CASE("recurrence base cases") {
    CHECK(f_expand("(()", "") == "(()");
    CHECK(f_expand("", "0110") == "");
    CHECK(f_prime_expand("(()", "") == "(()");
    CHECK(f_prime_expand("", "01") == "");
}

TEST_CASE("worked example") {
    CHECK(f_expand("()()", "010") == "())()");
    CHECK(f_prime_expand("()()", "010") == "())()");
}

TEST_CASE("all-zero bits copy groups") {
    CHECK(f_expand("(()((()", "00") == "(()((()");
    CHECK(f_expand("(())", "00") == "(())");
}

TEST_CASE("expansion length") {
    std::mt19937_64 rng(3);
    for (int t = 0; t < 200; ++t) {
        std::string s = random_groups(rng, rng() % 12, 5);
        std::string c = random_bits(rng, rng() % 20);
        std::string out = f_expand(s, c);
        CHECK(out.size() <= s.size() + c.size());
        std::string rev = f_prime_expand(s, c);
        CHECK(rev.size() <= s.size() + c.size());
    }
}

TEST_CASE("anchored expansions agree when both consume everything") {
    std::mt19937_64 rng(5);
    for (int t = 0; t < 200; ++t) {
        u64 groups = rng() % 10;
        std::string s = random_groups(rng, groups, 4);
        std::string c = random_bits(rng, groups ? groups - 1 : 0);
        // with fewer bits than groups both anchors cover the whole input
        CHECK(f_expand(s, c).size() == f_prime_expand(s, c).size());
    }
}

TEST_CASE("tables reproduce the recurrence, chunk 8") {
    const FTables& tb = f_tables();
    CHECK(tb.entry_count() == u64(1) << 16);
    std::mt19937_64 rng(7);
    for (int t = 0; t < 10000; ++t) {
        std::string s = random_groups(rng, rng() % 20, 6);
        u64 closes = u64(std::count(s.begin(), s.end(), ')'));
        std::string c = random_bits(rng, closes + rng() % 8);
        CHECK(chained_f(tb, s, c) == f_expand(s, c));
    }
}

TEST_CASE("identity rows for all-zero chunks") {
    const FTables& tb = f_tables();
    // a chunk of groups with an all-zero c chunk copies whole groups
    const FChunk& e = tb.fwd(0, 0b01101101 /* ()(()(( reversed bit order */, 0);
    std::string out;
    for (unsigned t = 0; t < e.out_len; ++t) out.push_back(((e.out >> t) & 1) ? '(' : ')');
    for (size_t t = 0; t < out.size(); ++t) {
        bool open_in = (0b01101101 >> t) & 1;
        CHECK(open_in == (out[t] == '('));
    }
}

TEST_CASE("table size guard") {
    CHECK_THROWS_AS(build_tables(17), SrqError);
    FTables small = build_tables(4);
    CHECK(small.entry_count() == 256);
}
