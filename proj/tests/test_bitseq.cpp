#include "doctest.h"

#include <boost/multiprecision/cpp_int.hpp>
#include <random>
#include <sstream>

#include "srq/bitseq.hpp"

using namespace srq;
using boost::multiprecision::cpp_int;

namespace {

// Exact ceil(lg C(n, m)) via big integers; the independent size oracle.
u64 exact_lg_binom_ceil(u64 n, u64 m) {
    cpp_int c = 1;
    for (u64 i = 0; i < m; ++i) {
        c *= (n - i);
        c /= (i + 1);
    }
    if (c <= 1) return 0;
    cpp_int x = c - 1;
    u64 bits = 0;
    while (x > 0) {
        x >>= 1;
        ++bits;
    }
    return bits;
}

std::vector<bool> random_bits(u64 n, double density, u64 seed) {
    std::mt19937_64 rng(seed);
    std::bernoulli_distribution d(density);
    std::vector<bool> v(n);
    for (u64 i = 0; i < n; ++i) v[i] = d(rng);
    return v;
}

u64 scan_rank(const std::vector<bool>& bits, u64 i, const std::string& pat) {
    u64 cnt = 0;
    for (u64 s = 0; s + pat.size() <= i && s + pat.size() <= bits.size(); ++s) {
        bool ok = true;
        for (size_t t = 0; t < pat.size(); ++t)
            if (bits[s + t] != (pat[t] == '1' || pat[t] == '(')) ok = false;
        if (ok) ++cnt;
    }
    return cnt;
}

} // namespace

TEST_CASE("bitseq empty") {
    BitSeq s = BitSeq::build({}, BitMode::plain);
    CHECK(s.size() == 0);
    CHECK(s.rank1(0) == 0);
}

TEST_CASE("bitseq basics on the worked color string") {
    // 11010110
    BitSeq s = BitSeq::build({1, 1, 0, 1, 0, 1, 1, 0}, BitMode::plain);
    CHECK(s.size() == 8);
    CHECK(s.rank(8, "1") == 5);
    CHECK(s.rank(8, "0") == 3);
    CHECK(s.rank(0, "1") == 0);
    CHECK(s.select(1, "1") == 1);
    CHECK(s.select(2, "0") == 5);
    CHECK(s.extract_word(1, 8) == 0b01101011);
    CHECK(s.extract(3, 4) == "0101");
    CHECK(s.to_string() == "11010110");
}

TEST_CASE("pattern rank and select on the 26-bit tree sequence") {
    const std::string fig = "((((()(())((())))))()(()))";
    REQUIRE(fig.size() == 26);
    std::vector<std::string> pats{"(("};
    BitSeq s = BitSeq::from_paren_string(fig, BitMode::plain, pats);
    // linear-scan oracle over all prefixes and both conventions
    std::vector<bool> bits;
    for (char c : fig) bits.push_back(c == '(');
    for (u64 i = 0; i <= 26; ++i)
        CHECK(s.rank(i, "((") == scan_rank(bits, i, "11"));
    CHECK(s.rank(26, "((") == 8);  // all occurrences end within the string
    CHECK(s.select(5, "((") == 7);
    // rank/select round trip ends at the occurrence
    u64 total = s.rank(26, "((");
    for (u64 j = 1; j <= total; ++j)
        CHECK(s.rank(s.select(j, "((") + 1, "((") == j);
}

TEST_CASE("plain and compressed agree everywhere") {
    for (u64 seed : {1u, 2u, 3u}) {
        for (double dens : {0.02, 0.5, 0.93}) {
            auto bits = random_bits(3000, dens, seed);
            std::vector<std::string> pats{"((", "10"};
            BitSeq p = BitSeq::build(bits, BitMode::plain, pats);
            BitSeq c = BitSeq::build(bits, BitMode::compressed, pats);
            for (u64 i = 1; i <= bits.size(); i += 7) {
                CHECK(p.get(i) == c.get(i));
                CHECK(p.rank1(i) == c.rank1(i));
                CHECK(p.rank(i, "((") == c.rank(i, "(("));
                CHECK(p.rank(i, "101") == c.rank(i, "101"));
                unsigned len = unsigned(std::min<u64>(40, bits.size() - i + 1));
                CHECK(p.extract_word(i, len) == c.extract_word(i, len));
            }
            if (p.ones()) {
                for (u64 j = 1; j <= p.ones(); j += 11)
                    CHECK(p.select1(j) == c.select1(j));
            }
        }
    }
}

TEST_CASE("compressed payload is near the entropy bound") {
    for (double dens : {0.01, 0.1, 0.5, 0.9}) {
        auto bits = random_bits(10000, dens, 42);
        u64 m = 0;
        for (bool b : bits) m += b;
        BitSeq c = BitSeq::build(bits, BitMode::compressed);
        u64 bound = exact_lg_binom_ceil(10000, m);
        CHECK(c.payload_bits() <= bound + 160);
        // within 2% + 256 bits for n >= 10^4
        CHECK(double(c.payload_bits()) <= double(bound) * 1.02 + 256.0);
    }
}

TEST_CASE("serialization round trip, both modes") {
    auto bits = random_bits(5000, 0.3, 7);
    for (BitMode m : {BitMode::plain, BitMode::compressed}) {
        BitSeq s = BitSeq::build(bits, m);
        std::stringstream ss;
        s.save(ss);
        BitSeq t = BitSeq::load(ss);
        CHECK(s == t);
        CHECK(t.mode() == m);
        CHECK(t.rank1(5000) == s.rank1(5000));
        std::stringstream s2;
        s.save(s2, false);
        BitSeq t2 = BitSeq::load(s2);
        CHECK(s == t2);
    }
}

TEST_CASE("rank select inverse for single bits") {
    auto bits = random_bits(4096, 0.4, 9);
    BitSeq s = BitSeq::build(bits, BitMode::plain);
    for (u64 j = 1; j <= s.ones(); ++j)
        CHECK(s.rank1(s.select1(j)) == j);
    for (u64 j = 1; j <= s.size() - s.ones(); ++j)
        CHECK(s.rank0(s.select0(j)) == j);
    CHECK(s.rank1(s.size()) + s.rank0(s.size()) == s.size());
}

TEST_CASE("window extraction matches bits") {
    auto bits = random_bits(700, 0.5, 5);
    for (BitMode m : {BitMode::plain, BitMode::compressed}) {
        BitSeq s = BitSeq::build(bits, m);
        u64 buf[12];
        s.window(130, 500, buf);
        for (u64 t = 0; t < 500; ++t)
            CHECK(get_bit(buf, t) == (130 + t < 700 ? bool(bits[130 + t]) : false));
    }
}

TEST_CASE("errors") {
    BitSeq s = BitSeq::build({1, 0, 1}, BitMode::plain);
    CHECK_THROWS_AS(s.rank(4, "1"), SrqError);
    CHECK_THROWS_AS(s.rank(2, ""), SrqError);
    CHECK_THROWS_AS(s.select(3, "1"), SrqError);
    CHECK_THROWS_AS(s.extract_word(3, 2), SrqError);
    CHECK_THROWS_AS(s.get(0), SrqError);
}
