#include "srq/array_io.hpp"

#include <algorithm>
#include <cstring>
#include <fstream>
#include <map>
#include <sstream>

namespace srq {

namespace {
constexpr char kArrayMagic[4] = {'S', 'R', 'Q', 'A'};
}

std::vector<i64> read_array(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw SrqError("cannot open array file: " + path);
    char magic[4] = {0, 0, 0, 0};
    in.read(magic, 4);
    std::vector<i64> a;
    if (in.gcount() == 4 && std::memcmp(magic, kArrayMagic, 4) == 0) {
        u8 b[8];
        in.read(reinterpret_cast<char*>(b), 8);
        if (!in) throw SrqError("truncated array file: " + path);
        u64 count = 0;
        for (int i = 0; i < 8; ++i) count |= u64(b[i]) << (8 * i);
        a.reserve(count);
        for (u64 t = 0; t < count; ++t) {
            in.read(reinterpret_cast<char*>(b), 8);
            if (!in) throw SrqError("truncated array file: " + path);
            u64 v = 0;
            for (int i = 0; i < 8; ++i) v |= u64(b[i]) << (8 * i);
            a.push_back(i64(v));
        }
        return a;
    }
    in.clear();
    in.seekg(0);
    i64 v;
    while (in >> v) a.push_back(v);
    if (!in.eof() && in.fail()) throw SrqError("bad text array file: " + path);
    return a;
}

void write_array_text(const std::string& path, std::span<const i64> a) {
    std::ofstream out(path);
    if (!out) throw SrqError("cannot write: " + path);
    for (size_t i = 0; i < a.size(); ++i)
        out << a[i] << (i + 1 == a.size() ? '\n' : ' ');
}

void write_array_binary(const std::string& path, std::span<const i64> a) {
    std::ofstream out(path, std::ios::binary);
    if (!out) throw SrqError("cannot write: " + path);
    out.write(kArrayMagic, 4);
    auto put64 = [&](u64 v) {
        u8 b[8];
        for (int i = 0; i < 8; ++i) b[i] = u8(v >> (8 * i));
        out.write(reinterpret_cast<const char*>(b), 8);
    };
    put64(a.size());
    for (i64 v : a) put64(u64(v));
}

std::vector<i64> random_array(u64 n, double dup_rate, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> coin(0.0, 1.0);
    std::uniform_int_distribution<i64> val(-1'000'000'000, 1'000'000'000);
    std::vector<i64> a(n);
    for (u64 i = 0; i < n; ++i) {
        if (i > 0 && coin(rng) < dup_rate) a[i] = a[i - 1];
        else a[i] = val(rng);
    }
    return a;
}

std::vector<i64> relabel_monotone(std::span<const i64> a, u64 seed) {
    std::mt19937_64 rng(seed);
    std::uniform_int_distribution<i64> gap(1, 1000);
    std::vector<i64> sorted(a.begin(), a.end());
    std::sort(sorted.begin(), sorted.end());
    sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
    std::map<i64, i64> remap;
    i64 cur = -i64(500'000'000);
    for (i64 v : sorted) {
        cur += gap(rng);
        remap[v] = cur;
    }
    std::vector<i64> out;
    out.reserve(a.size());
    for (i64 v : a) out.push_back(remap[v]);
    return out;
}

} // namespace srq
