#ifndef SRQ_ARRAY_IO_HPP
#define SRQ_ARRAY_IO_HPP

#include <random>
#include <span>
#include <string>
#include <vector>

#include "srq/common.hpp"

namespace srq {

// Text: whitespace-separated signed decimals. Binary: "SRQA", u64 count,
// little-endian i64 values. Sniffed by the magic.
std::vector<i64> read_array(const std::string& path);
void write_array_text(const std::string& path, std::span<const i64> a);
void write_array_binary(const std::string& path, std::span<const i64> a);

// With probability dup_rate an element repeats its left neighbor; fresh
// values are drawn uniformly from a wide range.
std::vector<i64> random_array(u64 n, double dup_rate, u64 seed);

// Order-isomorphic relabeling: equal values stay equal, strict order is kept,
// but the actual values are re-drawn with random gaps.
std::vector<i64> relabel_monotone(std::span<const i64> a, u64 seed);

} // namespace srq

#endif
