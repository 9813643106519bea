#pragma once

#include <cstdint>
#include <span>
#include <string>
#include <vector>

namespace knlab {

using u128 = unsigned __int128;

// Binomial coefficient C(n, k); throws std::overflow_error if it does not fit
// in 128 bits. Returns 0 for k < 0 or k > n.
u128 binomial(int n, int k);

// 64-bit variant; throws std::overflow_error on overflow.
std::uint64_t binomial64(int n, int k);

// k-subset of {0..n-1} with the given rank in lexicographic order.
std::vector<int> unrank_combination(int n, int k, u128 rank);

// Inverse of unrank_combination. `comb` must be strictly increasing.
u128 rank_combination(int n, std::span<const int> comb);

// Advances `comb` to its lexicographic successor among k-subsets of {0..n-1}.
// Returns false (leaving comb unspecified) when comb was the last subset.
bool next_combination(std::vector<int>& comb, int n);

std::string to_string(u128 value);

}  // namespace knlab
