#include "knlab/combinatorics.hpp"

#include <algorithm>
#include <stdexcept>

namespace knlab {

u128 binomial(int n, int k) {
  if (k < 0 || n < 0 || k > n) return 0;
  k = std::min(k, n - k);
  u128 r = 1;
  for (int i = 1; i <= k; ++i) {
    // r * (n-k+i) / i stays exact because r*(n-k+i) is divisible by i.
    const u128 num = static_cast<u128>(n - k + i);
    const u128 max = ~u128{0};
    if (r > max / num) {
      // Reduce by gcd before multiplying to avoid spurious overflow.
      u128 g = i, a = r;
      while (a != 0) {
        const u128 tmp = g % a;
        g = a;
        a = tmp;
      }
      const u128 r2 = r / g;
      const u128 i2 = i / g;
      if (r2 > max / num) throw std::overflow_error("binomial coefficient exceeds 128 bits");
      r = r2 * num / i2;
      continue;
    }
    r = r * num / static_cast<u128>(i);
  }
  return r;
}

std::uint64_t binomial64(int n, int k) {
  const u128 r = binomial(n, k);
  if (r > UINT64_MAX) throw std::overflow_error("binomial coefficient exceeds 64 bits");
  return static_cast<std::uint64_t>(r);
}

std::vector<int> unrank_combination(int n, int k, u128 rank) {
  if (k < 0 || k > n) throw std::domain_error("unrank_combination: k out of range");
  if (rank >= binomial(n, k)) throw std::domain_error("unrank_combination: rank out of range");
  std::vector<int> out;
  out.reserve(static_cast<std::size_t>(k));
  int next = 0;
  for (int slot = 0; slot < k; ++slot) {
    // Smallest element c such that the subsets starting with c cover rank.
    for (int c = next;; ++c) {
      const u128 block = binomial(n - c - 1, k - slot - 1);
      if (rank < block) {
        out.push_back(c);
        next = c + 1;
        break;
      }
      rank -= block;
    }
  }
  return out;
}

u128 rank_combination(int n, std::span<const int> comb) {
  const int k = static_cast<int>(comb.size());
  u128 rank = 0;
  int prev = -1;
  for (int slot = 0; slot < k; ++slot) {
    const int c = comb[static_cast<std::size_t>(slot)];
    if (c <= prev || c >= n) throw std::domain_error("rank_combination: not a strictly increasing subset");
    for (int skip = prev + 1; skip < c; ++skip) rank += binomial(n - skip - 1, k - slot - 1);
    prev = c;
  }
  return rank;
}

bool next_combination(std::vector<int>& comb, int n) {
  const int k = static_cast<int>(comb.size());
  int i = k - 1;
  while (i >= 0 && comb[static_cast<std::size_t>(i)] == n - k + i) --i;
  if (i < 0) return false;
  ++comb[static_cast<std::size_t>(i)];
  for (int j = i + 1; j < k; ++j) comb[static_cast<std::size_t>(j)] = comb[static_cast<std::size_t>(j - 1)] + 1;
  return true;
}

std::string to_string(u128 value) {
  if (value == 0) return "0";
  std::string s;
  while (value != 0) {
    s.push_back(static_cast<char>('0' + static_cast<int>(value % 10)));
    value /= 10;
  }
  std::reverse(s.begin(), s.end());
  return s;
}

}  // namespace knlab
