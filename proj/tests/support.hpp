#pragma once

// Brute-force references used only by the tests. Nothing here calls the
// closed forms under test.

#include <algorithm>
#include <cmath>
#include <functional>
#include <numeric>
#include <vector>

#include "coalspec/combinatorics.hpp"
#include "coalspec/partition.hpp"

namespace support {

using coalspec::BigInt;
using coalspec::BigRat;
using coalspec::SetPartition;

// All partitions of [n] as restricted growth strings.
inline std::vector<std::vector<std::vector<int>>> partitions_by_rgs(int n) {
  std::vector<std::vector<std::vector<int>>> out;
  std::vector<int> a(static_cast<std::size_t>(n), 0);
  auto emit = [&] {
    const int blocks = n == 0 ? 0 : *std::max_element(a.begin(), a.end()) + 1;
    std::vector<std::vector<int>> p(static_cast<std::size_t>(blocks));
    for (int e = 0; e < n; ++e) p[static_cast<std::size_t>(a[static_cast<std::size_t>(e)])].push_back(e + 1);
    out.push_back(std::move(p));
  };
  // a[k] <= 1 + max(a[0..k-1])
  std::vector<int> prefix_max(static_cast<std::size_t>(n), 0);
  std::function<void(int)> go = [&](int k) {
    if (k == n) {
      emit();
      return;
    }
    const int limit = k == 0 ? 0 : prefix_max[static_cast<std::size_t>(k - 1)] + 1;
    for (int v = 0; v <= limit; ++v) {
      a[static_cast<std::size_t>(k)] = v;
      prefix_max[static_cast<std::size_t>(k)] = k == 0 ? v : std::max(prefix_max[static_cast<std::size_t>(k - 1)], v);
      go(k + 1);
    }
  };
  go(0);
  return out;
}

inline std::vector<SetPartition> partitions_of(int n) {
  std::vector<SetPartition> out;
  for (const auto& blocks : partitions_by_rgs(n)) out.push_back(SetPartition::from_blocks(blocks));
  return out;
}

// Cycle count of every permutation of [n].
inline std::vector<long> permutations_by_cycles(int n) {
  std::vector<long> counts(static_cast<std::size_t>(n) + 1, 0);
  std::vector<int> perm(static_cast<std::size_t>(n));
  std::iota(perm.begin(), perm.end(), 0);
  do {
    std::vector<bool> seen(perm.size(), false);
    int cycles = 0;
    for (std::size_t s = 0; s < perm.size(); ++s) {
      if (seen[s]) continue;
      ++cycles;
      for (std::size_t k = s; !seen[k]; k = static_cast<std::size_t>(perm[k])) seen[k] = true;
    }
    ++counts[static_cast<std::size_t>(cycles)];
  } while (std::next_permutation(perm.begin(), perm.end()));
  return counts;
}

inline BigInt fact(long k) {
  BigInt f = 1;
  for (long m = 2; m <= k; ++m) f *= m;
  return f;
}

// Blocks of coarse, as element sets, that contain the block b of fine.
inline bool block_inside(const std::vector<int>& small, const std::vector<int>& big) {
  return std::includes(big.begin(), big.end(), small.begin(), small.end());
}

inline bool refines(const SetPartition& fine, const SetPartition& coarse) {
  const auto big = coarse.blocks();
  for (const auto& b : fine.blocks()) {
    if (std::none_of(big.begin(), big.end(), [&](const auto& c) { return block_inside(b, c); })) return false;
  }
  return true;
}

// Number of blocks of fine inside each block of coarse; empty when fine does
// not refine coarse.
inline std::vector<int> blocks_inside(const SetPartition& fine, const SetPartition& coarse) {
  if (!refines(fine, coarse)) return {};
  std::vector<int> counts;
  for (const auto& c : coarse.blocks()) {
    int k = 0;
    for (const auto& b : fine.blocks()) k += block_inside(b, c) ? 1 : 0;
    counts.push_back(k);
  }
  return counts;
}

// rho arises from pi by one merger of at least two blocks.
inline bool single_merger(const SetPartition& pi, const SetPartition& rho) {
  const auto counts = blocks_inside(pi, rho);
  if (counts.empty()) return false;
  return std::count_if(counts.begin(), counts.end(), [](int k) { return k >= 2; }) == 1;
}

inline double chi_square(const std::vector<long>& observed, double expected_each) {
  double chi = 0.0;
  for (long o : observed) chi += (static_cast<double>(o) - expected_each) * (static_cast<double>(o) - expected_each) / expected_each;
  return chi;
}

}  // namespace support
