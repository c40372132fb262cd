#pragma once

#include <compare>
#include <cstddef>
#include <cstdint>
#include <memory>
#include <span>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "coalspec/combinatorics.hpp"

namespace coalspec {

/// Bit k-1 set means element k belongs to the set. Ground sets are subsets
/// of {1..64}.
using BlockMask = std::uint64_t;

inline constexpr int kMaxElement = 64;

BlockMask range_mask(int n);  // {1..n}

/// A set partition in canonical form: blocks are disjoint, nonempty, cover
/// the ground set, and are listed by increasing least element. The ground
/// set is {1..n} for lattice elements but may be any subset (restrictions).
class SetPartition {
 public:
  SetPartition() = default;

  static SetPartition singletons(int n);    // Delta_[n]
  static SetPartition single_block(int n);  // {[n]}

  /// Validates disjointness and canonicalizes block order. The ground set is
  /// the union of the blocks.
  static SetPartition from_masks(std::vector<BlockMask> blocks);
  static SetPartition from_blocks(const std::vector<std::vector<int>>& blocks);

  /// Parses the canonical text form "1,3|2|4" (block order and element order
  /// inside a block are not required to be canonical).
  static SetPartition parse(std::string_view text);

  BlockMask ground() const { return ground_; }
  /// Largest element of the ground set; equals n for partitions of [n].
  int ground_size() const;
  bool is_full_ground() const { return ground_ == range_mask(ground_size()); }

  std::size_t size() const { return blocks_.size(); }
  std::span<const BlockMask> masks() const { return blocks_; }
  BlockMask block(std::size_t k) const { return blocks_[k]; }
  std::vector<std::vector<int>> blocks() const;

  /// Index of the block containing element e.
  std::size_t block_of(int element) const;

  std::string str() const;

  friend bool operator==(const SetPartition&, const SetPartition&) = default;
  friend auto operator<=>(const SetPartition&, const SetPartition&) = default;

 private:
  explicit SetPartition(std::vector<BlockMask> canonical_blocks);

  BlockMask ground_ = 0;
  std::vector<BlockMask> blocks_;
};

struct SetPartitionHash {
  std::size_t operator()(const SetPartition& p) const noexcept;
};

std::string mask_str(BlockMask block);  // "1,2,4"
std::vector<int> mask_elements(BlockMask block);

/// Every block of fine lies inside a block of coarse. Throws domain_error on
/// different ground sets.
bool is_refinement(const SetPartition& fine, const SetPartition& coarse);

/// {C & subset : C in p, C & subset != 0}, a partition of subset.
SetPartition restrict_to(const SetPartition& p, BlockMask subset);

/// |restrict_to(p, subset)| without building the partition.
std::size_t restricted_block_count(const SetPartition& p, BlockMask subset);

/// Partition obtained by merging the blocks selected by the bit pattern
/// `selection` (bit k selects block k).
SetPartition merge_blocks(const SetPartition& p, std::uint64_t selection);

/// All sigma with p < sigma obtained by a single merger of two or more blocks.
std::vector<SetPartition> merge_covers(const SetPartition& p);

/// All sigma obtained by merging exactly one pair of blocks.
std::vector<SetPartition> pair_covers(const SetPartition& p);

/// All sigma with lower <= sigma <= upper. Throws domain_error unless
/// lower <= upper.
std::vector<SetPartition> interval(const SetPartition& lower, const SetPartition& upper);

/// All sigma >= p (the interval [p, single block]).
std::vector<SetPartition> coarsenings(const SetPartition& p);

/// Number of maximal chains lower = p_1 < ... < p_m = upper of single pair
/// mergers, by the closed product form. Throws domain_error unless
/// lower <= upper.
BigInt count_maximal_chains(const SetPartition& lower, const SetPartition& upper);

/// The linear extension used for all matrix indexing: more blocks first,
/// ties by lexicographic order of (min of block containing 1, ..., of n).
bool extension_less(const SetPartition& a, const SetPartition& b);

/// P([n]) listed in extension order, with an index for lookup.
class PartitionLattice {
 public:
  static constexpr int kDefaultCap = 8;

  /// Throws size_limit_error when n > cap, domain_error when n < 1.
  static std::shared_ptr<const PartitionLattice> enumerate(int n, int cap = kDefaultCap);

  int ground_size() const { return n_; }
  std::size_t size() const { return elements_.size(); }
  std::span<const SetPartition> elements() const { return elements_; }
  const SetPartition& at(std::size_t index) const { return elements_.at(index); }

  /// Throws domain_error when p is not an element.
  std::size_t index_of(const SetPartition& p) const;
  bool contains(const SetPartition& p) const { return index_.contains(p); }

  std::size_t bottom() const { return 0; }
  std::size_t top() const { return elements_.size() - 1; }

 private:
  PartitionLattice() = default;

  int n_ = 0;
  std::vector<SetPartition> elements_;
  std::unordered_map<SetPartition, std::size_t, SetPartitionHash> index_;
};

}  // namespace coalspec
