#pragma once

#include <cstddef>
#include <random>
#include <vector>

#include "coalspec/combinatorics.hpp"
#include "coalspec/partition.hpp"

namespace coalspec {

using Rng = std::mt19937_64;

/// Rooted tree whose nodes are the blocks of a partition. Node k is block k of
/// labels() (blocks ordered by least element); the root is node 0 and every
/// parent has a smaller least element than its child, so parent(k) < k.
class IncreasingTree {
 public:
  static constexpr std::size_t kNoParent = static_cast<std::size_t>(-1);

  /// Validates the parent map. parents[0] must be kNoParent.
  IncreasingTree(SetPartition labels, std::vector<std::size_t> parents);

  const SetPartition& labels() const { return labels_; }
  std::size_t node_count() const { return labels_.size(); }
  std::size_t parent(std::size_t node) const { return parents_.at(node); }
  const std::vector<std::size_t>& parents() const { return parents_; }
  BlockMask label(std::size_t node) const { return labels_.block(node); }

  /// Union of the labels in the subtree rooted at each node.
  std::vector<BlockMask> subtree_labels() const;

  friend bool operator==(const IncreasingTree&, const IncreasingTree&) = default;
  friend auto operator<=>(const IncreasingTree&, const IncreasingTree&) = default;

 private:
  SetPartition labels_;
  std::vector<std::size_t> parents_;
};

/// Uniform random increasing tree: blocks are attached in order of least
/// element, each to a uniformly chosen node already present.
IncreasingTree sample_rrt(const SetPartition& labels, Rng& rng);

/// Removes the subtree above the edge (node, parent(node)) and merges its
/// labels into the parent. Throws domain_error for the root or an unknown
/// node.
IncreasingTree cut_edge(const IncreasingTree& tree, std::size_t node);

/// cut_edge, selecting the node by its label block.
IncreasingTree cut_edge_labelled(const IncreasingTree& tree, BlockMask node_label);

/// cut_edge at a uniformly chosen edge. Throws domain_error on a single node.
IncreasingTree cut_random(const IncreasingTree& tree, Rng& rng);

/// True iff the tree can be cut down to an increasing tree on rho. For every
/// block B of rho the nodes labelled inside B form a subtree whose top node
/// holds min B, and above each other node of B every label lies in B.
bool contains(const IncreasingTree& tree, const SetPartition& rho);

inline constexpr std::size_t kMaxEnumeratedTreeNodes = 9;

/// All (|labels|-1)! increasing trees on the labels. Throws size_limit_error
/// above kMaxEnumeratedTreeNodes nodes.
std::vector<IncreasingTree> enumerate_increasing_trees(const SetPartition& labels);

/// (|rho|-1)! prod_{B in rho} (|pi|_B| - 1)! when pi <= rho, else 0.
BigInt count_trees_containing(const SetPartition& pi, const SetPartition& rho);

}  // namespace coalspec
