#include "coalspec/rrt.hpp"

#include <algorithm>
#include <bit>
#include <functional>

#include "coalspec/errors.hpp"

namespace coalspec {

namespace {

int lowest_element_of(BlockMask m) { return std::countr_zero(m) + 1; }

}  // namespace

IncreasingTree::IncreasingTree(SetPartition labels, std::vector<std::size_t> parents)
    : labels_(std::move(labels)), parents_(std::move(parents)) {
  if (parents_.size() != labels_.size() || parents_.empty()) {
    throw domain_error("IncreasingTree: parent map size does not match label count");
  }
  if (parents_[0] != kNoParent) throw domain_error("IncreasingTree: node 0 must be the root");
  for (std::size_t k = 1; k < parents_.size(); ++k) {
    if (parents_[k] >= k) throw domain_error("IncreasingTree: labels must increase away from the root");
  }
}

std::vector<BlockMask> IncreasingTree::subtree_labels() const {
  std::vector<BlockMask> acc(labels_.masks().begin(), labels_.masks().end());
  for (std::size_t k = acc.size(); k-- > 1;) acc[parents_[k]] |= acc[k];
  return acc;
}

IncreasingTree sample_rrt(const SetPartition& labels, Rng& rng) {
  std::vector<std::size_t> parents(labels.size(), IncreasingTree::kNoParent);
  for (std::size_t k = 1; k < labels.size(); ++k) {
    parents[k] = std::uniform_int_distribution<std::size_t>(0, k - 1)(rng);
  }
  return IncreasingTree(labels, std::move(parents));
}

IncreasingTree cut_edge(const IncreasingTree& tree, std::size_t node) {
  if (node == 0 || node >= tree.node_count()) {
    throw domain_error("cut_edge: node " + std::to_string(node) + " does not identify an edge");
  }
  // Nodes in the subtree of `node` have larger indices than it.
  std::vector<bool> removed(tree.node_count(), false);
  removed[node] = true;
  for (std::size_t k = node + 1; k < tree.node_count(); ++k) removed[k] = removed[tree.parent(k)];

  const std::size_t target = tree.parent(node);
  std::vector<BlockMask> blocks;
  std::vector<std::size_t> new_index(tree.node_count(), IncreasingTree::kNoParent);
  BlockMask absorbed = 0;
  for (std::size_t k = 0; k < tree.node_count(); ++k) {
    if (removed[k]) {
      absorbed |= tree.label(k);
    } else {
      new_index[k] = blocks.size();
      blocks.push_back(tree.label(k));
    }
  }
  blocks[new_index[target]] |= absorbed;

  // The merged node keeps its least element, so block order is unchanged.
  std::vector<std::size_t> parents;
  parents.reserve(blocks.size());
  for (std::size_t k = 0; k < tree.node_count(); ++k) {
    if (removed[k]) continue;
    parents.push_back(k == 0 ? IncreasingTree::kNoParent : new_index[tree.parent(k)]);
  }
  return IncreasingTree(SetPartition::from_masks(std::move(blocks)), std::move(parents));
}

IncreasingTree cut_edge_labelled(const IncreasingTree& tree, BlockMask node_label) {
  const auto masks = tree.labels().masks();
  const auto it = std::find(masks.begin(), masks.end(), node_label);
  if (it == masks.end()) throw domain_error("cut_edge: no node labelled " + mask_str(node_label));
  return cut_edge(tree, static_cast<std::size_t>(it - masks.begin()));
}

IncreasingTree cut_random(const IncreasingTree& tree, Rng& rng) {
  if (tree.node_count() < 2) throw domain_error("cut_random: a single node has no edges");
  const auto node = std::uniform_int_distribution<std::size_t>(1, tree.node_count() - 1)(rng);
  return cut_edge(tree, node);
}

bool contains(const IncreasingTree& tree, const SetPartition& rho) {
  if (!is_refinement(tree.labels(), rho)) return false;
  // Each block of rho must be a connected piece of the tree hanging from its
  // top node (the one holding the block minimum), and nothing outside the
  // block may sit above any of its other nodes; cuts inside the piece then
  // collapse it onto the top node without absorbing foreign labels.
  const auto subtrees = tree.subtree_labels();
  std::vector<bool> top_seen(rho.size(), false);
  for (std::size_t k = 0; k < tree.node_count(); ++k) {
    const auto b = rho.block_of(lowest_element_of(tree.label(k)));
    if (!top_seen[b]) {
      top_seen[b] = true;
      continue;
    }
    const BlockMask block = rho.block(b);
    if ((tree.label(tree.parent(k)) & ~block) != 0) return false;
    if ((subtrees[k] & ~block) != 0) return false;
  }
  return true;
}

std::vector<IncreasingTree> enumerate_increasing_trees(const SetPartition& labels) {
  if (labels.size() > kMaxEnumeratedTreeNodes) {
    throw size_limit_error("enumerate_increasing_trees: " + std::to_string(labels.size()) +
                           " nodes exceeds the cap of " + std::to_string(kMaxEnumeratedTreeNodes));
  }
  std::vector<IncreasingTree> out;
  std::vector<std::size_t> parents(labels.size(), IncreasingTree::kNoParent);
  std::function<void(std::size_t)> recurse = [&](std::size_t k) {
    if (k == labels.size()) {
      out.emplace_back(labels, parents);
      return;
    }
    for (std::size_t p = 0; p < k; ++p) {
      parents[k] = p;
      recurse(k + 1);
    }
  };
  recurse(1);
  return out;
}

BigInt count_trees_containing(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return 0;
  BigInt count = factorial(static_cast<unsigned>(rho.size() - 1));
  for (auto b : rho.masks()) count *= factorial(static_cast<unsigned>(restricted_block_count(pi, b) - 1));
  return count;
}

}  // namespace coalspec
