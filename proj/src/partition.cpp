#include "coalspec/partition.hpp"

#include <algorithm>
#include <bit>
#include <charconv>
#include <functional>

#include "coalspec/errors.hpp"

namespace coalspec {

namespace {

int lowest_element(BlockMask m) { return std::countr_zero(m) + 1; }

// All set partitions of `items`, each returned as the list of merged masks.
void partitions_of_items(std::span<const BlockMask> items,
                         std::vector<std::vector<BlockMask>>& out) {
  std::vector<BlockMask> groups;
  std::function<void(std::size_t)> recurse = [&](std::size_t k) {
    if (k == items.size()) {
      out.push_back(groups);
      return;
    }
    // Indexing, not references: deeper levels may reallocate `groups`.
    for (std::size_t g = 0; g < groups.size(); ++g) {
      groups[g] |= items[k];
      recurse(k + 1);
      groups[g] &= ~items[k];
    }
    groups.push_back(items[k]);
    recurse(k + 1);
    groups.pop_back();
  };
  recurse(0);
}

// Cartesian product of independent per-group choices, flattened into
// partitions.
std::vector<SetPartition> product_of_choices(
    const std::vector<std::vector<std::vector<BlockMask>>>& choices) {
  std::vector<SetPartition> out;
  std::vector<BlockMask> current;
  std::function<void(std::size_t)> recurse = [&](std::size_t g) {
    if (g == choices.size()) {
      out.push_back(SetPartition::from_masks(current));
      return;
    }
    for (const auto& option : choices[g]) {
      const auto mark = current.size();
      current.insert(current.end(), option.begin(), option.end());
      recurse(g + 1);
      current.resize(mark);
    }
  };
  recurse(0);
  return out;
}

void require_same_ground(const SetPartition& a, const SetPartition& b, const char* what) {
  if (a.ground() != b.ground()) {
    throw domain_error(std::string(what) + ": partitions of different ground sets (" + a.str() +
                       " vs " + b.str() + ")");
  }
}

std::vector<int> min_encoding(const SetPartition& p) {
  std::vector<int> enc;
  enc.reserve(static_cast<std::size_t>(std::popcount(p.ground())));
  BlockMask rest = p.ground();
  while (rest != 0) {
    const int e = lowest_element(rest);
    rest &= rest - 1;
    enc.push_back(lowest_element(p.block(p.block_of(e))));
  }
  return enc;
}

}  // namespace

BlockMask range_mask(int n) {
  if (n < 0 || n > kMaxElement) throw domain_error("ground set size out of range");
  return n == kMaxElement ? ~BlockMask{0} : (BlockMask{1} << n) - 1;
}

SetPartition::SetPartition(std::vector<BlockMask> canonical_blocks)
    : blocks_(std::move(canonical_blocks)) {
  for (auto b : blocks_) ground_ |= b;
}

SetPartition SetPartition::singletons(int n) {
  if (n < 1 || n > kMaxElement) throw domain_error("singletons: n out of range");
  std::vector<BlockMask> blocks;
  for (int k = 0; k < n; ++k) blocks.push_back(BlockMask{1} << k);
  return SetPartition(std::move(blocks));
}

SetPartition SetPartition::single_block(int n) {
  if (n < 1 || n > kMaxElement) throw domain_error("single_block: n out of range");
  return SetPartition({range_mask(n)});
}

SetPartition SetPartition::from_masks(std::vector<BlockMask> blocks) {
  BlockMask seen = 0;
  for (auto b : blocks) {
    if (b == 0) throw domain_error("partition has an empty block");
    if ((seen & b) != 0) throw domain_error("partition blocks overlap");
    seen |= b;
  }
  std::sort(blocks.begin(), blocks.end(),
            [](BlockMask a, BlockMask b) { return std::countr_zero(a) < std::countr_zero(b); });
  return SetPartition(std::move(blocks));
}

SetPartition SetPartition::from_blocks(const std::vector<std::vector<int>>& blocks) {
  std::vector<BlockMask> masks;
  for (const auto& block : blocks) {
    BlockMask m = 0;
    for (int e : block) {
      if (e < 1 || e > kMaxElement) throw domain_error("element out of range 1..64");
      if ((m >> (e - 1)) & 1U) throw domain_error("repeated element in block");
      m |= BlockMask{1} << (e - 1);
    }
    masks.push_back(m);
  }
  return from_masks(std::move(masks));
}

SetPartition SetPartition::parse(std::string_view text) {
  std::vector<std::vector<int>> blocks(1);
  std::size_t pos = 0;
  while (pos <= text.size()) {
    const auto end = text.find_first_of(",|", pos);
    const auto token = text.substr(pos, end == std::string_view::npos ? text.npos : end - pos);
    int value = 0;
    const auto [ptr, ec] = std::from_chars(token.data(), token.data() + token.size(), value);
    if (ec != std::errc() || ptr != token.data() + token.size()) {
      throw domain_error("cannot parse partition '" + std::string(text) + "'");
    }
    blocks.back().push_back(value);
    if (end == std::string_view::npos) break;
    if (text[end] == '|') blocks.emplace_back();
    pos = end + 1;
  }
  return from_blocks(blocks);
}

int SetPartition::ground_size() const {
  return ground_ == 0 ? 0 : kMaxElement - std::countl_zero(ground_);
}

std::vector<std::vector<int>> SetPartition::blocks() const {
  std::vector<std::vector<int>> out;
  out.reserve(blocks_.size());
  for (auto b : blocks_) out.push_back(mask_elements(b));
  return out;
}

std::size_t SetPartition::block_of(int element) const {
  const BlockMask bit = BlockMask{1} << (element - 1);
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (blocks_[k] & bit) return k;
  }
  throw domain_error("element " + std::to_string(element) + " not in ground set");
}

std::string SetPartition::str() const {
  std::string out;
  for (std::size_t k = 0; k < blocks_.size(); ++k) {
    if (k > 0) out += '|';
    out += mask_str(blocks_[k]);
  }
  return out;
}

std::size_t SetPartitionHash::operator()(const SetPartition& p) const noexcept {
  std::size_t h = std::hash<BlockMask>{}(p.ground());
  for (auto b : p.masks()) h = h * 1000003U ^ std::hash<BlockMask>{}(b);
  return h;
}

std::vector<int> mask_elements(BlockMask block) {
  std::vector<int> out;
  while (block != 0) {
    out.push_back(lowest_element(block));
    block &= block - 1;
  }
  return out;
}

std::string mask_str(BlockMask block) {
  std::string out;
  for (int e : mask_elements(block)) {
    if (!out.empty()) out += ',';
    out += std::to_string(e);
  }
  return out;
}

bool is_refinement(const SetPartition& fine, const SetPartition& coarse) {
  require_same_ground(fine, coarse, "is_refinement");
  for (auto f : fine.masks()) {
    const bool inside = std::any_of(coarse.masks().begin(), coarse.masks().end(),
                                    [f](BlockMask c) { return (f & ~c) == 0; });
    if (!inside) return false;
  }
  return true;
}

SetPartition restrict_to(const SetPartition& p, BlockMask subset) {
  if (subset == 0) throw domain_error("restrict_to: empty subset");
  if ((subset & ~p.ground()) != 0) throw domain_error("restrict_to: subset outside ground set");
  std::vector<BlockMask> blocks;
  for (auto b : p.masks()) {
    if (b & subset) blocks.push_back(b & subset);
  }
  return SetPartition::from_masks(std::move(blocks));
}

std::size_t restricted_block_count(const SetPartition& p, BlockMask subset) {
  return static_cast<std::size_t>(
      std::count_if(p.masks().begin(), p.masks().end(), [subset](BlockMask b) { return (b & subset) != 0; }));
}

SetPartition merge_blocks(const SetPartition& p, std::uint64_t selection) {
  std::vector<BlockMask> blocks;
  BlockMask merged = 0;
  for (std::size_t k = 0; k < p.size(); ++k) {
    if ((selection >> k) & 1U) {
      merged |= p.block(k);
    } else {
      blocks.push_back(p.block(k));
    }
  }
  if (merged != 0) blocks.push_back(merged);
  return SetPartition::from_masks(std::move(blocks));
}

std::vector<SetPartition> merge_covers(const SetPartition& p) {
  const std::size_t b = p.size();
  if (b >= 63) throw size_limit_error("merge_covers: too many blocks to enumerate subsets");
  std::vector<SetPartition> out;
  if (b < 2) return out;
  out.reserve((std::size_t{1} << b) - b - 1);
  for (std::uint64_t sel = 1; sel < (std::uint64_t{1} << b); ++sel) {
    if (std::popcount(sel) >= 2) out.push_back(merge_blocks(p, sel));
  }
  return out;
}

std::vector<SetPartition> pair_covers(const SetPartition& p) {
  std::vector<SetPartition> out;
  for (std::size_t a = 0; a < p.size(); ++a) {
    for (std::size_t c = a + 1; c < p.size(); ++c) {
      out.push_back(merge_blocks(p, (std::uint64_t{1} << a) | (std::uint64_t{1} << c)));
    }
  }
  return out;
}

std::vector<SetPartition> interval(const SetPartition& lower, const SetPartition& upper) {
  if (!is_refinement(lower, upper)) {
    throw domain_error("interval: " + lower.str() + " is not below " + upper.str());
  }
  std::vector<std::vector<std::vector<BlockMask>>> choices;
  for (auto outer : upper.masks()) {
    std::vector<BlockMask> items;
    for (auto b : lower.masks()) {
      if ((b & ~outer) == 0) items.push_back(b);
    }
    auto& options = choices.emplace_back();
    partitions_of_items(items, options);
  }
  return product_of_choices(choices);
}

std::vector<SetPartition> coarsenings(const SetPartition& p) {
  std::vector<std::vector<std::vector<BlockMask>>> choices(1);
  partitions_of_items(p.masks(), choices[0]);
  return product_of_choices(choices);
}

BigInt count_maximal_chains(const SetPartition& lower, const SetPartition& upper) {
  if (!is_refinement(lower, upper)) {
    throw domain_error("count_maximal_chains: " + lower.str() + " is not below " + upper.str());
  }
  // 2^{|upper|-|lower|} (|lower|-|upper|)! prod_B |lower restricted to B|!
  const auto steps = static_cast<unsigned>(lower.size() - upper.size());
  BigInt value = factorial(steps);
  for (auto b : upper.masks()) value *= factorial(static_cast<unsigned>(restricted_block_count(lower, b)));
  BigInt halves;
  mpz_tdiv_q_2exp(halves.get_mpz_t(), value.get_mpz_t(), steps);
  return halves;
}

bool extension_less(const SetPartition& a, const SetPartition& b) {
  if (a.size() != b.size()) return a.size() > b.size();
  return min_encoding(a) < min_encoding(b);
}

std::shared_ptr<const PartitionLattice> PartitionLattice::enumerate(int n, int cap) {
  if (n < 1) throw domain_error("lattice: n must be at least 1");
  if (n > cap) {
    throw size_limit_error("lattice: n = " + std::to_string(n) + " exceeds cap " + std::to_string(cap) +
                           " (bell(" + std::to_string(n) + ") = " + bell(static_cast<unsigned>(n)).get_str() +
                           " partitions)");
  }
  if (n > kMaxElement) throw size_limit_error("lattice: n exceeds 64");
  std::vector<BlockMask> singles;
  for (int k = 0; k < n; ++k) singles.push_back(BlockMask{1} << k);
  std::vector<std::vector<BlockMask>> raw;
  partitions_of_items(singles, raw);

  std::vector<std::pair<std::vector<int>, SetPartition>> keyed;
  keyed.reserve(raw.size());
  for (auto& blocks : raw) {
    auto p = SetPartition::from_masks(std::move(blocks));
    keyed.emplace_back(min_encoding(p), std::move(p));
  }
  std::sort(keyed.begin(), keyed.end(), [](const auto& x, const auto& y) {
    if (x.second.size() != y.second.size()) return x.second.size() > y.second.size();
    return x.first < y.first;
  });

  std::shared_ptr<PartitionLattice> lattice(new PartitionLattice());
  lattice->n_ = n;
  lattice->elements_.reserve(keyed.size());
  for (auto& [key, p] : keyed) {
    lattice->index_.emplace(p, lattice->elements_.size());
    lattice->elements_.push_back(std::move(p));
  }
  return lattice;
}

std::size_t PartitionLattice::index_of(const SetPartition& p) const {
  const auto it = index_.find(p);
  if (it == index_.end()) {
    throw domain_error("partition " + p.str() + " is not in P([" + std::to_string(n_) + "])");
  }
  return it->second;
}

}  // namespace coalspec
