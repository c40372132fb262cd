#pragma once

#include <map>
#include <memory>
#include <utility>
#include <vector>

#include "coalspec/combinatorics.hpp"
#include "coalspec/partition.hpp"
#include "coalspec/tri_matrix.hpp"

namespace coalspec {

enum class Model { bolthausen_sznitman, kingman };

const char* model_name(Model m);  // "bs" / "kingman"

/// Merger rates lambda_{b,k}: with b blocks present, any particular k of them
/// merge at this rate (2 <= k <= b).
class RateTable {
 public:
  RateTable() = default;
  explicit RateTable(int max_blocks) : max_blocks_(max_blocks) {}

  int max_blocks() const { return max_blocks_; }
  void set(int b, int k, const BigRat& rate);
  bool has(int b, int k) const { return rates_.contains({b, k}); }
  /// Throws domain_error for a missing rate.
  const BigRat& rate(int b, int k) const;
  /// lambda_b = sum_k C(b,k) lambda_{b,k}; zero for b <= 1.
  BigRat total_rate(int b) const;

 private:
  int max_blocks_ = 0;
  std::map<std::pair<int, int>, BigRat> rates_;
};

/// lambda_{b,k} = (k-2)! (b-k)! / (b-1)!  (Lambda uniform on [0,1]).
RateTable bs_rates(int n);
/// lambda_{b,2} = 1, all other rates zero  (Lambda = delta_0).
RateTable kingman_rates(int n);
RateTable model_rates(Model model, int n);

/// Q-matrix of the n-coalescent with the given rates over P([n]).
TriMatrix build_generator(const std::shared_ptr<const PartitionLattice>& lattice,
                          const RateTable& rates);
TriMatrix build_generator(const std::shared_ptr<const PartitionLattice>& lattice, Model model);

/// Block-counting generators, block-indexed (see TriMatrix).
TriMatrix bs_block_generator(int n);
TriMatrix kingman_block_generator(int n);

struct EigenFactor {
  BigRat eigenvalue;
  BigInt multiplicity;
};

struct CharacteristicFactorization {
  /// (-lambda_i, {n over i}) for i = 1, ..., n.
  std::vector<EigenFactor> factors;
  /// True when the diagonal of Q realises exactly this multiset.
  bool matches_diagonal = false;
};

CharacteristicFactorization characteristic_factorization(const TriMatrix& q, const RateTable& rates);

}  // namespace coalspec
