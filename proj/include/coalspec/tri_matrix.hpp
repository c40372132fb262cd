#pragma once

#include <cstddef>
#include <map>
#include <memory>
#include <string>
#include <vector>

#include "coalspec/combinatorics.hpp"
#include "coalspec/partition.hpp"

namespace coalspec {

/// Sparse upper-triangular matrix of exact rationals. Rows and columns are
/// either lattice indices (extension order on P([n])) or, for block-counting
/// matrices, positions p = n - i for block count i, so that "more blocks"
/// comes first in both cases. Zero entries are never stored.
class TriMatrix {
 public:
  using Row = std::map<std::size_t, BigRat>;

  TriMatrix() = default;
  explicit TriMatrix(std::shared_ptr<const PartitionLattice> lattice);
  /// Block-counting matrix over block counts n, n-1, ..., 1.
  static TriMatrix over_block_counts(int n);

  std::size_t dim() const { return rows_.size(); }
  const std::shared_ptr<const PartitionLattice>& lattice() const { return lattice_; }
  bool is_block_indexed() const { return lattice_ == nullptr; }

  BigRat get(std::size_t row, std::size_t col) const;
  /// Throws domain_error for col < row or out-of-range indices.
  void set(std::size_t row, std::size_t col, const BigRat& value);
  void add(std::size_t row, std::size_t col, const BigRat& value);
  const Row& row(std::size_t r) const { return rows_.at(r); }
  std::size_t nonzeros() const;

  /// Row/column label: the canonical partition string, or the block count.
  std::string label(std::size_t index) const;

  /// Block-count helpers for block-indexed matrices (1 <= i, j <= n).
  std::size_t block_position(int blocks) const;
  BigRat at_blocks(int i, int j) const { return get(block_position(i), block_position(j)); }

  static TriMatrix identity_like(const TriMatrix& shape);

  /// Exact sparse product; dimensions must agree.
  friend TriMatrix operator*(const TriMatrix& a, const TriMatrix& b);
  friend bool operator==(const TriMatrix& a, const TriMatrix& b) {
    return a.rows_ == b.rows_;
  }

  /// Multiply column j by diag[j].
  TriMatrix scale_columns(const std::vector<BigRat>& diag) const;

 private:
  std::shared_ptr<const PartitionLattice> lattice_;
  std::vector<Row> rows_;
};

}  // namespace coalspec
