#pragma once

#include <memory>
#include <string>
#include <vector>

#include "coalspec/combinatorics.hpp"
#include "coalspec/generator.hpp"
#include "coalspec/partition.hpp"
#include "coalspec/tri_matrix.hpp"

namespace coalspec {

/// Q = R D L with L = R^{-1}; R holds right eigenvectors as columns, L left
/// eigenvectors as rows, D the eigenvalues.
struct SpectralTriple {
  TriMatrix right;
  std::vector<BigRat> diagonal;
  TriMatrix left;

  TriMatrix diagonal_matrix() const;
};

// Entry formulas, zero unless pi <= rho.

/// ((|rho|-1)!/(|pi|-1)!) prod_{B in rho} (|pi|_B| - 1)!
BigRat bs_right_entry(const SetPartition& pi, const SetPartition& rho);
/// (-1)^{|pi|-|rho|} (|rho|-1)!/(|pi|-1)!
BigRat bs_left_entry(const SetPartition& pi, const SetPartition& rho);

/// ((2|rho|-1)!/(|pi|+|rho|-1)!) prod_{B in rho} |pi|_B|!
BigRat kingman_right_entry(const SetPartition& pi, const SetPartition& rho);
/// (-1)^{|pi|-|rho|} ((|pi|+|rho|-2)!/(2|pi|-2)!) prod_{B in rho} |pi|_B|!
BigRat kingman_left_entry(const SetPartition& pi, const SetPartition& rho);

/// The same Kingman eigenvectors written through the number of maximal
/// chains m(pi, rho); must agree with the product forms above.
BigRat kingman_right_entry_by_chains(const SetPartition& pi, const SetPartition& rho);
BigRat kingman_left_entry_by_chains(const SetPartition& pi, const SetPartition& rho);

SpectralTriple bs_triple(const std::shared_ptr<const PartitionLattice>& lattice);
SpectralTriple kingman_triple(const std::shared_ptr<const PartitionLattice>& lattice);
SpectralTriple model_triple(Model model, const std::shared_ptr<const PartitionLattice>& lattice);

// Block-counting triples; entries indexed by block counts, see
// TriMatrix::at_blocks.

BigRat bs_block_right_entry(int i, int j);
BigRat bs_block_left_entry(int i, int j);
BigRat kingman_block_right_entry(int i, int j);
/// Uses the sign (-1)^{i-j}.
BigRat kingman_block_left_entry(int i, int j);

SpectralTriple bs_block_triple(int n);
SpectralTriple kingman_block_triple(int n);

struct TripleReport {
  bool factorization = false;    // Q == R D L
  bool left_inverse = false;     // L R == I
  bool right_inverse = false;    // R L == I
  bool unit_diagonals = false;   // r_pp == l_pp == 1
  bool support = false;          // nonzeros of R, L only at pi <= rho
  std::vector<std::string> failures;

  bool all_pass() const {
    return factorization && left_inverse && right_inverse && unit_diagonals && support;
  }
};

/// Exact check of a candidate decomposition. Failures are reported, not
/// thrown.
TripleReport verify_triple(const TriMatrix& q, const SpectralTriple& triple);

}  // namespace coalspec
