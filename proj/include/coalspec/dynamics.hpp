#pragma once

#include <memory>

#include <Eigen/Dense>

#include "coalspec/combinatorics.hpp"
#include "coalspec/partition.hpp"
#include "coalspec/spectral.hpp"

namespace coalspec {

/// Expected total time spent in a state; infinite for the absorbing state.
struct GreenEntry {
  bool infinite = false;
  BigRat value;

  static GreenEntry infinity() { return {true, {}}; }
  std::string str() const { return infinite ? "inf" : value.str(); }
  friend bool operator==(const GreenEntry&, const GreenEntry&) = default;
};

/// P(Pi(t) = rho | Pi(0) = pi) for the Bolthausen-Sznitman n-coalescent, in
/// closed form. Throws domain_error for t < 0 or different ground sets.
double bs_transition(const SetPartition& pi, const SetPartition& rho, double t);

/// sum_sigma r_{pi sigma} x^{|sigma|-1} l_{sigma rho} in closed form:
/// (-1)^{|rho|} x^{-1} ((|rho|-1)!/(|pi|-1)!) prod_{B in rho} (-x)^{rising |pi|_B|}.
/// With x = e^{-t} this is the transition probability. Throws for x = 0.
BigRat bs_transition_exact(const SetPartition& pi, const SetPartition& rho, const BigRat& x);

/// Green's function g_{pi rho} of the Bolthausen-Sznitman n-coalescent.
GreenEntry bs_green(const SetPartition& pi, const SetPartition& rho);

/// Probability of ever visiting rho from pi, g_{pi rho} (|rho| - 1). Throws
/// domain_error when rho is the single block.
BigRat bs_hitting(const SetPartition& pi, const SetPartition& rho);

/// Green's function of the block-counting process from i blocks to j blocks,
/// 2 <= j <= i <= n.
BigRat bs_block_green(int i, int j, int n);

/// Probability that Kingman's n-coalescent started at pi visits rho:
/// prod_{B in rho} |pi|_B|! / L(|pi|, |rho|).
BigRat kingman_hitting(const SetPartition& pi, const SetPartition& rho);

/// R exp(tD) L evaluated in floating point.
Eigen::MatrixXd transition_via_triple(const SpectralTriple& triple, double t);

/// R diag(x^{-d}) L in exact arithmetic, where d are the (nonpositive integer)
/// eigenvalues of the triple; with x = e^{-t} this is R exp(tD) L.
TriMatrix transition_via_triple_exact(const SpectralTriple& triple, const BigRat& x);

/// Full closed-form transition matrix of the Bolthausen-Sznitman coalescent.
Eigen::MatrixXd bs_transition_matrix(const PartitionLattice& lattice, double t);

}  // namespace coalspec
