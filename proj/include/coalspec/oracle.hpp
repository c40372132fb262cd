#pragma once

// Reference computations used to check the closed forms. Each works from the
// generator or the lattice alone (series summation, linear solves,
// enumeration, recursion over the jump chain) and never calls the formula it
// is meant to check.

#include <vector>

#include <Eigen/Dense>

#include "coalspec/combinatorics.hpp"
#include "coalspec/generator.hpp"
#include "coalspec/partition.hpp"
#include "coalspec/tri_matrix.hpp"

namespace coalspec::oracle {

inline constexpr double kDefaultSeriesTolerance = 1e-13;

/// exp(tQ) by scaling and squaring of a truncated Taylor series; the scaling
/// makes ||tQ / 2^s||_inf < 1/2 and terms are summed until below tol.
Eigen::MatrixXd matexp_series(const Eigen::MatrixXd& q, double t, double tol = kDefaultSeriesTolerance);

Eigen::MatrixXd to_dense(const TriMatrix& m);

/// N = (-Q_TT)^{-1} over the transient states (every state except the last,
/// absorbing one), by exact back substitution. Lattice-indexed like Q; the
/// absorbing row and column are left empty. Throws domain_error when a
/// transient state has zero total rate.
TriMatrix fundamental_matrix(const TriMatrix& q);

inline constexpr int kMaxChainEnumerationGround = 7;

using Chain = std::vector<SetPartition>;

/// Depth-first enumeration of lower = p_1 < ... < p_m = upper through single
/// pair mergers. Throws size_limit_error above kMaxChainEnumerationGround.
std::vector<Chain> enumerate_maximal_chains(const SetPartition& lower, const SetPartition& upper);

/// Probability that the jump chain of Q started at pi ever visits rho, by the
/// recursion h(s) = sum_t (q_st / q_s) h(t), h(rho) = 1, h(absorbing) = 0
/// otherwise.
BigRat hitting_bruteforce(const TriMatrix& q, const SetPartition& pi, const SetPartition& rho);
/// Hitting probabilities of rho from every state, indexed like q.
std::vector<BigRat> hitting_bruteforce_all(const TriMatrix& q, const SetPartition& rho);
BigRat hitting_bruteforce(Model model, const SetPartition& pi, const SetPartition& rho);

}  // namespace coalspec::oracle
