#include "coalspec/dynamics.hpp"

#include <cmath>
#include <functional>
#include <vector>

#include "coalspec/errors.hpp"

namespace coalspec {

namespace {

void require_comparable_grounds(const SetPartition& pi, const SetPartition& rho, const char* what) {
  if (pi.ground() != rho.ground()) {
    throw domain_error(std::string(what) + ": partitions of different ground sets");
  }
}

std::vector<std::size_t> restricted_counts(const SetPartition& pi, const SetPartition& rho) {
  std::vector<std::size_t> counts;
  counts.reserve(rho.size());
  for (auto b : rho.masks()) counts.push_back(restricted_block_count(pi, b));
  return counts;
}

BigRat falling_ratio(std::size_t upper_blocks, std::size_t lower_blocks) {
  // (|rho|-1)! / (|pi|-1)!
  return BigRat(factorial(static_cast<unsigned>(upper_blocks - 1)),
                factorial(static_cast<unsigned>(lower_blocks - 1)));
}

}  // namespace

double bs_transition(const SetPartition& pi, const SetPartition& rho, double t) {
  require_comparable_grounds(pi, rho, "bs_transition");
  if (!(t >= 0.0)) throw domain_error("bs_transition: t must be nonnegative");
  if (!is_refinement(pi, rho)) return 0.0;
  if (t == 0.0) return pi == rho ? 1.0 : 0.0;

  // (-1)^{|rho|} e^t prod_B (-x)^{rising m_B} with x = e^{-t} equals
  // x^{|rho|-1} prod_B prod_{j=1}^{m_B-1} (j - x); 1 - x is taken from expm1
  // so small t keeps full relative precision.
  const double one_minus_x = -std::expm1(-t);
  double value = std::exp(-t * static_cast<double>(rho.size() - 1));
  for (std::size_t k = rho.size(); k < pi.size(); ++k) value /= static_cast<double>(k);
  for (auto m : restricted_counts(pi, rho)) {
    for (std::size_t j = 1; j < m; ++j) value *= static_cast<double>(j - 1) + one_minus_x;
  }
  return value;
}

BigRat bs_transition_exact(const SetPartition& pi, const SetPartition& rho, const BigRat& x) {
  require_comparable_grounds(pi, rho, "bs_transition_exact");
  if (x.is_zero()) throw domain_error("bs_transition_exact: x must be nonzero");
  if (!is_refinement(pi, rho)) return {};
  BigRat value = falling_ratio(rho.size(), pi.size()) / x;
  if (rho.size() % 2 == 1) value = -value;
  for (auto m : restricted_counts(pi, rho)) value *= ascending_factorial(-x, static_cast<unsigned>(m));
  return value;
}

GreenEntry bs_green(const SetPartition& pi, const SetPartition& rho) {
  require_comparable_grounds(pi, rho, "bs_green");
  if (!is_refinement(pi, rho)) return {};
  if (rho.size() == 1) return GreenEntry::infinity();

  // Sum over tuples (k_B), 1 <= k_B <= |pi|_B|, of
  // (-1)^{|k|}/(|k|-1) prod_B [m_B over k_B]. |rho| >= 2 forces |k| >= 2.
  const auto counts = restricted_counts(pi, rho);
  BigRat sum;
  std::vector<unsigned> k(counts.size(), 1);
  std::function<void(std::size_t, unsigned, const BigInt&)> walk = [&](std::size_t pos, unsigned total,
                                                                       const BigInt& weight) {
    if (pos == counts.size()) {
      BigRat term(weight, BigInt(total - 1));
      sum += total % 2 == 0 ? term : -term;
      return;
    }
    for (unsigned kb = 1; kb <= counts[pos]; ++kb) {
      walk(pos + 1, total + kb, weight * stirling_first(static_cast<unsigned>(counts[pos]), kb));
    }
  };
  walk(0, 0, BigInt(1));

  BigRat value = falling_ratio(rho.size(), pi.size()) * sum;
  if (rho.size() % 2 == 1) value = -value;
  return {false, value};
}

BigRat bs_hitting(const SetPartition& pi, const SetPartition& rho) {
  require_comparable_grounds(pi, rho, "bs_hitting");
  if (rho.size() == 1) {
    throw domain_error("bs_hitting: the absorbing partition is hit with probability 1");
  }
  const auto g = bs_green(pi, rho);
  return g.value * BigRat(static_cast<long>(rho.size()) - 1);
}

BigRat bs_block_green(int i, int j, int n) {
  if (j == 1) throw domain_error("bs_block_green: j = 1 is the absorbing level");
  if (j < 2 || j > i || i > n) throw domain_error("bs_block_green: need 2 <= j <= i <= n");
  BigRat sum;
  for (int k = j; k <= i; ++k) {
    const BigInt weight = stirling_first(static_cast<unsigned>(i), static_cast<unsigned>(k)) *
                          stirling_second(static_cast<unsigned>(k), static_cast<unsigned>(j));
    const BigRat term(weight, BigInt(k - 1));
    sum += k % 2 == 0 ? term : -term;
  }
  BigRat value = BigRat(factorial(static_cast<unsigned>(j - 1)), factorial(static_cast<unsigned>(i - 1))) * sum;
  return j % 2 == 0 ? value : -value;
}

BigRat kingman_hitting(const SetPartition& pi, const SetPartition& rho) {
  require_comparable_grounds(pi, rho, "kingman_hitting");
  if (!is_refinement(pi, rho)) return {};
  BigInt prod = 1;
  for (auto m : restricted_counts(pi, rho)) prod *= factorial(static_cast<unsigned>(m));
  return BigRat(prod, lah(static_cast<unsigned>(pi.size()), static_cast<unsigned>(rho.size())));
}

Eigen::MatrixXd transition_via_triple(const SpectralTriple& triple, double t) {
  if (!(t >= 0.0)) throw domain_error("transition_via_triple: t must be nonnegative");
  const auto dim = static_cast<Eigen::Index>(triple.right.dim());
  std::vector<double> decay(triple.diagonal.size());
  for (std::size_t k = 0; k < decay.size(); ++k) decay[k] = std::exp(t * triple.diagonal[k].to_double());

  std::vector<std::vector<std::pair<std::size_t, double>>> left_rows(triple.left.dim());
  for (std::size_t r = 0; r < triple.left.dim(); ++r) {
    for (const auto& [c, v] : triple.left.row(r)) left_rows[r].emplace_back(c, v.to_double());
  }

  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t r = 0; r < triple.right.dim(); ++r) {
    for (const auto& [mid, rv] : triple.right.row(r)) {
      const double scale = rv.to_double() * decay[mid];
      for (const auto& [c, lv] : left_rows[mid]) {
        p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) += scale * lv;
      }
    }
  }
  return p;
}

TriMatrix transition_via_triple_exact(const SpectralTriple& triple, const BigRat& x) {
  std::vector<BigRat> weights;
  weights.reserve(triple.diagonal.size());
  for (const auto& d : triple.diagonal) {
    if (d.denominator() != 1 || d.sign() > 0) {
      throw domain_error("transition_via_triple_exact: eigenvalues must be nonpositive integers");
    }
    weights.push_back(pow(x, static_cast<int>(-d.numerator().get_si())));
  }
  return triple.right.scale_columns(weights) * triple.left;
}

Eigen::MatrixXd bs_transition_matrix(const PartitionLattice& lattice, double t) {
  const auto dim = static_cast<Eigen::Index>(lattice.size());
  Eigen::MatrixXd p = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t r = 0; r < lattice.size(); ++r) {
    const auto& pi = lattice.at(r);
    for (const auto& rho : coarsenings(pi)) {
      p(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(lattice.index_of(rho))) = bs_transition(pi, rho, t);
    }
  }
  return p;
}

}  // namespace coalspec
