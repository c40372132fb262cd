#include "coalspec/oracle.hpp"

#include <cmath>
#include <functional>

#include "coalspec/errors.hpp"

namespace coalspec::oracle {

Eigen::MatrixXd matexp_series(const Eigen::MatrixXd& q, double t, double tol) {
  if (q.rows() != q.cols()) throw domain_error("matexp_series: matrix must be square");
  if (!(tol > 0.0)) throw domain_error("matexp_series: tol must be positive");
  const Eigen::MatrixXd a = t * q;
  const double norm = a.cwiseAbs().rowwise().sum().maxCoeff();
  int squarings = 0;
  while (norm / std::ldexp(1.0, squarings) >= 0.5) ++squarings;
  const Eigen::MatrixXd scaled = a / std::ldexp(1.0, squarings);

  const auto dim = q.rows();
  Eigen::MatrixXd sum = Eigen::MatrixXd::Identity(dim, dim);
  Eigen::MatrixXd term = Eigen::MatrixXd::Identity(dim, dim);
  // With ||scaled|| < 1/2 the remainder after a term of norm e is below e;
  // each squaring at most doubles the absolute error of a substochastic
  // exponential, hence the 2^-s factor.
  const double cutoff = tol / std::ldexp(1.0, squarings);
  for (int k = 1; k < 200; ++k) {
    term = term * scaled / static_cast<double>(k);
    sum += term;
    if (term.cwiseAbs().rowwise().sum().maxCoeff() < cutoff) break;
  }
  for (int s = 0; s < squarings; ++s) sum = sum * sum;
  return sum;
}

Eigen::MatrixXd to_dense(const TriMatrix& m) {
  const auto dim = static_cast<Eigen::Index>(m.dim());
  Eigen::MatrixXd out = Eigen::MatrixXd::Zero(dim, dim);
  for (std::size_t r = 0; r < m.dim(); ++r) {
    for (const auto& [c, v] : m.row(r)) {
      out(static_cast<Eigen::Index>(r), static_cast<Eigen::Index>(c)) = v.to_double();
    }
  }
  return out;
}

TriMatrix fundamental_matrix(const TriMatrix& q) {
  const std::size_t dim = q.dim();
  if (dim == 0) throw domain_error("fundamental_matrix: empty generator");
  const std::size_t absorbing = dim - 1;
  TriMatrix n = TriMatrix::identity_like(q);
  n.set(absorbing, absorbing, BigRat());

  // Row r of (-Q_TT) N = I reads -q_rr N_r. - sum_{k>r} q_rk N_k. = e_r.
  for (std::size_t r = absorbing; r-- > 0;) {
    const BigRat rate = -q.get(r, r);
    if (rate.is_zero()) {
      throw domain_error("fundamental_matrix: transient state " + q.label(r) + " has zero total rate");
    }
    TriMatrix::Row acc;
    acc[r] = BigRat(1);
    for (const auto& [k, qv] : q.row(r)) {
      if (k == r || k == absorbing) continue;
      for (const auto& [c, nv] : n.row(k)) acc[c] += qv * nv;
    }
    for (const auto& [c, v] : acc) n.set(r, c, v / rate);
  }
  return n;
}

std::vector<Chain> enumerate_maximal_chains(const SetPartition& lower, const SetPartition& upper) {
  if (lower.ground_size() > kMaxChainEnumerationGround) {
    throw size_limit_error("enumerate_maximal_chains: ground set larger than " +
                           std::to_string(kMaxChainEnumerationGround));
  }
  if (!is_refinement(lower, upper)) {
    throw domain_error("enumerate_maximal_chains: " + lower.str() + " is not below " + upper.str());
  }
  std::vector<Chain> chains;
  Chain current{lower};
  std::function<void()> extend = [&]() {
    const auto& last = current.back();
    if (last == upper) {
      chains.push_back(current);
      return;
    }
    for (auto& next : pair_covers(last)) {
      if (!is_refinement(next, upper)) continue;
      current.push_back(std::move(next));
      extend();
      current.pop_back();
    }
  };
  extend();
  return chains;
}

std::vector<BigRat> hitting_bruteforce_all(const TriMatrix& q, const SetPartition& rho) {
  const auto& lattice = q.lattice();
  if (!lattice) throw domain_error("hitting_bruteforce: needs a lattice-indexed generator");
  const auto target = lattice->index_of(rho);
  std::vector<BigRat> h(q.dim());
  for (std::size_t s = q.dim(); s-- > 0;) {
    if (s == target) {
      h[s] = BigRat(1);
      continue;
    }
    const BigRat rate = -q.get(s, s);
    if (rate.is_zero()) continue;  // absorbing and not the target
    BigRat sum;
    for (const auto& [t, qv] : q.row(s)) {
      if (t != s) sum += qv * h[t];
    }
    h[s] = sum / rate;
  }
  return h;
}

BigRat hitting_bruteforce(const TriMatrix& q, const SetPartition& pi, const SetPartition& rho) {
  if (!q.lattice()) throw domain_error("hitting_bruteforce: needs a lattice-indexed generator");
  const auto start = q.lattice()->index_of(pi);
  return hitting_bruteforce_all(q, rho)[start];
}

BigRat hitting_bruteforce(Model model, const SetPartition& pi, const SetPartition& rho) {
  if (!pi.is_full_ground()) throw domain_error("hitting_bruteforce: pi must be a partition of [n]");
  const auto lattice = PartitionLattice::enumerate(pi.ground_size());
  return hitting_bruteforce(build_generator(lattice, model), pi, rho);
}

}  // namespace coalspec::oracle
