#include "coalspec/generator.hpp"

#include <algorithm>

#include "coalspec/errors.hpp"

namespace coalspec {

const char* model_name(Model m) {
  return m == Model::bolthausen_sznitman ? "bs" : "kingman";
}

void RateTable::set(int b, int k, const BigRat& rate) {
  if (k < 2 || k > b) throw domain_error("RateTable: need 2 <= k <= b");
  if (rate.sign() < 0) throw domain_error("RateTable: negative rate");
  rates_[{b, k}] = rate;
  if (b > max_blocks_) max_blocks_ = b;
}

const BigRat& RateTable::rate(int b, int k) const {
  const auto it = rates_.find({b, k});
  if (it == rates_.end()) {
    throw domain_error("RateTable: missing rate lambda_{" + std::to_string(b) + "," + std::to_string(k) + "}");
  }
  return it->second;
}

BigRat RateTable::total_rate(int b) const {
  BigRat total;
  for (int k = 2; k <= b; ++k) {
    total += BigRat(binomial(static_cast<unsigned>(b), static_cast<unsigned>(k))) * rate(b, k);
  }
  return total;
}

RateTable bs_rates(int n) {
  if (n < 2) throw domain_error("bs_rates: n must be at least 2");
  RateTable table(n);
  for (int b = 2; b <= n; ++b) {
    for (int k = 2; k <= b; ++k) {
      const BigInt num = factorial(static_cast<unsigned>(k - 2)) * factorial(static_cast<unsigned>(b - k));
      table.set(b, k, BigRat(num, factorial(static_cast<unsigned>(b - 1))));
    }
  }
  return table;
}

RateTable kingman_rates(int n) {
  if (n < 2) throw domain_error("kingman_rates: n must be at least 2");
  RateTable table(n);
  for (int b = 2; b <= n; ++b) {
    for (int k = 2; k <= b; ++k) table.set(b, k, BigRat(k == 2 ? 1 : 0));
  }
  return table;
}

RateTable model_rates(Model model, int n) {
  return model == Model::bolthausen_sznitman ? bs_rates(n) : kingman_rates(n);
}

TriMatrix build_generator(const std::shared_ptr<const PartitionLattice>& lattice, const RateTable& rates) {
  if (!lattice) throw domain_error("build_generator: null lattice");
  const int n = lattice->ground_size();
  for (int b = 2; b <= n; ++b) {
    for (int k = 2; k <= b; ++k) (void)rates.rate(b, k);
  }
  std::vector<BigRat> totals(static_cast<std::size_t>(n) + 1);
  for (int b = 2; b <= n; ++b) totals[static_cast<std::size_t>(b)] = rates.total_rate(b);

  TriMatrix q(lattice);
  for (std::size_t row = 0; row < lattice->size(); ++row) {
    const auto& pi = lattice->at(row);
    const int b = static_cast<int>(pi.size());
    if (b < 2) continue;
    q.set(row, row, -totals[static_cast<std::size_t>(b)]);
    for (const auto& sigma : merge_covers(pi)) {
      const int k = b - static_cast<int>(sigma.size()) + 1;
      const auto& lambda = rates.rate(b, k);
      if (!lambda.is_zero()) q.set(row, lattice->index_of(sigma), lambda);
    }
  }
  return q;
}

TriMatrix build_generator(const std::shared_ptr<const PartitionLattice>& lattice, Model model) {
  return build_generator(lattice, model_rates(model, std::max(2, lattice->ground_size())));
}

TriMatrix bs_block_generator(int n) {
  auto q = TriMatrix::over_block_counts(n);
  for (int i = 2; i <= n; ++i) {
    q.set(q.block_position(i), q.block_position(i), BigRat(1 - i));
    for (int j = 1; j < i; ++j) {
      q.set(q.block_position(i), q.block_position(j), BigRat(BigInt(i), BigInt((i - j) * (i - j + 1))));
    }
  }
  return q;
}

TriMatrix kingman_block_generator(int n) {
  auto q = TriMatrix::over_block_counts(n);
  for (int i = 2; i <= n; ++i) {
    const BigRat pairs(binomial(static_cast<unsigned>(i), 2));
    q.set(q.block_position(i), q.block_position(i), -pairs);
    q.set(q.block_position(i), q.block_position(i - 1), pairs);
  }
  return q;
}

CharacteristicFactorization characteristic_factorization(const TriMatrix& q, const RateTable& rates) {
  if (q.is_block_indexed()) throw domain_error("characteristic_factorization: needs a lattice-indexed Q");
  const int n = q.lattice()->ground_size();
  CharacteristicFactorization out;
  std::map<BigRat, BigInt> expected;
  for (int i = 1; i <= n; ++i) {
    const BigRat value = i == 1 ? BigRat() : -rates.total_rate(i);
    const BigInt mult = stirling_second(static_cast<unsigned>(n), static_cast<unsigned>(i));
    out.factors.push_back({value, mult});
    expected[value] += mult;
  }
  std::map<BigRat, BigInt> observed;
  for (std::size_t k = 0; k < q.dim(); ++k) observed[q.get(k, k)] += 1;
  out.matches_diagonal = observed == expected;
  return out;
}

}  // namespace coalspec
