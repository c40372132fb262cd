#include "coalspec/spectral.hpp"

#include "coalspec/errors.hpp"

namespace coalspec {

namespace {

BigRat fact(long k) { return BigRat(factorial(static_cast<unsigned>(k))); }

BigRat sign_power(long exponent) { return BigRat(exponent % 2 == 0 ? 1 : -1); }

BigRat pow2(long exponent) {
  BigInt p = 1;
  mpz_mul_2exp(p.get_mpz_t(), p.get_mpz_t(), static_cast<mp_bitcnt_t>(exponent));
  return BigRat(p);
}

// prod_{B in rho} (|pi|_B| - shift)!
BigRat restricted_factorial_product(const SetPartition& pi, const SetPartition& rho, long shift) {
  BigInt prod = 1;
  for (auto b : rho.masks()) {
    prod *= factorial(static_cast<unsigned>(static_cast<long>(restricted_block_count(pi, b)) - shift));
  }
  return BigRat(prod);
}

SpectralTriple lattice_triple(const std::shared_ptr<const PartitionLattice>& lattice,
                              BigRat (*right)(const SetPartition&, const SetPartition&),
                              BigRat (*left)(const SetPartition&, const SetPartition&),
                              BigRat (*eigenvalue)(long blocks)) {
  if (!lattice) throw domain_error("spectral triple: null lattice");
  SpectralTriple t{TriMatrix(lattice), {}, TriMatrix(lattice)};
  t.diagonal.reserve(lattice->size());
  for (std::size_t row = 0; row < lattice->size(); ++row) {
    const auto& pi = lattice->at(row);
    t.diagonal.push_back(eigenvalue(static_cast<long>(pi.size())));
    for (const auto& rho : coarsenings(pi)) {
      const auto col = lattice->index_of(rho);
      t.right.set(row, col, right(pi, rho));
      t.left.set(row, col, left(pi, rho));
    }
  }
  return t;
}

BigRat bs_eigenvalue(long blocks) { return BigRat(1 - blocks); }

BigRat kingman_eigenvalue(long blocks) { return BigRat(-(blocks * (blocks - 1) / 2)); }

SpectralTriple block_triple(int n, BigRat (*right)(int, int), BigRat (*left)(int, int),
                            BigRat (*eigenvalue)(long blocks)) {
  SpectralTriple t{TriMatrix::over_block_counts(n), {}, TriMatrix::over_block_counts(n)};
  t.diagonal.resize(static_cast<std::size_t>(n));
  for (int i = 1; i <= n; ++i) {
    const auto pi = t.right.block_position(i);
    t.diagonal[pi] = eigenvalue(i);
    for (int j = 1; j <= i; ++j) {
      const auto pj = t.right.block_position(j);
      t.right.set(pi, pj, right(i, j));
      t.left.set(pi, pj, left(i, j));
    }
  }
  return t;
}

std::string first_difference(const TriMatrix& expected, const TriMatrix& actual) {
  for (std::size_t r = 0; r < expected.dim(); ++r) {
    if (expected.row(r) == actual.row(r)) continue;
    for (std::size_t c = r; c < expected.dim(); ++c) {
      const auto e = expected.get(r, c);
      const auto a = actual.get(r, c);
      if (e != a) {
        return "(" + expected.label(r) + ", " + expected.label(c) + "): expected " + e.str() + ", got " + a.str();
      }
    }
  }
  return "no difference";
}

}  // namespace

TriMatrix SpectralTriple::diagonal_matrix() const {
  auto d = TriMatrix::identity_like(right);
  return d.scale_columns(diagonal);
}

BigRat bs_right_entry(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return {};
  const auto a = static_cast<long>(pi.size());
  const auto b = static_cast<long>(rho.size());
  return fact(b - 1) / fact(a - 1) * restricted_factorial_product(pi, rho, 1);
}

BigRat bs_left_entry(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return {};
  const auto a = static_cast<long>(pi.size());
  const auto b = static_cast<long>(rho.size());
  return sign_power(a - b) * fact(b - 1) / fact(a - 1);
}

BigRat kingman_right_entry(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return {};
  const auto a = static_cast<long>(pi.size());
  const auto b = static_cast<long>(rho.size());
  return fact(2 * b - 1) / fact(a + b - 1) * restricted_factorial_product(pi, rho, 0);
}

BigRat kingman_left_entry(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return {};
  const auto a = static_cast<long>(pi.size());
  const auto b = static_cast<long>(rho.size());
  return sign_power(a - b) * fact(a + b - 2) / fact(2 * a - 2) * restricted_factorial_product(pi, rho, 0);
}

BigRat kingman_right_entry_by_chains(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return {};
  const auto a = static_cast<long>(pi.size());
  const auto b = static_cast<long>(rho.size());
  return pow2(a - b) * fact(2 * b - 1) / (fact(a - b) * fact(a + b - 1)) *
         BigRat(count_maximal_chains(pi, rho));
}

BigRat kingman_left_entry_by_chains(const SetPartition& pi, const SetPartition& rho) {
  if (!is_refinement(pi, rho)) return {};
  const auto a = static_cast<long>(pi.size());
  const auto b = static_cast<long>(rho.size());
  return sign_power(a - b) * pow2(a - b) * fact(a + b - 2) / (fact(2 * a - 2) * fact(a - b)) *
         BigRat(count_maximal_chains(pi, rho));
}

SpectralTriple bs_triple(const std::shared_ptr<const PartitionLattice>& lattice) {
  return lattice_triple(lattice, &bs_right_entry, &bs_left_entry, &bs_eigenvalue);
}

SpectralTriple kingman_triple(const std::shared_ptr<const PartitionLattice>& lattice) {
  return lattice_triple(lattice, &kingman_right_entry, &kingman_left_entry, &kingman_eigenvalue);
}

SpectralTriple model_triple(Model model, const std::shared_ptr<const PartitionLattice>& lattice) {
  return model == Model::bolthausen_sznitman ? bs_triple(lattice) : kingman_triple(lattice);
}

BigRat bs_block_right_entry(int i, int j) {
  if (j < 1 || j > i) return {};
  return fact(j - 1) / fact(i - 1) * BigRat(stirling_first(static_cast<unsigned>(i), static_cast<unsigned>(j)));
}

BigRat bs_block_left_entry(int i, int j) {
  if (j < 1 || j > i) return {};
  return sign_power(i - j) * fact(j - 1) / fact(i - 1) *
         BigRat(stirling_second(static_cast<unsigned>(i), static_cast<unsigned>(j)));
}

BigRat kingman_block_right_entry(int i, int j) {
  if (j < 1 || j > i) return {};
  return fact(2 * j - 1) / fact(i + j - 1) * BigRat(lah(static_cast<unsigned>(i), static_cast<unsigned>(j)));
}

BigRat kingman_block_left_entry(int i, int j) {
  if (j < 1 || j > i) return {};
  return sign_power(i - j) * fact(i + j - 2) / fact(2 * i - 2) *
         BigRat(lah(static_cast<unsigned>(i), static_cast<unsigned>(j)));
}

SpectralTriple bs_block_triple(int n) {
  return block_triple(n, &bs_block_right_entry, &bs_block_left_entry, &bs_eigenvalue);
}

SpectralTriple kingman_block_triple(int n) {
  return block_triple(n, &kingman_block_right_entry, &kingman_block_left_entry, &kingman_eigenvalue);
}

TripleReport verify_triple(const TriMatrix& q, const SpectralTriple& triple) {
  TripleReport report;
  const auto dim = q.dim();
  if (triple.right.dim() != dim || triple.left.dim() != dim || triple.diagonal.size() != dim) {
    report.failures.push_back("dimension mismatch");
    return report;
  }

  const auto rdl = triple.right.scale_columns(triple.diagonal) * triple.left;
  report.factorization = rdl == q;
  if (!report.factorization) report.failures.push_back("Q != RDL at " + first_difference(q, rdl));

  const auto identity = TriMatrix::identity_like(q);
  const auto lr = triple.left * triple.right;
  report.left_inverse = lr == identity;
  if (!report.left_inverse) report.failures.push_back("LR != I at " + first_difference(identity, lr));

  const auto rl = triple.right * triple.left;
  report.right_inverse = rl == identity;
  if (!report.right_inverse) report.failures.push_back("RL != I at " + first_difference(identity, rl));

  report.unit_diagonals = true;
  for (std::size_t k = 0; k < dim; ++k) {
    if (triple.right.get(k, k) != BigRat(1) || triple.left.get(k, k) != BigRat(1)) {
      report.unit_diagonals = false;
      report.failures.push_back("non-unit diagonal at " + q.label(k));
      break;
    }
  }

  report.support = true;
  if (const auto& lattice = q.lattice()) {
    for (const TriMatrix* m : {&triple.right, &triple.left}) {
      for (std::size_t r = 0; r < dim && report.support; ++r) {
        for (const auto& [c, v] : m->row(r)) {
          if (!is_refinement(lattice->at(r), lattice->at(c))) {
            report.support = false;
            report.failures.push_back("entry outside pi <= rho at (" + q.label(r) + ", " + q.label(c) + ")");
            break;
          }
        }
      }
    }
  }
  return report;
}

}  // namespace coalspec
