#include "coalspec/verify.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

#include "coalspec/dynamics.hpp"
#include "coalspec/generator.hpp"
#include "coalspec/oracle.hpp"
#include "coalspec/rrt.hpp"
#include "coalspec/spectral.hpp"

namespace coalspec {

namespace {

class Checks {
 public:
  explicit Checks(int n) : n_(n) {}

  void add(std::string name, bool passed, std::string detail = {}) {
    results_.push_back({std::move(name), n_, passed, std::move(detail)});
  }
  std::vector<CheckResult> take() { return std::move(results_); }

 private:
  int n_;
  std::vector<CheckResult> results_;
};

std::string describe(const TripleReport& report) {
  if (report.all_pass()) return "Q=RDL, LR=I, RL=I, unit diagonals, support";
  std::string out;
  for (const auto& f : report.failures) out += (out.empty() ? "" : "; ") + f;
  return out;
}

void check_lattice(Checks& checks, int n, const std::shared_ptr<const PartitionLattice>& lattice) {
  for (Model model : {Model::bolthausen_sznitman, Model::kingman}) {
    const std::string tag = model_name(model);
    const auto q = build_generator(lattice, model);
    const auto report = verify_triple(q, model_triple(model, lattice));
    checks.add(tag + " spectral decomposition", report.all_pass(), describe(report));

    const auto chi = characteristic_factorization(q, model_rates(model, std::max(2, n)));
    checks.add(tag + " characteristic polynomial", chi.matches_diagonal);

    bool hitting_ok = true;
    for (const auto& rho : lattice->elements()) {
      if (model == Model::bolthausen_sznitman && rho.size() == 1) continue;
      const auto brute = oracle::hitting_bruteforce_all(q, rho);
      for (std::size_t k = 0; k < lattice->size(); ++k) {
        const auto& pi = lattice->at(k);
        const auto closed = model == Model::bolthausen_sznitman ? bs_hitting(pi, rho) : kingman_hitting(pi, rho);
        if (closed != brute[k]) hitting_ok = false;
      }
    }
    checks.add(tag + " hitting probabilities vs jump-chain recursion", hitting_ok);
  }

  bool chain_forms = true;
  for (const auto& pi : lattice->elements()) {
    for (const auto& rho : coarsenings(pi)) {
      chain_forms = chain_forms && kingman_right_entry(pi, rho) == kingman_right_entry_by_chains(pi, rho) &&
                    kingman_left_entry(pi, rho) == kingman_left_entry_by_chains(pi, rho);
    }
  }
  checks.add("kingman eigenvectors: chain form = product form", chain_forms);

  if (n <= oracle::kMaxChainEnumerationGround) {
    bool chains_ok = true;
    for (const auto& pi : lattice->elements()) {
      for (const auto& rho : coarsenings(pi)) {
        if (count_maximal_chains(pi, rho) != oracle::enumerate_maximal_chains(pi, rho).size()) chains_ok = false;
      }
    }
    checks.add("maximal chain count vs enumeration", chains_ok);
  }
}

void check_bs_dynamics(Checks& checks, int n, const std::shared_ptr<const PartitionLattice>& lattice,
                       double tol) {
  const auto q = build_generator(lattice, Model::bolthausen_sznitman);
  const auto dense_q = oracle::to_dense(q);
  for (double t : {0.1, 1.0, 5.0}) {
    const auto closed = bs_transition_matrix(*lattice, t);
    const auto series = oracle::matexp_series(dense_q, t);
    const double deviation = (closed - series).cwiseAbs().maxCoeff();
    const double row_error = (closed.rowwise().sum().array() - 1.0).abs().maxCoeff();
    std::ostringstream detail;
    detail << "max deviation " << deviation << ", row-sum error " << row_error;
    checks.add("bs transition closed form vs series exponential, t=" + std::to_string(t).substr(0, 3),
               deviation < tol && row_error < tol, detail.str());
  }

  const auto triple = bs_triple(lattice);
  bool identity_ok = true;
  for (const BigRat& x : {BigRat(1), BigRat(BigInt(1), BigInt(2)), BigRat(-2)}) {
    for (std::size_t r = 0; r < lattice->size(); ++r) {
      for (const auto& [c, unused] : triple.right.row(r)) {
        (void)unused;
        BigRat direct;
        for (const auto& [mid, rv] : triple.right.row(r)) {
          direct += rv * pow(x, static_cast<int>(lattice->at(mid).size()) - 1) * triple.left.get(mid, c);
        }
        if (direct != bs_transition_exact(lattice->at(r), lattice->at(c), x)) identity_ok = false;
      }
    }
  }
  checks.add("bs polynomial identity at x in {1, 1/2, -2}", identity_ok);

  if (n >= 2) {
    const auto fundamental = oracle::fundamental_matrix(q);
    bool green_ok = true;
    for (std::size_t r = 0; r < lattice->size(); ++r) {
      for (std::size_t c = 0; c < lattice->size(); ++c) {
        const auto g = bs_green(lattice->at(r), lattice->at(c));
        if (c == lattice->top()) {
          green_ok = green_ok && g.infinite == is_refinement(lattice->at(r), lattice->at(c));
        } else {
          green_ok = green_ok && !g.infinite && g.value == fundamental.get(r, c);
        }
      }
    }
    checks.add("bs Green's matrix vs fundamental matrix", green_ok);

    bool block_green_ok = true;
    for (const auto& pi : lattice->elements()) {
      const int i = static_cast<int>(pi.size());
      for (int j = 2; j <= i; ++j) {
        BigRat sum;
        for (const auto& rho : lattice->elements()) {
          if (static_cast<int>(rho.size()) == j) sum += bs_green(pi, rho).value;
        }
        if (sum != bs_block_green(i, j, n)) block_green_ok = false;
      }
    }
    checks.add("bs block Green's function vs aggregated Green's matrix", block_green_ok);
  }

  if (n <= 6) {
    bool trees_ok = true;
    for (const auto& pi : lattice->elements()) {
      const auto trees = enumerate_increasing_trees(pi);
      for (const auto& rho : coarsenings(pi)) {
        const auto hits = static_cast<long>(
            std::count_if(trees.begin(), trees.end(), [&](const auto& tree) { return contains(tree, rho); }));
        const BigInt expected = count_trees_containing(pi, rho);
        trees_ok = trees_ok && expected == hits &&
                   BigRat(expected, BigInt(static_cast<long>(trees.size()))) == bs_right_entry(pi, rho);
      }
    }
    checks.add("increasing trees containing rho vs count and r entry", trees_ok);
  }
}

}  // namespace

std::vector<CheckResult> run_verification(const VerifyOptions& options) {
  std::vector<CheckResult> all;
  for (int n = 1; n <= options.n_max; ++n) {
    Checks checks(n);
    const auto lattice = PartitionLattice::enumerate(n, options.lattice_cap);
    check_lattice(checks, n, lattice);
    check_bs_dynamics(checks, n, lattice, options.tol);
    for (Model model : {Model::bolthausen_sznitman, Model::kingman}) {
      const auto q = model == Model::bolthausen_sznitman ? bs_block_generator(n) : kingman_block_generator(n);
      const auto t = model == Model::bolthausen_sznitman ? bs_block_triple(n) : kingman_block_triple(n);
      const auto report = verify_triple(q, t);
      checks.add(std::string(model_name(model)) + " block-counting decomposition", report.all_pass(),
                 describe(report));
    }
    auto results = checks.take();
    all.insert(all.end(), std::make_move_iterator(results.begin()), std::make_move_iterator(results.end()));
  }
  return all;
}

}  // namespace coalspec
